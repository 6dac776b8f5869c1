#pragma once

#include <optional>
#include <variant>

#include "padic/matfun.hpp"

namespace padic {

// Element of Delta = Z_p^d at precision N: exponent vector of residues mod p^N.
struct DeltaElement {
    CtxPtr ctx;
    std::vector<mpz_class> exponents;

    DeltaElement(CtxPtr c, std::vector<mpz_class> e) : ctx(std::move(c)), exponents(std::move(e)) {
        for (auto& x : exponents) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), ctx->modulus_n.get_mpz_t());
    }
    static DeltaElement zero(const CtxPtr& ctx, long d) {
        return DeltaElement(ctx, std::vector<mpz_class>((size_t)d, mpz_class(0)));
    }
    static DeltaElement generator(const CtxPtr& ctx, long d, long i) {
        std::vector<mpz_class> e((size_t)d, mpz_class(0));
        e[(size_t)i] = 1;
        return DeltaElement(ctx, std::move(e));
    }
    DeltaElement operator+(const DeltaElement& o) const {
        std::vector<mpz_class> e = exponents;
        for (size_t i = 0; i < e.size(); ++i) e[i] += o.exponents[i];
        return DeltaElement(ctx, std::move(e));
    }
    long rank() const { return (long)exponents.size(); }
};

// Commuting tuple of matrices congruent to 1 mod p: a continuous representation
// of Delta = Z_p^d given by its generator images. The two structural conditions
// (pairwise commuting, images in G_1) certify continuity at this precision.
template <class R>
struct SmallRep {
    long d = 0;
    std::vector<Matrix<R>> images;

    long dim() const { return images.empty() ? 0 : images[0].rows(); }
};

using ScalarRep = SmallRep<Scalar>;
using LaurentRep = SmallRep<RingElement>;

// Checks the continuity certificate and returns the representation.
// Throws NotCommuting(i, j) with the offending commutator, or NotSmall(i).
template <class R>
SmallRep<R> validate_rep(const std::vector<Matrix<R>>& images) {
    if (images.empty()) throw ContextMismatch("a representation needs at least one generator");
    for (size_t i = 0; i < images.size(); ++i) {
        if (!images[i].square() || images[i].rows() != images[0].rows())
            throw ContextMismatch("generator images must be square of equal size");
        FiltrationLevel lvl = level_of(images[i]);
        if (!(lvl.level >= Valuation::of(1, 1)))
            throw NotSmall((int)i + 1, "generator " + std::to_string(i + 1) +
                                           " has filtration level " + lvl.str());
    }
    for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = i + 1; j < images.size(); ++j) {
            Matrix<R> c = commutator(images[i], images[j]);
            if (!c.is_zero_at_precision())
                throw NotCommuting((int)i + 1, (int)j + 1,
                                   "generators " + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) +
                                       " do not commute; witness:\n" + c.str());
        }
    return SmallRep<R>{(long)images.size(), images};
}

// rho(gamma) = prod g_i^(e_i) with the exponents taken mod p^N; well defined
// because g in G_1 implies g^(p^N) = 1 mod p^(N+1).
template <class R>
Matrix<R> evaluate(const SmallRep<R>& rho, const DeltaElement& gamma) {
    if (gamma.rank() != rho.d) throw ContextMismatch("group element rank mismatch");
    Matrix<R> acc = Matrix<R>::identity(rho.images[0].rows(), rho.images[0].exemplar());
    for (size_t i = 0; i < rho.images.size(); ++i) {
        mpz_class e = gamma.exponents[i];
        Matrix<R> base = rho.images[i];
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
    }
    return acc;
}

// The Delta-action on coefficient matrices used by twisted cocycles.
struct DeltaAction {
    enum class Kind { trivial, toric, rho_twisted };
    Kind kind = Kind::trivial;
    std::shared_ptr<LaurentRep> rho;  // for rho_twisted: g * x = rho(g) (g x) rho(g)^{-1}

    LaurentMatrix apply_generator(long j, long d, const LaurentMatrix& x) const {
        switch (kind) {
            case Kind::trivial:
                return x;
            case Kind::toric: {
                std::vector<long> gamma((size_t)d, 0);
                gamma[(size_t)j] = 1;
                return x.map([&](const RingElement& e) { return e.galois(gamma); });
            }
            case Kind::rho_twisted: {
                std::vector<long> gamma((size_t)d, 0);
                gamma[(size_t)j] = 1;
                LaurentMatrix moved =
                    x.map([&](const RingElement& e) { return e.galois(gamma); });
                const LaurentMatrix& r = rho->images[(size_t)j];
                return r * moved * inverse(r);
            }
        }
        throw InternalError("unhandled action kind");
    }
};

// A 1-cocycle on Delta at finite tower level, given by its generator values.
// law: multiplicative  c(gh) = c(g) * (g c(h));  additive  c(gh) = c(g) + g c(h).
struct TwistedCocycle {
    long d = 0;
    bool multiplicative = true;
    DeltaAction action;
    std::vector<LaurentMatrix> values;
    // optional extra assignments (non-negative exponent vectors) checked against
    // the extension generated by the generator values
    std::vector<std::pair<std::vector<long>, LaurentMatrix>> extra;
};

bool twisted_cocycle_check(const TwistedCocycle& c);

// Evaluates the cocycle extension on a non-negative exponent vector.
LaurentMatrix cocycle_extend(const TwistedCocycle& c, const std::vector<long>& gamma);

enum class ConjugacySearchMode { exact_search, certified };

// Searches for C with rho1(gamma_i) = C^{-1} rho2(gamma_i) C for all i.
//  exact_search: enumerates all candidate matrices over the finite coefficient
//    ring (unit-determinant filtered), erroring when the space exceeds the cap;
//  certified: solves the linear intertwiner system C rho1 = rho2 C over the
//    ring and searches the solution module for a unit-determinant element.
// Returns the conjugator or nullopt when provably none exists.
std::optional<ScalarMatrix> rep_equivalent(const ScalarRep& rho1, const ScalarRep& rho2,
                                           ConjugacySearchMode mode,
                                           unsigned long cap = 200000);

}  // namespace padic
