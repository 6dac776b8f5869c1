#include "padic/smallrep.hpp"

#include <algorithm>
#include <cmath>

#include "padic/zmod_linalg.hpp"

namespace padic {

namespace {

LaurentMatrix act(const TwistedCocycle& c, long j, const LaurentMatrix& x) {
    return c.action.apply_generator(j, c.d, x);
}

}  // namespace

LaurentMatrix cocycle_extend(const TwistedCocycle& c, const std::vector<long>& gamma) {
    if ((long)gamma.size() != c.d) throw ContextMismatch("cocycle extension arity mismatch");
    for (long g : gamma)
        if (g < 0) throw ContextMismatch("cocycle extension handles non-negative exponents only");
    // peel generators one at a time: c(g + e_j) = c(e_j) . (e_j * c(g))
    long n = c.values[0].rows();
    LaurentMatrix acc = c.multiplicative
                            ? LaurentMatrix::identity(n, c.values[0].exemplar())
                            : LaurentMatrix::zero(n, n, c.values[0].exemplar());
    std::vector<long> rest = gamma;
    for (long j = 0; j < c.d; ++j) {
        while (rest[(size_t)j] > 0) {
            rest[(size_t)j] -= 1;
            acc = c.multiplicative ? c.values[(size_t)j] * act(c, j, acc)
                                   : c.values[(size_t)j] + act(c, j, acc);
        }
    }
    return acc;
}

bool twisted_cocycle_check(const TwistedCocycle& c) {
    if (c.values.empty() || (long)c.values.size() != c.d) return false;
    // abelian compatibility on generator pairs
    for (long i = 0; i < c.d; ++i) {
        for (long j = i + 1; j < c.d; ++j) {
            LaurentMatrix lhs = c.multiplicative
                                    ? c.values[(size_t)i] * act(c, i, c.values[(size_t)j])
                                    : c.values[(size_t)i] + act(c, i, c.values[(size_t)j]);
            LaurentMatrix rhs = c.multiplicative
                                    ? c.values[(size_t)j] * act(c, j, c.values[(size_t)i])
                                    : c.values[(size_t)j] + act(c, j, c.values[(size_t)i]);
            if (!lhs.equal_at_precision(rhs)) return false;
        }
    }
    for (const auto& [gamma, claimed] : c.extra) {
        if (!cocycle_extend(c, gamma).equal_at_precision(claimed)) return false;
    }
    return true;
}

namespace {

// restriction of scalars: one Scalar becomes the phi x phi matrix of its
// multiplication action on the power basis, entries mod p^N
void emit_scalar_block(IntMat& out, long r0, long c0, const Scalar& s) {
    const auto& ctx = *s.ctx();
    for (long j = 0; j < ctx.phi; ++j) {
        // column j: s * zeta^j
        Scalar col = ctx.m == 0 ? s : s * Scalar::zeta(s.ctx(), j);
        Scalar red = col.canonical_at_precision();
        for (long i = 0; i < ctx.phi; ++i) {
            mpz_class v = red.coeffs()[(size_t)i];
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), ctx.modulus_n.get_mpz_t());
            out(r0 + i, c0 + j) = v;
        }
    }
}

bool is_conjugating(const ScalarMatrix& cand, const ScalarRep& rho1, const ScalarRep& rho2) {
    for (long i = 0; i < rho1.d; ++i) {
        if (!(cand * rho1.images[(size_t)i]).equal_at_precision(rho2.images[(size_t)i] * cand))
            return false;
    }
    return true;
}

// determinant over the local ring by cofactor expansion (n is small here)
Scalar det(const ScalarMatrix& m) {
    long n = m.rows();
    if (n == 1) return m(0, 0);
    Scalar acc = Scalar::zero(m(0, 0).ctx());
    for (long j = 0; j < n; ++j) {
        ScalarMatrix minor(n - 1, n - 1, m.exemplar().zero_like());
        for (long r = 1; r < n; ++r) {
            long cc = 0;
            for (long c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        Scalar term = m(0, j) * det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

std::optional<ScalarMatrix> rep_equivalent(const ScalarRep& rho1, const ScalarRep& rho2,
                                           ConjugacySearchMode mode, unsigned long cap) {
    if (rho1.d != rho2.d || rho1.dim() != rho2.dim())
        throw ContextMismatch("representations have different shape");
    const long n = rho1.dim();
    const CtxPtr ctx = rho1.images[0](0, 0).ctx();
    require_same_ctx(ctx, rho2.images[0](0, 0).ctx());

    if (mode == ConjugacySearchMode::exact_search) {
        // enumerate all matrices over the finite coefficient ring, cheapest
        // (closest to the identity in the congruence filtration) first
        long cells = n * n * ctx->phi;
        double log_size = (double)cells * (double)ctx->N * std::log((double)ctx->p);
        if (log_size > std::log((double)cap))
            throw SearchSpaceTooLarge("exact search space exceeds the cap");
        mpz_class q = ctx->modulus_n;
        long qn = (long)q.get_ui();
        long total = 1;
        for (long i = 0; i < cells; ++i) total *= qn;
        // candidates are offsets from the identity; offset values of higher
        // p-valuation come first, so the search walks outward from 1 in the
        // congruence filtration
        std::vector<long> order((size_t)qn);
        for (long v = 0; v < qn; ++v) order[(size_t)v] = v;
        auto vp = [&](long v) {
            if (v == 0) return ctx->N + 1;
            long k = 0;
            while (v % ctx->p == 0) {
                v /= ctx->p;
                ++k;
            }
            return k;
        };
        std::stable_sort(order.begin(), order.end(),
                         [&](long a, long b) { return vp(a) > vp(b); });
        std::vector<long> digits((size_t)cells, 0);
        for (long count = 0; count < total; ++count) {
            ScalarMatrix cand(n, n, Scalar::zero(ctx));
            long t = 0;
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) {
                    std::vector<mpz_class> coeffs((size_t)ctx->phi);
                    for (long k = 0; k < ctx->phi; ++k) {
                        long base = (i == j && k == 0) ? 1 : 0;  // offset from identity
                        coeffs[(size_t)k] = (base + order[(size_t)digits[(size_t)t++]]) % qn;
                    }
                    cand(i, j) = Scalar::from_coeffs(ctx, std::move(coeffs));
                }
            if (det(cand).is_unit() && is_conjugating(cand, rho1, rho2)) return cand;
            // increment the odometer
            for (long i = 0; i < cells; ++i) {
                if (++digits[(size_t)i] < qn) break;
                digits[(size_t)i] = 0;
            }
        }
        return std::nullopt;
    }

    // certified mode: kernel of the stacked intertwiner system, restricted
    // scalars, then a unit-determinant search over the F_p span of the kernel.
    const long phi = ctx->phi;
    const long cells = n * n;
    IntMat system(rho1.d * cells * phi, cells * phi);
    for (long g = 0; g < rho1.d; ++g) {
        const ScalarMatrix& r1 = rho1.images[(size_t)g];
        const ScalarMatrix& r2 = rho2.images[(size_t)g];
        // equation block: C r1 - r2 C = 0; unknown C laid out row-major (i, j)
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                long row_block = g * cells + i * n + j;  // equation (i, j)
                for (long k = 0; k < n; ++k) {
                    // + C(i,k) r1(k,j)
                    IntMat blk(phi, phi);
                    emit_scalar_block(blk, 0, 0, r1(k, j));
                    for (long a = 0; a < phi; ++a)
                        for (long b = 0; b < phi; ++b)
                            system(row_block * phi + a, (i * n + k) * phi + b) += blk(a, b);
                    // - r2(i,k) C(k,j)
                    IntMat blk2(phi, phi);
                    emit_scalar_block(blk2, 0, 0, r2(i, k));
                    for (long a = 0; a < phi; ++a)
                        for (long b = 0; b < phi; ++b)
                            system(row_block * phi + a, (k * n + j) * phi + b) -= blk2(a, b);
                }
            }
    }
    for (auto& x : system.a) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), ctx->modulus_n.get_mpz_t());
    IntMat gens = kernel_generators(system, ctx->p, ctx->N);
    const long t = gens.cols;
    if (t == 0) return std::nullopt;
    auto col_to_matrix = [&](const std::vector<mpz_class>& combo) {
        ScalarMatrix cand(n, n, Scalar::zero(ctx));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                std::vector<mpz_class> coeffs((size_t)phi, mpz_class(0));
                for (long k = 0; k < phi; ++k)
                    for (long s = 0; s < t; ++s)
                        coeffs[(size_t)k] += combo[(size_t)s] * gens((i * n + j) * phi + k, s);
                cand(i, j) = Scalar::from_coeffs(ctx, std::move(coeffs));
            }
        return cand;
    };
    // the determinant mod p of a combination depends only on the coefficients
    // mod p, so enumerating F_p combinations decides unit-solvability completely
    double log_combos = (double)t * std::log((double)ctx->p);
    if (log_combos > std::log((double)cap))
        throw SearchSpaceTooLarge("solution module too large for the unit search");
    long combos = 1;
    for (long i = 0; i < t; ++i) combos *= ctx->p;
    std::vector<mpz_class> combo((size_t)t, mpz_class(0));
    for (long count = 1; count < combos; ++count) {
        for (long i = 0; i < t; ++i) {
            if (++combo[(size_t)i] < ctx->p) break;
            combo[(size_t)i] = 0;
        }
        ScalarMatrix cand = col_to_matrix(combo);
        if (!det(cand).is_unit()) continue;
        if (is_conjugating(cand, rho1, rho2)) return cand;
        // a kernel element with unit determinant always conjugates; reaching
        // this point indicates an arithmetic bug
        throw InternalError("unit kernel element failed to conjugate");
    }
    return std::nullopt;
}

}  // namespace padic
