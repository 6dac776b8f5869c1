#pragma once

#include "padic/smallrep.hpp"

namespace padic {

// Commuting tuple A_1..A_d of matrices with entry valuation >= 1: the
// coefficients of theta = sum A_i (x) delta_i. Commutativity is the condition
// theta ^ theta = 0.
template <class R>
struct HiggsField {
    long d = 0;
    std::vector<Matrix<R>> coefficients;
    std::vector<std::string> basis_labels;

    long dim() const { return coefficients.empty() ? 0 : coefficients[0].rows(); }
};

using ScalarHiggs = HiggsField<Scalar>;

template <class R>
HiggsField<R> validate_higgs(const std::vector<Matrix<R>>& coeffs,
                             std::vector<std::string> labels = {}) {
    if (coeffs.empty()) throw ContextMismatch("a Higgs field needs at least one coefficient");
    for (size_t i = 0; i < coeffs.size(); ++i) {
        Valuation v = coeffs[i].min_valuation();
        if (!(v >= Valuation::of(1, 1)))
            throw ConvergenceViolation("Higgs coefficient " + std::to_string(i + 1) +
                                       " has valuation " + v.str() + " < 1");
    }
    for (size_t i = 0; i < coeffs.size(); ++i)
        for (size_t j = i + 1; j < coeffs.size(); ++j) {
            if (!commutator(coeffs[i], coeffs[j]).is_zero_at_precision())
                throw HiggsConditionViolated((int)i + 1, (int)j + 1,
                                             "theta ^ theta != 0 at coefficients " +
                                                 std::to_string(i + 1) + "," +
                                                 std::to_string(j + 1));
        }
    if (labels.empty())
        for (size_t i = 0; i < coeffs.size(); ++i)
            labels.push_back("delta_" + std::to_string(i + 1));
    return HiggsField<R>{(long)coeffs.size(), coeffs, std::move(labels)};
}

// The chosen representative 1-cocycles on generators: rho_i(gamma_j) as a
// d x d scalar array, invertible. The Kronecker choice makes
// higgs_to_rep(theta)(gamma_j) = exp(A_j).
struct CocycleBasis {
    ScalarMatrix values;  // values(i, j) = rho_i(gamma_j)

    static CocycleBasis kronecker(const CtxPtr& ctx, long d) {
        return CocycleBasis{ScalarMatrix::identity(d, Scalar::zero(ctx))};
    }
    void validate() const {
        if (!try_inverse(values))
            throw NotAUnit("cocycle basis is not invertible over the coefficient ring");
    }
};

// gamma_j -> prod_i exp(rho_i(gamma_j) A_i)
template <class R>
SmallRep<R> higgs_to_rep(const HiggsField<R>& theta, const CocycleBasis& basis) {
    basis.validate();
    if (basis.values.rows() != theta.d)
        throw ContextMismatch("cocycle basis rank does not match the Higgs field");
    std::vector<Matrix<R>> images;
    for (long j = 0; j < theta.d; ++j) {
        Matrix<R> acc =
            Matrix<R>::identity(theta.dim(), theta.coefficients[0].exemplar());
        for (long i = 0; i < theta.d; ++i) {
            const Scalar& rij = basis.values(i, j);
            Matrix<R> scaled = theta.coefficients[(size_t)i].map([&](const R& e) {
                if constexpr (std::is_same_v<R, Scalar>)
                    return e * rij;
                else
                    return e.scaled(rij);
            });
            acc = acc * matrix_exp(scaled);
        }
        images.push_back(acc.canonical_at_precision());
    }
    return validate_rep(images);
}

// A_j = log rho(gamma_j); the coefficients commute because the images do.
template <class R>
HiggsField<R> rep_to_higgs(const SmallRep<R>& rho) {
    std::vector<Matrix<R>> coeffs;
    for (const auto& g : rho.images) coeffs.push_back(matrix_log(g));
    return validate_higgs(coeffs);
}

enum class TransferDirection { higgs_to_rep, rep_to_higgs };

// Verifies that phi intertwines the source pair and transfers it (the matrix
// is unchanged; the content is the verification on both sides).
template <class R>
Matrix<R> transfer_morphism(const Matrix<R>& phi, const HiggsField<R>& theta1,
                            const HiggsField<R>& theta2) {
    for (long i = 0; i < theta1.d; ++i) {
        if (!(phi * theta1.coefficients[(size_t)i])
                 .equal_at_precision(theta2.coefficients[(size_t)i] * phi))
            throw NotAMorphism((int)i + 1, "phi does not intertwine Higgs coefficient " +
                                               std::to_string(i + 1));
    }
    CocycleBasis basis = CocycleBasis::kronecker(phi.exemplar().zero_like().ctx(), theta1.d);
    SmallRep<R> rho1 = higgs_to_rep(theta1, basis);
    SmallRep<R> rho2 = higgs_to_rep(theta2, basis);
    for (long i = 0; i < theta1.d; ++i) {
        if (!(phi * rho1.images[(size_t)i]).equal_at_precision(rho2.images[(size_t)i] * phi))
            throw NotAMorphism((int)i + 1,
                               "phi fails to intertwine the exponentiated side at generator " +
                                   std::to_string(i + 1));
    }
    return phi;
}

template <class R>
Matrix<R> transfer_morphism(const Matrix<R>& phi, const SmallRep<R>& rho1,
                            const SmallRep<R>& rho2) {
    for (long i = 0; i < rho1.d; ++i) {
        if (!(phi * rho1.images[(size_t)i]).equal_at_precision(rho2.images[(size_t)i] * phi))
            throw NotAMorphism((int)i + 1, "phi does not intertwine generator image " +
                                               std::to_string(i + 1));
    }
    HiggsField<R> t1 = rep_to_higgs(rho1);
    HiggsField<R> t2 = rep_to_higgs(rho2);
    for (long i = 0; i < rho1.d; ++i) {
        if (!(phi * t1.coefficients[(size_t)i])
                 .equal_at_precision(t2.coefficients[(size_t)i] * phi))
            throw NotAMorphism((int)i + 1,
                               "phi fails to intertwine the logarithmic side at coefficient " +
                                   std::to_string(i + 1));
    }
    return phi;
}

// ---- descent ---------------------------------------------------------------

struct DescentConfig {
    long c_min = 1;        // required smallness level of the input cocycle
    long step_t = 3;       // lifting window per iteration
    long gamma_tors = 1;   // torsion allowance: precision digits lost per iteration
    long max_iters = 64;
    long box_e = 0;        // 0: derive from the inputs
};

struct DescentBlockNorm {
    std::vector<long> character;  // fractional-class numerators mod p^m
    Valuation level;              // valuation of the obstruction in that block
};

struct DescentTraceEntry {
    long step = 0;
    Valuation discrepancy_level;
    std::vector<DescentBlockNorm> blocks;
    long precision_remaining = 0;
};

struct DescentResult {
    LaurentRep rep;           // homomorphism over the Delta-invariant subring
    LaurentMatrix gauge;      // b with rep(gamma) = b^{-1} c(gamma) (gamma b)
    std::vector<DescentTraceEntry> trace;
    long precision_out = 0;   // digits at which the identity above holds
    CtxPtr reduced_ctx;       // context at precision_out for downstream checks
};

// Iteratively replaces a tower-level cocycle by an equivalent homomorphism into
// the invariant subring: each step logs the discrepancy, splits it into toric
// character blocks, pushes the invariant block into the homomorphism and
// absorbs the nonzero blocks into the gauge by solving per-block divisions by
// (zeta^kappa - 1).
DescentResult descend_cocycle(const TwistedCocycle& c, const DescentConfig& config);

}  // namespace padic
