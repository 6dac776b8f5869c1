#pragma once

#include "padic/matrix.hpp"

namespace padic {

// Congruence filtration level: the largest k with g in G_k, i.e. the smallest
// entry valuation of g - 1. Values are clamped to N (the precision ceiling).
struct FiltrationLevel {
    Valuation level;
    bool at_ceiling() const { return level.infinite; }
    std::string str() const { return level.infinite ? "ceiling" : level.str(); }
};

template <class R>
FiltrationLevel level_of(const Matrix<R>& g) {
    if (!g.square()) throw ContextMismatch("filtration level of a non-square matrix");
    Matrix<R> h = g - Matrix<R>::identity(g.rows(), g.exemplar());
    return FiltrationLevel{h.min_valuation()};
}

template <class R>
bool in_level(const Matrix<R>& g, long k) {
    Valuation v = level_of(g).level;
    return v >= Valuation::of(k, 1);
}

namespace detail {

// smallest K with K - (K-1)/(p-1) >= target, i.e. the exp truncation index
inline long exp_truncation(long p, long target) {
    return (target * (p - 1) - 1 + (p - 2) - 1) / (p - 2) + 1;
}

// smallest K with K - floor(log_p K) >= target, for the log series
inline long log_truncation(long p, long target) {
    long k = target;
    auto flog = [p](long x) {
        long g = 0, v = 1;
        while (v <= x / p) {
            v *= p;
            ++g;
        }
        return g;
    };
    while (k - flog(k) < target) ++k;
    return k;
}

}  // namespace detail

// exp(A) = sum A^k / k!, for matrices with every entry of valuation >= 1.
// The running term A^k/k! is itself integral, so dividing the previous term by
// the single integer k is an exact division at every step; the multiplication
// by A restores one digit per step, which keeps the total loss within the
// guard budget. Returned at precision N.
template <class R>
Matrix<R> matrix_exp(const Matrix<R>& a) {
    if (!a.square()) throw ContextMismatch("matrix_exp of a non-square matrix");
    Valuation v = a.min_valuation();
    if (!(v >= Valuation::of(1, 1)))
        throw ConvergenceViolation("matrix_exp requires every entry valuation >= 1, got " +
                                   v.str());
    const auto& ctx = *a.exemplar().zero_like().ctx();
    const long target = ctx.N + ctx.guard;
    const long kmax = detail::exp_truncation(ctx.p, target);
    Matrix<R> acc = Matrix<R>::identity(a.rows(), a.exemplar());
    Matrix<R> term = acc;
    for (long k = 1; k <= kmax; ++k) {
        term = (term * a).divide_exact(k);
        if (term.min_valuation_internal().infinite) break;
        acc = acc + term;
    }
    return acc.canonical_at_precision();
}

// log(g) = sum (-1)^(k+1) (g-1)^k / k for g in G_1. Terms are computed from
// exact powers, so each one loses at most v_p(k) guard digits independently.
template <class R>
Matrix<R> matrix_log(const Matrix<R>& g) {
    if (!g.square()) throw ContextMismatch("matrix_log of a non-square matrix");
    Matrix<R> id = Matrix<R>::identity(g.rows(), g.exemplar());
    Matrix<R> h = g - id;
    Valuation v = h.min_valuation();
    if (!(v >= Valuation::of(1, 1)))
        throw ConvergenceViolation("matrix_log requires g = 1 mod p, level is " + v.str());
    const auto& ctx = *g.exemplar().zero_like().ctx();
    const long target = ctx.N + ctx.guard;
    const long kmax = detail::log_truncation(ctx.p, target);
    Matrix<R> acc = Matrix<R>::zero(g.rows(), g.cols(), g.exemplar());
    Matrix<R> pow = id;
    for (long k = 1; k <= kmax; ++k) {
        pow = pow * h;
        if (pow.min_valuation_internal().infinite) break;
        Matrix<R> term = pow.divide_exact(k);
        acc = (k % 2 == 1) ? acc + term : acc - term;
    }
    return acc.canonical_at_precision();
}

template <class R>
Matrix<R> commutator(const Matrix<R>& a, const Matrix<R>& b) {
    return a * b - b * a;
}

// adjoint(g, A) = g^{-1} A g, the convention under which
// exp(adjoint(g, A)) = g^{-1} exp(A) g.
inline ScalarMatrix adjoint(const ScalarMatrix& g, const ScalarMatrix& a) {
    return inverse(g) * a * g;
}

inline LaurentMatrix adjoint(const LaurentMatrix& g, const LaurentMatrix& a) {
    return inverse(g) * a * g;
}

}  // namespace padic
