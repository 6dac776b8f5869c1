#pragma once

#include <gmpxx.h>

#include <numeric>
#include <string>
#include <vector>

#include "padic/context.hpp"

namespace padic {

// Rational valuation with denominator dividing p^(m-1)(p-1), or +infinity for
// zero-at-precision. v(p) = 1.
struct Valuation {
    bool infinite = false;
    long num = 0;
    long den = 1;

    static Valuation infinity() { return Valuation{true, 0, 1}; }
    static Valuation of(long num, long den) {
        long g = std::gcd(num < 0 ? -num : num, den);
        if (g == 0) g = 1;
        return Valuation{false, num / g, den / g};
    }

    bool operator==(const Valuation& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return num * o.den == o.num * den;
    }
    bool operator<(const Valuation& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return num * o.den < o.num * den;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
    bool operator>=(const Valuation& o) const { return !(*this < o); }
    bool operator>(const Valuation& o) const { return o < *this; }

    Valuation operator+(const Valuation& o) const {
        if (infinite || o.infinite) return infinity();
        long d = std::lcm(den, o.den);
        return of(num * (d / den) + o.num * (d / o.den), d);
    }

    std::string str() const;
};

// One element of Z[x]/(Phi_{p^m}(x), p^(N+guard)). Arithmetic is exact in this
// ring; equality and valuation are reported at precision N.
class Scalar {
  public:
    Scalar() = default;
    Scalar(CtxPtr ctx, const mpz_class& value);  // constant, reduced mod p^(N+guard)
    static Scalar zero(const CtxPtr& ctx);
    static Scalar one(const CtxPtr& ctx);
    static Scalar from_coeffs(CtxPtr ctx, std::vector<mpz_class> coeffs);
    static Scalar zeta(const CtxPtr& ctx, long power = 1);  // requires m >= 1

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool is_unit() const;   // nonzero residue in the residue field F_p
    Scalar inv() const;     // throws NotAUnit

    // exact division by p^k inside the internal ring; the quotient is only
    // meaningful mod p^(N+guard-k). Throws InternalError if not divisible.
    Scalar divide_exact_by_p_pow(long k) const;

    // exact division by an integer k = p^j * u: p-part by divide_exact_by_p_pow,
    // unit part by multiplication with u^(-1).
    Scalar divide_exact(long k) const;

    // division by (zeta^kappa - 1), kappa != 0 mod p^m; computed as
    // x * prod(conjugates) / p, hence the quotient is meaningful mod p^(N+guard-1).
    // Throws NotAUnit-free failure as InternalError when x is not divisible.
    Scalar divide_by_zeta_pow_minus_one(long kappa) const;

    Valuation valuation() const;                 // reported at precision N
    Valuation valuation_internal() const;        // measured at precision N+guard
    bool is_zero_at_precision() const;           // == 0 mod p^N
    bool equal_at_precision(const Scalar& o) const;

    // canonical representative of the class mod p^N (guard digits zeroed)
    Scalar canonical_at_precision() const;

    // re-encode the class mod p^(N') in a context with smaller or equal N
    Scalar with_context(const CtxPtr& nctx) const;

    // ring interface used by Matrix<R> and the series evaluators
    Scalar zero_like() const { return zero(ctx_); }
    Scalar one_like() const { return one(ctx_); }

    std::string str() const;  // human-readable, for diagnostics and tables

  private:
    CtxPtr ctx_;
    std::vector<mpz_class> coeffs_;  // length ctx->phi, reduced into [0, modulus)

    void reduce_();
};

Scalar operator*(const mpz_class& k, const Scalar& s);

}  // namespace padic
