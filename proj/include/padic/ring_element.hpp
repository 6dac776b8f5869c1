#pragma once

#include <map>
#include <vector>

#include "padic/scalar.hpp"

namespace padic {

enum class MulPolicy { strict, truncate };

// Exponent vector of a monomial T_1^(e_1/p^m) ... T_d^(e_d/p^m), stored as the
// integer numerators e_i over the fixed denominator p^m of the context.
using ExpVec = std::vector<long>;

// Truncated Laurent element over Scalar in d toric variables with
// p-power-root exponents. The box bound limits |e_i| <= E * p^m.
class RingElement {
  public:
    RingElement() = default;
    RingElement(CtxPtr ctx, long d, long box_e);

    static RingElement constant(const CtxPtr& ctx, long d, long box_e, const Scalar& c);
    static RingElement monomial(const CtxPtr& ctx, long d, long box_e, const ExpVec& numerators,
                                const Scalar& c);
    // T_i^(num/p^m) with coefficient 1
    static RingElement variable(const CtxPtr& ctx, long d, long box_e, long i, long num);

    const CtxPtr& ctx() const { return ctx_; }
    long vars() const { return d_; }
    long box() const { return box_e_; }
    bool exact() const { return exact_; }
    const std::map<ExpVec, Scalar>& terms() const { return terms_; }

    void insert_term(const ExpVec& e, const Scalar& c);  // adds, dropping internal zeros

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement mul(const RingElement& o, MulPolicy policy) const;
    RingElement operator*(const RingElement& o) const { return mul(o, MulPolicy::strict); }
    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
    RingElement& operator*=(const RingElement& o) { return *this = *this * o; }

    RingElement scaled(const Scalar& c) const;

    // toric Galois action of gamma in (Z/p^m)^d: T^a -> zeta^(<a_num, gamma>) T^a
    RingElement galois(const std::vector<long>& gamma) const;

    bool is_constant() const;       // no terms with nonzero exponent (at precision N)
    bool has_integer_exponents() const;
    Scalar constant_part() const;   // coefficient at exponent 0
    Scalar leading_unit_test() const = delete;

    Valuation valuation() const;    // min over terms (exponents are toric units)
    Valuation valuation_internal() const;
    bool is_zero_at_precision() const;
    bool equal_at_precision(const RingElement& o) const;
    RingElement canonical_at_precision() const;
    RingElement with_context(const CtxPtr& nctx) const;
    RingElement with_box(long box_e) const;

    Scalar divide_exact_by_p_pow_scalar() const = delete;
    RingElement divide_exact_by_p_pow(long k) const;
    RingElement divide_exact(long k) const;
    RingElement divide_by_zeta_pow_minus_one(long kappa) const;

    // multiplicative inverse for elements of the form unit-constant + (v >= 1);
    // enough for the gauges and cocycle values handled here. Throws NotAUnit.
    RingElement inv() const;

    RingElement zero_like() const { return RingElement(ctx_, d_, box_e_); }
    RingElement one_like() const { return constant(ctx_, d_, box_e_, Scalar::one(ctx_)); }

    std::string str() const;

  private:
    CtxPtr ctx_;
    long d_ = 0;
    long box_e_ = 0;
    bool exact_ = true;
    std::map<ExpVec, Scalar> terms_;  // no stored zero coefficients (internal precision)

    void check_compatible_(const RingElement& o) const;
    bool in_box_(const ExpVec& e) const;
};

}  // namespace padic
