#include "padic/ring_element.hpp"

#include <sstream>

namespace padic {

RingElement::RingElement(CtxPtr ctx, long d, long box_e)
    : ctx_(std::move(ctx)), d_(d), box_e_(box_e) {}

RingElement RingElement::constant(const CtxPtr& ctx, long d, long box_e, const Scalar& c) {
    RingElement r(ctx, d, box_e);
    r.insert_term(ExpVec((size_t)d, 0), c);
    return r;
}

RingElement RingElement::monomial(const CtxPtr& ctx, long d, long box_e, const ExpVec& e,
                                  const Scalar& c) {
    RingElement r(ctx, d, box_e);
    if ((long)e.size() != d) throw ContextMismatch("monomial exponent arity mismatch");
    if (!r.in_box_(e)) throw SupportOverflow("monomial exponent outside the declared box");
    r.insert_term(e, c);
    return r;
}

RingElement RingElement::variable(const CtxPtr& ctx, long d, long box_e, long i, long num) {
    ExpVec e((size_t)d, 0);
    e[(size_t)i] = num;
    return monomial(ctx, d, box_e, e, Scalar::one(ctx));
}

bool RingElement::in_box_(const ExpVec& e) const {
    for (long c : e)
        if (c > box_e_ * ctx_->pm || c < -box_e_ * ctx_->pm) return false;
    return true;
}

void RingElement::check_compatible_(const RingElement& o) const {
    require_same_ctx(ctx_, o.ctx_);
    if (d_ != o.d_) throw ContextMismatch("ring elements have different variable counts");
}

void RingElement::insert_term(const ExpVec& e, const Scalar& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        bool zero = true;
        for (const auto& x : c.coeffs())
            if (x != 0) zero = false;
        if (!zero) terms_.emplace(e, c);
    } else {
        it->second += c;
        bool zero = true;
        for (const auto& x : it->second.coeffs())
            if (x != 0) zero = false;
        if (zero) terms_.erase(it);
    }
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_compatible_(o);
    RingElement r = *this;
    r.box_e_ = std::max(box_e_, o.box_e_);
    r.exact_ = exact_ && o.exact_;
    for (const auto& [e, c] : o.terms_) r.insert_term(e, c);
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator-() const {
    RingElement r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

RingElement RingElement::mul(const RingElement& o, MulPolicy policy) const {
    check_compatible_(o);
    RingElement r(ctx_, d_, std::max(box_e_, o.box_e_));
    r.exact_ = exact_ && o.exact_;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            ExpVec e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            if (!r.in_box_(e)) {
                if (policy == MulPolicy::strict)
                    throw SupportOverflow("product monomial leaves the exponent box");
                r.exact_ = false;
                continue;
            }
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

RingElement RingElement::scaled(const Scalar& c) const {
    RingElement r(ctx_, d_, box_e_);
    r.exact_ = exact_;
    for (const auto& [e, x] : terms_) r.insert_term(e, x * c);
    return r;
}

RingElement RingElement::galois(const std::vector<long>& gamma) const {
    if (ctx_->m < 1) throw ContextMismatch("galois action requires cyclotomic level m >= 1");
    if ((long)gamma.size() != d_) throw ContextMismatch("galois action arity mismatch");
    RingElement r(ctx_, d_, box_e_);
    r.exact_ = exact_;
    const long pm = ctx_->pm;
    auto mod_pm = [pm](long x) {
        long y = x % pm;
        return y < 0 ? y + pm : y;
    };
    for (const auto& [e, c] : terms_) {
        long pairing = 0;
        for (size_t i = 0; i < e.size(); ++i)
            pairing = mod_pm(pairing + mod_pm(e[i]) * mod_pm(gamma[i]));
        r.insert_term(e, pairing == 0 ? c : c * Scalar::zeta(ctx_, pairing));
    }
    return r;
}

bool RingElement::is_constant() const {
    for (const auto& [e, c] : terms_) {
        bool zero_exp = true;
        for (long x : e)
            if (x != 0) zero_exp = false;
        if (!zero_exp && !c.is_zero_at_precision()) return false;
    }
    return true;
}

bool RingElement::has_integer_exponents() const {
    for (const auto& [e, c] : terms_) {
        if (c.is_zero_at_precision()) continue;
        for (long x : e)
            if (x % ctx_->pm != 0) return false;
    }
    return true;
}

Scalar RingElement::constant_part() const {
    auto it = terms_.find(ExpVec((size_t)d_, 0));
    return it == terms_.end() ? Scalar::zero(ctx_) : it->second;
}

Valuation RingElement::valuation() const {
    Valuation v = Valuation::infinity();
    for (const auto& [e, c] : terms_) {
        Valuation vc = c.valuation();
        if (vc < v) v = vc;
    }
    return v;
}

Valuation RingElement::valuation_internal() const {
    Valuation v = Valuation::infinity();
    for (const auto& [e, c] : terms_) {
        Valuation vc = c.valuation_internal();
        if (vc < v) v = vc;
    }
    return v;
}

bool RingElement::is_zero_at_precision() const {
    for (const auto& [e, c] : terms_)
        if (!c.is_zero_at_precision()) return false;
    return true;
}

bool RingElement::equal_at_precision(const RingElement& o) const {
    return (*this - o).is_zero_at_precision();
}

RingElement RingElement::canonical_at_precision() const {
    RingElement r(ctx_, d_, box_e_);
    r.exact_ = exact_;
    for (const auto& [e, c] : terms_) r.insert_term(e, c.canonical_at_precision());
    return r;
}

RingElement RingElement::with_context(const CtxPtr& nctx) const {
    RingElement r(nctx, d_, box_e_);
    r.exact_ = exact_;
    for (const auto& [e, c] : terms_) r.insert_term(e, c.with_context(nctx));
    return r;
}

RingElement RingElement::with_box(long box_e) const {
    RingElement r(ctx_, d_, box_e);
    r.exact_ = exact_;
    for (const auto& [e, c] : terms_) {
        if (!r.in_box_(e)) throw SupportOverflow("term outside the requested box");
        r.insert_term(e, c);
    }
    return r;
}

RingElement RingElement::divide_exact_by_p_pow(long k) const {
    RingElement r(ctx_, d_, box_e_);
    r.exact_ = exact_;
    for (const auto& [e, c] : terms_) r.insert_term(e, c.divide_exact_by_p_pow(k));
    return r;
}

RingElement RingElement::divide_exact(long k) const {
    RingElement r(ctx_, d_, box_e_);
    r.exact_ = exact_;
    for (const auto& [e, c] : terms_) r.insert_term(e, c.divide_exact(k));
    return r;
}

RingElement RingElement::divide_by_zeta_pow_minus_one(long kappa) const {
    RingElement r(ctx_, d_, box_e_);
    r.exact_ = exact_;
    for (const auto& [e, c] : terms_) r.insert_term(e, c.divide_by_zeta_pow_minus_one(kappa));
    return r;
}

RingElement RingElement::inv() const {
    Scalar c0 = constant_part();
    if (!c0.is_unit())
        throw NotAUnit("ring element has no unit constant part; inverse not supported");
    // x = c0 (1 + h) with v(h) >= some positive level: geometric series in h
    Scalar c0i = c0.inv();
    RingElement h = scaled(c0i) - one_like();
    Valuation vh = h.valuation_internal();
    if (!vh.infinite && vh.num <= 0)
        throw NotAUnit("ring element is not of the form unit * (1 + small)");
    RingElement acc = one_like();
    RingElement pow = one_like();
    if (!vh.infinite) {
        // geometric series: enough terms so that k * v(h) >= N + guard
        long steps = ((ctx_->N + ctx_->guard) * vh.den + vh.num - 1) / vh.num + 1;
        for (long k = 1; k <= steps; ++k) {
            pow = pow.mul(h, MulPolicy::strict);
            if (pow.terms().empty()) break;
            acc = (k % 2 == 1) ? acc - pow : acc + pow;
        }
    }
    return acc.scaled(c0i);
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")";
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*T" << (i + 1);
            if (e[i] != (long)ctx_->pm) {
                os << "^(" << e[i];
                if (ctx_->pm != 1) os << "/" << ctx_->pm;
                os << ")";
            }
        }
        first = false;
    }
    return os.str();
}

}  // namespace padic
