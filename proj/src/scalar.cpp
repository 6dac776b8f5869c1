#include "padic/scalar.hpp"

#include <sstream>

namespace padic {

std::string Valuation::str() const {
    if (infinite) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Scalar::Scalar(CtxPtr ctx, const mpz_class& value) : ctx_(std::move(ctx)) {
    coeffs_.assign((size_t)ctx_->phi, mpz_class(0));
    coeffs_[0] = value;
    reduce_();
}

Scalar Scalar::zero(const CtxPtr& ctx) { return Scalar(ctx, 0); }
Scalar Scalar::one(const CtxPtr& ctx) { return Scalar(ctx, 1); }

Scalar Scalar::from_coeffs(CtxPtr ctx, std::vector<mpz_class> coeffs) {
    Scalar s;
    s.ctx_ = std::move(ctx);
    coeffs.resize((size_t)s.ctx_->phi, mpz_class(0));
    s.coeffs_ = std::move(coeffs);
    s.reduce_();
    return s;
}

Scalar Scalar::zeta(const CtxPtr& ctx, long power) {
    return from_coeffs(ctx, ctx->zeta_pow(power));
}

void Scalar::reduce_() {
    for (auto& c : coeffs_) {
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), ctx_->modulus.get_mpz_t());
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    Scalar r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    r.reduce_();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    Scalar r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    r.reduce_();
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    r.reduce_();
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    const long phi = ctx_->phi;
    if (phi == 1) {
        Scalar r;
        r.ctx_ = ctx_;
        r.coeffs_.resize(1);
        r.coeffs_[0] = coeffs_[0] * o.coeffs_[0];
        r.reduce_();
        return r;
    }
    std::vector<mpz_class> prod((size_t)(2 * phi - 1), mpz_class(0));
    for (long i = 0; i < phi; ++i) {
        if (coeffs_[(size_t)i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (o.coeffs_[(size_t)j] == 0) continue;
            prod[(size_t)(i + j)] += coeffs_[(size_t)i] * o.coeffs_[(size_t)j];
        }
    }
    // reduce degrees >= phi via x^phi = -(1 + x^q + ... + x^{(p-2)q}), q = p^(m-1)
    const long q = ctx_->pm / ctx_->p;
    for (long k = 2 * phi - 2; k >= phi; --k) {
        if (prod[(size_t)k] == 0) continue;
        mpz_class c = prod[(size_t)k];
        prod[(size_t)k] = 0;
        for (long j = 0; j <= ctx_->p - 2; ++j) prod[(size_t)(k - phi + j * q)] -= c;
    }
    prod.resize((size_t)phi);
    return from_coeffs(ctx_, std::move(prod));
}

Scalar operator*(const mpz_class& k, const Scalar& s) {
    std::vector<mpz_class> c = s.coeffs();
    for (auto& x : c) x *= k;
    return Scalar::from_coeffs(s.ctx(), std::move(c));
}

bool Scalar::is_unit() const {
    // residue in F_p is the image under zeta -> 1, i.e. the coefficient sum mod p
    mpz_class sum = 0;
    for (const auto& c : coeffs_) sum += c;
    return mpz_divisible_p(sum.get_mpz_t(), ctx_->p_mpz.get_mpz_t()) == 0;
}

Scalar Scalar::inv() const {
    if (!is_unit()) throw NotAUnit("scalar has positive valuation, no inverse");
    // lift the F_p inverse: x <- x(2 - a x); the defect 1 - a x lives in the
    // maximal ideal, which is nilpotent here, so the iteration terminates.
    mpz_class sum = 0;
    for (const auto& c : coeffs_) sum += c;
    mpz_class inv0;
    if (mpz_invert(inv0.get_mpz_t(), sum.get_mpz_t(), ctx_->modulus.get_mpz_t()) == 0)
        throw NotAUnit("scalar not invertible at working precision");
    Scalar x(ctx_, inv0);
    Scalar two(ctx_, 2);
    for (int iter = 0; iter < 64; ++iter) {
        Scalar prod = (*this) * x;
        bool done = true;
        for (size_t i = 0; i < prod.coeffs_.size(); ++i) {
            if (prod.coeffs_[i] != (i == 0 ? mpz_class(1) : mpz_class(0))) {
                done = false;
                break;
            }
        }
        if (done) return x;
        x = x * (two - prod);
    }
    throw InternalError("unit inversion failed to converge");
}

Scalar Scalar::divide_exact_by_p_pow(long k) const {
    if (k == 0) return *this;
    const mpz_class& pk = ctx_->p_pow(k);
    Scalar r = *this;
    for (auto& c : r.coeffs_) {
        if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t()))
            throw InternalError("exact division by p^" + std::to_string(k) +
                                " failed; guard digits exhausted");
        c /= pk;
    }
    return r;
}

Scalar Scalar::divide_exact(long k) const {
    if (k == 1) return *this;
    long j = 0;
    long u = k;
    while (u % ctx_->p == 0) {
        u /= ctx_->p;
        ++j;
    }
    Scalar r = divide_exact_by_p_pow(j);
    if (u != 1) r = r * Scalar(ctx_, u).inv();
    return r;
}

Scalar Scalar::divide_by_zeta_pow_minus_one(long kappa) const {
    long k = kappa % ctx_->pm;
    if (k < 0) k += ctx_->pm;
    if (k == 0) throw InternalError("divide_by_zeta_pow_minus_one with kappa = 0");
    // zeta^k is a primitive p^(m')-th root with m' = m - v_p(k); the product of
    // (zeta^(k j) - 1) over j in (Z/p^(m'))^* equals p, so dividing by
    // (zeta^k - 1) is multiplication by the remaining conjugates followed by /p.
    long pm_prime = ctx_->pm;
    long kk = k;
    while (kk % ctx_->p == 0) {
        kk /= ctx_->p;
        pm_prime /= ctx_->p;
    }
    Scalar g = one(ctx_);
    for (long j = 2; j < pm_prime; ++j) {
        if (j % ctx_->p == 0) continue;
        // conjugate zeta^(k j) - 1
        Scalar conj = zeta(ctx_, k * (j % pm_prime)) - one(ctx_);
        g = g * conj;
    }
    Scalar num = (*this) * g;
    return num.divide_exact_by_p_pow(1);
}

namespace {

// pi-adic valuation of the canonical representative, in units of ram (so that
// v(p) = ram). Returns ram * (N + guard) or more when zero at working precision.
long raw_pi_valuation(const PrecisionContext& ctx, const std::vector<mpz_class>& coeffs) {
    const long total = ctx.N + ctx.guard;
    if (ctx.m == 0) {
        const mpz_class& c = coeffs[0];
        if (c == 0) return total + 1;
        mpz_class tmp;
        long v = (long)mpz_remove(tmp.get_mpz_t(), c.get_mpz_t(), ctx.p_mpz.get_mpz_t());
        return v;
    }
    // convert to the pi = (zeta - 1) basis by a Taylor shift x -> y + 1, then
    // v_pi = min_i (ram * v_p(c_i) + i); the minimum is attained uniquely since
    // the candidates are pairwise distinct mod ram.
    std::vector<mpz_class> c = coeffs;
    const long n = (long)c.size();
    for (long i = 0; i < n - 1; ++i)
        for (long j = n - 2; j >= i; --j) c[(size_t)j] += c[(size_t)j + 1];
    long best = ctx.ram * (total + 1);
    for (long i = 0; i < n; ++i) {
        if (c[(size_t)i] == 0) continue;
        mpz_class r;
        mpz_mod(r.get_mpz_t(), c[(size_t)i].get_mpz_t(), ctx.modulus.get_mpz_t());
        if (r == 0) continue;
        mpz_class tmp;
        long vp = (long)mpz_remove(tmp.get_mpz_t(), r.get_mpz_t(), ctx.p_mpz.get_mpz_t());
        long cand = ctx.ram * vp + i;
        if (cand < best) best = cand;
    }
    return best;
}

}  // namespace

Valuation Scalar::valuation() const {
    long raw = raw_pi_valuation(*ctx_, coeffs_);
    if (raw >= ctx_->ram * ctx_->N) return Valuation::infinity();
    return Valuation::of(raw, ctx_->ram);
}

Valuation Scalar::valuation_internal() const {
    long raw = raw_pi_valuation(*ctx_, coeffs_);
    if (raw >= ctx_->ram * (ctx_->N + ctx_->guard)) return Valuation::infinity();
    return Valuation::of(raw, ctx_->ram);
}

bool Scalar::is_zero_at_precision() const {
    for (const auto& c : coeffs_)
        if (!mpz_divisible_p(c.get_mpz_t(), ctx_->modulus_n.get_mpz_t())) return false;
    return true;
}

bool Scalar::equal_at_precision(const Scalar& o) const {
    require_same_ctx(ctx_, o.ctx_);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        mpz_class d = coeffs_[i] - o.coeffs_[i];
        if (!mpz_divisible_p(d.get_mpz_t(), ctx_->modulus_n.get_mpz_t())) return false;
    }
    return true;
}

Scalar Scalar::canonical_at_precision() const {
    Scalar r = *this;
    for (auto& c : r.coeffs_) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), ctx_->modulus_n.get_mpz_t());
    return r;
}

Scalar Scalar::with_context(const CtxPtr& nctx) const {
    if (nctx->p != ctx_->p || nctx->m != ctx_->m)
        throw ContextMismatch("with_context cannot change p or the cyclotomic level");
    std::vector<mpz_class> c = coeffs_;
    for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), nctx->modulus_n.get_mpz_t());
    return from_coeffs(nctx, std::move(c));
}

std::string Scalar::str() const {
    Scalar c = canonical_at_precision();
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i < (long)c.coeffs_.size(); ++i) {
        if (c.coeffs_[(size_t)i] == 0) continue;
        if (!first) os << " + ";
        os << c.coeffs_[(size_t)i].get_str();
        if (i == 1) os << "*z";
        if (i > 1) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace padic
