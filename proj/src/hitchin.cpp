#include "padic/hitchin.hpp"

namespace padic {

std::vector<RingElement> char_poly(const LaurentMatrix& m) {
    if (!m.square()) throw ContextMismatch("characteristic polynomial of a non-square matrix");
    const long n = m.rows();
    RingElement zero = m.exemplar().zero_like();
    RingElement one = m.exemplar().one_like();
    std::vector<RingElement> c = {one};
    for (long r = 1; r <= n; ++r) {
        // Toeplitz column of the r-th principal block: t0 = 1, t1 = -a,
        // t_k = -(row . B^(k-2) . col) for the bordering row/column of B
        std::vector<RingElement> t((size_t)r + 1, zero);
        t[0] = one;
        t[1] = -m(r - 1, r - 1);
        if (r >= 2) {
            std::vector<RingElement> vec((size_t)r - 1, zero);
            for (long i = 0; i < r - 1; ++i) vec[(size_t)i] = m(i, r - 1);
            for (long k = 2; k <= r; ++k) {
                RingElement dot = zero;
                for (long i = 0; i < r - 1; ++i) dot += m(r - 1, i) * vec[(size_t)i];
                t[(size_t)k] = -dot;
                if (k < r) {
                    std::vector<RingElement> nxt((size_t)r - 1, zero);
                    for (long i = 0; i < r - 1; ++i)
                        for (long j = 0; j < r - 1; ++j)
                            nxt[(size_t)i] += m(i, j) * vec[(size_t)j];
                    vec = std::move(nxt);
                }
            }
        }
        std::vector<RingElement> next((size_t)r + 1, zero);
        for (long i = 0; i <= r; ++i)
            for (long j = 0; j < (long)c.size() && j <= i; ++j)
                next[(size_t)i] += t[(size_t)(i - j)] * c[(size_t)j];
        c = std::move(next);
    }
    return c;
}

HitchinPoint hitchin_map(const ScalarHiggs& theta) {
    const long n = theta.dim();
    const long d = theta.d;
    const CtxPtr ctx = theta.coefficients[0](0, 0).ctx();
    const long box = n + 1;
    RingElement zero(ctx, d, box);
    LaurentMatrix m = LaurentMatrix::zero(n, n, zero);
    for (long i = 0; i < d; ++i) {
        ExpVec e((size_t)d, 0);
        e[(size_t)i] = ctx->pm;  // delta_i as an integer-exponent variable
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                m(a, b).insert_term(e, theta.coefficients[(size_t)i](a, b));
    }
    std::vector<RingElement> c = char_poly(m);
    HitchinPoint h;
    h.n = n;
    h.d = d;
    for (long k = 1; k <= n; ++k) {
        const RingElement& ak = c[(size_t)k];
        // homogeneity of degree k and the smallness inheritance v(a_k) >= k
        for (const auto& [e, s] : ak.terms()) {
            long deg = 0;
            for (long x : e) deg += x / ctx->pm;
            if (deg != k && !s.is_zero_at_precision())
                throw InternalError("Hitchin coefficient is not homogeneous");
        }
        Valuation v = ak.valuation();
        if (!(v >= Valuation::of(k, 1)) && !v.infinite)
            throw InternalError("Hitchin coefficient violates the smallness bound");
        h.coefficients.push_back(ak);
    }
    return h;
}

HitchinPoint hitchin_product(const HitchinPoint& h1, const HitchinPoint& h2) {
    if (h1.n == 0) return h2;
    if (h2.n == 0) return h1;
    if (h1.d != h2.d) throw ContextMismatch("Hitchin points have different variable counts");
    const CtxPtr ctx = h1.coefficients[0].ctx();
    require_same_ctx(ctx, h2.coefficients[0].ctx());
    const long n = h1.n + h2.n;
    const long box = n + 1;
    auto widen = [&](const RingElement& e) { return e.with_box(box); };
    RingElement one = RingElement::constant(ctx, h1.d, box, Scalar::one(ctx));
    auto coeff = [&](const HitchinPoint& h, long k) {
        if (k == 0) return one;
        return widen(h.coefficients[(size_t)k - 1]);
    };
    HitchinPoint out;
    out.n = n;
    out.d = h1.d;
    for (long k = 1; k <= n; ++k) {
        RingElement acc(ctx, h1.d, box);
        for (long i = 0; i <= k; ++i) {
            if (i > h1.n || k - i > h2.n) continue;
            acc += coeff(h1, i) * coeff(h2, k - i);
        }
        out.coefficients.push_back(acc);
    }
    return out;
}

HitchinPoint betti_hitchin(const ScalarRep& rho) { return hitchin_map(rep_to_higgs(rho)); }

bool hitchin_equal(const HitchinPoint& a, const HitchinPoint& b) {
    if (a.n != b.n || a.d != b.d) return false;
    for (long k = 0; k < a.n; ++k) {
        RingElement x = a.coefficients[(size_t)k];
        RingElement y = b.coefficients[(size_t)k];
        long box = std::max(x.box(), y.box());
        if (!x.with_box(box).equal_at_precision(y.with_box(box))) return false;
    }
    return true;
}

}  // namespace padic
