#include "padic/zmod_linalg.hpp"

#include "padic/errors.hpp"

namespace padic {

namespace {

mpz_class pow_l(long p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)k);
    return r;
}

long val_p(const mpz_class& x, long p, long cap) {
    if (x == 0) return cap;
    mpz_class tmp, pz = p;
    long v = (long)mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    return v < cap ? v : cap;
}

void mod_all(IntMat& m, const mpz_class& mod) {
    for (auto& x : m.a) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
}

}  // namespace

IntMat mat_mul_mod(const IntMat& x, const IntMat& y, const mpz_class& mod) {
    IntMat r(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            const mpz_class& a = x(i, k);
            if (a == 0) continue;
            for (long j = 0; j < y.cols; ++j) r(i, j) += a * y(k, j);
        }
    mod_all(r, mod);
    return r;
}

SmithResult smith_normal_form(const IntMat& m, long p, long n_prec) {
    const mpz_class mod = pow_l(p, n_prec);
    SmithResult res;
    res.d = m;
    mod_all(res.d, mod);
    res.left = IntMat::identity(m.rows);
    res.right = IntMat::identity(m.cols);
    IntMat& d = res.d;
    IntMat& l = res.left;
    IntMat& r = res.right;

    long nmin = std::min(m.rows, m.cols);
    for (long s = 0; s < nmin; ++s) {
        // pivot: entry of minimal p-valuation in the lower-right block
        long bi = -1, bj = -1, bv = n_prec;
        for (long i = s; i < m.rows; ++i)
            for (long j = s; j < m.cols; ++j) {
                long v = val_p(d(i, j), p, n_prec);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;  // all remaining entries are 0 mod p^N
        if (bi != s)
            for (long j = 0; j < m.cols; ++j) std::swap(d(bi, j), d(s, j));
        if (bi != s)
            for (long j = 0; j < m.rows; ++j) std::swap(l(bi, j), l(s, j));
        if (bj != s)
            for (long i = 0; i < m.rows; ++i) std::swap(d(i, bj), d(i, s));
        if (bj != s)
            for (long i = 0; i < m.cols; ++i) std::swap(r(i, bj), r(i, s));

        // normalize the pivot to p^bv: multiply the row by the inverse of its unit part
        mpz_class pivot = d(s, s);
        mpz_class pv = pow_l(p, bv);
        mpz_class unit = pivot / pv;
        mpz_class uinv;
        if (mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw InternalError("pivot unit part not invertible");
        for (long j = 0; j < m.cols; ++j) {
            d(s, j) = d(s, j) * uinv % mod;
        }
        for (long j = 0; j < m.rows; ++j) l(s, j) = l(s, j) * uinv % mod;

        // eliminate the column and row; all entries are divisible by p^bv
        for (long i = s + 1; i < m.rows; ++i) {
            if (d(i, s) == 0) continue;
            mpz_class f = d(i, s) / pv;
            for (long j = 0; j < m.cols; ++j) {
                d(i, j) -= f * d(s, j);
                mpz_mod(d(i, j).get_mpz_t(), d(i, j).get_mpz_t(), mod.get_mpz_t());
            }
            for (long j = 0; j < m.rows; ++j) {
                l(i, j) -= f * l(s, j);
                mpz_mod(l(i, j).get_mpz_t(), l(i, j).get_mpz_t(), mod.get_mpz_t());
            }
        }
        for (long j = s + 1; j < m.cols; ++j) {
            if (d(s, j) == 0) continue;
            mpz_class f = d(s, j) / pv;
            for (long i = 0; i < m.rows; ++i) {
                d(i, j) -= f * d(i, s);
                mpz_mod(d(i, j).get_mpz_t(), d(i, j).get_mpz_t(), mod.get_mpz_t());
            }
            for (long i = 0; i < m.cols; ++i) {
                r(i, j) -= f * r(i, s);
                mpz_mod(r(i, j).get_mpz_t(), r(i, j).get_mpz_t(), mod.get_mpz_t());
            }
        }
    }
    res.exponents.assign((size_t)nmin, n_prec);
    for (long s = 0; s < nmin; ++s) res.exponents[(size_t)s] = val_p(d(s, s), p, n_prec);
    return res;
}

IntMat kernel_generators(const IntMat& m, long p, long n_prec) {
    // Handle maps out of the zero module explicitly.
    if (m.cols == 0) return IntMat(0, 0);
    if (m.rows == 0) return IntMat::identity(m.cols);
    const mpz_class mod = pow_l(p, n_prec);
    SmithResult s = smith_normal_form(m, p, n_prec);
    // ker(D) is generated by p^(N - e_s) on each diagonal slot (e_s < N) and by
    // full basis vectors beyond the diagonal; pull back through the column ops.
    std::vector<long> gen_cols;
    std::vector<mpz_class> scale;
    long nmin = std::min(m.rows, m.cols);
    for (long j = 0; j < m.cols; ++j) {
        long e = j < nmin ? s.exponents[(size_t)j] : n_prec;
        if (e == 0) continue;  // unit divisor: no kernel contribution
        gen_cols.push_back(j);
        scale.push_back(pow_l(p, n_prec - (e > n_prec ? n_prec : e)));
    }
    IntMat gens(m.cols, (long)gen_cols.size());
    for (size_t t = 0; t < gen_cols.size(); ++t) {
        for (long i = 0; i < m.cols; ++i) {
            gens(i, (long)t) = s.right(i, gen_cols[t]) * scale[t] % mod;
        }
    }
    return gens;
}

std::optional<IntMat> solve_mod(const IntMat& m, const IntMat& b, long p, long n_prec) {
    if (m.rows != b.rows) throw InternalError("solve_mod shape mismatch");
    if (m.cols == 0) {
        for (const auto& x : b.a)
            if (x % pow_l(p, n_prec) != 0) return std::nullopt;
        return IntMat(0, b.cols);
    }
    const mpz_class mod = pow_l(p, n_prec);
    SmithResult s = smith_normal_form(m, p, n_prec);
    IntMat c = mat_mul_mod(s.left, b, mod);  // D y = L b, x = R y
    IntMat y(m.cols, b.cols);
    long nmin = std::min(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i) {
        for (long j = 0; j < b.cols; ++j) {
            if (i >= nmin || s.exponents[(size_t)i] >= n_prec) {
                if (c(i, j) != 0) return std::nullopt;
                continue;
            }
            mpz_class pe = pow_l(p, s.exponents[(size_t)i]);
            if (!mpz_divisible_p(c(i, j).get_mpz_t(), pe.get_mpz_t())) return std::nullopt;
            y(i, j) = c(i, j) / pe;
        }
    }
    return mat_mul_mod(s.right, y, mod);
}

}  // namespace padic
