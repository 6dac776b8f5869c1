#include "padic/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <thread>

namespace padic {

std::vector<std::vector<long>> index_subsets(long d, long k) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    // lexicographic enumeration of increasing k-tuples from {1..d}
    std::function<void(long)> rec = [&](long start) {
        if ((long)cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (long v = start; v <= d; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

namespace {

long binom(long d, long k) {
    if (k < 0 || k > d) return 0;
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (d - i) / (i + 1);
    return r;
}

long subset_position(const std::vector<std::vector<long>>& subsets, const std::vector<long>& s) {
    auto it = std::lower_bound(subsets.begin(), subsets.end(), s);
    return (long)(it - subsets.begin());
}

}  // namespace

ChainComplex complex_from_operators(const std::vector<ScalarMatrix>& ops, long module_rank) {
    if (ops.empty()) throw ContextMismatch("complex needs at least one operator");
    const long d = (long)ops.size();
    const long n = module_rank;
    const CtxPtr ctx = ops[0](0, 0).ctx();
    ChainComplex c;
    c.ctx = ctx;
    c.d = d;
    c.n = n;
    for (long k = 0; k <= d; ++k) c.ranks.push_back(n * binom(d, k));
    for (long k = 0; k < d; ++k) {
        auto src = index_subsets(d, k);
        auto dst = index_subsets(d, k + 1);
        ScalarMatrix dk = ScalarMatrix::zero(c.ranks[(size_t)k + 1], c.ranks[(size_t)k],
                                             Scalar::zero(ctx));
        for (long sc = 0; sc < (long)src.size(); ++sc) {
            const auto& S = src[(size_t)sc];
            for (long j = 1; j <= d; ++j) {
                if (std::find(S.begin(), S.end(), j) != S.end()) continue;
                std::vector<long> T = S;
                // appended index sorted in with the sign of the permutation
                long greater = (long)std::count_if(S.begin(), S.end(),
                                                   [&](long x) { return x > j; });
                T.push_back(j);
                std::sort(T.begin(), T.end());
                long tr = subset_position(dst, T);
                bool negative = greater % 2 == 1;
                const ScalarMatrix& op = ops[(size_t)j - 1];
                for (long a = 0; a < n; ++a)
                    for (long b = 0; b < n; ++b) {
                        Scalar v = op(a, b);
                        if (negative) v = -v;
                        dk(tr * n + a, sc * n + b) += v;
                    }
            }
        }
        c.diffs.push_back(std::move(dk));
    }
    // d o d = 0 is a theorem of this construction for commuting operators;
    // check it exactly anyway
    for (long k = 0; k + 1 < d; ++k) {
        if (!(c.diffs[(size_t)k + 1] * c.diffs[(size_t)k]).is_zero_at_precision())
            throw InternalError("chain complex differentials do not compose to zero");
    }
    return c;
}

ChainComplex koszul_complex(const ScalarRep& rho, long module_rank) {
    if (module_rank != rho.dim())
        throw ContextMismatch("module rank must match the representation dimension");
    std::vector<ScalarMatrix> ops;
    for (const auto& g : rho.images)
        ops.push_back(g - ScalarMatrix::identity(g.rows(), g.exemplar()));
    return complex_from_operators(ops, module_rank);
}

ChainComplex higgs_complex(const ScalarHiggs& theta, long module_rank) {
    if (module_rank != theta.dim())
        throw ContextMismatch("module rank must match the Higgs field dimension");
    return complex_from_operators(theta.coefficients, module_rank);
}

ChainComplex koszul_complex(const LaurentRep& rho, long module_rank) {
    std::vector<ScalarMatrix> images;
    for (const auto& g : rho.images) {
        for (long i = 0; i < g.rows(); ++i)
            for (long j = 0; j < g.cols(); ++j)
                if (!g(i, j).is_constant())
                    throw UnsupportedRing(
                        "homology needs chain-ring coefficients; entry is a genuine "
                        "Laurent element");
        images.push_back(g.map([](const RingElement& e) { return e.constant_part(); }));
    }
    return koszul_complex(ScalarRep{rho.d, images}, module_rank);
}

namespace {

// f(x) = sum_{w>=1} (-1)^(w+1) x^(w-1)/w evaluated on h = rho(gamma)-1
ScalarMatrix u_factor(const ScalarMatrix& h) {
    const CtxPtr ctx = h(0, 0).ctx();
    Valuation v = h.min_valuation();
    if (!v.infinite && !(v >= Valuation::of(1, 1)))
        throw ConvergenceViolation("comparison map requires a small representation");
    const long target = ctx->N + ctx->guard;
    long wmax = detail::log_truncation(ctx->p, target) + 1;
    ScalarMatrix acc = ScalarMatrix::zero(h.rows(), h.cols(), h.exemplar());
    ScalarMatrix pow = ScalarMatrix::identity(h.rows(), h.exemplar());
    for (long w = 1; w <= wmax; ++w) {
        ScalarMatrix term = pow.divide_exact(w);
        acc = (w % 2 == 1) ? acc + term : acc - term;
        pow = pow * h;
        if (pow.min_valuation_internal().infinite) break;
    }
    return acc.canonical_at_precision();
}

}  // namespace

ChainMap comparison_map(const ScalarRep& rho) {
    const long d = rho.d;
    const long n = rho.dim();
    const CtxPtr ctx = rho.images[0](0, 0).ctx();
    std::vector<ScalarMatrix> factors;
    for (const auto& g : rho.images)
        factors.push_back(u_factor(g - ScalarMatrix::identity(n, g.exemplar())));
    ChainMap u;
    for (long k = 0; k <= d; ++k) {
        auto subsets = index_subsets(d, k);
        long rank = (long)subsets.size() * n;
        ScalarMatrix uk = ScalarMatrix::zero(rank, rank, Scalar::zero(ctx));
        for (long sidx = 0; sidx < (long)subsets.size(); ++sidx) {
            ScalarMatrix block = ScalarMatrix::identity(n, Scalar::zero(ctx));
            for (long j : subsets[(size_t)sidx]) block = block * factors[(size_t)j - 1];
            FiltrationLevel lvl = level_of(block);
            if (!(lvl.level >= Valuation::of(1, 1)) && !lvl.level.infinite)
                throw InternalError("comparison factor is not a unit");
            for (long a = 0; a < n; ++a)
                for (long b = 0; b < n; ++b) uk(sidx * n + a, sidx * n + b) = block(a, b);
        }
        u.maps.push_back(std::move(uk));
    }
    return u;
}

bool chain_map_commutes(const ChainComplex& grp, const ChainComplex& higgs, const ChainMap& u) {
    if (grp.d != higgs.d || (long)u.maps.size() != grp.d + 1) return false;
    for (long k = 0; k < grp.d; ++k) {
        ScalarMatrix lhs = u.maps[(size_t)k + 1] * grp.diffs[(size_t)k];
        ScalarMatrix rhs = higgs.diffs[(size_t)k] * u.maps[(size_t)k];
        if (!lhs.equal_at_precision(rhs)) return false;
    }
    return true;
}

namespace {

// restriction of scalars: Matrix<Scalar> (r x c) -> integer matrix (r phi x c phi)
IntMat restrict_scalars(const ScalarMatrix& m, const CtxPtr& ctx) {
    const long phi = ctx->phi;
    IntMat out(m.rows() * phi, m.cols() * phi);
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) {
            const Scalar& s = m(i, j);
            for (long col = 0; col < phi; ++col) {
                Scalar sc = ctx->m == 0 ? s : s * Scalar::zeta(s.ctx(), col);
                Scalar red = sc.canonical_at_precision();
                for (long row = 0; row < phi; ++row) {
                    mpz_class v = red.coeffs()[(size_t)row];
                    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), ctx->modulus_n.get_mpz_t());
                    out(i * phi + row, j * phi + col) = v;
                }
            }
        }
    return out;
}

// multiplication by pi = zeta - 1 on the restricted-scalar column space
IntMat pi_action(const CtxPtr& ctx, long rank) {
    Scalar pi = Scalar::zeta(ctx, 1) - Scalar::one(ctx);
    ScalarMatrix one = ScalarMatrix::identity(rank, Scalar::zero(ctx));
    return restrict_scalars(one.scaled(pi), ctx);
}

DegreeReport degree_report(long degree, const IntMat& dk, const IntMat& dkm1, const CtxPtr& ctx,
                           bool with_pi) {
    const long p = ctx->p;
    const long N = ctx->N;
    IntMat kergens = kernel_generators(dk, p, N);
    DegreeReport rep;
    rep.degree = degree;
    if (kergens.cols == 0) return rep;

    // express the image inside the kernel: kergens * W = dkm1
    IntMat w;
    if (dkm1.cols > 0) {
        auto sol = solve_mod(kergens, dkm1, p, N);
        if (!sol) throw InternalError("image does not land in the kernel");
        w = *sol;
    } else {
        w = IntMat(kergens.cols, 0);
    }
    // relations of the generating map x -> kergens x
    IntMat kerrel = kernel_generators(kergens, p, N);
    IntMat pres(kergens.cols, w.cols + kerrel.cols);
    for (long i = 0; i < kergens.cols; ++i) {
        for (long j = 0; j < w.cols; ++j) pres(i, j) = w(i, j);
        for (long j = 0; j < kerrel.cols; ++j) pres(i, w.cols + j) = kerrel(i, j);
    }
    SmithResult snf = smith_normal_form(pres, p, N);
    long nmin = std::min(pres.rows, pres.cols);
    std::vector<long> divisors;
    for (long i = 0; i < kergens.cols; ++i) {
        // generator i contributes the summand R / p^(e_i); rows beyond the
        // relations are unconstrained and give full (free) summands
        long e = i < nmin ? std::min(snf.exponents[(size_t)i], N) : N;
        if (e > 0) divisors.push_back(e);
    }
    std::sort(divisors.begin(), divisors.end());
    for (long e : divisors) {
        if (e >= N)
            rep.free_rank += 1;
        else
            rep.torsion_exponents.push_back(e);
    }
    rep.annihilator_exp = divisors.empty() ? 0 : divisors.back();

    if (with_pi && ctx->m >= 1) {
        // smallest w with pi^w * (every homology generator) inside the image
        IntMat pi_mat = pi_action(ctx, dk.cols / ctx->phi);
        mpz_class mod = ctx->modulus_n;
        IntMat target = kergens;
        long wv = 0;
        long cap = ctx->ram * N;
        while (wv < cap) {
            bool inside = true;
            if (dkm1.cols == 0) {
                for (const auto& x : target.a)
                    if (x % mod != 0) inside = false;
            } else {
                if (!solve_mod(dkm1, target, ctx->p, N)) inside = false;
            }
            if (inside) break;
            target = mat_mul_mod(pi_mat, target, mod);
            ++wv;
        }
        rep.pi_annihilator = wv;
    }
    return rep;
}

}  // namespace

CohomologyReport compute_cohomology(const ChainComplex& c, bool with_pi_annihilator) {
    const CtxPtr& ctx = c.ctx;
    CohomologyReport rep;
    std::vector<IntMat> diffs;
    for (const auto& d : c.diffs) diffs.push_back(restrict_scalars(d, ctx));
    const long phi = ctx->phi;
    for (long k = 0; k <= c.d; ++k) {
        IntMat dk = k < c.d ? diffs[(size_t)k] : IntMat(0, c.ranks[(size_t)k] * phi);
        IntMat dkm1 = k > 0 ? diffs[(size_t)k - 1] : IntMat(c.ranks[0] * phi, 0);
        rep.degrees.push_back(degree_report(k, dk, dkm1, ctx, with_pi_annihilator));
    }
    // Euler characteristic consistency: alternating sum of homology lengths
    // equals the alternating sum of module lengths
    long lhs = 0, rhs = 0, sign = 1;
    for (long k = 0; k <= c.d; ++k) {
        lhs += sign * rep.degrees[(size_t)k].length(ctx->N);
        rhs += sign * c.ranks[(size_t)k] * phi * ctx->N;
        sign = -sign;
    }
    if (lhs != rhs) throw InternalError("Euler characteristic mismatch in homology computation");
    return rep;
}

std::vector<std::pair<CharacterIndex, ChainComplex>> character_blocks(const ScalarRep& rho,
                                                                      long tower_level,
                                                                      long module_rank) {
    const CtxPtr ctx = rho.images[0](0, 0).ctx();
    if (ctx->m < tower_level)
        throw ContextMismatch("character blocks need a context of cyclotomic level >= m");
    long pm = 1;
    for (long i = 0; i < tower_level; ++i) pm *= ctx->p;
    long count = 1;
    for (long i = 0; i < rho.d; ++i) count *= pm;

    std::vector<CharacterIndex> chars;
    for (long idx = 0; idx < count; ++idx) {
        CharacterIndex ci;
        ci.denominator = pm;
        long rest = idx;
        for (long j = 0; j < rho.d; ++j) {
            ci.numerators.push_back(rest % pm);
            rest /= pm;
        }
        chars.push_back(std::move(ci));
    }

    long shift = 1;
    for (long i = 0; i < ctx->m - tower_level; ++i) shift *= ctx->p;

    auto build = [&](const CharacterIndex& ci) {
        std::vector<ScalarMatrix> ops;
        for (long j = 0; j < rho.d; ++j) {
            const ScalarMatrix& g = rho.images[(size_t)j];
            ScalarMatrix twisted = g;
            long num = ci.numerators[(size_t)j];
            if (num != 0) twisted = g.scaled(Scalar::zeta(ctx, num * shift));
            ops.push_back(twisted - ScalarMatrix::identity(g.rows(), g.exemplar()));
        }
        return complex_from_operators(ops, module_rank);
    };

    // blocks are independent; compute them with a bounded parallel map and
    // merge in index order
    std::vector<std::pair<CharacterIndex, ChainComplex>> out((size_t)count);
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> waits;
    std::atomic<long> next{0};
    for (unsigned t = 0; t < std::min<unsigned>(hw, (unsigned)count); ++t) {
        waits.push_back(std::async(std::launch::async, [&]() {
            while (true) {
                long i = next.fetch_add(1);
                if (i >= count) break;
                out[(size_t)i] = {chars[(size_t)i], build(chars[(size_t)i])};
            }
        }));
    }
    for (auto& w : waits) w.get();
    return out;
}

}  // namespace padic
