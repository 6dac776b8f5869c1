#include <map>

#include "padic/correspondence.hpp"

namespace padic {

namespace {

using ClassKey = std::vector<long>;

ClassKey class_of(const ExpVec& e, long pm) {
    ClassKey k(e.size());
    for (size_t i = 0; i < e.size(); ++i) {
        long r = e[i] % pm;
        k[i] = r < 0 ? r + pm : r;
    }
    return k;
}

bool is_zero_class(const ClassKey& k) {
    for (long x : k)
        if (x != 0) return false;
    return true;
}

// splits a Laurent matrix into its toric character components
std::map<ClassKey, LaurentMatrix> split_classes(const LaurentMatrix& m, long pm) {
    std::map<ClassKey, LaurentMatrix> out;
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) {
            for (const auto& [e, c] : m(i, j).terms()) {
                ClassKey key = class_of(e, pm);
                auto it = out.find(key);
                if (it == out.end())
                    it = out.emplace(key, LaurentMatrix::zero(m.rows(), m.cols(), m.exemplar()))
                             .first;
                it->second(i, j).insert_term(e, c);
            }
        }
    return out;
}

LaurentMatrix galois_gen(const LaurentMatrix& m, long j, long d) {
    std::vector<long> gamma((size_t)d, 0);
    gamma[(size_t)j] = 1;
    return m.map([&](const RingElement& e) { return e.galois(gamma); });
}

LaurentMatrix scale_by(const LaurentMatrix& m, const Scalar& s) {
    return m.map([&](const RingElement& e) { return e.scaled(s); });
}

}  // namespace

DescentResult descend_cocycle(const TwistedCocycle& c, const DescentConfig& config) {
    if (!c.multiplicative || c.action.kind != DeltaAction::Kind::toric)
        throw ContextMismatch("descent expects a multiplicative cocycle under the toric action");
    if (c.values.empty() || (long)c.values.size() != c.d)
        throw ContextMismatch("cocycle must provide one value per generator");
    const CtxPtr ctx = c.values[0].exemplar().ctx();
    if (ctx->m < 1) throw ContextMismatch("descent runs at a tower level m >= 1");
    const long n = c.values[0].rows();
    const long d = c.d;
    const long pm = ctx->pm;

    for (long j = 0; j < d; ++j) {
        FiltrationLevel lvl = level_of(c.values[(size_t)j]);
        if (!(lvl.level >= Valuation::of(config.c_min, 1)))
            throw ConvergenceViolation("cocycle value " + std::to_string(j + 1) +
                                       " sits at filtration level " + lvl.str() +
                                       " below c_min = " + std::to_string(config.c_min));
    }

    // exponent box for all working values
    long box = config.box_e;
    if (box <= 0) {
        long max_in = 1;
        for (const auto& v : c.values)
            for (long i = 0; i < n; ++i)
                for (long j2 = 0; j2 < n; ++j2)
                    for (const auto& [e, s] : v(i, j2).terms())
                        for (long x : e) {
                            long mag = (x < 0 ? -x : x) / pm + 1;
                            if (mag > max_in) max_in = mag;
                        }
        box = (max_in + 1) * (ctx->N + ctx->guard + 2);
    }
    auto widen = [&](const LaurentMatrix& m) {
        return m.map([&](const RingElement& e) { return e.with_box(box); });
    };
    std::vector<LaurentMatrix> cval;
    for (const auto& v : c.values) cval.push_back(widen(v));
    RingElement ex = cval[0].exemplar().zero_like();

    LaurentMatrix b = LaurentMatrix::identity(n, ex);
    std::vector<LaurentMatrix> phi((size_t)d, LaurentMatrix::identity(n, ex));

    DescentResult res;
    Valuation prev_level = Valuation::of(0, 1);
    long iter = 0;
    for (iter = 1; iter <= config.max_iters; ++iter) {
        LaurentMatrix binv = inverse(b);
        std::vector<LaurentMatrix> r;
        Valuation s = Valuation::infinity();
        for (long j = 0; j < d; ++j) {
            LaurentMatrix rj = binv * cval[(size_t)j] * galois_gen(b, j, d) *
                               inverse(phi[(size_t)j]);
            Valuation lv = level_of(rj).level;
            if (lv < s) s = lv;
            r.push_back(std::move(rj));
        }

        DescentTraceEntry entry;
        entry.step = iter;
        entry.discrepancy_level = s;
        entry.precision_remaining = s.infinite ? ctx->N : std::min(ctx->N, s.num / s.den);

        if (s.infinite) {  // identity holds at full precision N
            res.trace.push_back(entry);
            break;
        }
        if (!(s > prev_level) && iter > 1) {
            // no progress; finish if we already hold >= 1 digit, else stall
            res.trace.push_back(entry);
            if (s.num / s.den < 1)
                throw DescentStalled(iter, "descent stalled at discrepancy level " + s.str());
            break;
        }
        prev_level = s;

        // linearize and split by character
        std::vector<std::map<ClassKey, LaurentMatrix>> blocks;
        std::vector<LaurentMatrix> d0((size_t)d, LaurentMatrix::zero(n, n, ex));
        for (long j = 0; j < d; ++j) {
            LaurentMatrix dj = matrix_log(r[(size_t)j]);
            auto cls = split_classes(dj, pm);
            auto it = cls.find(ClassKey((size_t)d, 0));
            if (it != cls.end()) {
                d0[(size_t)j] = it->second;
                cls.erase(it);
            }
            for (const auto& [key, mat] : cls)
                entry.blocks.push_back(DescentBlockNorm{key, mat.min_valuation()});
            blocks.push_back(std::move(cls));
        }
        entry.precision_remaining = ctx->N;
        res.trace.push_back(entry);

        // gauge update: per nonzero class, solve (zeta^kappa Ad(phi_j) - 1) a = -D
        LaurentMatrix a_total = LaurentMatrix::zero(n, n, ex);
        std::map<ClassKey, bool> seen;
        for (long j = 0; j < d; ++j) {
            for (const auto& [key, target_raw] : blocks[(size_t)j]) {
                if (seen.count(key)) continue;
                // solve with the first nontrivially-pairing generator that sees
                // the block; if only non-pairing generators see it, the cocycle
                // law forces it below the torsion tolerance and it can wait
                long jstar = -1;
                for (long t = 0; t < d; ++t)
                    if (key[(size_t)t] % pm != 0 && blocks[(size_t)t].count(key)) {
                        jstar = t;
                        break;
                    }
                if (jstar < 0) continue;
                auto itt = blocks[(size_t)jstar].find(key);
                seen[key] = true;
                const LaurentMatrix& dblock = itt->second;
                long kappa = key[(size_t)jstar];
                Scalar zk = Scalar::zeta(ctx, kappa);
                LaurentMatrix phin = phi[(size_t)jstar];
                LaurentMatrix phin_inv = inverse(phin);
                LaurentMatrix target = -dblock;
                LaurentMatrix a = LaurentMatrix::zero(n, n, ex);
                try {
                    LaurentMatrix resid = target;
                    for (long inner = 0; inner < 4 * (ctx->N + ctx->guard) + 8; ++inner) {
                        if (resid.min_valuation_internal().infinite) break;
                        LaurentMatrix step = resid.map([&](const RingElement& e) {
                            return e.divide_by_zeta_pow_minus_one(kappa);
                        });
                        a = a + step;
                        LaurentMatrix oa = scale_by(phin * a * phin_inv, zk) - a;
                        resid = target - oa;
                    }
                } catch (const InternalError&) {
                    std::string block;
                    for (long x : key) block += (block.empty() ? "" : ",") + std::to_string(x);
                    throw DescentStalled(iter, "obstruction in character block (" + block +
                                                   ") not killed by p^gamma_tors at step " +
                                                   std::to_string(iter));
                }
                a_total = a_total + a;
            }
        }

        if (!a_total.is_zero_at_precision() || !a_total.min_valuation_internal().infinite) {
            LaurentMatrix beta;
            try {
                beta = matrix_exp(a_total);
            } catch (const ConvergenceViolation&) {
                throw DescentStalled(iter, "gauge correction left the exponential radius at step " +
                                               std::to_string(iter));
            }
            b = b * beta;
        }

        // invariant update: push the class-0 component into the homomorphism
        for (long j = 0; j < d; ++j) {
            if (d0[(size_t)j].is_zero_at_precision() &&
                d0[(size_t)j].min_valuation_internal().infinite)
                continue;
            phi[(size_t)j] = matrix_exp(d0[(size_t)j]) * phi[(size_t)j];
        }
    }

    // final level decides the certified output precision
    LaurentMatrix binv = inverse(b);
    Valuation s = Valuation::infinity();
    for (long j = 0; j < d; ++j) {
        LaurentMatrix rj =
            binv * cval[(size_t)j] * galois_gen(b, j, d) * inverse(phi[(size_t)j]);
        Valuation lv = level_of(rj).level;
        if (lv < s) s = lv;
    }
    long n_out = s.infinite ? ctx->N : std::min(ctx->N, s.num / s.den);
    if (n_out < 1) throw PrecisionExhausted("descent finished with no certified digits");

    res.precision_out = n_out;
    res.reduced_ctx = PrecisionContext::make(ctx->p, ctx->m, n_out);
    std::vector<LaurentMatrix> images;
    for (long j = 0; j < d; ++j)
        images.push_back(
            phi[(size_t)j].map([&](const RingElement& e) { return e.with_context(res.reduced_ctx); }));
    res.rep = validate_rep(images);
    res.gauge = b.canonical_at_precision();
    return res;
}

}  // namespace padic
