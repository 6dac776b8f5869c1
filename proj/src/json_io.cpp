#include "padic/json_io.hpp"

#include <numeric>

namespace padic {

namespace {

mpz_class mpz_from_json(const Json& j) {
    if (j.is_number_integer()) return mpz_class((long)j.get<long long>());
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw MalformedJob("expected an integer or a decimal string");
}

long long_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw MalformedJob(std::string("expected a small integer for ") + what);
    return (long)j.get<long long>();
}

}  // namespace

Json ctx_to_json(const CtxPtr& ctx) {
    Json j;
    j["p"] = ctx->p;
    j["m"] = ctx->m;
    j["N"] = ctx->N;
    return j;
}

CtxPtr ctx_from_json(const Json& j, std::optional<long> guard_override) {
    if (!j.is_object() || !j.contains("p") || !j.contains("N"))
        throw MalformedJob("context needs at least p and N");
    long p = long_from_json(j.at("p"), "p");
    long m = j.contains("m") ? long_from_json(j.at("m"), "m") : 0;
    long N = long_from_json(j.at("N"), "N");
    std::optional<long> guard = guard_override;
    if (j.contains("guard")) guard = long_from_json(j.at("guard"), "guard");
    try {
        return PrecisionContext::make(p, m, N, guard);
    } catch (const ContextMismatch& e) {
        throw MalformedJob(std::string("bad context: ") + e.what());
    }
}

Json scalar_coeffs_json(const Scalar& s) {
    Json arr = Json::array();
    Scalar c = s.canonical_at_precision();
    for (const auto& x : c.coeffs()) arr.push_back(x.get_str());
    return arr;
}

Json scalar_to_json(const Scalar& s) {
    Json j = ctx_to_json(s.ctx());
    j["coeffs"] = scalar_coeffs_json(s);
    return j;
}

Scalar scalar_from_json(const Json& j, const CtxPtr& ctx) {
    if (j.is_string() || j.is_number_integer()) return Scalar(ctx, mpz_from_json(j));
    if (j.is_array()) {
        std::vector<mpz_class> coeffs;
        for (const auto& x : j) coeffs.push_back(mpz_from_json(x));
        if ((long)coeffs.size() > ctx->phi)
            throw MalformedJob("scalar coefficient vector longer than phi(p^m)");
        return Scalar::from_coeffs(ctx, std::move(coeffs));
    }
    if (j.is_object() && j.contains("coeffs")) {
        CtxPtr own = ctx_from_json(j);
        if (!own->same_ring_as(*ctx))
            throw MalformedJob("scalar context disagrees with the job context");
        return scalar_from_json(j.at("coeffs"), ctx);
    }
    throw MalformedJob("unrecognised scalar encoding");
}

Json ring_element_to_json(const RingElement& e) {
    Json terms = Json::array();
    RingElement c = e.canonical_at_precision();
    const long pm = e.ctx()->pm;
    for (const auto& [exp, coeff] : c.terms()) {
        Json t;
        Json exps = Json::array();
        for (long num : exp) {
            long g = std::gcd(num < 0 ? -num : num, pm);
            if (g == 0) g = pm;
            exps.push_back(Json::array({std::to_string(num / g), std::to_string(pm / g)}));
        }
        t["exp"] = exps;
        t["coeff"] = scalar_coeffs_json(coeff);
        terms.push_back(t);
    }
    Json j;
    j["vars"] = e.vars();
    j["box"] = e.box();
    j["terms"] = terms;
    return j;
}

RingElement ring_element_from_json(const Json& j, const CtxPtr& ctx, long vars, long box) {
    if (j.is_string() || j.is_number_integer() || j.is_array())
        return RingElement::constant(ctx, vars, box, scalar_from_json(j, ctx));
    if (!j.is_object() || !j.contains("terms"))
        throw MalformedJob("ring element needs a terms array");
    if (j.contains("vars")) vars = long_from_json(j.at("vars"), "vars");
    if (j.contains("box")) box = long_from_json(j.at("box"), "box");
    RingElement e(ctx, vars, box);
    for (const auto& t : j.at("terms")) {
        if (!t.contains("exp") || !t.contains("coeff"))
            throw MalformedJob("ring element term needs exp and coeff");
        ExpVec exp;
        for (const auto& pr : t.at("exp")) {
            if (!pr.is_array() || pr.size() != 2)
                throw MalformedJob("exponents are [numerator, denominator] pairs");
            long num = (long)mpz_from_json(pr[0]).get_si();
            long den = (long)mpz_from_json(pr[1]).get_si();
            if (den <= 0 || ctx->pm % den != 0)
                throw MalformedJob("exponent denominator must divide p^m");
            exp.push_back(num * (ctx->pm / den));
        }
        if ((long)exp.size() != vars) throw MalformedJob("exponent arity mismatch");
        RingElement mono =
            RingElement::monomial(ctx, vars, box, exp, scalar_from_json(t.at("coeff"), ctx));
        e += mono;
    }
    return e;
}

Json scalar_matrix_to_json(const ScalarMatrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(scalar_coeffs_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

ScalarMatrix scalar_matrix_from_json(const Json& j, const CtxPtr& ctx) {
    if (!j.is_array() || j.empty()) throw MalformedJob("matrix must be a non-empty array of rows");
    long rows = (long)j.size();
    long cols = (long)j.at(0).size();
    ScalarMatrix m(rows, cols, Scalar::zero(ctx));
    for (long i = 0; i < rows; ++i) {
        const Json& row = j.at((size_t)i);
        if ((long)row.size() != cols) throw MalformedJob("ragged matrix rows");
        for (long k = 0; k < cols; ++k) m(i, k) = scalar_from_json(row.at((size_t)k), ctx);
    }
    return m;
}

Json laurent_matrix_to_json(const LaurentMatrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(ring_element_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

LaurentMatrix laurent_matrix_from_json(const Json& j, const CtxPtr& ctx, long vars, long box) {
    if (!j.is_array() || j.empty()) throw MalformedJob("matrix must be a non-empty array of rows");
    long rows = (long)j.size();
    long cols = (long)j.at(0).size();
    RingElement zero(ctx, vars, box);
    LaurentMatrix m(rows, cols, zero);
    for (long i = 0; i < rows; ++i) {
        const Json& row = j.at((size_t)i);
        if ((long)row.size() != cols) throw MalformedJob("ragged matrix rows");
        for (long k = 0; k < cols; ++k)
            m(i, k) = ring_element_from_json(row.at((size_t)k), ctx, vars, box);
    }
    return m;
}

Json rep_to_json(const ScalarRep& rho) {
    Json j;
    j["d"] = rho.d;
    Json imgs = Json::array();
    for (const auto& g : rho.images) imgs.push_back(scalar_matrix_to_json(g));
    j["images"] = imgs;
    return j;
}

ScalarRep rep_from_json(const Json& j, const CtxPtr& ctx) {
    if (!j.is_object() || !j.contains("images")) throw MalformedJob("rep needs an images array");
    std::vector<ScalarMatrix> images;
    for (const auto& g : j.at("images")) images.push_back(scalar_matrix_from_json(g, ctx));
    if (j.contains("d") && long_from_json(j.at("d"), "d") != (long)images.size())
        throw MalformedJob("rep rank disagrees with the number of images");
    return validate_rep(images);
}

Json laurent_rep_to_json(const LaurentRep& rho) {
    Json j;
    j["d"] = rho.d;
    Json imgs = Json::array();
    for (const auto& g : rho.images) imgs.push_back(laurent_matrix_to_json(g));
    j["images"] = imgs;
    return j;
}

Json higgs_to_json(const ScalarHiggs& theta) {
    Json j;
    j["d"] = theta.d;
    Json coeffs = Json::array();
    for (const auto& a : theta.coefficients) coeffs.push_back(scalar_matrix_to_json(a));
    j["coefficients"] = coeffs;
    Json labels = Json::array();
    for (const auto& l : theta.basis_labels) labels.push_back(l);
    j["basisLabels"] = labels;
    return j;
}

ScalarHiggs higgs_from_json(const Json& j, const CtxPtr& ctx) {
    if (!j.is_object() || !j.contains("coefficients"))
        throw MalformedJob("Higgs field needs a coefficients array");
    std::vector<ScalarMatrix> coeffs;
    for (const auto& a : j.at("coefficients")) coeffs.push_back(scalar_matrix_from_json(a, ctx));
    std::vector<std::string> labels;
    if (j.contains("basisLabels"))
        for (const auto& l : j.at("basisLabels")) labels.push_back(l.get<std::string>());
    return validate_higgs(coeffs, std::move(labels));
}

Json hitchin_to_json(const HitchinPoint& h) {
    Json j;
    j["n"] = h.n;
    Json coeffs = Json::array();
    for (long k = 1; k <= h.n; ++k) {
        Json c;
        c["degree"] = k;
        c["poly"] = ring_element_to_json(h.coefficients[(size_t)k - 1]);
        coeffs.push_back(c);
    }
    j["coefficients"] = coeffs;
    return j;
}

HitchinPoint hitchin_from_json(const Json& j, const CtxPtr& ctx) {
    if (!j.is_object() || !j.contains("n")) throw MalformedJob("Hitchin point needs a rank n");
    HitchinPoint h;
    h.n = long_from_json(j.at("n"), "n");
    h.d = -1;
    for (const auto& c : j.at("coefficients")) {
        RingElement e = ring_element_from_json(c.at("poly"), ctx, 1, h.n + 1);
        if (h.d < 0) h.d = e.vars();
        h.coefficients.push_back(e);
    }
    if (h.d < 0) h.d = 1;
    if ((long)h.coefficients.size() != h.n)
        throw MalformedJob("Hitchin point must carry exactly n coefficients");
    return h;
}

Json cohomology_report_to_json(const CohomologyReport& rep, long n_prec) {
    Json arr = Json::array();
    for (const auto& dr : rep.degrees) {
        Json j;
        j["degree"] = dr.degree;
        Json divisors = Json::array();
        for (long e : dr.torsion_exponents) divisors.push_back("p^" + std::to_string(e));
        for (long i = 0; i < dr.free_rank; ++i) divisors.push_back("p^" + std::to_string(n_prec));
        j["divisors"] = divisors;
        j["free_rank"] = dr.free_rank;
        j["annihilator"] = "p^" + std::to_string(dr.annihilator_exp);
        if (dr.pi_annihilator >= 0) j["pi_annihilator"] = dr.pi_annihilator;
        arr.push_back(j);
    }
    return arr;
}

Json cocycle_to_json(const TwistedCocycle& c) {
    Json j;
    j["d"] = c.d;
    j["law"] = c.multiplicative ? "multiplicative" : "additive";
    switch (c.action.kind) {
        case DeltaAction::Kind::trivial: j["action"] = "trivial"; break;
        case DeltaAction::Kind::toric: j["action"] = "toric"; break;
        case DeltaAction::Kind::rho_twisted: j["action"] = "rho-twisted"; break;
    }
    Json vals = Json::array();
    for (const auto& v : c.values) vals.push_back(laurent_matrix_to_json(v));
    j["values"] = vals;
    return j;
}

TwistedCocycle cocycle_from_json(const Json& j, const CtxPtr& ctx) {
    if (!j.is_object() || !j.contains("values")) throw MalformedJob("cocycle needs values");
    TwistedCocycle c;
    c.d = j.contains("d") ? long_from_json(j.at("d"), "d") : (long)j.at("values").size();
    c.multiplicative = !j.contains("law") || j.at("law").get<std::string>() == "multiplicative";
    std::string action = j.contains("action") ? j.at("action").get<std::string>() : "toric";
    if (action == "trivial")
        c.action.kind = DeltaAction::Kind::trivial;
    else if (action == "toric")
        c.action.kind = DeltaAction::Kind::toric;
    else
        throw MalformedJob("cocycle action must be trivial or toric in job payloads");
    long vars = j.contains("vars") ? long_from_json(j.at("vars"), "vars") : c.d;
    long box = j.contains("box") ? long_from_json(j.at("box"), "box") : 0;
    if (box <= 0) box = 8 * (ctx->N + ctx->guard);
    for (const auto& v : j.at("values"))
        c.values.push_back(laurent_matrix_from_json(v, ctx, vars, box));
    if ((long)c.values.size() != c.d)
        throw MalformedJob("cocycle must provide one value per generator");
    return c;
}

}  // namespace padic
