#include "padic/jobs.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

namespace padic {

namespace {

Json run_correspondence(const Json& payload, const CtxPtr& ctx) {
    std::string dir = payload.at("direction").get<std::string>();
    Json result;
    if (dir == "rep-to-higgs") {
        ScalarRep rho = rep_from_json(payload.at("rep"), ctx);
        result["theta"] = higgs_to_json(rep_to_higgs(rho));
    } else if (dir == "higgs-to-rep") {
        ScalarHiggs theta = higgs_from_json(payload.at("theta"), ctx);
        CocycleBasis basis = payload.contains("basis")
                                 ? CocycleBasis{scalar_matrix_from_json(payload.at("basis"), ctx)}
                                 : CocycleBasis::kronecker(ctx, theta.d);
        result["rep"] = rep_to_json(higgs_to_rep(theta, basis));
    } else {
        throw MalformedJob("direction must be rep-to-higgs or higgs-to-rep");
    }
    return result;
}

Json run_cohomology_compare(const Json& payload, const CtxPtr& ctx) {
    ScalarRep rho = rep_from_json(payload.at("rep"), ctx);
    long n = payload.contains("moduleRank") ? payload.at("moduleRank").get<long>() : rho.dim();
    ChainComplex grp = koszul_complex(rho, n);
    ScalarHiggs theta = rep_to_higgs(rho);
    ChainComplex hig = higgs_complex(theta, n);
    ChainMap u = comparison_map(rho);
    CohomologyReport grp_rep = compute_cohomology(grp);
    CohomologyReport hig_rep = compute_cohomology(hig);
    bool commutes = chain_map_commutes(grp, hig, u);
    bool invertible = true;
    for (const auto& uk : u.maps)
        if (!try_inverse(uk)) invertible = false;
    bool match = commutes && invertible;
    for (size_t k = 0; k < grp_rep.degrees.size() && match; ++k) {
        const auto& a = grp_rep.degrees[k];
        const auto& b = hig_rep.degrees[k];
        if (a.torsion_exponents != b.torsion_exponents || a.free_rank != b.free_rank)
            match = false;
    }
    Json result;
    result["group"] = cohomology_report_to_json(grp_rep, ctx->N);
    result["higgs"] = cohomology_report_to_json(hig_rep, ctx->N);
    result["u_commutes"] = commutes;
    result["u_invertible"] = invertible;
    result["verdict"] = match ? "match" : "mismatch";
    return result;
}

Json run_character_blocks(const Json& payload, const CtxPtr& ctx) {
    ScalarRep rho = rep_from_json(payload.at("rep"), ctx);
    long level = payload.contains("towerLevel") ? payload.at("towerLevel").get<long>() : ctx->m;
    long n = payload.contains("moduleRank") ? payload.at("moduleRank").get<long>() : rho.dim();
    auto blocks = character_blocks(rho, level, n);
    Json arr = Json::array();
    for (const auto& [ci, complex] : blocks) {
        CohomologyReport rep = compute_cohomology(complex, /*with_pi_annihilator=*/ctx->m >= 1);
        Json b;
        Json idx = Json::array();
        for (long num : ci.numerators)
            idx.push_back(Json::array(
                {std::to_string(num), std::to_string(ci.denominator)}));
        b["character"] = idx;
        b["degrees"] = cohomology_report_to_json(rep, ctx->N);
        b["annihilated_by_p"] = rep.annihilated_by_p();
        arr.push_back(b);
    }
    Json result;
    result["blocks"] = arr;
    return result;
}

Json run_descent(const Json& payload, const CtxPtr& ctx) {
    TwistedCocycle c = cocycle_from_json(payload.at("cocycle"), ctx);
    DescentConfig config;
    if (payload.contains("config")) {
        const Json& cf = payload.at("config");
        if (cf.contains("c_min")) config.c_min = cf.at("c_min").get<long>();
        if (cf.contains("step_t")) config.step_t = cf.at("step_t").get<long>();
        if (cf.contains("gamma_tors")) config.gamma_tors = cf.at("gamma_tors").get<long>();
        if (cf.contains("max_iters")) config.max_iters = cf.at("max_iters").get<long>();
        if (cf.contains("box")) config.box_e = cf.at("box").get<long>();
    }
    DescentResult res = descend_cocycle(c, config);
    Json result;
    result["precision_out"] = res.precision_out;
    Json rep = laurent_rep_to_json(res.rep);
    rep["context"] = ctx_to_json(res.reduced_ctx);
    result["rep"] = rep;
    result["gauge"] = laurent_matrix_to_json(res.gauge);
    Json trace = Json::array();
    for (const auto& e : res.trace) {
        Json t;
        t["step"] = e.step;
        t["discrepancy_level"] = e.discrepancy_level.str();
        Json blocks = Json::array();
        for (const auto& b : e.blocks) {
            Json bj;
            Json idx = Json::array();
            for (long num : b.character) idx.push_back(num);
            bj["character"] = idx;
            bj["valuation"] = b.level.str();
            blocks.push_back(bj);
        }
        t["blocks"] = blocks;
        t["precision_remaining"] = e.precision_remaining;
        trace.push_back(t);
    }
    result["trace"] = trace;
    return result;
}

Json run_hitchin(const Json& payload, const CtxPtr& ctx) {
    Json result;
    if (payload.contains("theta")) {
        ScalarHiggs theta = higgs_from_json(payload.at("theta"), ctx);
        result["hitchin"] = hitchin_to_json(hitchin_map(theta));
    } else if (payload.contains("rep")) {
        ScalarRep rho = rep_from_json(payload.at("rep"), ctx);
        result["hitchin"] = hitchin_to_json(betti_hitchin(rho));
    } else if (payload.contains("product")) {
        HitchinPoint h1 = hitchin_from_json(payload.at("product").at("h1"), ctx);
        HitchinPoint h2 = hitchin_from_json(payload.at("product").at("h2"), ctx);
        result["hitchin"] = hitchin_to_json(hitchin_product(h1, h2));
    } else {
        throw MalformedJob("hitchin payload needs theta, rep, or product");
    }
    return result;
}

Json run_oracle_conjugacy(const Json& payload, const CtxPtr& ctx) {
    ScalarRep rho1 = rep_from_json(payload.at("rep1"), ctx);
    ScalarRep rho2 = rep_from_json(payload.at("rep2"), ctx);
    std::string mode_s =
        payload.contains("mode") ? payload.at("mode").get<std::string>() : "certified";
    ConjugacySearchMode mode = mode_s == "exact-search" ? ConjugacySearchMode::exact_search
                                                        : ConjugacySearchMode::certified;
    unsigned long cap =
        payload.contains("cap") ? payload.at("cap").get<unsigned long>() : 200000ul;
    auto conj = rep_equivalent(rho1, rho2, mode, cap);
    Json result;
    result["equivalent"] = conj.has_value();
    if (conj) result["conjugator"] = scalar_matrix_to_json(*conj);
    return result;
}

}  // namespace

Job parse_job(const Json& j) {
    if (!j.is_object()) throw MalformedJob("job must be a JSON object");
    if (!j.contains("task")) throw MalformedJob("job needs a task");
    if (!j.contains("context")) throw MalformedJob("job needs a context");
    Job job;
    job.task = j.at("task").get<std::string>();
    job.context = j.at("context");
    job.payload = j.contains("payload") ? j.at("payload") : Json::object();
    if (j.contains("seed")) job.seed = j.at("seed").get<long>();
    job.raw = j;
    return job;
}

Report run_job(const Job& job, const RunOptions& opts) {
    Report rep;
    Json& doc = rep.document;
    doc["job"] = job.raw;
    if (job.seed) doc["seed"] = *job.seed;
    auto t0 = std::chrono::steady_clock::now();
    try {
        CtxPtr ctx = ctx_from_json(job.context, opts.guard_override);
        if (opts.guard_override) doc["guard_override"] = *opts.guard_override;
        Json result;
        if (job.task == "correspondence")
            result = run_correspondence(job.payload, ctx);
        else if (job.task == "cohomology-compare")
            result = run_cohomology_compare(job.payload, ctx);
        else if (job.task == "character-blocks")
            result = run_character_blocks(job.payload, ctx);
        else if (job.task == "descent")
            result = run_descent(job.payload, ctx);
        else if (job.task == "hitchin")
            result = run_hitchin(job.payload, ctx);
        else if (job.task == "oracle-conjugacy")
            result = run_oracle_conjugacy(job.payload, ctx);
        else
            throw MalformedJob("unknown task '" + job.task + "'");
        doc["status"] = "ok";
        doc["result"] = result;
        rep.exit_code = 0;
    } catch (const MalformedJob& e) {
        doc["status"] = "error";
        doc["error"] = Json{{"type", e.kind}, {"message", e.what()}};
        rep.exit_code = 2;
    } catch (const Error& e) {
        doc["status"] = "error";
        doc["error"] = Json{{"type", e.kind}, {"message", e.what()}};
        rep.exit_code = 1;
    } catch (const Json::exception& e) {
        doc["status"] = "error";
        doc["error"] = Json{{"type", "MalformedJob"}, {"message", e.what()}};
        rep.exit_code = 2;
    }
    if (opts.with_timing) {
        auto dt = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        doc["timing_us"] = dt;
    }
    return rep;
}

Report run_batch(const Json& doc, const RunOptions& opts) {
    std::vector<Json> jobs;
    if (doc.is_array())
        for (const auto& j : doc) jobs.push_back(j);
    else if (doc.is_object() && doc.contains("jobs"))
        for (const auto& j : doc.at("jobs")) jobs.push_back(j);
    else
        jobs.push_back(doc);

    std::vector<Report> reports((size_t)jobs.size());
    long workers = std::max(1l, std::min<long>(opts.parallel, (long)jobs.size()));
    if (workers == 1) {
        for (size_t i = 0; i < jobs.size(); ++i) {
            try {
                reports[i] = run_job(parse_job(jobs[i]), opts);
            } catch (const MalformedJob& e) {
                reports[i].document["job"] = jobs[i];
                reports[i].document["status"] = "error";
                reports[i].document["error"] = Json{{"type", e.kind}, {"message", e.what()}};
                reports[i].exit_code = 2;
            }
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (long w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) break;
                    try {
                        reports[i] = run_job(parse_job(jobs[i]), opts);
                    } catch (const MalformedJob& e) {
                        reports[i].document["job"] = jobs[i];
                        reports[i].document["status"] = "error";
                        reports[i].document["error"] =
                            Json{{"type", e.kind}, {"message", e.what()}};
                        reports[i].exit_code = 2;
                    }
                }
            });
        for (auto& t : pool) t.join();
    }

    Report out;
    Json arr = Json::array();
    for (auto& r : reports) {
        arr.push_back(r.document);
        out.exit_code = std::max(out.exit_code, r.exit_code);
    }
    out.document["reports"] = arr;
    return out;
}

std::string format_table(const Json& batch_report) {
    std::vector<std::array<std::string, 4>> rows;
    rows.push_back({"#", "task", "status", "summary"});
    long idx = 0;
    for (const auto& r : batch_report.at("reports")) {
        std::string task = r.at("job").value("task", std::string("?"));
        std::string status = r.value("status", std::string("?"));
        std::string summary;
        if (status == "ok") {
            const Json& res = r.at("result");
            if (res.contains("verdict"))
                summary = res.at("verdict").get<std::string>();
            else if (res.contains("equivalent"))
                summary = res.at("equivalent").get<bool>() ? "equivalent" : "not equivalent";
            else if (res.contains("precision_out"))
                summary = "precision_out=" + std::to_string(res.at("precision_out").get<long>());
            else if (res.contains("blocks"))
                summary = std::to_string(res.at("blocks").size()) + " blocks";
            else if (res.contains("hitchin"))
                summary = "rank " + std::to_string(res.at("hitchin").at("n").get<long>());
            else if (res.contains("rep"))
                summary = "rep with d=" + std::to_string(res.at("rep").at("d").get<long>());
            else if (res.contains("theta"))
                summary = "theta with d=" + std::to_string(res.at("theta").at("d").get<long>());
        } else {
            summary = r.at("error").at("type").get<std::string>();
        }
        rows.push_back({std::to_string(idx++), task, status, summary});
    }
    std::array<size_t, 4> width{0, 0, 0, 0};
    for (const auto& row : rows)
        for (size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (const auto& row : rows) {
        for (size_t c = 0; c < 4; ++c)
            os << std::left << std::setw((int)width[c] + 2) << row[c];
        os << "\n";
    }
    return os.str();
}

}  // namespace padic
