#pragma once

#include "padic/json_io.hpp"

namespace padic {

// Batch driver: JSON job descriptions in, deterministic JSON reports out.
struct Job {
    std::string task;
    Json context;
    Json payload;
    std::optional<long> seed;
    Json raw;  // the parsed document, echoed verbatim into the report
};

struct RunOptions {
    std::optional<long> guard_override;  // PADIC_SIMPSON_GUARD
    bool with_timing = false;            // timing breaks byte-determinism: opt-in
    long parallel = 1;
};

// exit code semantics: 0 ok, 1 domain error, 2 malformed input
struct Report {
    Json document;
    int exit_code = 0;
};

Job parse_job(const Json& j);
Report run_job(const Job& job, const RunOptions& opts = {});

// Accepts a single job object or {"jobs":[...]} / bare array; jobs run
// concurrently up to opts.parallel, reports merge in input order.
Report run_batch(const Json& doc, const RunOptions& opts = {});

std::string format_table(const Json& batch_report);

}  // namespace padic
