// Batch driver: reads JSON job descriptions, dispatches to the library, and
// emits deterministic JSON reports or an aligned text table.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "padic/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"local p-adic nonabelian Hodge toolkit: batch job runner"};
    std::string job_path;
    std::string out_path;
    std::string format = "json";
    long seed = 0;
    bool seed_set = false;
    long parallel = 1;
    bool timing = false;
    app.add_option("--job", job_path, "job file (single object, array, or {\"jobs\":[...]}); '-' for stdin")
        ->required();
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    auto* seed_opt = app.add_option("--seed", seed, "seed echoed into reports");
    app.add_option("--parallel", parallel, "maximum concurrent jobs")->check(CLI::PositiveNumber);
    app.add_flag("--timing", timing, "include wall-clock timing (breaks byte-determinism)");
    CLI11_PARSE(app, argc, argv);
    seed_set = seed_opt->count() > 0;

    std::string text;
    if (job_path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(job_path);
        if (!in) {
            std::cerr << "error: cannot open " << job_path << "\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    padic::Json doc;
    try {
        doc = padic::Json::parse(text);
    } catch (const std::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    }

    padic::RunOptions opts;
    opts.with_timing = timing;
    opts.parallel = parallel;
    if (const char* g = std::getenv("PADIC_SIMPSON_GUARD")) {
        try {
            opts.guard_override = std::stol(g);
        } catch (...) {
            std::cerr << "error: PADIC_SIMPSON_GUARD is not an integer\n";
            return 2;
        }
    }
    if (seed_set) {
        auto inject = [&](padic::Json& j) {
            if (j.is_object() && !j.contains("seed")) j["seed"] = seed;
        };
        if (doc.is_array())
            for (auto& j : doc) inject(j);
        else if (doc.is_object() && doc.contains("jobs"))
            for (auto& j : doc.at("jobs")) inject(j);
        else
            inject(doc);
    }

    padic::Report report = padic::run_batch(doc, opts);
    std::string rendered = format == "table" ? padic::format_table(report.document)
                                             : report.document.dump(1) + "\n";
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << rendered;
    }
    return report.exit_code;
}
