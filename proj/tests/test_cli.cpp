#include <doctest.h>

#include "padic/jobs.hpp"
#include "test_util.hpp"

using namespace padic;

namespace {

Json parse(const char* text) { return Json::parse(text); }

}  // namespace

TEST_CASE("correspondence job: rep-to-higgs frozen example") {
    Json job = parse(R"({
      "task": "correspondence",
      "context": {"p": 3, "N": 2},
      "payload": {"direction": "rep-to-higgs", "rep": {"d": 1, "images": [[["4"]]]}}
    })");
    Report rep = run_job(parse_job(job));
    CHECK(rep.exit_code == 0);
    CHECK(rep.document.at("status") == "ok");
    const Json& theta = rep.document.at("result").at("theta");
    CHECK(theta.at("coefficients").at(0).at(0).at(0) == Json::array({"3"}));
}

TEST_CASE("hitchin job: nilpotent theta maps to zero") {
    Json job = parse(R"({
      "task": "hitchin",
      "context": {"p": 3, "N": 2},
      "payload": {"theta": {"d": 1, "coefficients": [[["0", "3"], ["0", "0"]]]}}
    })");
    Report rep = run_job(parse_job(job));
    REQUIRE(rep.exit_code == 0);
    for (const auto& c : rep.document.at("result").at("hitchin").at("coefficients"))
        CHECK(c.at("poly").at("terms").empty());
}

TEST_CASE("cohomology-compare job: trivial rep reports binomial ranks") {
    Json job = parse(R"({
      "task": "cohomology-compare",
      "context": {"p": 3, "N": 2},
      "payload": {"rep": {"d": 2, "images": [[["1","0"],["0","1"]], [["1","0"],["0","1"]]]}}
    })");
    Report rep = run_job(parse_job(job));
    REQUIRE(rep.exit_code == 0);
    const Json& res = rep.document.at("result");
    CHECK(res.at("verdict") == "match");
    CHECK(res.at("group").at(0).at("divisors").size() == 2);   // rank 2 free
    CHECK(res.at("group").at(1).at("divisors").size() == 4);   // 2 * C(2,1)
    CHECK(res.at("group").at(2).at("divisors").size() == 2);
    for (const auto& d : res.at("group"))
        for (const auto& div : d.at("divisors")) CHECK(div == "p^2");
}

TEST_CASE("oracle-conjugacy job surfaces the verdict") {
    Json job = parse(R"({
      "task": "oracle-conjugacy",
      "context": {"p": 3, "N": 2},
      "payload": {"rep1": {"d":1,"images":[[["4","0"],["0","1"]]]},
                   "rep2": {"d":1,"images":[[["7","0"],["0","1"]]]},
                   "mode": "exact-search"}
    })");
    Report rep = run_job(parse_job(job));
    REQUIRE(rep.exit_code == 0);
    CHECK(rep.document.at("result").at("equivalent") == false);
}

TEST_CASE("domain errors become structured reports with exit code 1") {
    // evaluating exp at a non-small Higgs coefficient
    Json job = parse(R"({
      "task": "correspondence",
      "context": {"p": 3, "N": 2},
      "payload": {"direction": "higgs-to-rep", "theta": {"d": 1, "coefficients": [[["1"]]]}}
    })");
    Report rep = run_job(parse_job(job));
    CHECK(rep.exit_code == 1);
    CHECK(rep.document.at("status") == "error");
    CHECK(rep.document.at("error").at("type") == "ConvergenceViolation");

    // non-commuting images
    Json job2 = parse(R"({
      "task": "correspondence",
      "context": {"p": 3, "N": 4},
      "payload": {"direction": "rep-to-higgs",
                   "rep": {"d": 2, "images": [[["1","3"],["0","1"]], [["1","0"],["3","1"]]]}}
    })");
    Report rep2 = run_job(parse_job(job2));
    CHECK(rep2.exit_code == 1);
    CHECK(rep2.document.at("error").at("type") == "NotCommuting");
}

TEST_CASE("malformed jobs exit with code 2") {
    Json job = parse(R"({"task": "correspondence", "context": {"p": 3, "N": 2}})");
    Report rep = run_job(parse_job(job));
    CHECK(rep.exit_code == 2);
    CHECK(rep.document.at("error").at("type") == "MalformedJob");

    Json job2 = parse(R"({"task": "no-such-task", "context": {"p": 3, "N": 2}})");
    CHECK(run_job(parse_job(job2)).exit_code == 2);

    Json job3 = parse(R"({"context": {"p": 3, "N": 2}})");
    Report batch = run_batch(job3);
    CHECK(batch.exit_code == 2);
}

TEST_CASE("batch reports are deterministic and order-preserving") {
    Json batch = parse(R"({"jobs": [
      {"task": "hitchin", "context": {"p": 3, "N": 2},
       "payload": {"theta": {"d": 1, "coefficients": [[["3"]]]}}},
      {"task": "correspondence", "context": {"p": 3, "N": 2},
       "payload": {"direction": "rep-to-higgs", "rep": {"d": 1, "images": [[["4"]]]}}}
    ]})");
    Report r1 = run_batch(batch);
    Report r2 = run_batch(batch);
    RunOptions par;
    par.parallel = 4;
    Report r3 = run_batch(batch, par);
    CHECK(r1.document.dump(1) == r2.document.dump(1));
    CHECK(r1.document.dump(1) == r3.document.dump(1));
    CHECK(r1.document.at("reports").size() == 2);
    CHECK(r1.document.at("reports").at(0).at("job").at("task") == "hitchin");
}

TEST_CASE("descent job round trip through JSON") {
    // c is the coboundary of b = 1 + 3 T^(1/3) composed with gamma -> 4
    auto ctx = PrecisionContext::make(3, 1, 2);
    long box = 8 * (ctx->N + ctx->guard);
    RingElement b = RingElement::constant(ctx, 1, box, Scalar::one(ctx)) +
                    RingElement::monomial(ctx, 1, box, {1}, Scalar(ctx, 3));
    LaurentMatrix bm(1, 1, b);
    LaurentMatrix cval =
        LaurentMatrix(1, 1, RingElement::constant(ctx, 1, box, Scalar(ctx, 4))) *
        inverse(bm) * LaurentMatrix(1, 1, b.galois({1}));
    Json job;
    job["task"] = "descent";
    job["context"] = ctx_to_json(ctx);
    Json cocycle;
    cocycle["d"] = 1;
    cocycle["action"] = "toric";
    cocycle["law"] = "multiplicative";
    cocycle["values"] = Json::array({laurent_matrix_to_json(cval)});
    job["payload"] = Json{{"cocycle", cocycle}};
    Report rep = run_job(parse_job(job));
    REQUIRE(rep.exit_code == 0);
    const Json& res = rep.document.at("result");
    CHECK(res.at("precision_out").get<long>() >= 1);
    // recovered homomorphism is the constant 4
    const Json& img = res.at("rep").at("images").at(0).at(0).at(0);
    CHECK(img.at("terms").at(0).at("coeff").at(0) == "4");
    CHECK(res.at("trace").is_array());
}

TEST_CASE("character-blocks job reports almost vanishing") {
    Json job = parse(R"({
      "task": "character-blocks",
      "context": {"p": 3, "m": 1, "N": 2},
      "payload": {"rep": {"d": 1, "images": [[["4"]]]}, "towerLevel": 1}
    })");
    Report rep = run_job(parse_job(job));
    REQUIRE(rep.exit_code == 0);
    const Json& blocks = rep.document.at("result").at("blocks");
    REQUIRE(blocks.size() == 3);
    // here even the invariant block is p-torsion (H^* = Z/3 for rho = 4)
    for (const auto& b : blocks) CHECK(b.at("annihilated_by_p") == true);
    CHECK(blocks.at(1).at("degrees").at(0).at("pi_annihilator").get<long>() <= 1);
}

TEST_CASE("guard override is applied and logged") {
    Json job = parse(R"({
      "task": "correspondence",
      "context": {"p": 3, "N": 2},
      "payload": {"direction": "rep-to-higgs", "rep": {"d": 1, "images": [[["4"]]]}}
    })");
    RunOptions opts;
    opts.guard_override = 9;
    Report rep = run_job(parse_job(job), opts);
    REQUIRE(rep.exit_code == 0);
    CHECK(rep.document.at("guard_override") == 9);
    // overriding below the formula bound is rejected as malformed
    RunOptions low;
    low.guard_override = 1;
    CHECK(run_job(parse_job(job), low).exit_code == 2);
}

TEST_CASE("standalone scalar serialization carries its context") {
    auto ctx = PrecisionContext::make(3, 1, 2);
    Scalar s = Scalar(ctx, 4) * Scalar::zeta(ctx) + Scalar::one(ctx);
    Json j = scalar_to_json(s);
    CHECK(j.at("p") == 3);
    CHECK(j.at("m") == 1);
    CHECK(j.at("N") == 2);
    Scalar back = scalar_from_json(j, ctx);
    CHECK(back.equal_at_precision(s));
}

TEST_CASE("serialization round-trips preserve values at precision N") {
    padic::testutil::Rng rng(2024);
    for (auto [p, m, N] : {std::tuple<long, long, long>{3, 0, 3}, {3, 1, 2}, {5, 1, 2}}) {
        auto ctx = PrecisionContext::make(p, m, N);
        for (int it = 0; it < 40; ++it) {
            // scalar matrices through the matrix schema
            long n = 1 + (long)(rng() % 3);
            ScalarMatrix mat(n, n, Scalar::zero(ctx));
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) mat(i, j) = padic::testutil::random_scalar(rng, ctx);
            CHECK(scalar_matrix_from_json(scalar_matrix_to_json(mat), ctx)
                      .equal_at_precision(mat));

            // ring elements with fractional exponents
            RingElement e(ctx, 2, 5);
            for (int t = 0; t < 4; ++t) {
                ExpVec exp = {(long)(rng() % 11) - 5, (long)(rng() % 11) - 5};
                e += RingElement::monomial(ctx, 2, 5, exp, padic::testutil::random_scalar(rng, ctx));
            }
            RingElement back = ring_element_from_json(ring_element_to_json(e), ctx, 2, 5);
            CHECK(back.equal_at_precision(e));
        }
    }
}
