#include <doctest.h>

#include "test_util.hpp"

using namespace padic;
using testutil::Rng;

namespace {

ScalarMatrix diag(const CtxPtr& ctx, std::vector<long> entries) {
    long n = (long)entries.size();
    ScalarMatrix m(n, n, Scalar::zero(ctx));
    for (long i = 0; i < n; ++i) m(i, i) = Scalar(ctx, entries[(size_t)i]);
    return m;
}

RingElement tower_term(const CtxPtr& ctx, long vars, long box, long var, long num, long coeff) {
    ExpVec e((size_t)vars, 0);
    e[(size_t)var] = num;
    return RingElement::monomial(ctx, vars, box, e, Scalar(ctx, coeff));
}

}  // namespace

TEST_CASE("higgs_to_rep matches the frozen examples") {
    auto ctx = PrecisionContext::make(3, 0, 4);

    // nilpotent coefficient: rho(gamma) = 1 + A
    ScalarMatrix nil(2, 2, Scalar::zero(ctx));
    nil(0, 1) = Scalar(ctx, 3);
    ScalarHiggs theta = validate_higgs<Scalar>({nil});
    ScalarRep rho = higgs_to_rep(theta, CocycleBasis::kronecker(ctx, 1));
    CHECK(rho.images[0](0, 1).equal_at_precision(Scalar(ctx, 3)));
    CHECK(rho.images[0](0, 0).equal_at_precision(Scalar::one(ctx)));

    // d = 2 diagonal pair: exp(3) = 67 mod 81
    ScalarHiggs theta2 = validate_higgs<Scalar>({diag(ctx, {3, 0}), diag(ctx, {0, 3})});
    ScalarRep rho2 = higgs_to_rep(theta2, CocycleBasis::kronecker(ctx, 2));
    CHECK(rho2.images[0](0, 0).equal_at_precision(Scalar(ctx, 67)));
    CHECK(rho2.images[0](1, 1).equal_at_precision(Scalar::one(ctx)));
    CHECK(rho2.images[1](1, 1).equal_at_precision(Scalar(ctx, 67)));

    // theta = 0 gives the trivial representation
    ScalarHiggs zero = validate_higgs<Scalar>({ScalarMatrix::zero(2, 2, Scalar::zero(ctx))});
    ScalarRep triv = higgs_to_rep(zero, CocycleBasis::kronecker(ctx, 1));
    CHECK(triv.images[0].equal_at_precision(ScalarMatrix::identity(2, Scalar::zero(ctx))));
}

TEST_CASE("rep_to_higgs matches the frozen examples") {
    auto ctx = PrecisionContext::make(3, 0, 2);
    ScalarRep rho = validate_rep<Scalar>({ScalarMatrix(1, 1, Scalar(ctx, 4))});
    ScalarHiggs theta = rep_to_higgs(rho);
    CHECK(theta.coefficients[0](0, 0).equal_at_precision(Scalar(ctx, 3)));

    ScalarRep triv = validate_rep<Scalar>({ScalarMatrix::identity(2, Scalar::zero(ctx))});
    CHECK(rep_to_higgs(triv).coefficients[0].is_zero_at_precision());

    ScalarMatrix uni(2, 2, Scalar::zero(ctx));
    uni(0, 0) = uni(1, 1) = Scalar::one(ctx);
    uni(0, 1) = Scalar(ctx, 3);
    ScalarRep u = validate_rep<Scalar>({uni});
    ScalarHiggs tu = rep_to_higgs(u);
    CHECK(tu.coefficients[0](0, 1).equal_at_precision(Scalar(ctx, 3)));
    CHECK(tu.coefficients[0](0, 0).is_zero_at_precision());
}

TEST_CASE("round trip, gauge equivariance, rescaling, basis covariance") {
    for (auto [p, N] : {std::pair<long, long>{3, 4}, {5, 3}}) {
        auto ctx = PrecisionContext::make(p, 0, N);
        Rng rng(1000 + p);
        for (int it = 0; it < 60; ++it) {
            long n = 1 + (long)(rng() % 3);
            long d = 1 + (long)(rng() % 3);
            ScalarHiggs theta = testutil::random_small_higgs(rng, ctx, n, d);
            CocycleBasis kron = CocycleBasis::kronecker(ctx, d);

            // round trip is exact at precision N
            ScalarRep rho = higgs_to_rep(theta, kron);
            ScalarHiggs back = rep_to_higgs(rho);
            for (long i = 0; i < d; ++i)
                CHECK(back.coefficients[(size_t)i].equal_at_precision(
                    theta.coefficients[(size_t)i]));

            // gauge equivariance: conjugating theta conjugates the representation
            ScalarMatrix b = testutil::random_invertible(rng, ctx, n);
            std::vector<ScalarMatrix> conj;
            for (const auto& a : theta.coefficients) conj.push_back(adjoint(b, a));
            ScalarRep rho_conj = higgs_to_rep(validate_higgs(conj), kron);
            for (long i = 0; i < d; ++i)
                CHECK(rho_conj.images[(size_t)i].equal_at_precision(
                    inverse(b) * rho.images[(size_t)i] * b));

            // rescaling invariance: rho_i scaled by a unit u, A_i by u^{-1}
            Scalar uu = testutil::random_unit(rng, ctx);
            CocycleBasis scaled{kron.values.scaled(uu)};
            std::vector<ScalarMatrix> downs;
            for (const auto& a : theta.coefficients) downs.push_back(a.scaled(uu.inv()));
            ScalarRep rho_rescaled = higgs_to_rep(validate_higgs(downs), scaled);
            for (long i = 0; i < d; ++i)
                CHECK(rho_rescaled.images[(size_t)i].equal_at_precision(rho.images[(size_t)i]));
        }

        // basis-change covariance: rho_i(gamma_k) = b_{ik} against A'_k = sum_i b_{ik} A_i
        for (int it = 0; it < 40; ++it) {
            long n = 1 + (long)(rng() % 2);
            long d = 2;
            ScalarHiggs theta = testutil::random_small_higgs(rng, ctx, n, d);
            ScalarMatrix bmat = testutil::random_invertible(rng, ctx, d);
            CocycleBasis basis{bmat};
            ScalarRep lhs = higgs_to_rep(theta, basis);
            std::vector<ScalarMatrix> aprime;
            for (long k = 0; k < d; ++k) {
                ScalarMatrix acc = ScalarMatrix::zero(n, n, Scalar::zero(ctx));
                for (long i = 0; i < d; ++i)
                    acc = acc + theta.coefficients[(size_t)i].scaled(bmat(i, k));
                aprime.push_back(acc);
            }
            ScalarRep rhs = higgs_to_rep(validate_higgs(aprime), CocycleBasis::kronecker(ctx, d));
            for (long k = 0; k < d; ++k)
                CHECK(lhs.images[(size_t)k].equal_at_precision(rhs.images[(size_t)k]));
        }
    }
}

TEST_CASE("transfer_morphism verifies intertwiners on both sides") {
    auto ctx = PrecisionContext::make(3, 0, 2);
    ScalarMatrix a(2, 2, Scalar::zero(ctx));
    a(0, 0) = Scalar(ctx, 3);
    ScalarHiggs t1 = validate_higgs<Scalar>({a});
    // identity between equal objects
    CHECK_NOTHROW(
        transfer_morphism(ScalarMatrix::identity(2, Scalar::zero(ctx)), t1, t1));

    // phi = [[1,1],[0,1]] between A and its conjugate
    ScalarMatrix phi(2, 2, Scalar::zero(ctx));
    phi(0, 0) = phi(1, 1) = phi(0, 1) = Scalar::one(ctx);
    ScalarHiggs t2 = validate_higgs<Scalar>({phi * a * inverse(phi)});
    CHECK_NOTHROW(transfer_morphism(phi, t1, t2));

    // the zero map intertwines everything (module morphisms, not isomorphisms)
    ScalarMatrix zero = ScalarMatrix::zero(2, 2, Scalar::zero(ctx));
    CHECK_NOTHROW(transfer_morphism(zero, t1, t2));

    // a non-intertwiner is rejected with the failing index
    ScalarMatrix b(2, 2, Scalar::zero(ctx));
    b(0, 1) = Scalar(ctx, 3);
    ScalarHiggs t3 = validate_higgs<Scalar>({b});
    CHECK_THROWS_AS(transfer_morphism(phi, t1, t3), NotAMorphism);

    // representation-side transfer
    ScalarRep r1 = higgs_to_rep(t1, CocycleBasis::kronecker(ctx, 1));
    ScalarRep r2 = higgs_to_rep(t2, CocycleBasis::kronecker(ctx, 1));
    CHECK_NOTHROW(transfer_morphism(phi, r1, r2));
}

namespace {

// builds c(gamma_j) = hom_j * b^{-1} (gamma_j b) over the tower ring
TwistedCocycle planted_cocycle(const std::vector<LaurentMatrix>& hom,
                               const LaurentMatrix& b) {
    TwistedCocycle c;
    c.d = (long)hom.size();
    c.multiplicative = true;
    c.action.kind = DeltaAction::Kind::toric;
    LaurentMatrix binv = inverse(b);
    for (long j = 0; j < c.d; ++j) {
        std::vector<long> gamma((size_t)c.d, 0);
        gamma[(size_t)j] = 1;
        LaurentMatrix gb = b.map([&](const RingElement& e) { return e.galois(gamma); });
        c.values.push_back(hom[(size_t)j] * binv * gb);
    }
    return c;
}

LaurentMatrix constant_matrix(const CtxPtr& ctx, long vars, long box, const ScalarMatrix& m) {
    return m.map([&](const Scalar& s) { return RingElement::constant(ctx, vars, box, s); });
}

}  // namespace

TEST_CASE("descent on a homomorphism input is immediate") {
    auto ctx = PrecisionContext::make(3, 1, 2);
    const long box = 8 * (ctx->N + ctx->guard);
    ScalarMatrix four(1, 1, Scalar(ctx, 4));
    LaurentMatrix hom = constant_matrix(ctx, 1, box, four);
    TwistedCocycle c;
    c.d = 1;
    c.multiplicative = true;
    c.action.kind = DeltaAction::Kind::toric;
    c.values = {hom};
    REQUIRE(twisted_cocycle_check(c));

    DescentResult res = descend_cocycle(c, DescentConfig{});
    CHECK(res.precision_out == ctx->N);
    CHECK(res.rep.images[0](0, 0).constant_part().equal_at_precision(
        Scalar(res.reduced_ctx, 4)));
    CHECK(level_of(res.gauge).at_ceiling());  // identity gauge
}

TEST_CASE("descent recovers a planted coboundary") {
    auto ctx = PrecisionContext::make(3, 1, 2);
    const long box = 8 * (ctx->N + ctx->guard);
    // b = exp(3 T^(1/3))
    LaurentMatrix arg(1, 1, tower_term(ctx, 1, box, 0, 1, 3));
    LaurentMatrix b = matrix_exp(arg);
    LaurentMatrix id = LaurentMatrix::identity(1, b.exemplar());
    TwistedCocycle c = planted_cocycle({id}, b);
    REQUIRE(twisted_cocycle_check(c));

    DescentResult res = descend_cocycle(c, DescentConfig{});
    CHECK(res.precision_out >= 1);
    // trivial representation at the reduced precision
    CHECK(level_of(res.rep.images[0]).at_ceiling());
    // the defining identity holds: rep = gauge^{-1} c (gamma gauge)
    LaurentMatrix lhs = inverse(res.gauge) * c.values[0].map([&](const RingElement& e) {
        return e.with_box(res.gauge.exemplar().box());
    }) * res.gauge.map([&](const RingElement& e) { return e.galois({1}); });
    Valuation lv = level_of(lhs).level;
    CHECK((lv.infinite || lv >= Valuation::of(res.precision_out, 1)));
    // the recovered gauge matches b up to a Delta-invariant factor
    LaurentMatrix ratio = inverse(res.gauge) * inverse(b);
    RingElement r = ratio(0, 0);
    CHECK(r.galois({1}).equal_at_precision(r));
}

TEST_CASE("descent separates a character from a coboundary") {
    auto ctx = PrecisionContext::make(3, 1, 3);
    const long box = 10 * (ctx->N + ctx->guard);
    LaurentMatrix arg(1, 1, tower_term(ctx, 1, box, 0, 1, 3));
    LaurentMatrix b = matrix_exp(arg);
    ScalarMatrix four(1, 1, Scalar(ctx, 4));
    LaurentMatrix hom = constant_matrix(ctx, 1, box, four);
    TwistedCocycle c = planted_cocycle({hom}, b);
    REQUIRE(twisted_cocycle_check(c));

    DescentResult res = descend_cocycle(c, DescentConfig{});
    CHECK(res.precision_out >= ctx->N - (long)res.trace.size());
    REQUIRE(res.rep.images[0](0, 0).is_constant());
    CHECK(res.rep.images[0](0, 0).constant_part().equal_at_precision(
        Scalar(res.reduced_ctx, 4)));
}

TEST_CASE("descent input gates") {
    auto ctx = PrecisionContext::make(3, 1, 2);
    const long box = 8;
    // additive law is rejected
    TwistedCocycle c;
    c.d = 1;
    c.multiplicative = false;
    c.action.kind = DeltaAction::Kind::toric;
    c.values = {LaurentMatrix(1, 1, RingElement::constant(ctx, 1, box, Scalar::one(ctx)))};
    CHECK_THROWS_AS(descend_cocycle(c, DescentConfig{}), ContextMismatch);

    // values below the smallness gate are rejected
    TwistedCocycle c2;
    c2.d = 1;
    c2.multiplicative = true;
    c2.action.kind = DeltaAction::Kind::toric;
    c2.values = {LaurentMatrix(1, 1, RingElement::constant(ctx, 1, box, Scalar(ctx, 2)))};
    CHECK_THROWS_AS(descend_cocycle(c2, DescentConfig{}), ConvergenceViolation);
}
