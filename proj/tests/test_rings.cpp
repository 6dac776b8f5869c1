#include <doctest.h>

#include "test_util.hpp"

using namespace padic;
using testutil::Rng;

namespace {

// independent oracle: extended Euclid inverse mod m
long euclid_inverse(long a, long m) {
    long r0 = a % m, r1 = m;
    long s0 = 1, s1 = 0;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    long inv = s0 % m;
    return inv < 0 ? inv + m : inv;
}

}  // namespace

TEST_CASE("scalar arithmetic matches the frozen oracles") {
    auto ctx = PrecisionContext::make(3, 0, 4);

    // 2^{-1} mod 81 via extended Euclid
    CHECK(euclid_inverse(2, 81) == 41);
    Scalar two(ctx, 2);
    CHECK(two.inv().equal_at_precision(Scalar(ctx, 41)));

    // additive identity
    Rng rng(7);
    Scalar a = testutil::random_scalar(rng, ctx);
    CHECK((a + Scalar::zero(ctx)).equal_at_precision(a));

    // (zeta - 1)^2 = -3 zeta mod 9, expanded by hand under zeta^2 = -zeta - 1
    auto ctx31 = PrecisionContext::make(3, 1, 2);
    Scalar pi = Scalar::zeta(ctx31) - Scalar::one(ctx31);
    Scalar sq = pi * pi;
    Scalar expected = -(mpz_class(3) * Scalar::zeta(ctx31));
    CHECK(sq.equal_at_precision(expected));
}

TEST_CASE("context invariants") {
    CHECK_THROWS_AS(PrecisionContext::make(2, 0, 3), ContextMismatch);
    CHECK_THROWS_AS(PrecisionContext::make(9, 0, 3), ContextMismatch);
    CHECK_THROWS_AS(PrecisionContext::make(3, 0, 0), ContextMismatch);
    // guard below the formula bound is rejected
    CHECK_THROWS_AS(PrecisionContext::make(3, 0, 4, 1), ContextMismatch);
    auto ctx = PrecisionContext::make(3, 1, 2);
    CHECK(ctx->phi == 2);
    CHECK(ctx->ram == 2);
}

TEST_CASE("valuation basics") {
    auto ctx = PrecisionContext::make(3, 0, 4);
    CHECK(Scalar(ctx, 9).valuation() == Valuation::of(2, 1));
    CHECK(Scalar(ctx, 0).valuation().infinite);
    auto ctx31 = PrecisionContext::make(3, 1, 2);
    Scalar pi = Scalar::zeta(ctx31) - Scalar::one(ctx31);
    CHECK(pi.valuation() == Valuation::of(1, 2));
}

TEST_CASE("ring axioms hold exactly on random triples") {
    for (auto [p, m, N] : {std::tuple<long, long, long>{3, 0, 4}, {3, 1, 2}, {5, 0, 3}, {5, 1, 2}}) {
        auto ctx = PrecisionContext::make(p, m, N);
        Rng rng(42 + p + 10 * m);
        for (int it = 0; it < 10000 / 4; ++it) {
            Scalar a = testutil::random_scalar(rng, ctx);
            Scalar b = testutil::random_scalar(rng, ctx);
            Scalar c = testutil::random_scalar(rng, ctx);
            CHECK(((a + b) + c).equal_at_precision(a + (b + c)));
            CHECK(((a * b) * c).equal_at_precision(a * (b * c)));
            CHECK((a * (b + c)).equal_at_precision(a * b + a * c));
            CHECK((a * b).equal_at_precision(b * a));
        }
    }
}

TEST_CASE("valuation is a discrete valuation below the ceiling") {
    for (auto [p, m, N] : {std::tuple<long, long, long>{3, 0, 5}, {3, 1, 3}}) {
        auto ctx = PrecisionContext::make(p, m, N);
        Rng rng(11 + p + m);
        for (int it = 0; it < 1000; ++it) {
            Scalar a = testutil::random_scalar(rng, ctx);
            Scalar b = testutil::random_scalar(rng, ctx);
            Valuation va = a.valuation(), vb = b.valuation();
            Valuation vab = (a * b).valuation();
            if (!va.infinite && !vb.infinite && (va + vb) < Valuation::of(N, 1))
                CHECK(vab == va + vb);
            Valuation vsum = (a + b).valuation();
            Valuation lower = va < vb ? va : vb;
            CHECK(vsum >= lower);
        }
    }
}

TEST_CASE("scalar inverse: a * inv(a) = 1 exactly for random units") {
    for (auto [p, m, N] : {std::tuple<long, long, long>{3, 0, 4}, {3, 1, 2}, {5, 1, 2}}) {
        auto ctx = PrecisionContext::make(p, m, N);
        Rng rng(5 + p + m);
        for (int it = 0; it < 200; ++it) {
            Scalar u = testutil::random_unit(rng, ctx);
            Scalar prod = u * u.inv();
            bool exact_one = true;
            for (size_t i = 0; i < prod.coeffs().size(); ++i)
                if (prod.coeffs()[i] != (i == 0 ? mpz_class(1) : mpz_class(0))) exact_one = false;
            CHECK(exact_one);
        }
        Scalar p_elem(ctx, ctx->p);
        CHECK_THROWS_AS(p_elem.inv(), NotAUnit);
    }
}

TEST_CASE("laurent multiplication and the exponent box") {
    auto ctx = PrecisionContext::make(3, 1, 2);
    const long d = 1;
    RingElement t13 = RingElement::variable(ctx, d, 2, 0, 1);  // T^(1/3)
    RingElement prod = t13 * t13;
    RingElement expect = RingElement::variable(ctx, d, 2, 0, 2);
    CHECK(prod.equal_at_precision(expect));

    RingElement one = RingElement::constant(ctx, d, 2, Scalar::one(ctx));
    RingElement t = RingElement::variable(ctx, d, 2, 0, 3);  // T^1
    RingElement lhs = (one + t).mul(one - t, MulPolicy::strict);
    RingElement t2 = RingElement::variable(ctx, d, 2, 0, 6);
    CHECK(lhs.equal_at_precision(one - t2));

    // T^E * T^1 under strict overflows the box
    RingElement te = RingElement::variable(ctx, d, 2, 0, 2 * ctx->pm);
    CHECK_THROWS_AS(te.mul(t, MulPolicy::strict), SupportOverflow);
    RingElement trunc = te.mul(t, MulPolicy::truncate);
    CHECK_FALSE(trunc.exact());
    CHECK(trunc.terms().empty());
}

TEST_CASE("toric galois action") {
    auto ctx = PrecisionContext::make(3, 1, 2);
    RingElement t13 = RingElement::variable(ctx, 1, 3, 0, 1);
    RingElement moved = t13.galois({1});
    CHECK(moved.equal_at_precision(t13.scaled(Scalar::zeta(ctx))));

    RingElement t = RingElement::variable(ctx, 1, 3, 0, 3);  // integer exponent
    CHECK(t.galois({1}).equal_at_precision(t));

    Rng rng(23);
    for (int it = 0; it < 50; ++it) {
        RingElement f(ctx, 2, 4);
        for (int k = 0; k < 4; ++k) {
            ExpVec e = {(long)(rng() % 7) - 3, (long)(rng() % 7) - 3};
            f += RingElement::monomial(ctx, 2, 4, e, testutil::random_scalar(rng, ctx));
        }
        CHECK(f.galois({0, 0}).equal_at_precision(f));
        // automorphism and one-parameter-group laws
        RingElement g(ctx, 2, 4);
        for (int k = 0; k < 3; ++k) {
            ExpVec e = {(long)(rng() % 5) - 2, (long)(rng() % 5) - 2};
            g += RingElement::monomial(ctx, 2, 4, e, testutil::random_scalar(rng, ctx));
        }
        std::vector<long> g1 = {(long)(rng() % 3), (long)(rng() % 3)};
        std::vector<long> g2 = {(long)(rng() % 3), (long)(rng() % 3)};
        std::vector<long> g12 = {g1[0] + g2[0], g1[1] + g2[1]};
        CHECK(f.galois(g1).galois(g2).equal_at_precision(f.galois(g12)));
        CHECK((f * g).galois(g1).equal_at_precision(f.galois(g1) * g.galois(g1)));
    }
}

TEST_CASE("galois action requires a cyclotomic level") {
    auto ctx = PrecisionContext::make(3, 0, 2);
    RingElement t = RingElement::variable(ctx, 1, 2, 0, 1);
    CHECK_THROWS_AS(t.galois({1}), ContextMismatch);
}

TEST_CASE("division by zeta^kappa - 1 inverts multiplication") {
    for (long m : {1L, 2L}) {
        auto ctx = PrecisionContext::make(3, m, 3);
        Rng rng(91 + m);
        for (int it = 0; it < 100; ++it) {
            Scalar x = testutil::random_scalar(rng, ctx);
            long kappa = 1 + (long)(rng() % (unsigned long)(ctx->pm - 1));
            Scalar z = Scalar::zeta(ctx, kappa) - Scalar::one(ctx);
            Scalar prod = x * z;
            Scalar back = prod.divide_by_zeta_pow_minus_one(kappa);
            // the quotient is certified one digit short of working precision
            Scalar diff = back - x;
            Valuation v = diff.valuation();
            CHECK((v.infinite || v >= Valuation::of(ctx->N - 1, 1)));
        }
    }
}

TEST_CASE("operations across different contexts are rejected") {
    auto a = PrecisionContext::make(3, 0, 4);
    auto b = PrecisionContext::make(3, 0, 2);
    CHECK_THROWS_AS(Scalar(a, 1) + Scalar(b, 1), ContextMismatch);
    CHECK_THROWS_AS(Scalar(a, 1) * Scalar(b, 1), ContextMismatch);
    RingElement x = RingElement::constant(a, 1, 2, Scalar::one(a));
    RingElement y = RingElement::constant(a, 2, 2, Scalar::one(a));
    CHECK_THROWS_AS(x + y, ContextMismatch);
}
