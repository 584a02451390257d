#include "generators.hpp"
#include "loopgrowth/error.hpp"
#include "loopgrowth/loop.hpp"

#include <doctest.h>

#include <cmath>

using namespace loopgrowth;

namespace {

SpaceExpr S(int n) { return SpaceExpr::sphere(n); }

CofiberPresentation cofiber(const char* a, const char* z)
{
    return CofiberPresentation{parse(a), parse(z), true, "test"};
}

oracle::Series series(const RationalGF& f, std::size_t N) { return expand(f, N).coeffs(); }

// 1/(1-z)^a (1-z^2)^b ... as a truncated series, from geometric factors.
oracle::Series geometric_in(const std::vector<long>& den, std::size_t N)
{
    return oracle::reciprocal(oracle::from_coeffs(den, N));
}

std::vector<Integer> integers(const oracle::Series& s)
{
    std::vector<Integer> out;
    for (const Rational& r : s) {
        REQUIRE(r.get_den() == 1);
        out.push_back(r.get_num());
    }
    return out;
}

}  // namespace

TEST_CASE("loop series of spheres, products and wedges")
{
    CHECK(loop_gf(S(2)) == RationalGF(IntPolynomial{1}, IntPolynomial{1, -1}));
    CHECK(loop_gf(parse("S2 v S2")) == RationalGF(IntPolynomial{1}, IntPolynomial{1, -2}));
    CHECK(loop_gf(parse("S2 x S2")) == RationalGF(IntPolynomial{1}, IntPolynomial{1, -2, 1}));
    CHECK(loop_gf(parse("Susp(S2 x S2)")) == RationalGF(IntPolynomial{1}, IntPolynomial{1, 0, -2, 0, -1}));
    CHECK(loop_gf(parse("S3 ^ S2")) == loop_gf(S(5)));
    CHECK_THROWS_WITH_AS(loop_gf(parse("(S2 x S2) ^ (S3 x S3)")), doctest::Contains("loop series not expressible"),
                         Error);
}

TEST_CASE("loop of a sphere smashed with a loop space")
{
    const std::size_t N = 20;
    RationalGF a = loop_smash_sphere(2, S(3));
    CHECK(a == RationalGF(IntPolynomial{1, 0, -1}, IntPolynomial{1, -1, -1}));
    // Defining formula evaluated by truncated-series arithmetic.
    oracle::Series omega_z = geometric_in({1, 0, -1}, N);
    CHECK(series(a, N) == oracle::reciprocal(oracle::sub(oracle::one(N), oracle::shift(omega_z, 1))));

    RationalGF b = loop_smash_sphere(3, S(2));
    CHECK(b == RationalGF(IntPolynomial{1, -1}, IntPolynomial{1, -1, -1}));
    // Coefficients satisfy the Fibonacci recurrence from degree 2 on.
    auto c = series(b, N);
    for (std::size_t k = 3; k <= N; ++k)
        CHECK(c[k] == c[k - 1] + c[k - 2]);
    CHECK_THROWS_AS(loop_smash_sphere(1, S(2)), Error);
}

TEST_CASE("inert cofibrations")
{
    CHECK(inert_cofiber_loop_gf(cofiber("S2", "S2 x S2")) == loop_gf(parse("S2 v S2")));
    CHECK(inert_cofiber_loop_gf(cofiber("S2", "S3")) == RationalGF(IntPolynomial{1}, IntPolynomial{1, 0, -2}));
    CofiberPresentation not_inert{S(2), S(3), false, ""};
    CHECK_THROWS_AS(inert_cofiber_loop_gf(not_inert), Error);
}

TEST_CASE("generalized connected sums")
{
    const std::size_t N = 20;
    ConnSumPresentation four{S(3), parse("S2 x S2"), parse("S2 x S2"), true, "test"};
    // Omega(M v N) = 1 / (1/L + 1/R - 1) with L = R = 1/(1-z)^2, then the collar formula.
    oracle::Series l = geometric_in({1, -2, 1}, N);
    oracle::Series inv_l = oracle::reciprocal(l);
    oracle::Series wedge = oracle::reciprocal(oracle::sub(oracle::add(inv_l, inv_l), oracle::one(N)));
    oracle::Series expected
        = oracle::mul(wedge, oracle::reciprocal(oracle::sub(oracle::one(N), oracle::shift(wedge, 3))));
    CHECK(series(connected_sum_loop_gf(four), N) == expected);

    // With redA = z^2 the collar formula gives (1/(1-2z^2)) / (1 - z^2/(1-2z^2)) = 1/(1-3z^2).
    ConnSumPresentation odd{S(2), S(3), S(3), true, "test"};
    CHECK(connected_sum_loop_gf(odd) == RationalGF(IntPolynomial{1}, IntPolynomial{1, 0, -3}));

    ConnSumPresentation not_inert{S(2), S(3), S(3), false, ""};
    CHECK_THROWS_AS(connected_sum_loop_gf(not_inert), Error);
}

TEST_CASE("the class of spaces with a product quotient")
{
    YClassPresentation y{2, 5, S(2), "test"};
    CHECK(y_class_loop_gf(y) == inert_cofiber_loop_gf(cofiber("S2", "S2 x S3")));
    const std::size_t N = 20;
    oracle::Series omega_z = geometric_in({1, -1, -1, 1}, N);  // (1-z)(1-z^2)
    CHECK(series(y_class_loop_gf(y), N)
          == oracle::mul(omega_z, oracle::reciprocal(oracle::sub(oracle::one(N), oracle::shift(omega_z, 2)))));
    CHECK_NOTHROW(y_class_loop_gf(YClassPresentation{2, 4, S(2), "boundary"}));
    CHECK_THROWS_WITH_AS(y_class_loop_gf(YClassPresentation{3, 5, S(2), ""}), doctest::Contains("not in class"),
                         Error);
    CHECK_THROWS_AS(y_class_loop_gf(YClassPresentation{1, 4, S(2), ""}), Error);
}

TEST_CASE("strong inertness")
{
    InertnessCheck a = strongly_inert_check(cofiber("S2", "S2 x S2"));
    CHECK(a.strongly_inert);
    CHECK(a.rho_loop_y.lo() <= Rational(1, 2));
    CHECK(a.rho_loop_y.hi() >= Rational(1, 2));
    CHECK(a.rho_loop_z.lo() == 1);

    InertnessCheck b = strongly_inert_check(cofiber("S2", "S3"));
    CHECK(b.strongly_inert);
    CHECK(b.rho_loop_y.lo() * b.rho_loop_y.lo() * 2 <= 1);
    CHECK(b.rho_loop_y.hi() * b.rho_loop_y.hi() * 2 >= 1);

    CHECK_THROWS_WITH_AS(strongly_inert_check(CofiberPresentation{S(2), S(3), false, ""}),
                         "strongly inert is only defined for inert maps", Error);
}

TEST_CASE("divergence at the radius")
{
    CHECK(omega_at_rho_infinite(S(3)));
    CHECK(omega_at_rho_infinite(parse("S2 v S2")));
    CHECK_FALSE(omega_at_rho_infinite(RationalGF::one()));
    CHECK(elliptic_proxy(smallest_positive_pole(loop_gf(parse("S3 x S5")))));
    CHECK_FALSE(elliptic_proxy(smallest_positive_pole(loop_gf(parse("S3 v S5")))));
}

TEST_CASE("good growth verdicts")
{
    GrowthVerdict v = good_growth_verdict(cofiber("S2", "S2 x S2"));
    CHECK(v.good_growth == GoodGrowth::StronglyInert);
    CHECK(std::string(to_string(v.good_growth)) == "CERTIFIED_STRONGLY_INERT");
    CHECK(v.log_index.value == doctest::Approx(std::log(2.0)));
    CHECK_FALSE(v.elliptic);
    CHECK(v.strongly_inert == true);

    GrowthVerdict w = good_growth_verdict(cofiber("S2", "S3"));
    CHECK(w.good_growth == GoodGrowth::StronglyInert);
    CHECK(w.log_index.value == doctest::Approx(0.5 * std::log(2.0)));
    // The pole-divergence route also applies.
    CHECK(omega_at_rho_infinite(S(3)));

    GrowthVerdict c = connected_sum_verdict(ConnSumPresentation{S(3), parse("S2 x S2"), parse("S2 x S2"), true, "x"});
    CHECK(c.good_growth != GoodGrowth::NotCertified);
    GrowthVerdict y = y_class_verdict(YClassPresentation{2, 5, S(2), "x"});
    CHECK(y.good_growth == GoodGrowth::StronglyInert);
    CHECK_THROWS_AS(good_growth_verdict(CofiberPresentation{S(2), S(3), false, ""}), Error);
}

TEST_CASE("rational homotopy ranks by PBW inversion")
{
    PiRankTable a = pi_ranks(loop_gf(S(3)), 10);
    CHECK(a.ranks[2] == 1);
    for (std::size_t i = 1; i <= 10; ++i)
        if (i != 2)
            CHECK(a.ranks[i] == 0);

    PiRankTable b = pi_ranks(loop_gf(S(2)), 10);
    CHECK(b.ranks[1] == 1);
    CHECK(b.ranks[2] == 1);
    for (std::size_t i = 3; i <= 10; ++i)
        CHECK(b.ranks[i] == 0);

    PiRankTable c = pi_ranks(loop_gf(parse("S3 v S3")), 10);
    const std::vector<long> expected{0, 0, 2, 0, 1, 0, 2, 0, 3, 0, 6};
    for (std::size_t i = 1; i <= 10; ++i)
        CHECK(c.ranks[i] == expected[i]);
    // Two even letters: Lyndon counts by brute force.
    auto lyndon = oracle::lyndon_counts({2, 2}, 10);
    for (std::size_t i = 1; i <= 10; ++i)
        CHECK(c.ranks[i] == lyndon[i]);

    CHECK_THROWS_WITH_AS(pi_ranks(RationalGF(IntPolynomial{1, -1}), 5),
                         doctest::Contains("not the Hilbert series of a universal enveloping algebra"), Error);
}

TEST_CASE("property: the two cofibration formulas agree for sphere collars")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        SpaceExpr z = gen::loopable(rng, 2, 4);
        const int n_alpha = gen::uniform(rng, 3, 6);
        CofiberPresentation c{S(n_alpha - 1), z, true, "test"};
        CHECK(inert_cofiber_loop_gf(c) == loop_gf(z) * loop_smash_sphere(n_alpha, z));
    }
}

TEST_CASE("property: wedge loop series counts words")
{
    for (int a = 2; a <= 6; ++a)
        for (int b = a; b <= 6; ++b) {
            auto words = oracle::compositions({a - 1, b - 1}, 30);
            CHECK(integers(series(loop_gf(SpaceExpr::wedge(S(a), S(b))), 30)) == words);
        }
}

TEST_CASE("property: strongly inert radii are certified and ordered")
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        CofiberPresentation c{gen::suspension(rng, 1, 4), gen::loopable(rng, 2, 4), true, "test"};
        InertnessCheck check = strongly_inert_check(c);
        if (!check.strongly_inert)
            continue;
        if (check.rho_loop_z.is_infinite())
            continue;
        CHECK(check.rho_loop_y.hi() < check.rho_loop_z.lo());
    }
}

TEST_CASE("property: PBW ranks rebuild the loop series")
{
    std::mt19937_64 rng(23);
    const std::size_t N = 24;
    for (int trial = 0; trial < 30; ++trial) {
        SpaceExpr x = gen::loopable(rng, 2, 5);
        RationalGF gf = loop_gf(x);
        PiRankTable t = pi_ranks(gf, N);
        for (std::size_t i = 1; i <= N; ++i)
            CHECK(t.ranks[i] >= 0);
        CHECK(oracle::pbw_product(t.ranks, N, true) == integers(series(gf, N)));
    }
}

TEST_CASE("property: the splitting fibre grows faster than the quotient")
{
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 30; ++trial) {
        CofiberPresentation c{gen::suspension(rng, 1, 4), gen::loopable(rng, 2, 4), true, "test"};
        Radius fibre = smallest_positive_pole(splitting_fiber_loop_gf(c));
        Radius quotient = smallest_positive_pole(loop_gf(c.quotient));
        CHECK(compare(fibre, quotient) == std::partial_ordering::less);
        GrowthVerdict v = good_growth_verdict(c);
        CHECK(v.good_growth != GoodGrowth::NotCertified);
    }
}
