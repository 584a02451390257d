#include "generators.hpp"
#include "loopgrowth/error.hpp"
#include "loopgrowth/space.hpp"

#include <doctest.h>

using namespace loopgrowth;

namespace {

SpaceExpr S(int n) { return SpaceExpr::sphere(n); }

}  // namespace

TEST_CASE("parsing follows precedence and associativity")
{
    CHECK(parse("S3") == S(3));
    CHECK(parse("S2 v S2") == SpaceExpr::wedge(S(2), S(2)));
    CHECK(parse("Susp(S2 ^ S3) x S4")
          == SpaceExpr::product(SpaceExpr::susp(SpaceExpr::smash(S(2), S(3))), S(4)));
    CHECK(parse("S2 v S3 x S4 ^ S5")
          == SpaceExpr::wedge(S(2), SpaceExpr::product(S(3), SpaceExpr::smash(S(4), S(5)))));
    CHECK(parse("S2 v S3 v S4") == SpaceExpr::wedge(SpaceExpr::wedge(S(2), S(3)), S(4)));
    CHECK(parse("(S2 v S3) x S4") == SpaceExpr::product(SpaceExpr::wedge(S(2), S(3)), S(4)));
    CHECK(parse("  S2v S3 ") == parse("S2 v S3"));
    CHECK(parse("S12") == S(12));
}

TEST_CASE("parse errors carry an offset and the expected tokens")
{
    try {
        parse("S2 v ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        CHECK_FALSE(e.expected().empty());
        CHECK(e.kind() == ErrorKind::Parse);
    }
    try {
        parse("S2 S3");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    try {
        parse("S1 v S2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) == "spheres must be simply connected (n ≥ 2)");
        CHECK(e.offset() == 1);  // the dimension digits
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("Susp(S2"), ParseError);
    CHECK_THROWS_AS(parse("T2"), ParseError);
    CHECK_THROWS_AS(SpaceExpr::sphere(1), Error);
}

TEST_CASE("canonical printing uses minimal parentheses")
{
    CHECK(to_string(parse("(S2 v S3)")) == "S2 v S3");
    CHECK(to_string(parse("S2 v (S3 x S4)")) == "S2 v S3 x S4");
    CHECK(to_string(parse("(S2 v S3) x S4")) == "(S2 v S3) x S4");
    CHECK(to_string(parse("S2 v (S3 v S4)")) == "S2 v (S3 v S4)");
    CHECK(to_string(parse("Susp( S2 ^ S3 )")) == "Susp(S2 ^ S3)");
}

TEST_CASE("homology series")
{
    CHECK(homology_gf(S(3)) == RationalGF(IntPolynomial{1, 0, 0, 1}));
    CHECK(homology_gf(parse("S2 x S3")) == RationalGF(IntPolynomial{1, 0, 1, 1, 0, 1}));
    CHECK(homology_gf(parse("S2 ^ S3")) == RationalGF(IntPolynomial{1, 0, 0, 0, 0, 1}));
    CHECK(homology_gf(parse("S2 v S2")) == RationalGF(IntPolynomial{1, 0, 2}));
    CHECK(reduced_homology(parse("Susp(S2 v S4)")) == IntPolynomial{0, 0, 0, 1, 0, 1});
}

TEST_CASE("connectivity and dimension")
{
    SpaceProfile a = profile(S(3));
    CHECK(a.connectivity == 2);
    CHECK(a.dimension == 3);
    CHECK(a.rationally_nontrivial);
    SpaceProfile b = profile(parse("S2 v S5"));
    CHECK(b.connectivity == 1);
    CHECK(b.dimension == 5);
    SpaceProfile c = profile(parse("Susp(S2 ^ S2)"));
    CHECK(c.connectivity == 4);
    CHECK(c.dimension == 5);
    CHECK(least_reduced_degree(parse("S4 v S3 x S3")) == 3);
}

TEST_CASE("wedge decompositions of suspensions")
{
    CHECK(wedge_decomposition(parse("Susp(S2 v S2)")) == SphereList{{3, 2}});
    CHECK(wedge_decomposition(parse("S2 v S2 v S5")) == SphereList{{2, 2}, {5, 1}});
    CHECK(wedge_decomposition(parse("Susp(S2 ^ (S2 v S3))")) == SphereList{{5, 1}, {6, 1}});
    CHECK(wedge_decomposition(parse("Susp(S2 x S3)")) == SphereList{{3, 1}, {4, 1}, {6, 1}});
    CHECK(wedge_decomposition(parse("S2 ^ (S2 x S2)")) == SphereList{{4, 2}, {6, 1}});
    CHECK_THROWS_WITH_AS(wedge_decomposition(parse("S2 x S2")),
                         "not rationally a wedge of spheres: product detected", Error);
    CHECK(is_rational_suspension(parse("Susp(S2 x S2) v S3")));
    CHECK_FALSE(is_rational_suspension(parse("S2 v S2 x S2")));
}

TEST_CASE("property: suspension shifts and smash multiplies reduced series")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        SpaceExpr x = gen::space(rng, 3);
        SpaceExpr y = gen::space(rng, 3);
        CHECK(reduced_homology(SpaceExpr::susp(x)) == reduced_homology(x).shifted(1));
        CHECK(reduced_homology(SpaceExpr::smash(x, y)) == reduced_homology(x) * reduced_homology(y));
        CHECK(reduced_homology(SpaceExpr::wedge(x, y)) == reduced_homology(x) + reduced_homology(y));
        CHECK(homology_gf(SpaceExpr::product(x, y)) == homology_gf(x) * homology_gf(y));
    }
}

TEST_CASE("property: reduced series lives between connectivity and dimension")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        SpaceExpr x = gen::space(rng, 4);
        SpaceProfile p = profile(x);
        IntPolynomial red = reduced_homology(x);
        CHECK(p.connectivity >= 1);
        CHECK(p.connectivity < p.dimension);
        CHECK(red.degree() <= p.dimension);
        for (int i = 0; i <= std::min(p.connectivity, red.degree()); ++i)
            CHECK(red[static_cast<std::size_t>(i)] == 0);
        CHECK(p.rationally_nontrivial == !red.is_zero());
    }
}

TEST_CASE("property: print then parse is the identity")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        SpaceExpr x = gen::space(rng, 4, 12);
        CHECK(parse(to_string(x)) == x);
    }
}

TEST_CASE("property: wedge decompositions reconstruct the reduced series")
{
    std::mt19937_64 rng(14);
    int defined = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SpaceExpr x = gen::space(rng, 3);
        if (!is_rational_suspension(x)) {
            CHECK_THROWS_AS(wedge_decomposition(x), Error);
            continue;
        }
        ++defined;
        IntPolynomial sum;
        for (const auto& [dim, mult] : wedge_decomposition(x)) {
            CHECK(dim >= 2);
            CHECK(mult > 0);
            sum = sum + IntPolynomial::monomial(mult, static_cast<std::size_t>(dim));
        }
        CHECK(sum == reduced_homology(x));
    }
    CHECK(defined > 30);
}
