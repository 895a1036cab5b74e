#include <doctest.h>

#include <random>

#include "lgi/ecq.hpp"

using namespace lgi;

namespace {

BigRational q(const char* s)
{
    return BigRational::parse(s);
}

WeierstrassCurve short_curve(long a4, long a6)
{
    return {0, 0, 0, a4, a6};
}

}  // namespace

TEST_CASE("j-invariants")
{
    CHECK(invariants(counterexample_curve()).j == q("2268945/128"));
    CHECK(invariants(short_curve(0, 1)).j == 0);
    CHECK(invariants(short_curve(1, 0)).j == 1728);
    CHECK(counterexample_curve().discriminant() == 7683200);
    CHECK_THROWS_AS(invariants(short_curve(0, 0)), CurveError);
}

TEST_CASE("curve parsing")
{
    WeierstrassCurve e = WeierstrassCurve::parse("1,-1,0,-107,-379");
    CHECK(invariants(e).j == q("2268945/128"));
    CHECK(WeierstrassCurve::parse("0, 0, 0, 1/2, -3/4").a4 == q("1/2"));
    CHECK_THROWS_AS(WeierstrassCurve::parse("1,2,3"), CurveError);
    CHECK_THROWS_AS(WeierstrassCurve::parse("1,2,3,x,5"), CurveError);
    CHECK_THROWS_AS(WeierstrassCurve::parse("0,0,0,0,0"), CurveError);
}

TEST_CASE("c4^3 - c6^2 = 1728 discriminant on random curves")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int t = 0; t < 300; ++t) {
        WeierstrassCurve e{d(rng), d(rng), d(rng), d(rng), d(rng)};
        if (e.discriminant().is_zero())
            continue;
        CurveInvariants inv = invariants(e);
        CHECK(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6 == BigRational(1728) * inv.discriminant);
        CHECK(inv.discriminant == e.discriminant());
    }
}

TEST_CASE("bad primes")
{
    std::vector<BigInt> want{2, 5, 7};
    CHECK(bad_primes(counterexample_curve()) == want);
    CHECK(bad_primes(short_curve(1, 0)) == std::vector<BigInt>{2});
    for (const auto& p : bad_primes(curve_49a3()))
        CHECK(p == 7);
    CHECK_THROWS(bad_primes(WeierstrassCurve{0, 0, 0, q("1/2"), 1}));
}

TEST_CASE("two-torsion")
{
    auto t = two_torsion_x(curve_49a3());
    REQUIRE(t == std::vector<BigRational>{-12});
    CHECK(curve_49a3().contains(-12, 6));
    CHECK(two_torsion_x(short_curve(-1, 0)) == std::vector<BigRational>{-1, 0, 1});
    CHECK(two_torsion_x(short_curve(0, 2)).empty());

    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(-30, 30);
    for (int k = 0; k < 200; ++k) {
        WeierstrassCurve e{d(rng), d(rng), d(rng), d(rng), d(rng)};
        if (e.discriminant().is_zero())
            continue;
        for (const auto& x : two_torsion_x(e)) {
            BigRational y = -(e.a1 * x + e.a3) / BigRational(2);
            CHECK(e.contains(x, y));
        }
    }
}

TEST_CASE("twist quartic and the map f")
{
    CHECK(quartic_point_check(q("-1/2"), q("1/4")));
    CHECK(quartic_point_check(q("-1/2"), q("-1/4")));
    CHECK_FALSE(quartic_point_check(0, 1));
    CHECK(eval_map_f(q("-1/2")) == q("2268945/128"));
    CHECK(eval_map_f(q("-1/2")) == invariants(counterexample_curve()).j);
    CHECK(eval_map_f(3) == 0);
    CHECK(eval_map_f(2) == 0);
    CHECK_THROWS_AS(quartic_point_check(QuadFieldElement(0, 1, -1), QuadFieldElement(0, 1, -7)), CurveError);
}

TEST_CASE("the Gaussian point on 49a3")
{
    QuadFieldElement u(-14, 0, -1), v(7, 29, -1);
    CHECK(curve_49a3().contains(u, v));
    auto img = map_49a3_to_quartic_x(u, v);
    CHECK(img.x == QuadFieldElement(q("-29/58"), q("7/58"), -1));
    CHECK(img.y_exists);
    CHECK_THROWS_AS(map_49a3_to_quartic_x(BigRational(-12), BigRational(6)), DegeneratePointError);
    CHECK_THROWS_AS(map_49a3_to_quartic_x(BigRational(0), BigRational(1)), CurveError);
}
