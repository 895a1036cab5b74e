#include <doctest.h>

#include <algorithm>
#include <random>

#include "lgi/gl2.hpp"

using namespace lgi;

namespace {

GL2Element random_element(std::uint32_t ell, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int64_t> d(0, ell - 1);
    for (;;) {
        std::int64_t a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        if (((a * e - b * c) % ell + ell) % ell != 0)
            return GL2Element(ell, a, b, c, e);
    }
}

// independent oracle: sign by counting inversions
int inversion_sign(const std::vector<std::uint32_t>& perm)
{
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                s = -s;
    return s;
}

}  // namespace

TEST_CASE("matrix basics")
{
    CHECK_THROWS_AS(GL2Element(7, 1, 2, 2, 4), GroupError);
    CHECK_THROWS_AS(GL2Element(8, 1, 0, 0, 1), std::exception);
    GL2Element g(7, 3, 1, 4, 2);
    CHECK((g * g.inverse()).is_identity());
    CHECK(GL2Element::from_code(7, g.code()) == g);
    CHECK(gl2_order(7) == 2016);
    CHECK(all_gl2(3).size() == 48);
    CHECK(all_pgl2_lifts(5).size() == 120);
    CHECK(g.pow(g.order()).is_identity());
    CHECK_THROWS(GL2Element::identity(7) * GL2Element::identity(5));
}

TEST_CASE("projective line action")
{
    CHECK(act(GL2Element::identity(7), ProjPoint(7, 1, 5)) == ProjPoint(7, 1, 5));
    CHECK(act(GL2Element::diag(7, 3, 1), ProjPoint(7, 1, 1)) == ProjPoint(7, 1, 5));
    CHECK(act(GL2Element::antidiag(7, 1, 1), ProjPoint(7, 1, 0)) == ProjPoint(7, 0, 1));
    CHECK_THROWS(ProjPoint(7, 0, 0));
    for (std::uint32_t ell : {2u, 3u, 7u, 13u}) {
        std::vector<ProjPoint> pts;
        for (std::uint32_t x = 0; x < ell; ++x)
            for (std::uint32_t y = 0; y < ell; ++y)
                if (x || y)
                    pts.emplace_back(ell, x, y);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        CHECK(pts.size() == ell + 1);
        for (std::uint32_t i = 0; i <= ell; ++i)
            CHECK(ProjPoint::from_index(ell, i).index() == i);
    }
}

TEST_CASE("action profile examples")
{
    auto id = action_profile(GL2Element::identity(7));
    CHECK(id.r == 1);
    CHECK(id.k == 8);
    CHECK(id.s == 8);
    CHECK(id.sigma == 1);
    auto w = action_profile(GL2Element::antidiag(7, 1, 1));
    CHECK(w.r == 2);
    CHECK(w.k == 2);
    CHECK(w.s == 5);
    CHECK(w.sigma == -1);
    auto t = action_profile(GL2Element::diag(7, 3, 1));
    CHECK(t.r == 6);
    CHECK(t.k == 2);
    CHECK(t.s == 3);
    CHECK(t.sigma == -1);
}

TEST_CASE("action profile invariants on random matrices")
{
    std::mt19937_64 rng(11);
    auto primes = std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 97};
    for (int trial = 0; trial < 2000; ++trial) {
        std::uint32_t ell = primes[rng() % primes.size()];
        GL2Element g = random_element(ell, rng);
        auto prof = action_profile(g);
        CHECK((prof.k == 0 || prof.k == 1 || prof.k == 2 || prof.k == ell + 1));
        std::uint32_t sum = 0, ones = 0;
        for (auto s : prof.orbit_sizes) {
            sum += s;
            if (s == 1)
                ++ones;
            else
                CHECK(s == prof.r);
        }
        CHECK(sum == ell + 1);
        CHECK(ones == prof.k);
        CHECK(prof.s == prof.orbit_sizes.size());
        ProjectiveLine line(ell);
        CHECK(prof.sigma == inversion_sign(line.permutation(g)));
        if (ell > 2) {
            CHECK(prof.sigma == ((prof.s % 2 == 0) ? 1 : -1));
            bool det_square = PrimeFieldElement::unchecked(g.det(), ell).is_square();
            CHECK((prof.sigma == 1) == det_square);
        }
    }
}

TEST_CASE("sign is multiplicative")
{
    std::mt19937_64 rng(5);
    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u, 31u}) {
        ProjectiveLine line(ell);
        for (int t = 0; t < 100; ++t) {
            GL2Element a = random_element(ell, rng), b = random_element(ell, rng);
            CHECK(permutation_sign(line.permutation(a * b)) ==
                  permutation_sign(line.permutation(a)) * permutation_sign(line.permutation(b)));
        }
    }
}

TEST_CASE("unipotent elements have one fixed line and one long orbit")
{
    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u}) {
        for (const auto& g : all_gl2(ell)) {
            if (g.order() != ell)
                continue;
            auto prof = action_profile(g);
            CHECK(prof.k == 1);
            CHECK(prof.s == 2);
            CHECK(prof.orbit_sizes == std::vector<std::uint32_t>{1, ell});
        }
    }
}

TEST_CASE("cartan subgroups and normalizers")
{
    CHECK(cartan(CartanKind::split, 7).size() == 36);
    CHECK(cartan(CartanKind::nonsplit, 7, 3).size() == 48);
    CHECK(cartan(CartanKind::nonsplit, 2).size() == 3);
    CHECK(normalizer_of_cartan(cartan(CartanKind::split, 7)).size() == 72);
    CHECK(normalizer_of_cartan(cartan(CartanKind::nonsplit, 7)).size() == 96);
    CHECK(normalizer_of_cartan(cartan(CartanKind::split, 3)).size() == 8);
    CHECK_THROWS(cartan(CartanKind::nonsplit, 7, 2));  // 2 is a square mod 7
    CHECK_THROWS(cartan(CartanKind::nonsplit, 2, 1));

    for (std::uint32_t ell : {3u, 5u, 7u, 11u, 13u}) {
        for (CartanKind kind : {CartanKind::split, CartanKind::nonsplit}) {
            auto c = cartan(kind, ell);
            CHECK(c.size() == (kind == CartanKind::split ? (ell - 1) * (ell - 1) : ell * ell - 1));
            for (std::uint32_t s = 1; s < ell; ++s)
                CHECK(std::binary_search(c.begin(), c.end(), GL2Element::scalar(ell, s)));
            for (const auto& x : c)
                for (const auto& y : c)
                    REQUIRE(x * y == y * x);
            CHECK(normalizer_of_cartan(c).size() == 2 * c.size());
        }
    }
}
