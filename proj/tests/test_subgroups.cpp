#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "lgi/subgroups.hpp"

using namespace lgi;

namespace {

using ElementSet = std::set<std::uint32_t>;

// naive saturation, independent of closure()
ElementSet naive_closure(const std::vector<GL2Element>& gens, std::uint32_t ell)
{
    std::vector<GL2Element> elems{GL2Element::identity(ell)};
    ElementSet seen{elems[0].code()};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            GL2Element h = elems[i] * g;
            if (seen.insert(h.code()).second)
                elems.push_back(h);
        }
    return seen;
}

ElementSet conj_set(const ElementSet& s, const GL2Element& x, std::uint32_t ell)
{
    ElementSet out;
    GL2Element xi = x.inverse();
    for (auto c : s)
        out.insert((x * GL2Element::from_code(ell, c) * xi).code());
    return out;
}

struct BruteForce {
    std::set<ElementSet> subgroups;
    std::vector<ElementSet> class_reps;
};

// Every subgroup of GL_2(F_2) and GL_2(F_3) is generated by two elements.
BruteForce brute_force(std::uint32_t ell)
{
    auto all = all_gl2(ell);
    BruteForce bf;
    for (const auto& a : all)
        for (const auto& b : all)
            bf.subgroups.insert(naive_closure({a, b}, ell));
    std::set<ElementSet> assigned;
    for (const auto& h : bf.subgroups) {
        if (assigned.contains(h))
            continue;
        bf.class_reps.push_back(h);
        for (const auto& x : all)
            assigned.insert(conj_set(h, x, ell));
    }
    return bf;
}

std::int64_t alpha_pow(std::uint32_t ell, std::uint32_t e)
{
    return static_cast<std::int64_t>(powmod(primitive_root(ell).value(), e, ell));
}

GL2Element A(std::uint32_t ell, std::uint32_t i, std::uint32_t j)
{
    return GL2Element::diag(ell, alpha_pow(ell, i), alpha_pow(ell, j));
}

GL2Element B(std::uint32_t ell, std::uint32_t i, std::uint32_t j)
{
    return GL2Element::antidiag(ell, alpha_pow(ell, i), alpha_pow(ell, j));
}

}  // namespace

TEST_CASE("closure examples")
{
    GL2Element id[] = {GL2Element::identity(7)};
    CHECK(closure(7, id).order() == 1);
    CHECK(closure(7, std::span<const GL2Element>{}).order() == 1);

    GL2Element diag_gens[] = {GL2Element::diag(7, 3, 1), GL2Element::diag(7, 1, 3)};
    Subgroup split = closure(7, diag_gens);
    CHECK(split.elements() == cartan(CartanKind::split, 7));

    // A(0,2) and B(0,0) alone give only the index-2 subgroup without the
    // non-square scalars; the scalar A(1,1) completes it to order 36
    GL2Element ab[] = {A(7, 0, 2), B(7, 0, 0)};
    Subgroup g18 = closure(7, ab);
    CHECK(g18.order() == 18);
    CHECK(naive_closure({ab[0], ab[1]}, 7).size() == 18);
    GL2Element abs[] = {A(7, 0, 2), B(7, 0, 0), A(7, 1, 1)};
    Subgroup g36 = closure(7, abs);
    CHECK(g36.order() == 36);
    CHECK(std::ranges::any_of(g36.elements(), [](const GL2Element& e) { return e.a() == 0 && e.d() == 0; }));
    CHECK_FALSE(are_conjugate(split, g36));
    CHECK_FALSE(g36.is_abelian());

    GL2Element mixed[] = {GL2Element::identity(7), GL2Element::identity(5)};
    CHECK_THROWS(closure(7, mixed));
}

TEST_CASE("conjugacy")
{
    std::mt19937_64 rng(2);
    auto all = all_gl2(7);
    Subgroup split(7, cartan(CartanKind::split, 7), {});
    for (int t = 0; t < 5; ++t) {
        GL2Element x = all[rng() % all.size()];
        Subgroup c = conjugate(split, x);
        CHECK(are_conjugate(split, c));
        CHECK(conjugacy_key(split) == conjugacy_key(c));
        auto y = conjugating_element(split, c);
        REQUIRE(y);
        CHECK(conjugate(split, *y) == c);
    }
    GL2Element one[] = {GL2Element::identity(7)};
    CHECK(are_conjugate(closure(7, one), closure(7, one)));
    CHECK(normalizer_in_gl2(split).order() == 72);
}

TEST_CASE("enumeration class counts")
{
    auto r2 = enumerate_subgroups(2);
    REQUIRE(r2.size() == 4);
    std::vector<std::size_t> orders;
    for (const auto& g : r2)
        orders.push_back(g.order());
    CHECK(orders == std::vector<std::size_t>{1, 2, 3, 6});
    CHECK_THROWS(enumerate_subgroups(11));
    CHECK_THROWS(enumerate_subgroups(4));
}

TEST_CASE("enumeration matches brute force for small ell")
{
    for (std::uint32_t ell : {2u, 3u}) {
        BruteForce bf = brute_force(ell);
        auto classes = enumerate_subgroups(ell);
        CHECK(classes.size() == bf.class_reps.size());

        std::multiset<std::size_t> want_orders, got_orders;
        for (const auto& h : bf.class_reps)
            want_orders.insert(h.size());
        for (const auto& g : classes)
            got_orders.insert(g.order());
        CHECK(want_orders == got_orders);

        // orbit-stabilizer: the class sizes add up to the number of subgroups
        std::size_t total = 0;
        for (const auto& g : classes)
            total += gl2_order(ell) / normalizer_in_gl2(g).order();
        CHECK(total == bf.subgroups.size());

        // every brute-force subgroup is conjugate to exactly one representative
        for (const auto& h : bf.class_reps) {
            std::vector<GL2Element> elems;
            for (auto c : h)
                elems.push_back(GL2Element::from_code(ell, c));
            Subgroup s(ell, elems, {});
            CHECK(std::ranges::count_if(classes, [&](const Subgroup& g) { return are_conjugate(g, s); }) == 1);
        }
    }
}

TEST_CASE("enumerated representatives are valid and small-generated")
{
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
        auto res = enumerate_subgroups_detailed(ell);
        CHECK(res.max_generators <= 3);
        for (const auto& g : res.classes) {
            CHECK_NOTHROW(g.validate());
            CHECK(gl2_order(ell) % g.order() == 0);
            CHECK(naive_closure(g.generators(), ell).size() == g.order());
        }
        for (std::size_t i = 0; i + 1 < res.classes.size(); ++i) {
            const auto& a = res.classes[i];
            const auto& b = res.classes[i + 1];
            CHECK((a.order() < b.order() || (a.order() == b.order() && conjugacy_key(a) < conjugacy_key(b))));
        }
    }
}

TEST_CASE("serial and parallel enumeration agree")
{
    for (std::uint32_t ell : {3u, 5u}) {
        auto par = enumerate_subgroups(ell, {false, true});
        auto ser = enumerate_subgroups(ell, {false, false});
        REQUIRE(par.size() == ser.size());
        for (std::size_t i = 0; i < par.size(); ++i) {
            CHECK(par[i] == ser[i]);
            CHECK(par[i].generators() == ser[i].generators());
        }
    }
}

TEST_CASE("small generating sets regenerate the group")
{
    Subgroup g(7, normalizer_of_cartan(cartan(CartanKind::nonsplit, 7)), {});
    auto gens = small_generating_set(g, 0);
    CHECK(gens.size() <= 3);
    CHECK(closure(7, gens) == g);
}
