#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lgi/ecfp.hpp"
#include "lgi/modpoly.hpp"

using namespace lgi;

namespace {

std::string data(const std::string& name)
{
    return std::string(LGI_DATA_DIR) + "/" + name;
}

ModularPolynomial phi(std::uint32_t ell)
{
    return load_modpoly(data("phi" + std::to_string(ell) + ".txt"));
}

BigRational q(const char* s)
{
    return BigRational::parse(s);
}

ModularPolynomial parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_modpoly(in, "test");
}

std::size_t brute_roots(const FpPoly& f)
{
    std::size_t n = 0;
    for (std::uint64_t x = 0; x < f.modulus(); ++x)
        if (f.eval(x) == 0)
            ++n;
    return n;
}

// y^2 = x^3 + 3k x + 2k with k = j/(1728 - j) has invariant j
bool supersingular_j(std::uint64_t j, std::uint64_t p)
{
    std::uint64_t k = mulmod(j, invmod(submod(1728 % p, j, p), p), p);
    WeierstrassCurve e{0, 0, 0, static_cast<long>(mulmod(3, k, p)), static_cast<long>(mulmod(2, k, p))};
    return count_naive(e, p) % p == 1;
}

const std::string phi2_text = "level 2\n3 0 1\n2 2 -1\n2 1 1488\n2 0 -162000\n1 1 40773375\n"
                              "1 0 8748000000\n0 0 -157464000000000\n";

}  // namespace

TEST_CASE("shipped files load and are consistent")
{
    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u}) {
        ModularPolynomial m = phi(ell);
        CHECK(m.level == ell);
        CHECK(m.degree_x() == ell + 1);
        CHECK(m.coeff(ell + 1, 0) == 1);
        CHECK(m.coeff(0, ell + 1) == 1);
        CHECK(cm_check_failures(m).empty());
        // Kronecker congruence: Phi_ell = (X^ell - Y)(X - Y^ell) mod ell
        for (const auto& [k, c] : m.coeffs) {
            BigInt want = 0;
            if (k == std::pair{ell + 1, 0u})
                want = 1;
            if (k == std::pair{ell, ell} || k == std::pair{1u, 1u})
                want = -1;
            CHECK(reduce_big(c - want, ell) == 0);
        }
    }
    ModularPolynomial p2 = phi(2);
    CHECK(evaluate_at_j(p2, 1728).eval(287496).is_zero());
    CHECK(parse(phi2_text).coeffs == p2.coeffs);
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_WITH_AS(parse(phi2_text + "2 1 5\n"), doctest::Contains("test:9: duplicate"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("level 4\n"), doctest::Contains("test:1"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("# only a comment\n"), doctest::Contains("missing"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("level 2\n3 0 1\n1 2 5\n"), doctest::Contains("test:3"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("level 2\n3 0 1\n2 1 x\n"), doctest::Contains("malformed"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("level 2\n3 0 2\n"), doctest::Contains("not monic"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("level 2\n2 0 1\n"), doctest::Contains("degree"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("level 2\n3 0 1\n3 1 4\n"), doctest::Contains("not monic"), ModpolyError);
    CHECK_THROWS_WITH_AS(parse("level 2\n3 0 1 7\n"), doctest::Contains("test:2"), ModpolyError);
    CHECK_THROWS_AS(load_modpoly("/nonexistent/phi7.txt"), ModpolyError);
}

TEST_CASE("corrupted coefficients are caught on load")
{
    std::string path = "phi7_corrupt_test.txt";
    {
        std::ifstream in(data("phi7.txt"));
        std::ofstream out(path);
        std::string line;
        bool changed = false;
        while (std::getline(in, line)) {
            if (!changed && line.rfind("4 3 ", 0) == 0) {
                line += "1";
                changed = true;
            }
            out << line << '\n';
        }
        REQUIRE(changed);
    }
    CHECK_THROWS_WITH_AS(load_modpoly(path), doctest::Contains("corrupt"), ModpolyError);
    std::remove(path.c_str());
}

TEST_CASE("evaluation at j")
{
    CHECK(evaluate_at_j(phi(2), 0).degree() == 3);
    QPoly f7 = evaluate_at_j(phi(7), 0);
    CHECK(f7.degree() == 8);
    CHECK(f7.coeff(0) == BigRational(phi(7).coeff(0, 0)));
    QPoly g = evaluate_at_j(phi(7), q("2268945/128"));
    CHECK(g.degree() == 8);
    CHECK(g.leading() == 1);
}

TEST_CASE("rational linear factors")
{
    CHECK(rational_linear_factors(evaluate_at_j(phi(7), q("2268945/128"))).empty());
    QPoly f = QPoly::from_descending({1, q("-3/2"), 1, q("-3/2")});  // (X - 3/2)(X^2 + 1)
    CHECK(rational_linear_factors(f) == std::vector<BigRational>{q("3/2")});
    auto r = rational_linear_factors(evaluate_at_j(phi(2), 1728));
    CHECK(std::ranges::find(r, BigRational(287496)) != r.end());
    CHECK(r == std::vector<BigRational>{1728, 287496, 287496});
    CHECK_THROWS(rational_linear_factors(QPoly()));
}

TEST_CASE("divisor and modular root finding agree")
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> d(-40, 40), e(1, 12);
    for (int t = 0; t < 60; ++t) {
        QPoly f = QPoly::from_descending({1});
        for (int k = 0; k < 3; ++k)
            f = f * QPoly::from_descending({e(rng), d(rng)});
        f = f * QPoly::from_descending({1, d(rng), e(rng)});
        auto div = rational_roots_by_divisors(f);
        REQUIRE(div);
        CHECK(*div == rational_roots_modular(f, static_cast<std::uint64_t>(t)));
    }
    for (const char* j : {"-3375", "-121", "1728", "0", "2268945/128", "16581375"})
        for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
            QPoly f = evaluate_at_j(phi(ell), q(j));
            CHECK(rational_roots(f) == rational_roots_modular(f, 1));
        }
}

TEST_CASE("root counts mod p against brute force")
{
    std::mt19937_64 rng(12);
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
        ModularPolynomial m = phi(ell);
        for (std::uint64_t p : primes_in_range(3, 500)) {
            if (p == ell)
                continue;
            for (int t = 0; t < 3; ++t) {
                std::uint64_t j = rng() % p;
                std::size_t n = fp_root_count(m, PrimeFieldElement(static_cast<std::int64_t>(j), p));
                REQUIRE(n == brute_roots(evaluate_mod(m, j, p)));
                std::size_t k = fp_linear_factor_count(m, PrimeFieldElement(static_cast<std::int64_t>(j), p));
                CHECK(k >= n);
                // the number of rational kernels, for ordinary j with Aut = {+-1}
                if (p > 3 && j != 0 && j != 1728 % p && !supersingular_j(j, p))
                    CHECK((k == 0 || k == 1 || k == 2 || k == ell + 1));
            }
        }
    }
    CHECK(fp_root_count(phi(2), PrimeFieldElement(1728, 101)) >= 1);
    CHECK(evaluate_mod(phi(2), 1728, 101).eval(287496 % 101) == 0);
    CHECK_THROWS(fp_root_count(phi(7), PrimeFieldElement(1, 7)));
}

TEST_CASE("rational roots reduce to roots mod p")
{
    for (const char* j : {"-3375", "1728", "16581375", "-32768"}) {
        for (std::uint32_t ell : {2u, 3u, 7u}) {
            ModularPolynomial m = phi(ell);
            BigRational jq = q(j);
            auto roots = rational_linear_factors(evaluate_at_j(m, jq));
            for (std::uint64_t p : primes_in_range(11, 300)) {
                FpPoly f = evaluate_mod(m, jq.mod(p), p);
                for (const auto& r : roots)
                    CHECK(f.eval(r.mod(p)) == 0);
            }
        }
    }
}

TEST_CASE("the level-7 certificate")
{
    ModularPolynomial m = phi(7);
    QPoly target = evaluate_at_j(m, q("2268945/128"));
    auto factors = load_certificate_factors(data("phi7_cert_2268945_128.txt"));
    REQUIRE(factors.size() == 3);
    CertificateReport rep = verify_certificate({target, factors});
    CHECK(rep.product_matches);
    CHECK(rep.all_shapes_ok());
    for (const auto& f : rep.factors) {
        CHECK(f.minus7_shape);
        CHECK(f.irreducible_certified);
        CHECK(f.b >= 1);
        CHECK(f.a > 0);
    }
    // the quadratic's roots live in Q(sqrt(-7))
    REQUIRE(rep.factors[0].degree == 2);
    CHECK((*rep.factors[0].discriminant / BigRational(-7)).sqrt().has_value());

    // tampering breaks the product
    auto bad = factors;
    bad[1] = bad[1] + QPoly::from_descending({q("1/128")});
    CHECK_FALSE(verify_certificate({target, bad}).product_matches);
}

TEST_CASE("trivial certificates")
{
    QPoly f = QPoly::from_descending({1, 0, -1});
    CHECK(verify_certificate({f, {f}}).product_matches);
    auto r = verify_certificate({f, {QPoly::from_descending({1, -1}), QPoly::from_descending({1, 1})}});
    CHECK(r.product_matches);
    for (const auto& c : r.factors)
        CHECK_FALSE(c.discriminant);
}

TEST_CASE("two linear factors mod every good odd prime")
{
    ModularPolynomial m = phi(7);
    BigRational j = q("2268945/128");
    for (std::uint64_t p : primes_in_range(3, 10000)) {
        if (p == 5 || p == 7)
            continue;
        PrimeFieldElement jp(static_cast<std::int64_t>(j.mod(p)), p);
        std::size_t lin = fp_linear_factor_count(m, jp);
        REQUIRE(lin >= 2);
        std::size_t distinct = fp_root_count(m, jp);
        CHECK(distinct >= 1);
        if (distinct < 2) {
            // fewer distinct roots only where Phi_7(X, j) has a repeated root mod p
            FpPoly f = evaluate_mod(m, jp.value(), p);
            std::vector<std::uint64_t> dc;
            for (std::size_t i = 1; i < f.coeffs().size(); ++i)
                dc.push_back(mulmod(i % p, f.coeffs()[i], p));
            CHECK(gcd(f, FpPoly(dc, p)).degree() >= 1);
        }
    }
}
