// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "lgi/classno.hpp"
#include "lgi/ecfp.hpp"
#include "lgi/ecq.hpp"
#include "lgi/localglobal.hpp"
#include "lgi/modpoly.hpp"

using namespace lgi;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> failures;
    std::ostringstream note;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

ModularPolynomial phi(std::uint32_t ell)
{
    return load_modpoly(std::string(LGI_DATA_DIR) + "/phi" + std::to_string(ell) + ".txt");
}

BigRational q(const char* s)
{
    return BigRational::parse(s);
}

// 1. Lemma verified over every conjugacy class for ell <= 7
void criterion1(Outcome& o)
{
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
        LemmaVerification v = lemma1_verify(ell);
        o.require(v.violation_count() == 0, "violation at ell = " + std::to_string(ell));
        if (ell != 7) {
            o.require(v.reports.empty(), "hypothesis met at ell = " + std::to_string(ell));
            continue;
        }
        o.require(!v.reports.empty(), "no hypothesis class at ell = 7");
        for (const auto& r : v.reports)
            o.require(r.n == 3 && r.cartan_kind == CartanKind::split && r.proper_containment &&
                          r.has_orbit_of_size_2 && r.nontrivial_fix_two,
                      "ell = 7 class of order " + std::to_string(r.group.order()));
        o.note << "ell=7 classes meeting the hypothesis: " << v.reports.size();
    }
}

// 2. element action profiles on random matrices
void criterion2(Outcome& o)
{
    std::mt19937_64 rng(2024);
    auto primes = primes_in_range(2, 97);
    for (int t = 0; t < 10000; ++t) {
        auto ell = static_cast<std::uint32_t>(primes[rng() % primes.size()]);
        std::uniform_int_distribution<std::int64_t> d(0, ell - 1);
        std::int64_t a, b, c, e;
        do {
            a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        } while ((a * e - b * c) % ell == 0);
        auto prof = action_profile(GL2Element(ell, a, b, c, e));
        bool ok = prof.k == 0 || prof.k == 1 || prof.k == 2 || prof.k == ell + 1;
        for (auto s : prof.orbit_sizes)
            ok = ok && (s == 1 || s == prof.r);
        if (ell > 2)
            ok = ok && prof.sigma == (prof.s % 2 == 0 ? 1 : -1);
        o.require(ok, "profile over F_" + std::to_string(ell));
        if (!ok)
            return;
    }
    o.note << "10000 matrices";
}

// 3. the dihedral construction for every admissible (ell, n)
void criterion3(Outcome& o)
{
    std::size_t cases = 0;
    for (std::uint32_t ell = 7; ell <= 43; ++ell) {
        if (!is_prime(ell) || ell % 4 != 3)
            continue;
        for (std::uint32_t n = 3; n <= (ell - 1) / 2; n += 2) {
            if (((ell - 1) / 2) % n != 0)
                continue;
            Prop3Properties p = prop3_properties(construct_prop3_group(ell, n));
            o.require(p.holds(n), "(" + std::to_string(ell) + ", " + std::to_string(n) + ")");
            if (ell == 7)
                o.require(p.orbit_sizes == std::vector<std::uint32_t>{2, 3, 3}, "orbits at (7, 3)");
            ++cases;
        }
    }
    o.note << cases << " (ell, n) pairs";
}

// every F_p-root of f is a multiple root
bool only_multiple_roots(const FpPoly& f)
{
    const std::uint64_t p = f.modulus();
    std::vector<std::uint64_t> dc;
    for (std::size_t i = 1; i < f.coeffs().size(); ++i)
        dc.push_back(mulmod(i % p, f.coeffs()[i], p));
    FpPoly df(dc, p);
    for (std::uint64_t x = 0; x < p; ++x)
        if (f.eval(x) == 0 && df.eval(x) != 0)
            return false;
    return true;
}

// 4. the counterexample end to end
void criterion4(Outcome& o)
{
    const WeierstrassCurve e = counterexample_curve();
    const BigRational j = q("2268945/128");
    o.require(invariants(e).j == j, "j-invariant");
    o.require(bad_primes(e) == std::vector<BigInt>{2, 5, 7}, "bad primes");

    ScanReport scan = local_scan(e, 7, 10000);
    o.require(scan.all_admit(), "Frobenius criterion fails at some good prime");
    o.require(scan.entries.size() + scan.bad.size() + scan.skipped.size() == primes_in_range(2, 10000).size(),
              "scan covers every prime");

    // "two linear factors in F_p[X]": counted with multiplicity, since at a
    // few primes the two roots coincide
    ModularPolynomial m = phi(7);
    std::size_t coincide = 0;
    for (const auto& en : scan.entries) {
        PrimeFieldElement jp(static_cast<std::int64_t>(j.mod(en.p)), en.p);
        o.require(fp_linear_factor_count(m, jp) >= 2, "fewer than two linear factors mod " + std::to_string(en.p));
        if (fp_root_count(m, jp) < 2) {
            ++coincide;
            o.require(only_multiple_roots(evaluate_mod(m, jp.value(), en.p)) || fp_root_count(m, jp) == 0,
                      "fewer than two distinct roots without a double root mod " + std::to_string(en.p));
        }
    }
    o.note << "good primes: " << scan.entries.size() << "; two linear factors with multiplicity at all; "
           << "fewer than two distinct roots at " << coincide << ", each a double root";

    QPoly f = evaluate_at_j(m, j);
    o.require(rational_linear_factors(f).empty(), "Phi_7(X, j) has a rational root");
    auto factors = load_certificate_factors(std::string(LGI_DATA_DIR) + "/phi7_cert_2268945_128.txt");
    CertificateReport cert = verify_certificate({f, factors});
    o.require(cert.product_matches, "certificate product");
    o.require(cert.factors.size() == 3 && cert.all_shapes_ok() &&
                  std::ranges::all_of(cert.factors, [](const FactorCheck& c) { return c.minus7_shape; }),
              "discriminant shapes");
    o.require(eval_map_f(q("-1/2")) == j, "f(-1/2)");
    o.require(quartic_point_check(q("-1/2"), q("1/4")) && quartic_point_check(q("-1/2"), q("-1/4")),
              "quartic points");
    auto img = map_49a3_to_quartic_x(QuadFieldElement(-14, 0, -1), QuadFieldElement(7, 29, -1));
    o.require(img.x == QuadFieldElement(q("-29/58"), q("7/58"), -1), "Gaussian point image");
}

// 5. local criterion against modular polynomial roots, at every good prime
void criterion5(Outcome& o)
{
    std::vector<ModularPolynomial> phis{phi(2), phi(3), phi(5), phi(7)};
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<long> d(-500, 500);
    std::size_t compared = 0, ordinary_off = 0, ss_off = 0, ss_double_roots = 0;
    std::string first;
    for (int c = 0; c < 200; ++c) {
        WeierstrassCurve e;
        do
            e = WeierstrassCurve{d(rng), d(rng), d(rng), d(rng), d(rng)};
        while (e.discriminant().is_zero());
        BigRational j = invariants(e).j;
        for (std::uint64_t p : primes_in_range(3, 500)) {
            if (e.discriminant().mod(p) == 0)
                continue;
            std::uint64_t jp = j.mod(p);
            if (jp == 0 || jp == 1728 % p)
                continue;
            LocalData ld = reduce_and_count(e, p);
            for (const auto& m : phis) {
                if (p == m.level)
                    continue;
                ++compared;
                bool root = fp_root_count(m, PrimeFieldElement(static_cast<std::int64_t>(jp), p)) > 0;
                bool admitted = local_isogeny_admitted(ld, m.level);
                if (admitted == root)
                    continue;
                if (first.empty())
                    first = "curve [" + e.str() + "], p = " + std::to_string(p) + ", ell = " +
                            std::to_string(m.level) + ", a_p = " + std::to_string(*ld.a_p);
                if (!ld.supersingular) {
                    ++ordinary_off;
                    continue;
                }
                ++ss_off;
                if (!admitted && only_multiple_roots(evaluate_mod(m, jp, p)))
                    ++ss_double_roots;
            }
        }
    }
    o.require(ordinary_off + ss_off == 0, std::to_string(ordinary_off + ss_off) + " disagreements, e.g. " + first);
    o.note << compared << " comparisons; ordinary disagreements: " << ordinary_off
           << "; supersingular disagreements: " << ss_off << ", of which " << ss_double_roots
           << " have Frobenius rejecting while every F_p-root of Phi is a double root";
}

// 6. class numbers and the ratio formula
void criterion6(Outcome& o)
{
    o.require(class_number(-7) == 1 && class_number(-36) == 2 && class_number(-343) == 7, "class numbers");
    std::size_t n = 0;
    for (std::int64_t D = -3; D > -500; --D) {
        if (((D % 4) + 4) % 4 > 1 || !QuadOrder::make(D).fundamental)
            continue;
        for (std::uint64_t ell : {3u, 5u, 7u, 11u, 13u}) {
            o.require(ratio_check(D, ell).agree, "ratio at D = " + std::to_string(D));
            ++n;
        }
    }
    for (std::uint64_t ell = 8; ell <= 200; ++ell)
        if (is_prime(ell) && ell % 4 == 3)
            o.require(exceptional_cm_contradiction(ell), "contradiction at " + std::to_string(ell));
    o.note << n << " ratio checks";
}

// 7. Gauss sums
void criterion7(Outcome& o)
{
    long double worst = 0;
    for (std::uint64_t ell : primes_in_range(3, 200)) {
        GaussSumSquare g = gauss_sum_square(ell);
        long double want = ell % 4 == 1 ? static_cast<long double>(ell) : -static_cast<long double>(ell);
        long double err = std::hypot(g.real - want, g.imag);
        worst = std::max(worst, err);
        o.require(err < 1e-9L, "ell = " + std::to_string(ell));
    }
    o.note << "max error " << static_cast<double>(worst);
}

std::set<std::vector<std::uint32_t>> brute_subgroups(std::uint32_t ell)
{
    auto all = all_gl2(ell);
    std::set<std::vector<std::uint32_t>> out;
    for (const auto& a : all)
        for (const auto& b : all) {
            std::vector<GL2Element> elems{GL2Element::identity(ell)};
            std::set<std::uint32_t> seen{elems[0].code()};
            for (std::size_t i = 0; i < elems.size(); ++i)
                for (const GL2Element& g : {a, b}) {
                    GL2Element h = elems[i] * g;
                    if (seen.insert(h.code()).second)
                        elems.push_back(h);
                }
            out.emplace(seen.begin(), seen.end());
        }
    return out;
}

// 8. oracle equivalences
void criterion8(Outcome& o)
{
    std::mt19937_64 rng(88);
    std::uniform_int_distribution<long> d(-100000, 100000);
    std::size_t counts = 0;
    for (int c = 0; c < 50; ++c) {
        WeierstrassCurve e;
        do
            e = WeierstrassCurve{d(rng), d(rng), d(rng), d(rng), d(rng)};
        while (e.discriminant().is_zero());
        for (std::uint64_t p : primes_in_range(3, 1 << 14)) {
            if (e.discriminant().mod(p) == 0)
                continue;
            std::uint64_t naive = count_naive(e, p);
            std::uint64_t via = naive;
            if (auto b = count_bsgs(e, p, static_cast<std::uint64_t>(c)))
                via = *b;
            else
                o.require(p <= 229, "BSGS undecided at p = " + std::to_string(p));
            o.require(via == naive, "point count mismatch at p = " + std::to_string(p));
            ++counts;
        }
    }

    std::size_t roots = 0;
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
        ModularPolynomial m = phi(ell);
        for (std::uint64_t p : primes_in_range(3, 500)) {
            if (p == ell)
                continue;
            for (int t = 0; t < 4; ++t) {
                std::uint64_t j = rng() % p;
                FpPoly f = evaluate_mod(m, j, p);
                std::size_t brute = 0;
                for (std::uint64_t x = 0; x < p; ++x)
                    brute += f.eval(x) == 0;
                o.require(fp_root_count(m, PrimeFieldElement(static_cast<std::int64_t>(j), p)) == brute,
                          "root count at p = " + std::to_string(p));
                ++roots;
            }
        }
    }

    for (std::uint32_t ell : {2u, 3u}) {
        auto subs = brute_subgroups(ell);
        auto classes = enumerate_subgroups(ell);
        std::size_t total = 0;
        for (const auto& g : classes)
            total += gl2_order(ell) / normalizer_in_gl2(g).order();
        o.require(total == subs.size(), "subgroup total at ell = " + std::to_string(ell));
        std::set<std::vector<std::uint32_t>> reached;
        for (const auto& g : classes)
            for (const auto& x : all_gl2(ell)) {
                Subgroup c = conjugate(g, x);
                std::vector<std::uint32_t> codes;
                for (const auto& h : c.elements())
                    codes.push_back(h.code());
                reached.insert(codes);
            }
        o.require(reached == subs, "conjugates of representatives at ell = " + std::to_string(ell));
    }
    o.note << counts << " point counts, " << roots << " root counts";
}

}  // namespace

int main()
{
    std::cout << std::unitbuf;
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"lemma over all subgroup classes, ell <= 7", criterion1},
        {"element action profiles", criterion2},
        {"dihedral construction for ell <= 43", criterion3},
        {"level-7 counterexample end to end", criterion4},
        {"local criterion vs modular polynomial roots", criterion5},
        {"class numbers and ratio formula", criterion6},
        {"Gauss sum squares", criterion7},
        {"oracle equivalences", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << o.note.str() << "; " << secs << " s)";
        for (std::size_t k = 0; k < o.failures.size() && k < 3; ++k)
            std::cout << (k ? "; " : " failures: ") << o.failures[k];
        if (o.failures.size() > 3)
            std::cout << "; ... " << o.failures.size() - 3 << " more";
        std::cout << '\n';
        failed += !o.ok;
    }
    return failed ? 1 : 0;
}
