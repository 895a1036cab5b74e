// lgi: reproducible runs of the group-theoretic and arithmetic checks.
//
// Exit codes: 0 all checks pass, 1 a check found a violation, 2 usage or data error.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgi/classno.hpp"
#include "lgi/ecfp.hpp"
#include "lgi/ecq.hpp"
#include "lgi/localglobal.hpp"
#include "lgi/modpoly.hpp"

#ifndef LGI_DATA_DIR
#define LGI_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace lgi;

namespace {

// Usage or data problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void check(const std::string& name, bool ok, json detail = json::object())
    {
        detail["check"] = name;
        detail["status"] = ok ? "pass" : "fail";
        if (!ok)
            failed_ = true;
        findings_.push_back(std::move(detail));
    }

    void info(const std::string& name, json detail)
    {
        detail["check"] = name;
        detail["status"] = "info";
        findings_.push_back(std::move(detail));
    }

    int finish(bool as_json, std::chrono::steady_clock::time_point start) const
    {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        if (as_json) {
            json doc{{"command", command_},
                     {"status", failed_ ? "fail" : "pass"},
                     {"findings", findings_},
                     {"elapsed_ms", ms.count()}};
            std::cout << doc.dump(2) << '\n';
        } else {
            for (const auto& f : findings_) {
                std::string st = f["status"];
                std::string tag = st == "pass" ? "PASS" : (st == "fail" ? "FAIL" : "INFO");
                std::cout << tag << ' ' << f["check"].get<std::string>();
                std::string rest;
                for (const auto& [k, v] : f.items())
                    if (k != "check" && k != "status")
                        rest += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
                std::cout << rest << '\n';
            }
            std::cout << command_ << ": " << (failed_ ? "fail" : "pass") << " (" << ms.count() << " ms)\n";
        }
        return failed_ ? 1 : 0;
    }

private:
    std::string command_;
    json findings_ = json::array();
    bool failed_ = false;
};

void error_out(bool as_json, const std::string& command, const std::string& msg)
{
    if (as_json) {
        json doc{{"command", command},
                 {"status", "error"},
                 {"findings", json::array({json{{"check", "error"}, {"status", "error"}, {"message", msg}}})},
                 {"elapsed_ms", 0}};
        std::cout << doc.dump(2) << '\n';
    }
    std::cerr << "lgi " << command << ": " << msg << '\n';
}

json gens_json(const Subgroup& g)
{
    json arr = json::array();
    for (const auto& e : g.generators()) {
        std::ostringstream os;
        os << e;
        arr.push_back(os.str());
    }
    return arr;
}

fs::path require_file(const fs::path& p)
{
    if (!fs::is_regular_file(p))
        throw UsageError("missing data file " + p.string());
    return p;
}

ModularPolynomial load_level(const fs::path& data_dir, const std::string& override_path, std::uint64_t ell)
{
    fs::path path = override_path.empty() ? data_dir / ("phi" + std::to_string(ell) + ".txt") : fs::path(override_path);
    require_file(path);
    ModularPolynomial m;
    try {
        m = load_modpoly(path);
    } catch (const ModpolyError& e) {
        throw UsageError(e.what());
    }
    if (m.level != ell)
        throw UsageError(path.string() + " has level " + std::to_string(m.level) + ", expected " +
                         std::to_string(ell));
    return m;
}

BigRational parse_rational(const std::string& s, const std::string& what)
{
    try {
        return BigRational::parse(s);
    } catch (const std::exception& e) {
        throw UsageError("malformed rational for " + what + ": '" + s + "'");
    }
}

std::uint64_t require_prime(long long v, const std::string& what)
{
    if (v < 2 || !is_prime(static_cast<std::uint64_t>(v)))
        throw UsageError(what + " must be prime, got " + std::to_string(v));
    return static_cast<std::uint64_t>(v);
}

// --- commands -----------------------------------------------------------------

int cmd_lemma(Report& rep, long long ell_in, bool expensive, bool serial)
{
    const auto ell = static_cast<std::uint32_t>(require_prime(ell_in, "--ell"));
    if (!(ell == 2 || ell == 3 || ell == 5 || ell == 7 || (ell == 11 && expensive)))
        throw UsageError("--ell must be 2, 3, 5 or 7 (11 with --expensive)");
    LemmaVerification v = lemma1_verify(ell, {expensive, !serial});
    rep.info("enumeration", {{"ell", ell}, {"classes", v.classes_checked}, {"exceptional_classes", v.reports.size()}});
    for (const auto& r : v.reports) {
        json d{{"order", r.group.order()},
               {"n", r.n},
               {"cartan", r.cartan_kind ? to_string(*r.cartan_kind) : "none"},
               {"proper_containment", r.proper_containment},
               {"ell_mod_4", r.ell_mod_4},
               {"orbit_sizes", r.orbit_sizes},
               {"generators", gens_json(r.group)}};
        if (!r.violations.empty())
            d["violations"] = r.violations;
        rep.check("lemma-conclusions", r.violations.empty(), d);
    }
    if (ell == 7)
        rep.check("exceptional-class-exists", !v.reports.empty(), {{"count", v.reports.size()}});
    else
        rep.check("no-exceptional-class", v.reports.empty(), {{"count", v.reports.size()}});
    return 0;
}

int cmd_counterexample(Report& rep, const fs::path& data_dir, std::uint64_t bound, std::uint64_t seed, bool serial)
{
    const fs::path phi7_path = require_file(data_dir / "phi7.txt");
    const fs::path cert_path = require_file(data_dir / "phi7_cert_2268945_128.txt");
    ModularPolynomial phi7 = load_level(data_dir, phi7_path.string(), 7);
    std::vector<QPoly> factors;
    try {
        factors = load_certificate_factors(cert_path);
    } catch (const ModpolyError& e) {
        throw UsageError(e.what());
    }

    const WeierstrassCurve e = counterexample_curve();
    const BigRational j_expected = BigRational::parse("2268945/128");
    CurveInvariants inv = invariants(e);
    rep.check("j-invariant", inv.j == j_expected, {{"j", inv.j.str()}});

    std::vector<std::string> bad;
    for (const auto& p : bad_primes(e))
        bad.push_back(p.get_str());
    rep.check("bad-primes", bad == std::vector<std::string>{"2", "5", "7"}, {{"primes", bad}});

    ScanReport scan = local_scan(e, 7, bound, {!serial, seed});
    std::vector<std::uint64_t> short_primes;
    std::size_t min_distinct = 8;
    for (const auto& en : scan.entries) {
        PrimeFieldElement jp(static_cast<std::int64_t>(inv.j.mod(en.p)), en.p);
        min_distinct = std::min(min_distinct, fp_root_count(phi7, jp));
        if (fp_linear_factor_count(phi7, jp, seed) < 2)
            short_primes.push_back(en.p);
    }
    rep.check("local-7-isogeny-everywhere", scan.all_admit(),
              {{"bound", bound}, {"good_primes", scan.entries.size()}, {"failing", scan.failing}});
    rep.check("phi7-two-linear-factors-mod-p", short_primes.empty(),
              {{"bound", bound}, {"failing", short_primes}, {"min_distinct_roots", min_distinct}});

    QPoly phi = evaluate_at_j(phi7, inv.j);
    auto roots = rational_linear_factors(phi, seed);
    rep.check("no-rational-7-isogeny", roots.empty(), {{"rational_roots", roots.size()}});

    CertificateReport cert = verify_certificate({phi, factors});
    json shapes = json::array();
    for (const auto& f : cert.factors)
        shapes.push_back({{"degree", f.degree},
                          {"minus7_shape", f.minus7_shape},
                          {"b", f.b},
                          {"irreducible", f.irreducible_certified}});
    rep.check("factor-certificate", cert.product_matches && cert.all_shapes_ok(),
              {{"product_matches", cert.product_matches}, {"factors", shapes}});

    const BigRational mh = BigRational::parse("-1/2");
    rep.check("quartic-points", quartic_point_check(mh, BigRational::parse("1/4")) &&
                                    quartic_point_check(mh, BigRational::parse("-1/4")));
    rep.check("map-f", eval_map_f(mh) == j_expected, {{"f(-1/2)", eval_map_f(mh).str()}});

    auto img = map_49a3_to_quartic_x(QuadFieldElement(-14, 0, -1), QuadFieldElement(7, 29, -1));
    QuadFieldElement want(BigRational::parse("-29/58"), BigRational::parse("7/58"), -1);
    std::ostringstream xs;
    xs << img.x;
    rep.check("gaussian-point-map", img.x == want && img.y_exists, {{"x", xs.str()}, {"y_exists", img.y_exists}});

    Subgroup g = construct_prop3_group(7, 3);
    Prop3Properties pp = prop3_properties(g);
    bool shape = g.order() == 36 && pp.image.kind == ImageKind::dihedral && pp.image.order == 6 &&
                 pp.orbit_sizes == std::vector<std::uint32_t>{2, 3, 3} && lemma1_hypothesis(g);
    rep.check("image-group-shape", shape,
              {{"order", g.order()}, {"image", pp.image.str()}, {"orbit_sizes", pp.orbit_sizes}});
    return 0;
}

WeierstrassCurve curve_from_flags(const std::string& curve, const std::vector<std::string>& a)
{
    if (!curve.empty()) {
        try {
            return WeierstrassCurve::parse(curve);
        } catch (const CurveError& e) {
            throw UsageError(e.what());
        }
    }
    WeierstrassCurve e{parse_rational(a[0], "--a1"), parse_rational(a[1], "--a2"), parse_rational(a[2], "--a3"),
                       parse_rational(a[3], "--a4"), parse_rational(a[4], "--a6")};
    if (e.discriminant().is_zero())
        throw UsageError("singular curve");
    return e;
}

int cmd_curve_local(Report& rep, const WeierstrassCurve& e, std::uint64_t ell, std::uint64_t bound,
                    std::uint64_t seed, bool serial)
{
    if (bound < 3)
        throw UsageError("--bound must be at least 3");
    ScanReport scan = local_scan(e, ell, bound, {!serial, seed});
    rep.info("curve", {{"curve", e.str()}, {"ell", ell}, {"bound", bound}, {"bad", scan.bad}, {"skipped", scan.skipped}});
    json rows = json::array();
    for (const auto& en : scan.entries)
        rows.push_back({{"p", en.p}, {"a_p", en.a_p}, {"admitted", en.admitted}, {"supersingular", en.supersingular}});
    rep.info("primes", {{"table", rows}});
    rep.check("local-isogeny-all-primes", scan.all_admit(), {{"failing", scan.failing}});
    return 0;
}

int cmd_curve_global(Report& rep, const BigRational& j, std::uint64_t ell, const ModularPolynomial& m,
                     std::uint64_t seed)
{
    QPoly f = evaluate_at_j(m, j);
    if (f.is_zero())
        throw UsageError("Phi_" + std::to_string(ell) + "(X, j) vanishes identically");
    auto roots = rational_linear_factors(f, seed);
    std::vector<std::string> rs;
    for (const auto& r : roots)
        rs.push_back(r.str());
    rep.info("global", {{"j", j.str()},
                        {"ell", ell},
                        {"rational_roots", rs},
                        {"rational_isogeny", !roots.empty()}});
    return 0;
}

int cmd_gauss(Report& rep, long long ell_in)
{
    const std::uint64_t ell = require_prime(ell_in, "--ell");
    if (ell == 2)
        throw UsageError("--ell must be an odd prime");
    GaussSumSquare g = gauss_sum_square(ell);
    const long double expect = ell % 4 == 1 ? static_cast<long double>(ell) : -static_cast<long double>(ell);
    const long double err = std::hypot(g.real - expect, g.imag);
    std::ostringstream re, im;
    re.precision(12);
    im.precision(12);
    re << g.real;
    im << g.imag;
    rep.check("gauss-sum-square", err < 1e-6L * static_cast<long double>(ell),
              {{"ell", ell}, {"real", re.str()}, {"imag", im.str()}, {"expected", static_cast<long long>(expect)}});
    return 0;
}

int cmd_classnumber(Report& rep, long long disc)
{
    QuadOrder o;
    try {
        o = QuadOrder::make(disc);
    } catch (const DiscriminantError& e) {
        throw UsageError(e.what());
    }
    json forms = json::array();
    for (const auto& f : reduced_forms(disc))
        forms.push_back({f.a, f.b, f.c});
    rep.info("class-number", {{"disc", disc},
                              {"h", class_number(disc)},
                              {"fundamental", o.fundamental},
                              {"conductor", o.conductor},
                              {"forms", forms}});
    return 0;
}

int cmd_ratio(Report& rep, long long disc, long long ell_in)
{
    const std::uint64_t ell = require_prime(ell_in, "--ell");
    RatioCheck r;
    try {
        r = ratio_check(disc, ell);
    } catch (const DiscriminantError& e) {
        throw UsageError(e.what());
    }
    rep.check("class-number-ratio", r.agree,
              {{"disc", disc},
               {"ell", ell},
               {"predicted", r.predicted.str()},
               {"direct", r.direct.str()},
               {"unit_index", r.unit_index},
               {"symbol", r.symbol}});
    return 0;
}

int cmd_group(Report& rep, long long ell_in, long long n_in)
{
    if (ell_in < 2 || ell_in > 255 || n_in < 1 || n_in > 255)
        throw UsageError("--ell must be below 256 and --n positive");
    Subgroup g = [&] {
        try {
            return construct_prop3_group(static_cast<std::uint32_t>(ell_in), static_cast<std::uint32_t>(n_in));
        } catch (const GroupError& e) {
            throw UsageError(e.what());
        }
    }();
    Prop3Properties pp = prop3_properties(g);
    const auto n = static_cast<std::uint32_t>(n_in);
    rep.info("group", {{"ell", ell_in}, {"n", n}, {"order", g.order()}, {"generators", gens_json(g)}});
    rep.check("det-surjective", pp.det_surjective);
    rep.check("every-element-fixes-two-lines", pp.min_fixed_lines >= 2, {{"min_fixed_lines", pp.min_fixed_lines}});
    rep.check("no-common-fixed-line", pp.common_fixed_lines == 0);
    rep.check("image-dihedral", pp.image.kind == ImageKind::dihedral && pp.image.order == 2 * n,
              {{"image", pp.image.str()}});
    rep.check("has-orbit-of-size-2", std::ranges::find(pp.orbit_sizes, 2u) != pp.orbit_sizes.end(),
              {{"orbit_sizes", pp.orbit_sizes}});
    rep.check("lemma-hypothesis", lemma1_hypothesis(g));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"lgi: local-global isogeny checks"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = 0;
    bool serial = false;
    std::string data_dir = LGI_DATA_DIR;
    app.add_flag("--json", as_json, "Emit a JSON report");
    app.add_option("--seed", seed, "Seed for randomized routines");
    app.add_flag("--serial", serial, "Disable OpenMP parallel loops");
    app.add_option("--data-dir", data_dir, "Directory holding the modular polynomial data");

    long long ell = 0, n = 0, disc = 0;
    bool expensive = false;
    std::uint64_t bound = 10000;
    std::string curve_text, j_text, modpoly_path;
    std::vector<std::string> a(5, "0");

    auto* lemma = app.add_subcommand("lemma", "Verify the lemma over every conjugacy class of subgroups");
    lemma->add_option("--ell", ell, "Prime")->required();
    lemma->add_flag("--expensive", expensive, "Allow ell = 11");

    auto* cex = app.add_subcommand("counterexample", "Check the counterexample curve end to end");
    cex->add_option("--bound", bound, "Prime bound for the local scan");

    auto* curve = app.add_subcommand("curve", "Local or global isogeny test for a curve");
    curve->require_subcommand(1);
    auto add_curve_opts = [&](CLI::App* sub) {
        sub->add_option("--curve", curve_text, "Coefficients a1,a2,a3,a4,a6");
        const char* names[] = {"--a1", "--a2", "--a3", "--a4", "--a6"};
        for (int i = 0; i < 5; ++i)
            sub->add_option(names[i], a[static_cast<std::size_t>(i)]);
        sub->add_option("--ell", ell, "Prime")->required();
    };
    auto* local = curve->add_subcommand("local", "Scan good primes for a local ell-isogeny");
    add_curve_opts(local);
    local->add_option("--bound", bound, "Prime bound");
    auto* global = curve->add_subcommand("global", "Rational roots of Phi_ell(X, j)");
    add_curve_opts(global);
    global->add_option("--j", j_text, "j-invariant (instead of a curve)");
    global->add_option("--modpoly", modpoly_path, "Modular polynomial file");

    auto* gauss = app.add_subcommand("gauss", "Check the square of the quadratic Gauss sum");
    gauss->add_option("--ell", ell, "Odd prime")->required();

    auto* classno = app.add_subcommand("classnumber", "Class number of an imaginary quadratic discriminant");
    classno->add_option("--disc", disc, "Negative discriminant")->required();

    auto* ratio = app.add_subcommand("ratio", "Check h(D ell^2)/h(D)");
    ratio->add_option("--disc", disc, "Fundamental discriminant")->required();
    ratio->add_option("--ell", ell, "Prime")->required();

    auto* group = app.add_subcommand("group", "Build and check the dihedral-image subgroup");
    group->add_option("--ell", ell, "Prime, 3 mod 4")->required();
    group->add_option("--n", n, "Odd divisor of (ell-1)/2")->required();

    // global flags may follow the subcommand
    for (CLI::App* sub : {lemma, cex, curve, local, global, gauss, classno, ratio, group})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string name = app.get_subcommands().front()->get_name();
    if (name == "curve")
        name += " " + curve->get_subcommands().front()->get_name();
    Report rep(name);
    try {
        if (lemma->parsed())
            cmd_lemma(rep, ell, expensive, serial);
        else if (cex->parsed())
            cmd_counterexample(rep, data_dir, bound, seed, serial);
        else if (local->parsed())
            cmd_curve_local(rep, curve_from_flags(curve_text, a), require_prime(ell, "--ell"), bound, seed, serial);
        else if (global->parsed()) {
            const std::uint64_t l = require_prime(ell, "--ell");
            BigRational j = j_text.empty() ? invariants(curve_from_flags(curve_text, a)).j
                                           : parse_rational(j_text, "--j");
            cmd_curve_global(rep, j, l, load_level(data_dir, modpoly_path, l), seed);
        } else if (gauss->parsed())
            cmd_gauss(rep, ell);
        else if (classno->parsed())
            cmd_classnumber(rep, disc);
        else if (ratio->parsed())
            cmd_ratio(rep, disc, ell);
        else if (group->parsed())
            cmd_group(rep, ell, n);
    } catch (const UsageError& e) {
        error_out(as_json, name, e.what());
        return 2;
    } catch (const CurveError& e) {
        error_out(as_json, name, e.what());
        return 2;
    }
    return rep.finish(as_json, start);
}
