#include "lgi/modpoly.hpp"

#include "lgi/classno.hpp"

#include <fstream>
#include <sstream>

namespace lgi {

BigInt ModularPolynomial::coeff(std::uint32_t i, std::uint32_t j) const
{
    auto it = coeffs.find(i >= j ? std::pair{i, j} : std::pair{j, i});
    return it == coeffs.end() ? BigInt(0) : it->second;
}

std::uint32_t ModularPolynomial::degree_x() const
{
    std::uint32_t d = 0;
    for (const auto& [k, c] : coeffs)
        if (c != 0)
            d = std::max(d, k.first);
    return d;
}

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what)
{
    throw ModpolyError(source + ":" + std::to_string(line) + ": " + what);
}

bool blank(const std::string& s)
{
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

ModularPolynomial parse_modpoly(std::istream& in, const std::string& source)
{
    ModularPolynomial m;
    std::string line;
    std::size_t lineno = 0;
    bool have_level = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line.front() == '#')
            continue;
        std::istringstream ls(line);
        if (!have_level) {
            std::string word;
            long long n = 0;
            std::string rest;
            if (!(ls >> word >> n) || word != "level" || (ls >> rest))
                parse_fail(source, lineno, "expected 'level N'");
            if (n < 2 || !is_prime(static_cast<std::uint64_t>(n)))
                parse_fail(source, lineno, "level must be a prime, got " + std::to_string(n));
            m.level = static_cast<std::uint32_t>(n);
            have_level = true;
            continue;
        }
        long long i = -1, j = -1;
        std::string cs, rest;
        if (!(ls >> i >> j >> cs) || (ls >> rest))
            parse_fail(source, lineno, "expected 'i j c'");
        if (j < 0 || i < j)
            parse_fail(source, lineno, "exponents must satisfy i >= j >= 0");
        if (i > 4096)
            parse_fail(source, lineno, "exponent out of range");
        BigInt c;
        if (c.set_str(cs, 10) != 0)
            parse_fail(source, lineno, "malformed coefficient '" + cs + "'");
        auto key = std::pair{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
        if (!m.coeffs.emplace(key, c).second)
            parse_fail(source, lineno, "duplicate entry for (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    if (!have_level)
        throw ModpolyError(source + ": missing 'level N' line");

    const std::uint32_t top = m.level + 1;
    if (m.degree_x() != top)
        throw ModpolyError(source + ": degree in X is " + std::to_string(m.degree_x()) + ", expected " +
                           std::to_string(top));
    if (m.coeff(top, 0) != 1)
        throw ModpolyError(source + ": coefficient of X^" + std::to_string(top) + " is " +
                           m.coeff(top, 0).get_str() + ", expected 1 (not monic)");
    for (std::uint32_t j = 1; j <= top; ++j)
        if (m.coeff(top, j) != 0)
            throw ModpolyError(source + ": X^" + std::to_string(top) + "Y^" + std::to_string(j) +
                               " has a nonzero coefficient (not monic in X)");
    return m;
}

namespace {

struct CmPoint {
    std::int64_t D;
    std::int64_t conductor;
    const char* j;
};

// the thirteen imaginary quadratic orders of class number one
constexpr CmPoint cm_points[] = {
    {-3, 1, "0"},           {-4, 1, "1728"},          {-7, 1, "-3375"},
    {-8, 1, "8000"},        {-11, 1, "-32768"},       {-19, 1, "-884736"},
    {-43, 1, "-884736000"}, {-67, 1, "-147197952000"}, {-163, 1, "-262537412640768000"},
    {-12, 2, "54000"},      {-16, 2, "287496"},       {-27, 3, "-12288000"},
    {-28, 2, "16581375"},
};

BigInt eval_diagonal(const ModularPolynomial& m, const BigInt& x)
{
    BigInt acc = 0;
    for (const auto& [k, c] : m.coeffs) {
        BigInt t;
        mpz_pow_ui(t.get_mpz_t(), x.get_mpz_t(), k.first + k.second);
        acc += (k.first == k.second ? c : 2 * c) * t;
    }
    return acc;
}

}  // namespace

std::vector<std::int64_t> cm_check_failures(const ModularPolynomial& m)
{
    // an order with ell prime to its conductor has an endomorphism of degree
    // ell iff ell splits or ramifies, giving a root of Phi_ell(X, j) at X = j
    std::vector<std::int64_t> bad;
    for (const auto& pt : cm_points) {
        if (pt.conductor % m.level == 0 || kronecker_prime(pt.D, m.level) < 0)
            continue;
        if (eval_diagonal(m, BigInt(pt.j)) != 0)
            bad.push_back(pt.D);
    }
    return bad;
}

ModularPolynomial load_modpoly(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ModpolyError("cannot open " + path.string());
    ModularPolynomial m = parse_modpoly(in, path.string());
    if (auto bad = cm_check_failures(m); !bad.empty())
        throw ModpolyError(path.string() + ": Phi(j, j) != 0 at the CM point of discriminant " +
                           std::to_string(bad.front()) + " (corrupt coefficients)");
    return m;
}

QPoly evaluate_at_j(const ModularPolynomial& m, const BigRational& j)
{
    const std::uint32_t top = m.level + 1;
    std::vector<BigRational> c(top + 1);
    for (std::uint32_t i = 0; i <= top; ++i) {
        BigRational acc(0);
        for (std::uint32_t k = top + 1; k-- > 0;)
            acc = acc * j + BigRational(m.coeff(i, k));
        c[i] = acc;
    }
    return QPoly(std::move(c));
}

FpPoly evaluate_mod(const ModularPolynomial& m, std::uint64_t j, std::uint64_t p)
{
    const std::uint32_t top = m.level + 1;
    std::vector<std::uint64_t> c(top + 1);
    j %= p;
    for (std::uint32_t i = 0; i <= top; ++i) {
        std::uint64_t acc = 0;
        for (std::uint32_t k = top + 1; k-- > 0;)
            acc = addmod(mulmod(acc, j, p), reduce_big(m.coeff(i, k), p), p);
        c[i] = acc;
    }
    return FpPoly(std::move(c), p);
}

std::vector<BigRational> rational_linear_factors(const QPoly& f, std::uint64_t seed)
{
    if (f.is_zero())
        throw ArithmeticError("rational_linear_factors of the zero polynomial");
    std::vector<BigRational> out;
    for (const auto& r : rational_roots(f, seed)) {
        QPoly g = f;
        while (auto q = g.divide_by_root(r)) {
            out.push_back(r);
            g = std::move(*q);
        }
    }
    return out;
}

std::size_t fp_root_count(const ModularPolynomial& m, const PrimeFieldElement& j)
{
    const std::uint64_t p = j.modulus();
    if (p % m.level == 0)
        throw ArithmeticError("fp_root_count: p = " + std::to_string(p) + " divides the level");
    return distinct_root_count(evaluate_mod(m, j.value(), p));
}

std::size_t fp_linear_factor_count(const ModularPolynomial& m, const PrimeFieldElement& j, std::uint64_t seed)
{
    const std::uint64_t p = j.modulus();
    if (p % m.level == 0)
        throw ArithmeticError("fp_linear_factor_count: p = " + std::to_string(p) + " divides the level");
    FpPoly f = evaluate_mod(m, j.value(), p);
    std::mt19937_64 rng(seed);
    std::size_t total = 0;
    for (std::uint64_t r : distinct_roots(f, rng)) {
        FpPoly lin({submod(0, r, p), 1}, p);
        while (f.degree() > 0 && f.rem(lin).is_zero()) {
            f = f.quot(lin);
            ++total;
        }
    }
    return total;
}

std::vector<QPoly> load_certificate_factors(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ModpolyError("cannot open " + path.string());
    std::vector<QPoly> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line.front() == '#')
            continue;
        std::vector<BigRational> c;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            try {
                c.push_back(BigRational::parse(tok));
            } catch (const std::exception& ex) {
                parse_fail(path.string(), lineno, ex.what());
            }
        }
        if (c.empty())
            parse_fail(path.string(), lineno, "empty polynomial");
        out.push_back(QPoly::from_descending(std::move(c)));
    }
    if (out.empty())
        throw ModpolyError(path.string() + ": no factors");
    return out;
}

bool minus7_shape(const BigRational& d, BigInt* a, unsigned* b)
{
    BigRational r = d / BigRational(-7);
    if (r.sign() <= 0)
        return false;
    auto s = r.sqrt();
    if (!s)
        return false;
    BigInt den = s->denominator();
    unsigned k = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++k;
    }
    if (den != 1)
        return false;
    BigInt num = s->numerator();
    // a^2/4^b with b >= 1: scale up when the square root is already integral
    if (k == 0) {
        num *= 2;
        k = 1;
    }
    if (a)
        *a = num;
    if (b)
        *b = k;
    return true;
}

bool CertificateReport::all_shapes_ok() const
{
    for (const auto& f : factors)
        if (f.discriminant && !f.minus7_shape)
            return false;
    return true;
}

CertificateReport verify_certificate(const FactorizationCertificate& c)
{
    CertificateReport rep;
    QPoly prod({1});
    for (const auto& f : c.factors)
        prod = prod * f;
    rep.product_matches = prod == c.target;
    if (!rep.product_matches) {
        int top = std::max(prod.degree(), c.target.degree());
        for (int i = top; i >= 0; --i)
            if (prod.coeff(static_cast<std::size_t>(i)) != c.target.coeff(static_cast<std::size_t>(i))) {
                rep.mismatch = "coefficient of X^" + std::to_string(i) + ": product " +
                               prod.coeff(static_cast<std::size_t>(i)).str() + ", target " +
                               c.target.coeff(static_cast<std::size_t>(i)).str();
                break;
            }
    }
    for (std::size_t k = 0; k < c.factors.size(); ++k) {
        const QPoly& f = c.factors[k];
        FactorCheck fc;
        fc.index = k;
        fc.degree = f.degree();
        if (f.degree() == 2 || f.degree() == 3) {
            fc.discriminant = discriminant(f);
            fc.minus7_shape = minus7_shape(*fc.discriminant, &fc.a, &fc.b);
        }
        if (f.degree() >= 1 && f.degree() <= 3)
            fc.irreducible_certified = f.degree() == 1 || rational_roots(f).empty();
        rep.factors.push_back(std::move(fc));
    }
    return rep;
}

}  // namespace lgi
