#include "lgi/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lgi {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    if (m == 1)
        return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    // m < 2^63 everywhere in this library
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::tie(t, newt) = std::make_pair(newt, t - q * newt);
        std::tie(r, newr) = std::make_pair(newr, r - q * newr);
    }
    if (r != 1)
        throw ArithmeticError("element is not invertible modulo " + std::to_string(m));
    return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m))
                 : static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m)
{
    std::int64_t r = a % static_cast<std::int64_t>(m);
    return r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(m))
                 : static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_big(const BigInt& a, std::uint64_t m)
{
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

namespace {

bool miller_rabin(std::uint64_t n, std::uint64_t a)
{
    if (a % n == 0)
        return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (n % 2 == 0)
        return false;
    if (n < (std::uint64_t{1} << 32)) {
        for (std::uint64_t f = 3; f * f <= n; f += 2)
            if (n % f == 0)
                return false;
        return true;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!miller_rabin(n, a))
            return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0)
                n /= f;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo)
        return out;
    std::vector<bool> composite(hi + 1, false);
    for (std::uint64_t i = 2; i * i <= hi; ++i)
        if (!composite[i])
            for (std::uint64_t k = i * i; k <= hi; k += i)
                composite[k] = true;
    for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i <= hi; ++i)
        if (!composite[i])
            out.push_back(i);
    return out;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return 0;
    if (p == 2)
        return a;
    if (powmod(a, (p - 1) / 2, p) != 1)
        return std::nullopt;
    if (p % 4 == 3)
        return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    std::uint64_t t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (int k = 0; k < m - i - 1; ++k)
            b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

namespace {

void require_odd_prime(std::uint64_t m)
{
    if (m % 2 == 0 || !is_prime(m))
        throw ArithmeticError("Legendre symbol needs an odd prime modulus, got " + std::to_string(m));
}

int legendre_reduced(std::uint64_t r, std::uint64_t m)
{
    if (r == 0)
        return 0;
    return powmod(r, (m - 1) / 2, m) == 1 ? 1 : -1;
}

}  // namespace

int legendre_kronecker(std::int64_t a, std::uint64_t m)
{
    require_odd_prime(m);
    return legendre_reduced(reduce_signed(a, m), m);
}

int legendre_kronecker(const BigInt& a, std::uint64_t m)
{
    require_odd_prime(m);
    return legendre_reduced(reduce_big(a, m), m);
}

// --- PrimeFieldElement ----------------------------------------------------------

PrimeFieldElement::PrimeFieldElement(std::int64_t value, std::uint64_t modulus)
{
    if (!is_prime(modulus))
        throw ArithmeticError("field modulus " + std::to_string(modulus) + " is not prime");
    modulus_ = modulus;
    value_ = reduce_signed(value, modulus);
}

void PrimeFieldElement::check_same(const PrimeFieldElement& o) const
{
    if (modulus_ != o.modulus_)
        throw ArithmeticError("prime field modulus mismatch");
}

PrimeFieldElement PrimeFieldElement::operator+(const PrimeFieldElement& o) const
{
    check_same(o);
    return unchecked(addmod(value_, o.value_, modulus_), modulus_);
}

PrimeFieldElement PrimeFieldElement::operator-(const PrimeFieldElement& o) const
{
    check_same(o);
    return unchecked(submod(value_, o.value_, modulus_), modulus_);
}

PrimeFieldElement PrimeFieldElement::operator*(const PrimeFieldElement& o) const
{
    check_same(o);
    return unchecked(mulmod(value_, o.value_, modulus_), modulus_);
}

PrimeFieldElement PrimeFieldElement::operator/(const PrimeFieldElement& o) const
{
    return *this * o.inverse();
}

PrimeFieldElement PrimeFieldElement::operator-() const
{
    return unchecked(value_ == 0 ? 0 : modulus_ - value_, modulus_);
}

PrimeFieldElement PrimeFieldElement::inverse() const
{
    if (value_ == 0)
        throw ArithmeticError("division by zero in F_" + std::to_string(modulus_));
    return unchecked(invmod(value_, modulus_), modulus_);
}

PrimeFieldElement PrimeFieldElement::pow(std::uint64_t e) const
{
    return unchecked(powmod(value_, e, modulus_), modulus_);
}

std::uint64_t PrimeFieldElement::order() const
{
    if (value_ == 0)
        throw ArithmeticError("zero has no multiplicative order");
    std::uint64_t n = modulus_ - 1;
    std::uint64_t ord = n;
    for (std::uint64_t q : prime_factors(n)) {
        while (ord % q == 0 && powmod(value_, ord / q, modulus_) == 1)
            ord /= q;
    }
    return ord;
}

bool PrimeFieldElement::is_square() const
{
    if (value_ == 0 || modulus_ == 2)
        return true;
    return powmod(value_, (modulus_ - 1) / 2, modulus_) == 1;
}

std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& e)
{
    return os << e.value();
}

PrimeFieldElement primitive_root(std::uint64_t m)
{
    if (m == 2)
        throw ArithmeticError("F_2^* is trivial; no primitive root is needed");
    if (!is_prime(m))
        throw ArithmeticError("primitive_root: " + std::to_string(m) + " is not prime");
    auto factors = prime_factors(m - 1);
    for (std::uint64_t g = 2; g < m; ++g) {
        bool generator = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t q) {
            return powmod(g, (m - 1) / q, m) != 1;
        });
        if (generator)
            return PrimeFieldElement::unchecked(g, m);
    }
    throw ArithmeticError("no primitive root found");  // unreachable for primes
}

std::uint64_t smallest_nonresidue(std::uint64_t m)
{
    require_odd_prime(m);
    for (std::uint64_t r = 2; r < m; ++r)
        if (legendre_reduced(r, m) == -1)
            return r;
    throw ArithmeticError("no non-residue found");
}

// --- BigRational ----------------------------------------------------------------

BigRational::BigRational(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw ArithmeticError("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& t) {
        t.erase(0, t.find_first_not_of(" \t\r\n"));
        t.erase(t.find_last_not_of(" \t\r\n") + 1);
    };
    trim(s);
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size())
            return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+')
            t.erase(0, 1);
        return BigInt(t);
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(s))
            throw ArithmeticError("malformed rational '" + s + "'");
        return BigRational(to_int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    trim(num);
    trim(den);
    if (!valid_int(num) || !valid_int(den))
        throw ArithmeticError("malformed rational '" + s + "'");
    BigInt d = to_int(den);
    if (d == 0)
        throw ArithmeticError("zero denominator in '" + s + "'");
    return BigRational(to_int(num), d);
}

BigRational BigRational::operator/(const BigRational& o) const
{
    if (o.is_zero())
        throw ArithmeticError("rational division by zero");
    return BigRational(mpq_class(q_ / o.q_));
}

BigRational BigRational::pow(unsigned e) const
{
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
    return BigRational(n, d);
}

std::optional<BigInt> exact_sqrt(const BigInt& n)
{
    if (n < 0)
        return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t()))
        return std::nullopt;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<BigRational> BigRational::sqrt() const
{
    auto n = exact_sqrt(numerator());
    auto d = exact_sqrt(denominator());
    if (!n || !d)
        return std::nullopt;
    return BigRational(*n, *d);
}

std::uint64_t BigRational::mod(std::uint64_t p) const
{
    std::uint64_t den = reduce_big(denominator(), p);
    if (den == 0)
        throw ArithmeticError("denominator " + denominator().get_str() + " vanishes mod " + std::to_string(p));
    return mulmod(reduce_big(numerator(), p), invmod(den, p), p);
}

std::ostream& operator<<(std::ostream& os, const BigRational& r)
{
    return os << r.str();
}

// --- QuadFieldElement -----------------------------------------------------------

bool is_squarefree(long n)
{
    if (n == 0)
        return false;
    unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    for (unsigned long f = 2; f * f <= m; ++f)
        if (m % (f * f) == 0)
            return false;
    return true;
}

QuadFieldElement::QuadFieldElement(BigRational a, BigRational b, long d)
    : a_(std::move(a)), b_(std::move(b)), d_(d)
{
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw ArithmeticError("Q(sqrt(" + std::to_string(d) + ")) is not a quadratic field");
}

void QuadFieldElement::check_same(const QuadFieldElement& o) const
{
    if (d_ != o.d_)
        throw ArithmeticError("quadratic field mismatch: d = " + std::to_string(d_) + " vs " +
                              std::to_string(o.d_));
}

QuadFieldElement QuadFieldElement::operator+(const QuadFieldElement& o) const
{
    check_same(o);
    return {a_ + o.a_, b_ + o.b_, d_};
}

QuadFieldElement QuadFieldElement::operator-(const QuadFieldElement& o) const
{
    check_same(o);
    return {a_ - o.a_, b_ - o.b_, d_};
}

QuadFieldElement QuadFieldElement::operator*(const QuadFieldElement& o) const
{
    check_same(o);
    BigRational dd(d_);
    return {a_ * o.a_ + dd * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d_};
}

QuadFieldElement QuadFieldElement::operator/(const QuadFieldElement& o) const
{
    check_same(o);
    BigRational n = o.norm();
    if (n.is_zero())
        throw ArithmeticError("quadratic field division by zero");
    QuadFieldElement num = *this * o.conjugate();
    return {num.a_ / n, num.b_ / n, d_};
}

std::optional<QuadFieldElement> QuadFieldElement::sqrt() const
{
    // (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d, with norm (u^2 - d v^2)^2.
    if (is_zero())
        return *this;
    auto n = norm().sqrt();
    if (!n)
        return std::nullopt;
    BigRational half(BigInt(1), BigInt(2));
    for (const BigRational& cand : {(a_ + *n) * half, (a_ - *n) * half}) {
        if (cand.is_zero()) {
            // u = 0: need d v^2 = a and b = 0
            if (!b_.is_zero())
                continue;
            if (auto v = (a_ / BigRational(d_)).sqrt())
                return QuadFieldElement(BigRational(0), *v, d_);
            continue;
        }
        auto u = cand.sqrt();
        if (!u)
            continue;
        QuadFieldElement root(*u, b_ / (BigRational(2) * *u), d_);
        if (root * root == *this)
            return root;
    }
    return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const QuadFieldElement& z)
{
    os << z.a();
    if (!z.b().is_zero())
        os << (z.b().sign() < 0 ? " - " : " + ") << (z.b().sign() < 0 ? -z.b() : z.b()) << "*sqrt("
           << z.d() << ")";
    return os;
}

// --- Gauss sums -----------------------------------------------------------------

GaussSumSquare gauss_sum_square(std::uint64_t ell)
{
    if (ell % 2 == 0 || !is_prime(ell) || ell > 200)
        throw ArithmeticError("gauss_sum_square needs an odd prime <= 200");
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double re = 0.0L, im = 0.0L;
    for (std::uint64_t n = 0; n < ell; ++n) {
        long double theta = two_pi * static_cast<long double>((n * n) % ell) / static_cast<long double>(ell);
        re += std::cos(theta);
        im += std::sin(theta);
    }
    return {re * re - im * im, 2.0L * re * im};
}

}  // namespace lgi

namespace lgi {

namespace {

BigInt pollard_brent(const BigInt& n, unsigned long c)
{
    auto step = [&](const BigInt& v) {
        BigInt r = v * v + c;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
        return r;
    };
    BigInt x = 2, y = 2, d = 1;
    while (d == 1) {
        x = step(x);
        y = step(step(y));
        BigInt diff = abs(x - y);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    return d;
}

void split_cofactor(const BigInt& n, std::vector<BigInt>& out)
{
    if (n == 1)
        return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
        out.push_back(n);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        BigInt d = pollard_brent(n, c);
        if (d != n) {
            split_cofactor(d, out);
            split_cofactor(n / d, out);
            return;
        }
    }
}

}  // namespace

std::vector<BigInt> prime_divisors(const BigInt& n0)
{
    if (n0 == 0)
        throw ArithmeticError("prime_divisors of zero");
    BigInt n = abs(n0);
    std::vector<BigInt> out;
    for (unsigned long f = 2; f <= 10'000'000UL && n > 1; f += (f == 2 ? 1 : 2)) {
        if (BigInt(f) * f > n)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), f)) {
            out.emplace_back(f);
            while (mpz_divisible_ui_p(n.get_mpz_t(), f))
                n /= f;
        }
    }
    split_cofactor(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace lgi
