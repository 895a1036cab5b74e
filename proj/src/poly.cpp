#include "lgi/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lgi {

// --- QPoly ----------------------------------------------------------------------

QPoly::QPoly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

QPoly QPoly::from_descending(std::vector<BigRational> coeffs)
{
    std::reverse(coeffs.begin(), coeffs.end());
    return QPoly(std::move(coeffs));
}

QPoly QPoly::monomial(const BigRational& c, std::size_t degree)
{
    std::vector<BigRational> v(degree + 1, BigRational(0));
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

BigRational QPoly::eval(const BigRational& x) const
{
    BigRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

QuadFieldElement QPoly::eval(const QuadFieldElement& x) const
{
    auto acc = QuadFieldElement::rational(BigRational(0), x.d());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + QuadFieldElement::rational(*it, x.d());
    return acc;
}

QPoly QPoly::operator+(const QPoly& o) const
{
    std::vector<BigRational> out(std::max(coeffs_.size(), o.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = coeff(i) + o.coeff(i);
    return QPoly(std::move(out));
}

QPoly QPoly::operator-(const QPoly& o) const
{
    std::vector<BigRational> out(std::max(coeffs_.size(), o.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = coeff(i) - o.coeff(i);
    return QPoly(std::move(out));
}

QPoly QPoly::operator*(const QPoly& o) const
{
    if (is_zero() || o.is_zero())
        return {};
    std::vector<BigRational> out(coeffs_.size() + o.coeffs_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    return QPoly(std::move(out));
}

QPoly QPoly::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<BigRational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        out[i - 1] = coeffs_[i] * BigRational(static_cast<long>(i));
    return QPoly(std::move(out));
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& d) const
{
    if (d.is_zero())
        throw ArithmeticError("polynomial division by zero");
    std::vector<BigRational> r = coeffs_;
    if (degree() < d.degree())
        return {QPoly{}, *this};
    std::vector<BigRational> q(static_cast<std::size_t>(degree() - d.degree() + 1), BigRational(0));
    const BigRational& lead = d.coeffs_.back();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        BigRational c = r[static_cast<std::size_t>(k) + d.coeffs_.size() - 1] / lead;
        q[static_cast<std::size_t>(k)] = c;
        if (c.is_zero())
            continue;
        for (std::size_t i = 0; i < d.coeffs_.size(); ++i)
            r[static_cast<std::size_t>(k) + i] -= c * d.coeffs_[i];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly QPoly::monic() const
{
    if (is_zero())
        return {};
    std::vector<BigRational> out = coeffs_;
    BigRational lead = coeffs_.back();
    for (auto& c : out)
        c /= lead;
    return QPoly(std::move(out));
}

FpPoly QPoly::mod(std::uint64_t p) const
{
    std::vector<std::uint64_t> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_)
        out.push_back(c.mod(p));
    return FpPoly(std::move(out), p);
}

std::optional<QPoly> QPoly::divide_by_root(const BigRational& r) const
{
    if (is_zero())
        return std::nullopt;
    std::vector<BigRational> q(coeffs_.size() - 1, BigRational(0));
    BigRational carry(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        BigRational v = coeffs_[i] + carry;
        if (i == 0) {
            if (!v.is_zero())
                return std::nullopt;
            break;
        }
        q[i - 1] = v;
        carry = v * r;
    }
    return QPoly(std::move(q));
}

std::vector<BigInt> QPoly::primitive_integer_coeffs() const
{
    BigInt lcm_den(1);
    for (const auto& c : coeffs_)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
    std::vector<BigInt> out;
    out.reserve(coeffs_.size());
    BigInt content(0);
    for (const auto& c : coeffs_) {
        BigInt v = c.numerator() * (lcm_den / c.denominator());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        out.push_back(v);
    }
    if (content != 0) {
        if (out.back() < 0)
            content = -content;
        for (auto& v : out)
            v /= content;
    }
    return out;
}

std::string QPoly::str(const char* var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const auto& c = coeffs_[i];
        if (c.is_zero())
            continue;
        BigRational mag = c.sign() < 0 ? -c : c;
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        bool unit = mag == BigRational(1);
        if (!unit || i == 0)
            os << mag;
        if (i > 0) {
            if (!unit)
                os << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

BigRational discriminant(const QPoly& f)
{
    if (f.degree() == 2) {
        const auto &a = f.coeff(2), &b = f.coeff(1), &c = f.coeff(0);
        return b * b - BigRational(4) * a * c;
    }
    if (f.degree() == 3) {
        const auto &a = f.coeff(3), &b = f.coeff(2), &c = f.coeff(1), &d = f.coeff(0);
        return b * b * c * c - BigRational(4) * a * c * c * c - BigRational(4) * b * b * b * d -
               BigRational(27) * a * a * d * d + BigRational(18) * a * b * c * d;
    }
    throw ArithmeticError("discriminant is implemented for degree 2 and 3 only");
}

QPoly gcd(QPoly a, QPoly b)
{
    while (!b.is_zero()) {
        auto r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly squarefree_part(const QPoly& f)
{
    if (f.degree() <= 0)
        return f.monic();
    QPoly g = gcd(f, f.derivative());
    return f.divrem(g).first.monic();
}

// --- FpPoly ---------------------------------------------------------------------

FpPoly::FpPoly(std::vector<std::uint64_t> coeffs, std::uint64_t p) : c_(std::move(coeffs)), p_(p)
{
    for (auto& c : c_)
        c %= p_;
    trim();
}

FpPoly FpPoly::x_power(std::size_t n, std::uint64_t p)
{
    std::vector<std::uint64_t> v(n + 1, 0);
    v[n] = 1;
    return FpPoly(std::move(v), p);
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

std::uint64_t FpPoly::eval(std::uint64_t x) const
{
    std::uint64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = addmod(mulmod(acc, x, p_), *it, p_);
    return acc;
}

FpPoly FpPoly::operator+(const FpPoly& o) const
{
    std::vector<std::uint64_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = addmod(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0, p_);
    return FpPoly(std::move(out), p_);
}

FpPoly FpPoly::operator-(const FpPoly& o) const
{
    std::vector<std::uint64_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = submod(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0, p_);
    return FpPoly(std::move(out), p_);
}

FpPoly FpPoly::operator*(const FpPoly& o) const
{
    if (is_zero() || o.is_zero())
        return FpPoly({}, p_);
    std::vector<std::uint64_t> out(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] = addmod(out[i + j], mulmod(c_[i], o.c_[j], p_), p_);
    }
    return FpPoly(std::move(out), p_);
}

namespace {

std::pair<FpPoly, FpPoly> fp_divrem(const FpPoly& a, const FpPoly& m)
{
    if (m.is_zero())
        throw ArithmeticError("F_p polynomial division by zero");
    const std::uint64_t p = a.modulus();
    std::vector<std::uint64_t> r = a.coeffs();
    if (a.degree() < m.degree())
        return {FpPoly({}, p), a};
    const auto& mc = m.coeffs();
    std::uint64_t inv_lead = invmod(mc.back(), p);
    std::vector<std::uint64_t> q(static_cast<std::size_t>(a.degree() - m.degree() + 1), 0);
    for (int k = a.degree() - m.degree(); k >= 0; --k) {
        std::size_t top = static_cast<std::size_t>(k) + mc.size() - 1;
        std::uint64_t c = mulmod(r[top], inv_lead, p);
        q[static_cast<std::size_t>(k)] = c;
        if (c == 0)
            continue;
        for (std::size_t i = 0; i < mc.size(); ++i)
            r[static_cast<std::size_t>(k) + i] = submod(r[static_cast<std::size_t>(k) + i], mulmod(c, mc[i], p), p);
    }
    return {FpPoly(std::move(q), p), FpPoly(std::move(r), p)};
}

}  // namespace

FpPoly FpPoly::rem(const FpPoly& m) const
{
    return fp_divrem(*this, m).second;
}

FpPoly FpPoly::quot(const FpPoly& m) const
{
    return fp_divrem(*this, m).first;
}

FpPoly FpPoly::monic() const
{
    if (is_zero())
        return *this;
    std::uint64_t inv = invmod(c_.back(), p_);
    std::vector<std::uint64_t> out = c_;
    for (auto& c : out)
        c = mulmod(c, inv, p_);
    return FpPoly(std::move(out), p_);
}

FpPoly gcd(FpPoly a, FpPoly b)
{
    while (!b.is_zero()) {
        FpPoly r = a.rem(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m)
{
    FpPoly result({1}, m.modulus());
    result = result.rem(m);
    FpPoly b = base.rem(m);
    while (e) {
        if (e & 1)
            result = (result * b).rem(m);
        b = (b * b).rem(m);
        e >>= 1;
    }
    return result;
}

std::size_t distinct_root_count(const FpPoly& f)
{
    if (f.is_zero())
        throw ArithmeticError("distinct_root_count of the zero polynomial");
    if (f.degree() == 0)
        return 0;
    const std::uint64_t p = f.modulus();
    FpPoly x = FpPoly::x_power(1, p);
    FpPoly xp = powmod(x, p, f);
    return static_cast<std::size_t>(gcd(xp - x, f).degree());
}

namespace {

void split_roots(const FpPoly& g, std::mt19937_64& rng, std::vector<std::uint64_t>& out)
{
    const std::uint64_t p = g.modulus();
    if (g.degree() <= 0)
        return;
    if (g.degree() == 1) {
        // X + c  ->  root -c
        out.push_back(submod(0, g.monic().coeffs()[0], p));
        return;
    }
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (;;) {
        FpPoly shifted({dist(rng), 1}, p);
        FpPoly h = powmod(shifted, (p - 1) / 2, g) - FpPoly({1}, p);
        FpPoly d = gcd(h, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_roots(d, rng, out);
            split_roots(g.quot(d), rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::uint64_t> distinct_roots(const FpPoly& f, std::mt19937_64& rng)
{
    if (f.is_zero())
        throw ArithmeticError("distinct_roots of the zero polynomial");
    const std::uint64_t p = f.modulus();
    std::vector<std::uint64_t> out;
    if (p < 64) {
        for (std::uint64_t x = 0; x < p; ++x)
            if (f.eval(x) == 0)
                out.push_back(x);
        return out;
    }
    FpPoly x = FpPoly::x_power(1, p);
    FpPoly g = gcd(powmod(x, p, f) - x, f);
    split_roots(g, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

// --- rational roots -------------------------------------------------------------

namespace {

constexpr std::size_t max_divisor_candidates = 4096;

struct Factorization {
    std::vector<std::pair<BigInt, unsigned>> factors;
    bool complete = true;
};

Factorization trial_factor(BigInt n)
{
    Factorization out;
    if (n < 0)
        n = -n;
    for (unsigned long f = 2; f <= 10'000'000UL; f += (f == 2 ? 1 : 2)) {
        if (n == 1)
            break;
        if (BigInt(f) * f > n)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), f)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), f)) {
                n /= f;
                ++e;
            }
            out.factors.push_back({BigInt(f), e});
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0)
            out.factors.push_back({n, 1});
        else
            out.complete = false;
    }
    return out;
}

// saturates at max_divisor_candidates + 1
std::size_t divisor_count(const Factorization& fac)
{
    std::size_t n = 1;
    for (const auto& f : fac.factors) {
        n *= f.second + 1;
        if (n > max_divisor_candidates)
            return max_divisor_candidates + 1;
    }
    return n;
}

std::vector<BigInt> divisors(const Factorization& fac)
{
    std::vector<BigInt> out{BigInt(1)};
    for (const auto& [p, e] : fac.factors) {
        std::size_t n = out.size();
        BigInt pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < n; ++i)
                out.push_back(out[i] * pk);
        }
    }
    return out;
}

// Strips the factor X^k; returns k.
std::size_t strip_zero_roots(std::vector<BigInt>& c)
{
    std::size_t k = 0;
    while (k < c.size() && c[k] == 0)
        ++k;
    c.erase(c.begin(), c.begin() + static_cast<long>(k));
    return k;
}

std::vector<BigRational> sorted_unique(std::vector<BigRational> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::optional<std::vector<BigRational>> rational_roots_by_divisors(const QPoly& f)
{
    if (f.is_zero())
        throw ArithmeticError("rational roots of the zero polynomial");
    std::vector<BigInt> c = f.primitive_integer_coeffs();
    std::vector<BigRational> roots;
    if (strip_zero_roots(c) > 0)
        roots.emplace_back(0);
    if (c.size() <= 1)
        return sorted_unique(roots);
    Factorization num = trial_factor(c.front());
    Factorization den = trial_factor(c.back());
    if (!num.complete || !den.complete)
        return std::nullopt;
    // smooth coefficients can have far too many divisors; leave those to the modular route
    if (divisor_count(num) * divisor_count(den) > max_divisor_candidates)
        return std::nullopt;
    std::vector<BigInt> nd = divisors(num), dd = divisors(den);
    QPoly g(std::vector<BigRational>(c.begin(), c.end()));
    for (const BigInt& a : nd)
        for (const BigInt& b : dd)
            for (int sign : {1, -1}) {
                BigRational cand(BigInt(sign * a), b);
                if (g.eval(cand).is_zero())
                    roots.push_back(cand);
            }
    return sorted_unique(roots);
}

std::optional<BigRational> rational_reconstruct(const BigInt& a, const BigInt& m, const BigInt& num_bound,
                                                const BigInt& den_bound)
{
    BigInt r0 = m, r1;
    mpz_fdiv_r(r1.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    BigInt t0 = 0, t1 = 1;
    while (r1 > num_bound) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    BigInt abs_t = abs(t1);
    if (t1 == 0 || abs_t > den_bound)
        return std::nullopt;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1)
        return std::nullopt;
    return BigRational(r1, t1);
}

namespace {

std::uint64_t random_prime_62(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 61, (std::uint64_t{1} << 62) - 1);
    for (;;) {
        std::uint64_t c = dist(rng) | 1;
        if (is_prime(c))
            return c;
    }
}

BigInt eval_mod(const std::vector<BigInt>& c, const BigInt& x, const BigInt& m)
{
    BigInt acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    }
    return acc;
}

}  // namespace

std::vector<BigRational> rational_roots_modular(const QPoly& f, std::uint64_t seed)
{
    if (f.is_zero())
        throw ArithmeticError("rational roots of the zero polynomial");
    std::vector<BigRational> roots;
    QPoly sq = squarefree_part(f);
    std::vector<BigInt> c = sq.primitive_integer_coeffs();
    if (strip_zero_roots(c) > 0)
        roots.emplace_back(0);
    if (c.size() <= 1)
        return roots;
    std::vector<BigInt> dc(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
        dc[i - 1] = c[i] * static_cast<unsigned long>(i);

    // A root a/b in lowest terms has a | c_0 and b | c_n.
    BigInt num_bound = abs(c.front());
    BigInt den_bound = abs(c.back());
    BigInt needed = 2 * num_bound * den_bound;

    std::mt19937_64 rng(seed);
    std::uint64_t p = 0;
    FpPoly fp({}, 2);
    for (;;) {
        p = random_prime_62(rng);
        if (reduce_big(c.back(), p) == 0)
            continue;
        std::vector<std::uint64_t> red;
        for (const auto& v : c)
            red.push_back(reduce_big(v, p));
        fp = FpPoly(red, p);
        std::vector<std::uint64_t> dred;
        for (const auto& v : dc)
            dred.push_back(reduce_big(v, p));
        // all roots mod p must be simple for Newton lifting
        if (gcd(fp, FpPoly(dred, p)).degree() == 0)
            break;
    }
    const BigInt P(std::to_string(p));
    for (std::uint64_t r : distinct_roots(fp, rng)) {
        BigInt x(std::to_string(r));
        BigInt m = P;
        while (m <= needed) {
            BigInt m2 = m * m;
            BigInt fx = eval_mod(c, x, m2);
            BigInt dfx = eval_mod(dc, x, m2);
            BigInt inv;
            if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), m2.get_mpz_t()) == 0)
                throw ArithmeticError("Hensel lifting hit a non-invertible derivative");
            x = x - fx * inv;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m2.get_mpz_t());
            m = m2;
        }
        auto cand = rational_reconstruct(x, m, num_bound, den_bound);
        if (cand && f.eval(*cand).is_zero())
            roots.push_back(*cand);
    }
    return sorted_unique(roots);
}

}  // namespace lgi

namespace lgi {

std::vector<BigRational> rational_roots(const QPoly& f, std::uint64_t seed)
{
    if (auto r = rational_roots_by_divisors(f))
        return *r;
    return rational_roots_modular(f, seed);
}

}  // namespace lgi
