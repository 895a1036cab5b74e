#pragma once

// Exact arithmetic: prime fields, big rationals, quadratic fields, and the
// small number-theoretic helpers the rest of the library leans on.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lgi {

using BigInt = mpz_class;

class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// --- machine-word modular helpers -------------------------------------------

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    std::uint64_t s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return a >= b ? a - b : a + (m - b);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; throws ArithmeticError when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Reduce a signed value into [0, m).
std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m);

/// Reduce a big integer into [0, m).
std::uint64_t reduce_big(const BigInt& a, std::uint64_t m);

/// Trial division below 2^32, deterministic Miller-Rabin above.
bool is_prime(std::uint64_t n);

/// Distinct prime factors of n (n >= 1), ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Distinct prime divisors of |n| (n != 0), ascending. Trial division up to
/// 10^7, then Pollard rho on the cofactor.
std::vector<BigInt> prime_divisors(const BigInt& n);

/// All primes in [lo, hi], ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Square root modulo an odd prime (Tonelli-Shanks); nullopt for non-residues.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

/// Legendre symbol (a|m) for an odd prime m. Rejects even or composite m.
int legendre_kronecker(std::int64_t a, std::uint64_t m);
int legendre_kronecker(const BigInt& a, std::uint64_t m);

// --- prime fields -------------------------------------------------------------

class PrimeFieldElement {
public:
    /// Validates that modulus is prime.
    PrimeFieldElement(std::int64_t value, std::uint64_t modulus);

    static PrimeFieldElement unchecked(std::uint64_t value, std::uint64_t modulus)
    {
        PrimeFieldElement e;
        e.value_ = value % modulus;
        e.modulus_ = modulus;
        return e;
    }

    std::uint64_t value() const { return value_; }
    std::uint64_t modulus() const { return modulus_; }
    bool is_zero() const { return value_ == 0; }

    PrimeFieldElement operator+(const PrimeFieldElement& o) const;
    PrimeFieldElement operator-(const PrimeFieldElement& o) const;
    PrimeFieldElement operator*(const PrimeFieldElement& o) const;
    PrimeFieldElement operator/(const PrimeFieldElement& o) const;
    PrimeFieldElement operator-() const;
    PrimeFieldElement inverse() const;
    PrimeFieldElement pow(std::uint64_t e) const;

    /// Multiplicative order; throws on zero.
    std::uint64_t order() const;
    bool is_square() const;

    bool operator==(const PrimeFieldElement&) const = default;

private:
    PrimeFieldElement() = default;
    void check_same(const PrimeFieldElement& o) const;

    std::uint64_t value_ = 0;
    std::uint64_t modulus_ = 2;
};

std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& e);

/// Smallest positive generator of (Z/mZ)^*. Rejects m = 2 separately.
PrimeFieldElement primitive_root(std::uint64_t m);

/// Smallest quadratic non-residue modulo an odd prime.
std::uint64_t smallest_nonresidue(std::uint64_t m);

// --- rationals ----------------------------------------------------------------

/// Always in lowest terms with positive denominator.
class BigRational {
public:
    BigRational() = default;
    BigRational(long v) : q_(v) {}
    BigRational(int v) : q_(v) {}
    BigRational(const BigInt& v) : q_(v) {}
    BigRational(const BigInt& num, const BigInt& den);
    explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p/q", "-p/q" or an integer.
    static BigRational parse(std::string_view text);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    BigRational operator+(const BigRational& o) const { return BigRational(mpq_class(q_ + o.q_)); }
    BigRational operator-(const BigRational& o) const { return BigRational(mpq_class(q_ - o.q_)); }
    BigRational operator*(const BigRational& o) const { return BigRational(mpq_class(q_ * o.q_)); }
    BigRational operator/(const BigRational& o) const;
    BigRational operator-() const { return BigRational(mpq_class(-q_)); }
    BigRational& operator+=(const BigRational& o) { return *this = *this + o; }
    BigRational& operator-=(const BigRational& o) { return *this = *this - o; }
    BigRational& operator*=(const BigRational& o) { return *this = *this * o; }
    BigRational& operator/=(const BigRational& o) { return *this = *this / o; }

    BigRational pow(unsigned e) const;

    /// Exact square root when this is the square of a rational.
    std::optional<BigRational> sqrt() const;

    /// Image in F_p; throws when p divides the denominator.
    std::uint64_t mod(std::uint64_t p) const;

    bool operator==(const BigRational& o) const { return q_ == o.q_; }
    std::strong_ordering operator<=>(const BigRational& o) const
    {
        int c = cmp(q_, o.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const { return q_.get_str(); }

private:
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const BigRational& r);

/// Exact integer square root when n is a perfect square.
std::optional<BigInt> exact_sqrt(const BigInt& n);

// --- quadratic fields ---------------------------------------------------------

/// a + b*sqrt(d) in Q(sqrt(d)), d squarefree and not 0 or 1.
class QuadFieldElement {
public:
    QuadFieldElement(BigRational a, BigRational b, long d);
    /// A rational embedded in Q(sqrt(d)).
    static QuadFieldElement rational(const BigRational& a, long d) { return {a, BigRational(0), d}; }

    const BigRational& a() const { return a_; }
    const BigRational& b() const { return b_; }
    long d() const { return d_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    QuadFieldElement operator+(const QuadFieldElement& o) const;
    QuadFieldElement operator-(const QuadFieldElement& o) const;
    QuadFieldElement operator*(const QuadFieldElement& o) const;
    QuadFieldElement operator/(const QuadFieldElement& o) const;
    QuadFieldElement operator-() const { return {-a_, -b_, d_}; }
    QuadFieldElement conjugate() const { return {a_, -b_, d_}; }
    BigRational norm() const { return a_ * a_ - BigRational(d_) * b_ * b_; }

    /// A square root inside Q(sqrt(d)) if one exists.
    std::optional<QuadFieldElement> sqrt() const;

    /// Equality requires matching d; mismatched fields compare unequal.
    bool operator==(const QuadFieldElement& o) const
    {
        return d_ == o.d_ && a_ == o.a_ && b_ == o.b_;
    }

private:
    void check_same(const QuadFieldElement& o) const;

    BigRational a_;
    BigRational b_;
    long d_;
};

std::ostream& operator<<(std::ostream& os, const QuadFieldElement& z);

bool is_squarefree(long n);

// --- Gauss sums ---------------------------------------------------------------

struct GaussSumSquare {
    long double real;
    long double imag;
};

/// g = sum_{n<ell} exp(2 pi i n^2 / ell), returns g^2 in extended precision.
GaussSumSquare gauss_sum_square(std::uint64_t ell);

}  // namespace lgi
