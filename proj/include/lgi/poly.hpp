#pragma once

// Univariate polynomials over Q and over F_p, with the root-finding routines
// used by the curve and modular-polynomial code.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lgi/arith.hpp"

namespace lgi {

class FpPoly;

/// Dense polynomial over Q, coefficients stored lowest degree first.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<BigRational> coeffs);
    /// Highest degree first, the order used by fixture files.
    static QPoly from_descending(std::vector<BigRational> coeffs);
    static QPoly monomial(const BigRational& c, std::size_t degree);

    const std::vector<BigRational>& coeffs() const { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    BigRational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRational(0); }
    BigRational leading() const { return coeffs_.empty() ? BigRational(0) : coeffs_.back(); }

    BigRational eval(const BigRational& x) const;
    QuadFieldElement eval(const QuadFieldElement& x) const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    bool operator==(const QPoly& o) const { return coeffs_ == o.coeffs_; }

    QPoly derivative() const;
    /// Euclidean division; divisor must be nonzero.
    std::pair<QPoly, QPoly> divrem(const QPoly& d) const;
    /// Monic copy (zero stays zero).
    QPoly monic() const;
    /// Reduction mod p; throws when p divides a denominator.
    FpPoly mod(std::uint64_t p) const;

    /// Quotient by (X - r); nullopt unless r is an exact root.
    std::optional<QPoly> divide_by_root(const BigRational& r) const;

    /// Primitive integer polynomial with the same roots (positive leading coefficient).
    std::vector<BigInt> primitive_integer_coeffs() const;

    std::string str(const char* var = "X") const;

private:
    void trim();
    std::vector<BigRational> coeffs_;
};

/// Polynomial discriminant for degree 2 or 3.
BigRational discriminant(const QPoly& f);

/// Monic gcd over Q.
QPoly gcd(QPoly a, QPoly b);

/// f / gcd(f, f'), monic.
QPoly squarefree_part(const QPoly& f);

/// Dense polynomial over F_p, coefficients lowest degree first, always trimmed.
class FpPoly {
public:
    FpPoly(std::vector<std::uint64_t> coeffs, std::uint64_t p);
    static FpPoly x_power(std::size_t n, std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    std::uint64_t eval(std::uint64_t x) const;

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly rem(const FpPoly& m) const;
    FpPoly quot(const FpPoly& m) const;
    FpPoly monic() const;

private:
    void trim();
    std::vector<std::uint64_t> c_;
    std::uint64_t p_;
};

FpPoly gcd(FpPoly a, FpPoly b);

/// base^e mod m.
FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m);

/// Number of distinct roots in F_p, via deg gcd(X^p - X, f). f must be nonzero.
std::size_t distinct_root_count(const FpPoly& f);

/// Distinct roots in F_p (Cantor-Zassenhaus equal-degree splitting), sorted.
std::vector<std::uint64_t> distinct_roots(const FpPoly& f, std::mt19937_64& rng);

/// Rational roots by the rational root theorem. Returns nullopt when the
/// constant or leading coefficient keeps a cofactor that trial division up to
/// 10^7 cannot split, or when there are more than 4096 numerator/denominator
/// divisor pairs to try. Distinct roots, sorted.
std::optional<std::vector<BigRational>> rational_roots_by_divisors(const QPoly& f);

/// Distinct rational roots found modulo a random 62-bit prime, Hensel-lifted
/// until the modulus exceeds the rational-root height bound, rationally
/// reconstructed and verified exactly. Sorted.
std::vector<BigRational> rational_roots_modular(const QPoly& f, std::uint64_t seed);

/// Distinct rational roots, sorted: the divisor route when both end
/// coefficients factor, the modular route otherwise.
std::vector<BigRational> rational_roots(const QPoly& f, std::uint64_t seed = 0);

/// Half-extended-Euclid rational reconstruction of a mod m with
/// |num| <= num_bound and 0 < den <= den_bound.
std::optional<BigRational> rational_reconstruct(const BigInt& a, const BigInt& m, const BigInt& num_bound,
                                                const BigInt& den_bound);

}  // namespace lgi
