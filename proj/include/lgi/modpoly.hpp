#pragma once

// Classical modular polynomials Phi_N(X, Y) read from text files, their
// specializations at a j-invariant, and factorization certificates.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lgi/arith.hpp"
#include "lgi/poly.hpp"

namespace lgi {

class ModpolyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModularPolynomial {
    std::uint32_t level = 0;
    std::map<std::pair<std::uint32_t, std::uint32_t>, BigInt> coeffs;  // keys (i, j) with i >= j

    /// Coefficient of X^i Y^j, using the symmetry.
    BigInt coeff(std::uint32_t i, std::uint32_t j) const;
    std::uint32_t degree_x() const;
};

/// Parses "level N" followed by "i j c" lines; '#' starts a comment line.
/// Errors carry the source name and line number.
ModularPolynomial parse_modpoly(std::istream& in, const std::string& source = "<input>");
/// Parses the file, then rejects it unless Phi(j, j) = 0 at every class-number-one
/// CM point where ell splits or ramifies and is prime to the conductor.
ModularPolynomial load_modpoly(const std::filesystem::path& path);

/// Discriminants of the CM points where that identity fails; empty for a correct Phi.
std::vector<std::int64_t> cm_check_failures(const ModularPolynomial& m);

/// Phi_N(X, j) over Q; degree N + 1.
QPoly evaluate_at_j(const ModularPolynomial& m, const BigRational& j);

/// Phi_N(X, j) over F_p.
FpPoly evaluate_mod(const ModularPolynomial& m, std::uint64_t j, std::uint64_t p);

/// Rational roots of f, repeated by multiplicity, ascending.
std::vector<BigRational> rational_linear_factors(const QPoly& f, std::uint64_t seed = 0);

/// Distinct roots of Phi_N(X, j) in F_p via deg gcd(X^p - X, Phi). Rejects p | N.
std::size_t fp_root_count(const ModularPolynomial& m, const PrimeFieldElement& j);

/// Linear factors of Phi_N(X, j) over F_p counted with multiplicity. Rejects p | N.
std::size_t fp_linear_factor_count(const ModularPolynomial& m, const PrimeFieldElement& j, std::uint64_t seed = 0);

struct FactorizationCertificate {
    QPoly target;
    std::vector<QPoly> factors;
};

/// Factor lines: comma-separated rationals, highest degree first.
std::vector<QPoly> load_certificate_factors(const std::filesystem::path& path);

struct FactorCheck {
    std::size_t index;
    int degree;
    std::optional<BigRational> discriminant;  // degree 2 and 3 only
    bool minus7_shape = false;                // discriminant = -7 a^2 / 4^b, a, b >= 1
    BigInt a;
    unsigned b = 0;
    bool irreducible_certified = false;       // degree <= 3 with no rational root
};

struct CertificateReport {
    bool product_matches = false;
    std::string mismatch;  // first differing coefficient when the product fails
    std::vector<FactorCheck> factors;
    bool all_shapes_ok() const;
};

CertificateReport verify_certificate(const FactorizationCertificate& c);

/// d = -7 a^2 / 4^b for positive integers a, b.
bool minus7_shape(const BigRational& d, BigInt* a = nullptr, unsigned* b = nullptr);

}  // namespace lgi
