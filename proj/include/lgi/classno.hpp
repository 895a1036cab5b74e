#pragma once

// Imaginary quadratic orders: reduced forms, class numbers, and the
// class-number ratio h(D0 ell^2)/h(D0) = (ell - (D0|ell)) / [O* : O'*].

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lgi/arith.hpp"

namespace lgi {

class DiscriminantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct QuadOrder {
    std::int64_t D;
    bool fundamental;
    std::int64_t conductor;
    int w;  // number of units

    /// Throws DiscriminantError unless D < 0 and D = 0, 1 mod 4.
    static QuadOrder make(std::int64_t D);
};

struct ReducedForm {
    std::int64_t a, b, c;
    bool operator==(const ReducedForm&) const = default;
};

/// Primitive reduced forms of discriminant D, ordered by (a, b).
std::vector<ReducedForm> reduced_forms(std::int64_t D);

std::uint64_t class_number(std::int64_t D);

/// Kronecker symbol (D|ell) for a prime ell, including ell = 2.
int kronecker_prime(std::int64_t D, std::uint64_t ell);

struct RatioCheck {
    BigRational predicted;
    BigRational direct;
    bool agree;
    int unit_index;
    int symbol;
};

/// D0 must be a fundamental discriminant and ell prime.
RatioCheck ratio_check(std::int64_t D0, std::uint64_t ell);

/// (ell - 1)/3 > 2 for prime ell > 7, ell = 3 mod 4; throws otherwise.
bool exceptional_cm_contradiction(std::uint64_t ell);

}  // namespace lgi
