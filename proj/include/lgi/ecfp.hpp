#pragma once

// Reduction of curves modulo odd primes, point counts, Frobenius traces and
// the local ell-isogeny test on x^2 - a_p x + p.

#include <cstdint>
#include <optional>
#include <vector>

#include "lgi/ecq.hpp"

namespace lgi {

/// p = 2 is outside the supported range.
class UnsupportedPrimeError : public CurveError {
public:
    using CurveError::CurveError;
};

struct LocalData {
    std::uint64_t p = 0;
    bool good = false;
    std::optional<std::uint64_t> count;  // |E(F_p)| when good
    std::optional<std::int64_t> a_p;     // p + 1 - count when good
    bool supersingular = false;
};

/// Naive count up to 2^16, baby-step giant-step above. Throws
/// UnsupportedPrimeError for p = 2 and CurveError when p divides a
/// coefficient denominator.
LocalData reduce_and_count(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t seed = 0);

/// |E(F_p)| by summing Legendre symbols of the completed square; p odd, E good at p.
std::uint64_t count_naive(const WeierstrassCurve& e, std::uint64_t p);

/// |E(F_p)| by baby-step giant-step on y^2 = x^3 - 27c4 x - 54c6; p >= 5, E
/// good at p. nullopt when the Hasse interval stays ambiguous.
std::optional<std::uint64_t> count_bsgs(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t seed = 0);

/// x^2 - a_p x + p has a root mod ell.
bool local_isogeny_admitted(const LocalData& d, std::uint64_t ell);

struct ScanEntry {
    std::uint64_t p;
    std::int64_t a_p;
    bool supersingular;
    bool admitted;
};

struct ScanReport {
    std::uint64_t ell = 0;
    std::uint64_t bound = 0;
    std::vector<ScanEntry> entries;    // good primes, ascending
    std::vector<std::uint64_t> bad;    // primes of bad reduction in range
    std::vector<std::uint64_t> skipped;  // 2, ell, and primes dividing a denominator
    std::vector<std::uint64_t> failing;  // good primes that do not admit
    bool all_admit() const { return failing.empty(); }
};

struct ScanOptions {
    bool parallel = true;
    std::uint64_t seed = 0;
};

/// Every prime 3 <= p <= bound with p != ell.
ScanReport local_scan(const WeierstrassCurve& e, std::uint64_t ell, std::uint64_t bound, ScanOptions options = {});

}  // namespace lgi
