#pragma once

// Explicit subgroups of GL_2(F_ell): closure, conjugacy, and enumeration of
// every conjugacy class for small ell.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lgi/gl2.hpp"

namespace lgi {

class Subgroup {
public:
    /// Trusts that elements form the group generated by generators; use
    /// validate() to check. Elements are sorted on construction.
    Subgroup(std::uint32_t ell, std::vector<GL2Element> elements, std::vector<GL2Element> generators);

    std::uint32_t ell() const { return ell_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<GL2Element>& elements() const { return elements_; }
    const std::vector<GL2Element>& generators() const { return generators_; }

    bool contains(const GL2Element& g) const;
    bool is_abelian() const;
    /// Sorted multiset of element orders.
    std::vector<std::uint64_t> element_orders() const;
    /// Number of distinct determinants.
    std::size_t determinant_image_size() const;

    /// Throws GroupError unless the Subgroup invariants hold.
    void validate() const;

    bool operator==(const Subgroup& o) const { return ell_ == o.ell_ && elements_ == o.elements_; }

private:
    std::uint32_t ell_;
    std::vector<GL2Element> elements_;
    std::vector<GL2Element> generators_;
};

/// Breadth-first product saturation. An empty generator list gives the trivial group.
Subgroup closure(std::uint32_t ell, std::span<const GL2Element> gens);

/// x G x^-1
Subgroup conjugate(const Subgroup& g, const GL2Element& x);

/// Lexicographically least sorted element list among all conjugates.
struct ConjugacyKey {
    std::vector<std::uint32_t> codes;
    auto operator<=>(const ConjugacyKey&) const = default;
};

ConjugacyKey conjugacy_key(const Subgroup& g);

/// Some x with x G1 x^-1 = G2.
std::optional<GL2Element> conjugating_element(const Subgroup& g1, const Subgroup& g2);
bool are_conjugate(const Subgroup& g1, const Subgroup& g2);

/// Normalizer of g inside GL_2(F_ell).
Subgroup normalizer_in_gl2(const Subgroup& g);

/// A generating set of at most three elements if a seeded search finds one,
/// otherwise the input generators with redundant ones removed.
std::vector<GL2Element> small_generating_set(const Subgroup& g, std::uint64_t seed);

struct EnumerationOptions {
    bool expensive = false;  // permit ell = 11
    bool parallel = true;    // fan extension closures out over OpenMP threads
};

struct EnumerationResult {
    std::vector<Subgroup> classes;     // sorted by (order, conjugacy key)
    std::size_t closures_computed = 0;
    std::size_t subgroups_seen = 0;    // distinct subgroups (not classes) registered
    std::size_t max_generators = 0;    // largest generating set kept for a class
};

/// One representative per conjugacy class of subgroups of GL_2(F_ell),
/// ell in {2, 3, 5, 7}, or 11 when options.expensive is set.
EnumerationResult enumerate_subgroups_detailed(std::uint32_t ell, EnumerationOptions options = {});
std::vector<Subgroup> enumerate_subgroups(std::uint32_t ell, EnumerationOptions options = {});

}  // namespace lgi
