#pragma once

// Semisimple subgroup classification, the local-global group lemma checker,
// and the dihedral counterexample groups.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgi/gl2.hpp"
#include "lgi/subgroups.hpp"

namespace lgi {

class NotSemisimpleError : public GroupError {
public:
    using GroupError::GroupError;
};

enum class ClassificationCase { cartan_contained, normalizer_not_cartan, exceptional };
enum class ImageKind { cyclic, dihedral, A4, S4, A5 };

const char* to_string(ClassificationCase c);
const char* to_string(ImageKind k);

struct ProjectiveImage {
    ImageKind kind;
    std::size_t order;  // |H|; cyclic(n) has order n, dihedral(2n) has order 2n
    std::string str() const;
};

struct ClassificationResult {
    ClassificationCase kind;
    ProjectiveImage image;
    /// For the first two cases: G lies in cartan(ell, *cartan), or in its normalizer.
    std::optional<CartanSpec> cartan;
};

/// Image of g in PGL_2 as sorted canonical lifts.
std::vector<GL2Element> projective_image(const Subgroup& g);

/// Throws NotSemisimpleError when ell divides |G|.
ClassificationResult classify(const Subgroup& g);

/// Every element fixes a line, no line is fixed by all of G, and some element
/// acts as an odd permutation of the lines.
bool lemma1_hypothesis(const Subgroup& g);

struct LemmaReport {
    Subgroup group;
    bool hypothesis_met = false;
    std::size_t n = 0;                        // dihedral half-order, 0 if the image is not dihedral
    std::optional<CartanKind> cartan_kind;    // of the normalizer containing G
    bool proper_containment = false;
    std::uint32_t ell_mod_4 = 0;
    bool has_orbit_of_size_2 = false;
    std::vector<std::uint32_t> orbit_sizes;
    bool nontrivial_fix_two = false;          // every non-scalar element fixes exactly two lines
    std::vector<std::string> violations;      // empty when every conclusion holds
};

/// Fills a report for one subgroup and records every failed conclusion.
LemmaReport lemma1_report(const Subgroup& g);

struct LemmaOptions {
    bool expensive = false;
    bool parallel = true;
};

struct LemmaVerification {
    std::uint32_t ell;
    std::size_t classes_checked = 0;
    std::vector<LemmaReport> reports;  // hypothesis-satisfying classes, in enumeration order
    std::size_t violation_count() const;
};

LemmaVerification lemma1_verify(std::uint32_t ell, LemmaOptions options = {});

/// diag(alpha^i, alpha^j) and [[0, alpha^i], [alpha^j, 0]] over i = j mod d,
/// d = (ell - 1)/n, alpha the smallest primitive root.
Subgroup construct_prop3_group(std::uint32_t ell, std::uint32_t n);

struct Prop3Properties {
    bool det_surjective = false;
    std::uint32_t min_fixed_lines = 0;     // min over g of |Omega^g|
    std::size_t common_fixed_lines = 0;    // |Omega^G|
    ProjectiveImage image{ImageKind::cyclic, 1};
    std::vector<std::uint32_t> orbit_sizes;
    bool holds(std::uint32_t n) const
    {
        return det_surjective && min_fixed_lines >= 2 && common_fixed_lines == 0 &&
               image.kind == ImageKind::dihedral && image.order == 2 * static_cast<std::size_t>(n);
    }
};

Prop3Properties prop3_properties(const Subgroup& g);

}  // namespace lgi
