#pragma once

// GL_2 over a prime field, its action on the projective line P^1(F_ell), and
// the standard Cartan subgroups with their normalizers.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "lgi/arith.hpp"

namespace lgi {

class GroupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invertible 2x2 matrix [[a, b], [c, d]] over F_ell.
class GL2Element {
public:
    /// Reduces the entries and rejects singular matrices or composite ell.
    GL2Element(std::uint32_t ell, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    static GL2Element identity(std::uint32_t ell) { return raw(ell, 1, 0, 0, 1); }
    static GL2Element scalar(std::uint32_t ell, std::int64_t s) { return {ell, s, 0, 0, s}; }
    static GL2Element diag(std::uint32_t ell, std::int64_t x, std::int64_t y) { return {ell, x, 0, 0, y}; }
    static GL2Element antidiag(std::uint32_t ell, std::int64_t upper, std::int64_t lower)
    {
        return {ell, 0, upper, lower, 0};
    }

    /// Row-major code a*ell^3 + b*ell^2 + c*ell + d; ordering matches operator<=>.
    std::uint32_t code() const { return ((a_ * ell_ + b_) * ell_ + c_) * ell_ + d_; }
    static GL2Element from_code(std::uint32_t ell, std::uint32_t code);

    std::uint32_t ell() const { return ell_; }
    std::uint32_t a() const { return a_; }
    std::uint32_t b() const { return b_; }
    std::uint32_t c() const { return c_; }
    std::uint32_t d() const { return d_; }
    PrimeFieldElement entry(int row, int col) const;

    std::uint32_t det() const;
    std::uint32_t trace() const;
    bool is_scalar() const { return b_ == 0 && c_ == 0 && a_ == d_; }
    bool is_identity() const { return is_scalar() && a_ == 1; }

    GL2Element operator*(const GL2Element& o) const;
    GL2Element inverse() const;
    GL2Element pow(std::uint64_t n) const;
    /// x * this * x^-1
    GL2Element conjugated_by(const GL2Element& x) const { return x * *this * x.inverse(); }

    /// Order in GL_2.
    std::uint64_t order() const;
    /// Order of the image in PGL_2.
    std::uint64_t projective_order() const;
    /// Lift scaled so the first nonzero entry (row-major) is 1.
    GL2Element projective_canonical() const;

    auto operator<=>(const GL2Element&) const = default;

private:
    struct Raw {};
    GL2Element(Raw, std::uint32_t ell, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d)
        : ell_(ell), a_(a), b_(b), c_(c), d_(d)
    {
    }
    static GL2Element raw(std::uint32_t ell, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d)
    {
        return GL2Element(Raw{}, ell, a, b, c, d);
    }
    void check_same(const GL2Element& o) const;

    std::uint32_t ell_;
    std::uint32_t a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const GL2Element& g);

/// |GL_2(F_ell)| = (ell^2 - 1)(ell^2 - ell).
std::uint64_t gl2_order(std::uint64_t ell);

/// Every element of GL_2(F_ell), sorted.
std::vector<GL2Element> all_gl2(std::uint32_t ell);

/// Canonical lifts of PGL_2(F_ell), sorted.
std::vector<GL2Element> all_pgl2_lifts(std::uint32_t ell);

/// A line of F_ell^2 in normal form [1 : t] or [0 : 1].
class ProjPoint {
public:
    /// Normalizes (x, y); rejects the zero vector.
    ProjPoint(std::uint32_t ell, std::int64_t x, std::int64_t y);

    /// Index in [0, ell]: [1 : t] -> t, [0 : 1] -> ell.
    std::uint32_t index() const { return x_ == 0 ? ell_ : y_; }
    static ProjPoint from_index(std::uint32_t ell, std::uint32_t index);

    std::uint32_t ell() const { return ell_; }
    std::uint32_t x() const { return x_; }
    std::uint32_t y() const { return y_; }

    auto operator<=>(const ProjPoint&) const = default;

private:
    ProjPoint() = default;
    std::uint32_t ell_ = 2;
    std::uint32_t x_ = 1;
    std::uint32_t y_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ProjPoint& p);

ProjPoint act(const GL2Element& g, const ProjPoint& p);

/// Cached field inverses for repeated actions on point indices.
class ProjectiveLine {
public:
    explicit ProjectiveLine(std::uint32_t ell);

    std::uint32_t ell() const { return ell_; }
    std::uint32_t size() const { return ell_ + 1; }
    std::uint32_t apply(const GL2Element& g, std::uint32_t index) const;
    /// perm[i] = index of g applied to point i.
    std::vector<std::uint32_t> permutation(const GL2Element& g) const;

    /// Sorted orbit sizes of the group generated by gens.
    std::vector<std::uint32_t> orbit_sizes(std::span<const GL2Element> gens) const;
    /// Indices of the lines fixed by every element of gens.
    std::vector<std::uint32_t> common_fixed_points(std::span<const GL2Element> gens) const;
    std::uint32_t fixed_point_count(const GL2Element& g) const;

private:
    std::uint32_t ell_;
    std::vector<std::uint32_t> inv_;
};

struct ElementActionProfile {
    std::uint64_t r;                          // order of the image in PGL_2
    std::uint32_t k;                          // fixed lines
    std::uint32_t s;                          // orbits
    int sigma;                                // sign as a permutation of the ell+1 lines
    std::vector<std::uint32_t> orbit_sizes;   // sorted ascending
};

ElementActionProfile action_profile(const GL2Element& g);

/// Sign of a permutation computed from its cycle type.
int permutation_sign(std::span<const std::uint32_t> perm);

enum class CartanKind { split, nonsplit };

const char* to_string(CartanKind kind);

struct CartanSpec {
    CartanKind kind;
    std::optional<std::uint32_t> delta;  // non-residue, nonsplit with ell > 2 only
    GL2Element conjugator;               // identity for the standard copy
};

/// Standard split (diagonal) or nonsplit Cartan subgroup, sorted. delta
/// defaults to the smallest non-residue; for ell = 2 the nonsplit Cartan is
/// the subgroup of order 3 and no delta is accepted.
std::vector<GL2Element> cartan(CartanKind kind, std::uint32_t ell, std::optional<std::uint32_t> delta = {});

/// The conjugate x C x^-1 of the Cartan described by spec.
std::vector<GL2Element> cartan(std::uint32_t ell, const CartanSpec& spec);

/// Normalizer of a Cartan subgroup, sorted. Validates the input first.
std::vector<GL2Element> normalizer_of_cartan(std::span<const GL2Element> cartan_elements);

/// True when m lies in span(I, c) for a non-scalar c.
bool in_algebra_of(const GL2Element& m, const GL2Element& c);

/// The standard nonsplit Cartan generator [[0, delta], [1, 0]].
GL2Element nonsplit_generator(std::uint32_t ell, std::uint32_t delta);

}  // namespace lgi
