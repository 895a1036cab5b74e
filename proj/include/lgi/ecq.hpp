#pragma once

// Elliptic curves over Q in long Weierstrass form, the genus-one quartic
// twist -7y^2 = x^4 + 2x^3 - 9x^2 - 10x - 3, and the rational maps tying the
// level-7 counterexample together.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lgi/arith.hpp"
#include "lgi/poly.hpp"

namespace lgi {

class CurveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the 49a3 -> quartic map at points with u + 2v = 0.
class DegeneratePointError : public CurveError {
public:
    using CurveError::CurveError;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassCurve {
    BigRational a1, a2, a3, a4, a6;

    /// "a1,a2,a3,a4,a6" with integer or p/q entries. Throws CurveError on
    /// malformed input or a singular curve.
    static WeierstrassCurve parse(std::string_view text);

    BigRational b2() const { return a1 * a1 + BigRational(4) * a2; }
    BigRational b4() const { return BigRational(2) * a4 + a1 * a3; }
    BigRational b6() const { return a3 * a3 + BigRational(4) * a6; }
    BigRational b8() const;
    BigRational discriminant() const;

    bool is_integral() const;
    bool contains(const BigRational& x, const BigRational& y) const;
    bool contains(const QuadFieldElement& x, const QuadFieldElement& y) const;

    std::string str() const;
};

/// y^2 + xy = x^3 - x^2 - 107x - 379, j = 2268945/128
WeierstrassCurve counterexample_curve();
/// y^2 + xy = x^3 - x^2 - 107x + 552 (Cremona 49a3)
WeierstrassCurve curve_49a3();

struct CurveInvariants {
    BigRational c4, c6, discriminant, j;
};

/// Throws CurveError for a singular curve.
CurveInvariants invariants(const WeierstrassCurve& e);

/// Primes dividing the discriminant of an integral model, ascending.
std::vector<BigInt> bad_primes(const WeierstrassCurve& e);

/// Rational roots of 4x^3 + b2 x^2 + 2 b4 x + b6, ascending.
std::vector<BigRational> two_torsion_x(const WeierstrassCurve& e);

/// q(x) = x^4 + 2x^3 - 9x^2 - 10x - 3
const QPoly& quartic_q();

/// -7 y^2 == q(x), exactly.
bool quartic_point_check(const BigRational& x, const BigRational& y);
/// Same test over Q(sqrt d); throws CurveError when x and y live in different fields.
bool quartic_point_check(const QuadFieldElement& x, const QuadFieldElement& y);

struct RationalMap {
    QPoly numerator;
    QPoly denominator;
    /// Throws CurveError at a pole.
    BigRational operator()(const BigRational& x) const;
};

/// f(x) = -(x-3)^3 (x-2) (x^2+x-5)^3 (x^2+x+2)^3 (x^4-3x^3+2x^2+3x+1)^3 / (x^3-2x^2-x+1)^7
const RationalMap& map_f();
BigRational eval_map_f(const BigRational& x);

template <class T>
struct QuarticImage {
    T x;
    bool y_exists;  // q(x)/(-7) is a square in the coordinate field
};

/// x = (3u - v + 42)/(u + 2v) for a point (u, v) on 49a3. Throws CurveError
/// when (u, v) is not on the curve and DegeneratePointError when u + 2v = 0.
QuarticImage<BigRational> map_49a3_to_quartic_x(const BigRational& u, const BigRational& v);
QuarticImage<QuadFieldElement> map_49a3_to_quartic_x(const QuadFieldElement& u, const QuadFieldElement& v);

}  // namespace lgi
