#include "lgi/ecq.hpp"

#include <functional>
#include <sstream>

namespace lgi {

namespace {

// Curve equation residual lhs - rhs, generic over Q and Q(sqrt d).
template <class T>
T residual(const WeierstrassCurve& e, const T& x, const T& y, const std::function<T(const BigRational&)>& lift)
{
    T lhs = y * y + lift(e.a1) * x * y + lift(e.a3) * y;
    T rhs = x * x * x + lift(e.a2) * x * x + lift(e.a4) * x + lift(e.a6);
    return lhs - rhs;
}

}  // namespace

WeierstrassCurve WeierstrassCurve::parse(std::string_view text)
{
    std::vector<BigRational> v;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start);
        try {
            v.push_back(BigRational::parse(part));
        } catch (const std::exception& ex) {
            throw CurveError("curve coefficient " + std::to_string(v.size() + 1) + ": " + ex.what());
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (v.size() != 5)
        throw CurveError("curve needs five coefficients a1,a2,a3,a4,a6, got " + std::to_string(v.size()));
    WeierstrassCurve e{v[0], v[1], v[2], v[3], v[4]};
    if (e.discriminant().is_zero())
        throw CurveError("singular curve (discriminant 0)");
    return e;
}

BigRational WeierstrassCurve::b8() const
{
    return (b2() * b6() - b4() * b4()) / BigRational(4);
}

BigRational WeierstrassCurve::discriminant() const
{
    BigRational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - BigRational(8) * B4 * B4 * B4 - BigRational(27) * B6 * B6 + BigRational(9) * B2 * B4 * B6;
}

bool WeierstrassCurve::is_integral() const
{
    return a1.is_integer() && a2.is_integer() && a3.is_integer() && a4.is_integer() && a6.is_integer();
}

bool WeierstrassCurve::contains(const BigRational& x, const BigRational& y) const
{
    std::function<BigRational(const BigRational&)> lift = [](const BigRational& r) { return r; };
    return residual(*this, x, y, lift).is_zero();
}

bool WeierstrassCurve::contains(const QuadFieldElement& x, const QuadFieldElement& y) const
{
    if (x.d() != y.d())
        throw CurveError("point coordinates lie in different quadratic fields");
    const long d = x.d();
    std::function<QuadFieldElement(const BigRational&)> lift = [d](const BigRational& r) {
        return QuadFieldElement::rational(r, d);
    };
    return residual(*this, x, y, lift).is_zero();
}

std::string WeierstrassCurve::str() const
{
    std::ostringstream os;
    os << a1 << ',' << a2 << ',' << a3 << ',' << a4 << ',' << a6;
    return os.str();
}

WeierstrassCurve counterexample_curve()
{
    return {1, -1, 0, -107, -379};
}

WeierstrassCurve curve_49a3()
{
    return {1, -1, 0, -107, 552};
}

CurveInvariants invariants(const WeierstrassCurve& e)
{
    CurveInvariants inv;
    inv.discriminant = e.discriminant();
    if (inv.discriminant.is_zero())
        throw CurveError("singular curve (discriminant 0)");
    BigRational b2 = e.b2(), b4 = e.b4(), b6 = e.b6();
    inv.c4 = b2 * b2 - BigRational(24) * b4;
    inv.c6 = -b2 * b2 * b2 + BigRational(36) * b2 * b4 - BigRational(216) * b6;
    inv.j = inv.c4 * inv.c4 * inv.c4 / inv.discriminant;
    return inv;
}

std::vector<BigInt> bad_primes(const WeierstrassCurve& e)
{
    if (!e.is_integral())
        throw CurveError("bad_primes needs an integral model");
    BigRational disc = e.discriminant();
    if (disc.is_zero())
        throw CurveError("singular curve (discriminant 0)");
    return prime_divisors(disc.numerator());
}

std::vector<BigRational> two_torsion_x(const WeierstrassCurve& e)
{
    QPoly f({e.b6(), BigRational(2) * e.b4(), e.b2(), BigRational(4)});
    return rational_roots(f);
}

const QPoly& quartic_q()
{
    static const QPoly q = QPoly::from_descending({1, 2, -9, -10, -3});
    return q;
}

bool quartic_point_check(const BigRational& x, const BigRational& y)
{
    return BigRational(-7) * y * y == quartic_q().eval(x);
}

bool quartic_point_check(const QuadFieldElement& x, const QuadFieldElement& y)
{
    if (x.d() != y.d())
        throw CurveError("quartic point coordinates lie in different quadratic fields");
    return QuadFieldElement::rational(-7, x.d()) * y * y == quartic_q().eval(x);
}

BigRational RationalMap::operator()(const BigRational& x) const
{
    BigRational den = denominator.eval(x);
    if (den.is_zero())
        throw CurveError("pole of the rational map at x = " + x.str());
    return numerator.eval(x) / den;
}

const RationalMap& map_f()
{
    static const RationalMap f = [] {
        auto pw = [](const QPoly& p, int k) {
            QPoly r({1});
            for (int i = 0; i < k; ++i)
                r = r * p;
            return r;
        };
        QPoly num = QPoly({-1}) * pw(QPoly::from_descending({1, -3}), 3) * QPoly::from_descending({1, -2}) *
                    pw(QPoly::from_descending({1, 1, -5}), 3) * pw(QPoly::from_descending({1, 1, 2}), 3) *
                    pw(QPoly::from_descending({1, -3, 2, 3, 1}), 3);
        QPoly den = pw(QPoly::from_descending({1, -2, -1, 1}), 7);
        return RationalMap{num, den};
    }();
    return f;
}

BigRational eval_map_f(const BigRational& x)
{
    return map_f()(x);
}

QuarticImage<BigRational> map_49a3_to_quartic_x(const BigRational& u, const BigRational& v)
{
    if (!curve_49a3().contains(u, v))
        throw CurveError("(" + u.str() + ", " + v.str() + ") is not on 49a3");
    BigRational den = u + BigRational(2) * v;
    if (den.is_zero())
        throw DegeneratePointError("degenerate point: u + 2v = 0 at (" + u.str() + ", " + v.str() + ")");
    BigRational x = (BigRational(3) * u - v + BigRational(42)) / den;
    bool sq = (quartic_q().eval(x) / BigRational(-7)).sqrt().has_value();
    return {x, sq};
}

QuarticImage<QuadFieldElement> map_49a3_to_quartic_x(const QuadFieldElement& u, const QuadFieldElement& v)
{
    if (u.d() != v.d())
        throw CurveError("point coordinates lie in different quadratic fields");
    if (!curve_49a3().contains(u, v))
        throw CurveError("point is not on 49a3");
    const long d = u.d();
    auto lift = [d](long r) { return QuadFieldElement::rational(r, d); };
    QuadFieldElement den = u + lift(2) * v;
    if (den.is_zero())
        throw DegeneratePointError("degenerate point: u + 2v = 0");
    QuadFieldElement x = (lift(3) * u - v + lift(42)) / den;
    bool sq = (quartic_q().eval(x) / lift(-7)).sqrt().has_value();
    return {x, sq};
}

}  // namespace lgi
