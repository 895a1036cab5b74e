#include "lgi/classno.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace lgi {

namespace {

bool valid_discriminant(std::int64_t D)
{
    std::int64_t r = ((D % 4) + 4) % 4;
    return D < 0 && (r == 0 || r == 1);
}

void require_valid(std::int64_t D)
{
    if (!valid_discriminant(D))
        throw DiscriminantError("invalid discriminant " + std::to_string(D) + " (need D < 0, D = 0 or 1 mod 4)");
}

}  // namespace

QuadOrder QuadOrder::make(std::int64_t D)
{
    require_valid(D);
    std::int64_t f = 1;
    for (std::int64_t k = 2; k * k <= -D; ++k)
        if (D % (k * k) == 0 && valid_discriminant(D / (k * k)))
            f = k;
    int w = D == -3 ? 6 : (D == -4 ? 4 : 2);
    return {D, f == 1, f, w};
}

std::vector<ReducedForm> reduced_forms(std::int64_t D)
{
    require_valid(D);
    std::vector<ReducedForm> out;
    const auto amax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (std::int64_t a = 1; a <= amax; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (((b - D) % 2) != 0)
                continue;
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            std::int64_t c = num / (4 * a);
            if (c < a || (b < 0 && a == c))
                continue;
            if (std::gcd(std::gcd(a, b), c) != 1)
                continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::uint64_t class_number(std::int64_t D)
{
    return reduced_forms(D).size();
}

int kronecker_prime(std::int64_t D, std::uint64_t ell)
{
    if (!is_prime(ell))
        throw DiscriminantError(std::to_string(ell) + " is not prime");
    if (ell != 2)
        return legendre_kronecker(D, ell);
    if (D % 2 == 0)
        return 0;
    std::int64_t r = ((D % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
}

RatioCheck ratio_check(std::int64_t D0, std::uint64_t ell)
{
    QuadOrder o = QuadOrder::make(D0);
    if (!o.fundamental)
        throw DiscriminantError(std::to_string(D0) + " is not a fundamental discriminant");
    if (!is_prime(ell))
        throw DiscriminantError(std::to_string(ell) + " is not prime");
    const std::int64_t l = static_cast<std::int64_t>(ell);
    QuadOrder sub = QuadOrder::make(D0 * l * l);
    int unit_index = o.w / sub.w;
    int sym = kronecker_prime(D0, ell);
    BigRational predicted = BigRational(l - sym) / BigRational(unit_index);
    BigRational direct = BigRational(static_cast<long>(class_number(sub.D))) /
                         BigRational(static_cast<long>(class_number(D0)));
    return {predicted, direct, predicted == direct, unit_index, sym};
}

bool exceptional_cm_contradiction(std::uint64_t ell)
{
    if (!is_prime(ell) || ell <= 7 || ell % 4 != 3)
        throw DiscriminantError("exceptional_cm_contradiction needs a prime ell > 7 with ell = 3 mod 4, got " +
                                std::to_string(ell));
    // (ell - 1)/3 > 2
    return BigRational(static_cast<long>(ell - 1)) / BigRational(3) > BigRational(2);
}

}  // namespace lgi
