#include "lgi/ecfp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace lgi {

namespace {

constexpr std::uint64_t naive_limit = std::uint64_t{1} << 16;

void require_reducible(const WeierstrassCurve& e, std::uint64_t p)
{
    if (p == 2)
        throw UnsupportedPrimeError("p = 2 is not supported");
    if (!is_prime(p))
        throw CurveError(std::to_string(p) + " is not prime");
    for (const BigRational* a : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6})
        if (reduce_big(a->denominator(), p) == 0)
            throw CurveError("p = " + std::to_string(p) + " divides a coefficient denominator");
}

bool good_at(const WeierstrassCurve& e, std::uint64_t p)
{
    return e.discriminant().mod(p) != 0;
}

// Affine points on y^2 = x^3 + A x + B over F_p.
struct Pt {
    std::uint64_t x = 0, y = 0;
    bool inf = true;
    bool operator==(const Pt&) const = default;
};

struct ShortCurve {
    std::uint64_t p, A, B;

    Pt neg(const Pt& P) const { return P.inf ? P : Pt{P.x, submod(0, P.y, p), false}; }

    Pt add(const Pt& P, const Pt& Q) const
    {
        if (P.inf)
            return Q;
        if (Q.inf)
            return P;
        std::uint64_t lam;
        if (P.x == Q.x) {
            if (addmod(P.y, Q.y, p) == 0)
                return {};
            std::uint64_t num = addmod(mulmod(3, mulmod(P.x, P.x, p), p), A, p);
            lam = mulmod(num, invmod(mulmod(2, P.y, p), p), p);
        } else {
            lam = mulmod(submod(Q.y, P.y, p), invmod(submod(Q.x, P.x, p), p), p);
        }
        std::uint64_t x3 = submod(submod(mulmod(lam, lam, p), P.x, p), Q.x, p);
        std::uint64_t y3 = submod(mulmod(lam, submod(P.x, x3, p), p), P.y, p);
        return {x3, y3, false};
    }

    Pt mul(Pt P, std::int64_t k) const
    {
        if (k < 0) {
            P = neg(P);
            k = -k;
        }
        Pt R;
        auto n = static_cast<std::uint64_t>(k);
        while (n) {
            if (n & 1)
                R = add(R, P);
            P = add(P, P);
            n >>= 1;
        }
        return R;
    }

    Pt random_point(std::mt19937_64& rng) const
    {
        std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
        for (;;) {
            std::uint64_t x = dist(rng);
            std::uint64_t rhs = addmod(addmod(mulmod(mulmod(x, x, p), x, p), mulmod(A, x, p), p), B, p);
            if (auto y = sqrt_mod(rhs, p))
                return {x, *y, false};
        }
    }
};

// All k in [lo, hi] with kP = Q, by baby steps jP (0 <= j < m) and giant steps of m.
std::vector<std::int64_t> bsgs_all(const ShortCurve& c, const Pt& P, const Pt& Q, std::int64_t lo, std::int64_t hi)
{
    const auto width = static_cast<std::uint64_t>(hi - lo + 1);
    const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width)))) + 1;
    std::unordered_multimap<std::uint64_t, std::uint64_t> baby;  // x-coordinate (or sentinel for O) -> j
    const std::uint64_t inf_key = ~std::uint64_t{0};
    std::vector<Pt> table(m);
    Pt cur;
    for (std::uint64_t j = 0; j < m; ++j) {
        table[j] = cur;
        baby.emplace(cur.inf ? inf_key : cur.x, j);
        cur = c.add(cur, P);
    }
    const Pt step = c.neg(c.mul(P, static_cast<std::int64_t>(m)));
    Pt T = c.add(Q, c.neg(c.mul(P, lo)));  // Q - lo P
    std::vector<std::int64_t> out;
    for (std::uint64_t i = 0; i * m < width; ++i) {
        auto [b, e] = baby.equal_range(T.inf ? inf_key : T.x);
        for (auto it = b; it != e; ++it)
            if (table[it->second] == T) {
                std::int64_t k = lo + static_cast<std::int64_t>(i * m + it->second);
                if (k <= hi)
                    out.push_back(k);
            }
        T = c.add(T, step);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::uint64_t count_naive(const WeierstrassCurve& e, std::uint64_t p)
{
    require_reducible(e, p);
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const std::uint64_t b2 = e.b2().mod(p), b4 = e.b4().mod(p), b6 = e.b6().mod(p);
    std::vector<std::int8_t> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t w = 1; w <= p / 2; ++w)
        chi[mulmod(w, w, p)] = 1;
    std::uint64_t count = 1;
    const std::uint64_t two_b4 = addmod(b4, b4, p);
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t r = mulmod(4, x, p);
        r = addmod(r, b2, p);
        r = addmod(mulmod(r, x, p), two_b4, p);
        r = addmod(mulmod(r, x, p), b6, p);
        count += static_cast<std::uint64_t>(1 + chi[r]);
    }
    return count;
}

std::optional<std::uint64_t> count_bsgs(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t seed)
{
    require_reducible(e, p);
    if (p < 5)
        return std::nullopt;
    CurveInvariants inv = invariants(e);
    ShortCurve c{p, submod(0, mulmod(27, inv.c4.mod(p), p), p), submod(0, mulmod(54, inv.c6.mod(p), p), p)};
    std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ULL));
    const auto h = static_cast<std::int64_t>(std::floor(2 * std::sqrt(static_cast<long double>(p))));
    const auto p1 = static_cast<std::int64_t>(p + 1);

    Pt P = c.random_point(rng);
    std::vector<std::int64_t> ks = bsgs_all(c, P, c.mul(P, p1), -h, h);
    std::vector<std::uint64_t> candidates;
    for (std::int64_t k : ks)
        candidates.push_back(static_cast<std::uint64_t>(p1 - k));
    // the quadratic twist has order 2p + 2 - N; checking both sides settles
    // the count for every p > 229
    const std::uint64_t g = smallest_nonresidue(p), g2 = mulmod(g, g, p);
    ShortCurve twist{p, mulmod(g2, c.A, p), mulmod(mulmod(g2, g, p), c.B, p)};
    for (int round = 0; round < 12 && candidates.size() > 1; ++round) {
        Pt R = c.random_point(rng);
        Pt T = twist.random_point(rng);
        std::erase_if(candidates, [&](std::uint64_t n) {
            return !c.mul(R, static_cast<std::int64_t>(n)).inf ||
                   !twist.mul(T, static_cast<std::int64_t>(2 * p + 2 - n)).inf;
        });
    }
    if (candidates.size() != 1)
        return std::nullopt;
    return candidates.front();
}

LocalData reduce_and_count(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t seed)
{
    require_reducible(e, p);
    LocalData d;
    d.p = p;
    d.good = good_at(e, p);
    if (!d.good)
        return d;
    std::optional<std::uint64_t> n;
    if (p > naive_limit)
        n = count_bsgs(e, p, seed);
    if (!n)
        n = count_naive(e, p);
    d.count = n;
    d.a_p = static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(*n);
    d.supersingular = reduce_signed(*d.a_p, p) == 0;
    return d;
}

bool local_isogeny_admitted(const LocalData& d, std::uint64_t ell)
{
    if (!d.good || !d.a_p)
        throw CurveError("local isogeny test needs good reduction at p = " + std::to_string(d.p));
    if (d.p == ell)
        throw CurveError("p = ell is excluded from the local isogeny test");
    if (!is_prime(ell))
        throw CurveError("ell = " + std::to_string(ell) + " is not prime");
    const std::uint64_t t = reduce_signed(*d.a_p, ell);
    const std::uint64_t n = d.p % ell;
    if (ell == 2) {
        for (std::uint64_t x = 0; x < 2; ++x)
            if ((x * x + 2 - t * x % 2 + n) % 2 == 0)
                return true;
        return false;
    }
    std::uint64_t disc = submod(mulmod(t, t, ell), mulmod(4, n, ell), ell);
    return legendre_kronecker(static_cast<std::int64_t>(disc), ell) >= 0;
}

ScanReport local_scan(const WeierstrassCurve& e, std::uint64_t ell, std::uint64_t bound, ScanOptions options)
{
    ScanReport rep;
    rep.ell = ell;
    rep.bound = bound;
    if (bound >= 2)
        rep.skipped.push_back(2);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : primes_in_range(3, bound)) {
        bool denominator_hit = false;
        for (const BigRational* a : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6})
            if (reduce_big(a->denominator(), p) == 0)
                denominator_hit = true;
        if (p == ell || denominator_hit)
            rep.skipped.push_back(p);
        else
            primes.push_back(p);
    }

    std::vector<LocalData> data(primes.size());
    const long n = static_cast<long>(primes.size());
#pragma omp parallel for schedule(dynamic, 16) if (options.parallel)
    for (long i = 0; i < n; ++i)
        data[static_cast<std::size_t>(i)] = reduce_and_count(e, primes[static_cast<std::size_t>(i)], options.seed);

    for (const auto& d : data) {
        if (!d.good) {
            rep.bad.push_back(d.p);
            continue;
        }
        bool ok = local_isogeny_admitted(d, ell);
        rep.entries.push_back({d.p, *d.a_p, d.supersingular, ok});
        if (!ok)
            rep.failing.push_back(d.p);
    }
    std::sort(rep.skipped.begin(), rep.skipped.end());
    return rep;
}

}  // namespace lgi
