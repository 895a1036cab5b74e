#include "lgi/gl2.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

namespace lgi {

namespace {

std::uint32_t red(std::int64_t v, std::uint32_t ell)
{
    return static_cast<std::uint32_t>(reduce_signed(v, ell));
}

void require_small_prime(std::uint32_t ell)
{
    if (ell < 2 || ell > 255 || !is_prime(ell))
        throw GroupError("GL2 modulus must be a prime below 256, got " + std::to_string(ell));
}

}  // namespace

GL2Element::GL2Element(std::uint32_t ell, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : ell_(ell)
{
    require_small_prime(ell);
    a_ = red(a, ell);
    b_ = red(b, ell);
    c_ = red(c, ell);
    d_ = red(d, ell);
    if (det() == 0)
        throw GroupError("matrix is singular over F_" + std::to_string(ell));
}

GL2Element GL2Element::from_code(std::uint32_t ell, std::uint32_t code)
{
    std::uint32_t d = code % ell;
    code /= ell;
    std::uint32_t c = code % ell;
    code /= ell;
    std::uint32_t b = code % ell;
    std::uint32_t a = code / ell;
    return raw(ell, a, b, c, d);
}

PrimeFieldElement GL2Element::entry(int row, int col) const
{
    std::uint32_t v = row == 0 ? (col == 0 ? a_ : b_) : (col == 0 ? c_ : d_);
    return PrimeFieldElement::unchecked(v, ell_);
}

std::uint32_t GL2Element::det() const
{
    return (a_ * d_ + ell_ * ell_ - b_ * c_ % ell_) % ell_;
}

std::uint32_t GL2Element::trace() const
{
    return (a_ + d_) % ell_;
}

void GL2Element::check_same(const GL2Element& o) const
{
    if (ell_ != o.ell_)
        throw GroupError("GL2 modulus mismatch: " + std::to_string(ell_) + " vs " + std::to_string(o.ell_));
}

GL2Element GL2Element::operator*(const GL2Element& o) const
{
    check_same(o);
    const std::uint32_t l = ell_;
    return raw(l, (a_ * o.a_ + b_ * o.c_) % l, (a_ * o.b_ + b_ * o.d_) % l, (c_ * o.a_ + d_ * o.c_) % l,
               (c_ * o.b_ + d_ * o.d_) % l);
}

GL2Element GL2Element::inverse() const
{
    const std::uint32_t l = ell_;
    std::uint32_t inv = static_cast<std::uint32_t>(invmod(det(), l));
    return raw(l, d_ * inv % l, (l - b_) % l * inv % l, (l - c_) % l * inv % l, a_ * inv % l);
}

GL2Element GL2Element::pow(std::uint64_t n) const
{
    GL2Element result = identity(ell_);
    GL2Element base = *this;
    while (n) {
        if (n & 1)
            result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

std::uint64_t GL2Element::order() const
{
    GL2Element x = *this;
    std::uint64_t n = 1;
    while (!x.is_identity()) {
        x = x * *this;
        ++n;
    }
    return n;
}

std::uint64_t GL2Element::projective_order() const
{
    GL2Element x = *this;
    std::uint64_t n = 1;
    while (!x.is_scalar()) {
        x = x * *this;
        ++n;
    }
    return n;
}

GL2Element GL2Element::projective_canonical() const
{
    std::uint32_t lead = a_ != 0 ? a_ : b_;  // b != 0 whenever a == 0 in GL_2
    std::uint32_t inv = static_cast<std::uint32_t>(invmod(lead, ell_));
    return raw(ell_, a_ * inv % ell_, b_ * inv % ell_, c_ * inv % ell_, d_ * inv % ell_);
}

std::ostream& operator<<(std::ostream& os, const GL2Element& g)
{
    return os << "[[" << g.a() << "," << g.b() << "],[" << g.c() << "," << g.d() << "]]";
}

std::uint64_t gl2_order(std::uint64_t ell)
{
    return (ell * ell - 1) * (ell * ell - ell);
}

std::vector<GL2Element> all_gl2(std::uint32_t ell)
{
    require_small_prime(ell);
    std::vector<GL2Element> out;
    out.reserve(gl2_order(ell));
    const std::uint32_t n = ell * ell * ell * ell;
    for (std::uint32_t code = 0; code < n; ++code) {
        GL2Element g = GL2Element::from_code(ell, code);
        if (g.det() != 0)
            out.push_back(g);
    }
    return out;
}

std::vector<GL2Element> all_pgl2_lifts(std::uint32_t ell)
{
    std::vector<GL2Element> out;
    for (const auto& g : all_gl2(ell))
        if (g.projective_canonical() == g)
            out.push_back(g);
    return out;
}

// --- projective line -------------------------------------------------------------

ProjPoint::ProjPoint(std::uint32_t ell, std::int64_t x, std::int64_t y) : ell_(ell)
{
    require_small_prime(ell);
    std::uint32_t xr = red(x, ell), yr = red(y, ell);
    if (xr == 0 && yr == 0)
        throw GroupError("the zero vector spans no line");
    if (xr == 0) {
        x_ = 0;
        y_ = 1;
    } else {
        x_ = 1;
        y_ = static_cast<std::uint32_t>(yr * invmod(xr, ell) % ell);
    }
}

ProjPoint ProjPoint::from_index(std::uint32_t ell, std::uint32_t index)
{
    if (index > ell)
        throw GroupError("projective point index out of range");
    ProjPoint p;
    p.ell_ = ell;
    if (index == ell) {
        p.x_ = 0;
        p.y_ = 1;
    } else {
        p.x_ = 1;
        p.y_ = index;
    }
    return p;
}

std::ostream& operator<<(std::ostream& os, const ProjPoint& p)
{
    return os << "[" << p.x() << ":" << p.y() << "]";
}

ProjPoint act(const GL2Element& g, const ProjPoint& p)
{
    if (g.ell() != p.ell())
        throw GroupError("act: modulus mismatch");
    const std::int64_t l = g.ell();
    std::int64_t x = (static_cast<std::int64_t>(g.a()) * p.x() + static_cast<std::int64_t>(g.b()) * p.y()) % l;
    std::int64_t y = (static_cast<std::int64_t>(g.c()) * p.x() + static_cast<std::int64_t>(g.d()) * p.y()) % l;
    return ProjPoint(g.ell(), x, y);
}

ProjectiveLine::ProjectiveLine(std::uint32_t ell) : ell_(ell), inv_(ell, 0)
{
    require_small_prime(ell);
    for (std::uint32_t v = 1; v < ell; ++v)
        inv_[v] = static_cast<std::uint32_t>(invmod(v, ell));
}

std::uint32_t ProjectiveLine::apply(const GL2Element& g, std::uint32_t index) const
{
    const std::uint32_t l = ell_;
    std::uint32_t x, y;
    if (index == l) {
        x = g.b();
        y = g.d();
    } else {
        x = (g.a() + g.b() * index) % l;
        y = (g.c() + g.d() * index) % l;
    }
    return x == 0 ? l : y * inv_[x] % l;
}

std::vector<std::uint32_t> ProjectiveLine::permutation(const GL2Element& g) const
{
    std::vector<std::uint32_t> perm(size());
    for (std::uint32_t i = 0; i < size(); ++i)
        perm[i] = apply(g, i);
    return perm;
}

std::vector<std::uint32_t> ProjectiveLine::orbit_sizes(std::span<const GL2Element> gens) const
{
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& g : gens)
        perms.push_back(permutation(g));
    std::vector<bool> seen(size(), false);
    std::vector<std::uint32_t> sizes;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t start = 0; start < size(); ++start) {
        if (seen[start])
            continue;
        std::uint32_t count = 0;
        stack.push_back(start);
        seen[start] = true;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            ++count;
            for (const auto& perm : perms) {
                std::uint32_t w = perm[v];
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(count);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<std::uint32_t> ProjectiveLine::common_fixed_points(std::span<const GL2Element> gens) const
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < size(); ++i) {
        bool fixed = std::all_of(gens.begin(), gens.end(), [&](const GL2Element& g) { return apply(g, i) == i; });
        if (fixed)
            out.push_back(i);
    }
    return out;
}

std::uint32_t ProjectiveLine::fixed_point_count(const GL2Element& g) const
{
    std::uint32_t k = 0;
    for (std::uint32_t i = 0; i < size(); ++i)
        k += apply(g, i) == i;
    return k;
}

int permutation_sign(std::span<const std::uint32_t> perm)
{
    std::vector<bool> seen(perm.size(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = perm[j])
            seen[j] = true;
    }
    return (perm.size() - cycles) % 2 == 0 ? 1 : -1;
}

ElementActionProfile action_profile(const GL2Element& g)
{
    ProjectiveLine line(g.ell());
    auto perm = line.permutation(g);
    std::vector<bool> seen(perm.size(), false);
    ElementActionProfile prof{g.projective_order(), 0, 0, 1, {}};
    for (std::uint32_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        std::uint32_t len = 0;
        for (std::uint32_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        prof.orbit_sizes.push_back(len);
        ++prof.s;
        if (len == 1)
            ++prof.k;
    }
    std::sort(prof.orbit_sizes.begin(), prof.orbit_sizes.end());
    prof.sigma = (line.size() - prof.s) % 2 == 0 ? 1 : -1;
    return prof;
}

// --- Cartan subgroups ------------------------------------------------------------

const char* to_string(CartanKind kind)
{
    return kind == CartanKind::split ? "split" : "nonsplit";
}

GL2Element nonsplit_generator(std::uint32_t ell, std::uint32_t delta)
{
    return GL2Element(ell, 0, delta, 1, 0);
}

std::vector<GL2Element> cartan(CartanKind kind, std::uint32_t ell, std::optional<std::uint32_t> delta)
{
    require_small_prime(ell);
    std::vector<GL2Element> out;
    if (kind == CartanKind::split) {
        if (delta)
            throw GroupError("a split Cartan takes no delta");
        for (std::uint32_t x = 1; x < ell; ++x)
            for (std::uint32_t y = 1; y < ell; ++y)
                out.push_back(GL2Element::diag(ell, x, y));
    } else if (ell == 2) {
        if (delta)
            throw GroupError("the nonsplit Cartan over F_2 takes no delta");
        GL2Element g(2, 0, 1, 1, 1);
        out = {GL2Element::identity(2), g, g * g};
    } else {
        std::uint32_t dl = delta ? *delta % ell : static_cast<std::uint32_t>(smallest_nonresidue(ell));
        if (legendre_kronecker(static_cast<std::int64_t>(dl), ell) != -1)
            throw GroupError("delta = " + std::to_string(dl) + " is not a quadratic non-residue mod " +
                             std::to_string(ell));
        for (std::uint32_t x = 0; x < ell; ++x)
            for (std::uint32_t y = 0; y < ell; ++y)
                if (x != 0 || y != 0)
                    out.push_back(GL2Element(ell, x, static_cast<std::int64_t>(dl) * y, y, x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GL2Element> cartan(std::uint32_t ell, const CartanSpec& spec)
{
    auto base = cartan(spec.kind, ell, spec.delta);
    for (auto& g : base)
        g = g.conjugated_by(spec.conjugator);
    std::sort(base.begin(), base.end());
    return base;
}

bool in_algebra_of(const GL2Element& m, const GL2Element& c)
{
    const std::uint64_t l = m.ell();
    auto entries = [](const GL2Element& g) {
        return std::array<std::uint64_t, 4>{g.a(), g.b(), g.c(), g.d()};
    };
    auto me = entries(m), ce = entries(c);
    // find beta from a coordinate where c differs from a scalar
    std::uint64_t beta;
    if (ce[1] != 0)
        beta = me[1] * invmod(ce[1], l) % l;
    else if (ce[2] != 0)
        beta = me[2] * invmod(ce[2], l) % l;
    else if (ce[0] != ce[3])
        beta = submod(me[0], me[3], l) * invmod(submod(ce[0], ce[3], l), l) % l;
    else
        throw GroupError("in_algebra_of needs a non-scalar element");
    std::uint64_t alpha = submod(me[0], beta * ce[0] % l, l);
    const std::uint64_t id[4] = {1, 0, 0, 1};
    for (int i = 0; i < 4; ++i)
        if ((alpha * id[i] + beta * ce[static_cast<std::size_t>(i)]) % l != me[static_cast<std::size_t>(i)])
            return false;
    return true;
}

std::vector<GL2Element> normalizer_of_cartan(std::span<const GL2Element> cartan_elements)
{
    if (cartan_elements.empty())
        throw GroupError("empty Cartan candidate");
    const std::uint32_t ell = cartan_elements.front().ell();
    const std::uint64_t n = cartan_elements.size();
    const std::uint64_t lm1 = ell - 1, lp1 = ell + 1;
    if (n != lm1 * lm1 && n != lm1 * lp1)
        throw GroupError("Cartan candidate has order " + std::to_string(n) + ", expected (l-1)^2 or l^2-1");
    std::vector<GL2Element> sorted(cartan_elements.begin(), cartan_elements.end());
    std::sort(sorted.begin(), sorted.end());
    auto contains = [&](const GL2Element& g) { return std::binary_search(sorted.begin(), sorted.end(), g); };
    for (std::uint32_t s = 1; s < ell; ++s)
        if (!contains(GL2Element::scalar(ell, s)))
            throw GroupError("Cartan candidate does not contain all scalars");
    for (const auto& x : sorted)
        for (const auto& y : sorted)
            if (x * y != y * x)
                throw GroupError("Cartan candidate is not abelian");

    auto non_scalar = std::find_if(sorted.begin(), sorted.end(), [](const GL2Element& g) { return !g.is_scalar(); });
    if (non_scalar == sorted.end()) {
        // only the trivial split Cartan over F_2: diagonal and antidiagonal matrices
        return {GL2Element::identity(ell), GL2Element::antidiag(ell, 1, 1)};
    }
    const GL2Element c = *non_scalar;
    // a Cartan is the full unit group of F_ell[c], a semisimple algebra
    std::uint64_t units;
    if (ell == 2) {
        // over F_2 a semisimple non-scalar c has trace 1 and F_2[c] = F_4
        if (c.trace() == 0)
            throw GroupError("Cartan candidate is not semisimple");
        units = 3;
    } else {
        const std::uint64_t l = ell;
        std::uint64_t disc = submod(c.trace() * c.trace() % l, 4 * c.det() % l, l);
        if (disc == 0)
            throw GroupError("Cartan candidate is not semisimple");
        units = PrimeFieldElement::unchecked(disc, l).is_square() ? lm1 * lm1 : lm1 * lp1;
    }
    if (units != n)
        throw GroupError("Cartan candidate is not the unit group of F_l[c]");
    for (const auto& g : sorted)
        if (!in_algebra_of(g, c))
            throw GroupError("Cartan candidate is not the unit group of a commutative algebra");
    std::vector<GL2Element> out;
    for (const auto& x : all_gl2(ell))
        if (in_algebra_of(c.conjugated_by(x), c))
            out.push_back(x);
    if (out.size() != 2 * n)
        throw GroupError("Cartan candidate does not have index 2 in its normalizer");
    return out;
}

}  // namespace lgi
