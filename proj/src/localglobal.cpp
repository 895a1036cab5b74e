#include "lgi/localglobal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lgi {

const char* to_string(ClassificationCase c)
{
    switch (c) {
    case ClassificationCase::cartan_contained: return "cartan-contained";
    case ClassificationCase::normalizer_not_cartan: return "normalizer-not-cartan";
    case ClassificationCase::exceptional: return "exceptional";
    }
    return "?";
}

const char* to_string(ImageKind k)
{
    switch (k) {
    case ImageKind::cyclic: return "cyclic";
    case ImageKind::dihedral: return "dihedral";
    case ImageKind::A4: return "A4";
    case ImageKind::S4: return "S4";
    case ImageKind::A5: return "A5";
    }
    return "?";
}

std::string ProjectiveImage::str() const
{
    switch (kind) {
    case ImageKind::cyclic: return "cyclic(" + std::to_string(order) + ")";
    case ImageKind::dihedral: return "dihedral(" + std::to_string(order) + ")";
    default: return to_string(kind);
    }
}

std::vector<GL2Element> projective_image(const Subgroup& g)
{
    std::vector<GL2Element> out;
    out.reserve(g.order());
    for (const auto& e : g.elements())
        out.push_back(e.projective_canonical());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::span<const GL2Element> gens_or_elements(const Subgroup& g)
{
    return g.generators().empty() ? std::span<const GL2Element>(g.elements())
                                  : std::span<const GL2Element>(g.generators());
}

// Structure of H from its order and the orders of its elements.
ProjectiveImage image_structure(const std::vector<GL2Element>& h)
{
    const std::size_t m = h.size();
    std::vector<std::uint64_t> orders;
    orders.reserve(m);
    for (const auto& x : h)
        orders.push_back(x.projective_order());
    std::set<std::uint64_t> order_set(orders.begin(), orders.end());

    if (order_set.contains(m))
        return {ImageKind::cyclic, m};
    if (m >= 4 && m % 2 == 0) {
        // dihedral: a rotation of order m/2 and involutions off the rotation subgroup
        for (std::size_t i = 0; i < m; ++i) {
            if (orders[i] != m / 2)
                continue;
            std::set<GL2Element> rot;
            GL2Element r = h[i], p = r;
            for (std::size_t k = 0; k < m / 2; ++k, p = (p * r).projective_canonical())
                rot.insert(p.projective_canonical());
            bool ok = true;
            for (std::size_t j = 0; j < m && ok; ++j)
                if (!rot.contains(h[j]) && orders[j] != 2)
                    ok = false;
            if (ok)
                return {ImageKind::dihedral, m};
            break;
        }
    }
    if (m == 12 && order_set == std::set<std::uint64_t>{1, 2, 3})
        return {ImageKind::A4, m};
    if (m == 24 && order_set == std::set<std::uint64_t>{1, 2, 3, 4})
        return {ImageKind::S4, m};
    if (m == 60 && order_set == std::set<std::uint64_t>{1, 2, 3, 5})
        return {ImageKind::A5, m};
    throw GroupError("projective image of order " + std::to_string(m) +
                     " is not cyclic, dihedral, A4, S4 or A5");
}

bool is_split_semisimple(const GL2Element& a)
{
    const std::uint64_t l = a.ell();
    if (l == 2)
        return false;  // order-3 elements are the only non-scalar semisimple ones
    std::uint64_t disc = submod(std::uint64_t{a.trace()} * a.trace() % l, 4 * std::uint64_t{a.det()} % l, l);
    return PrimeFieldElement::unchecked(disc, l).is_square();
}

// x with x C_std x^-1 = F_ell[a]^*, a non-scalar semisimple.
CartanSpec witness_for(const GL2Element& a)
{
    const std::uint32_t ell = a.ell();
    if (is_split_semisimple(a)) {
        ProjectiveLine line(ell);
        GL2Element ag[1] = {a};
        auto fixed = line.common_fixed_points(ag);
        if (fixed.size() != 2)
            throw std::logic_error("split semisimple element without two eigenlines");
        ProjPoint v1 = ProjPoint::from_index(ell, fixed[0]);
        ProjPoint v2 = ProjPoint::from_index(ell, fixed[1]);
        return {CartanKind::split, std::nullopt, GL2Element(ell, v1.x(), v2.x(), v1.y(), v2.y())};
    }
    if (ell == 2)
        return {CartanKind::nonsplit, std::nullopt, GL2Element::identity(2)};
    // a = u + v b' with b'^2 = delta; x sends [[0, delta], [1, 0]] to b'
    const std::uint64_t l = ell;
    const std::uint64_t delta = smallest_nonresidue(l);
    const std::uint64_t u = a.trace() * invmod(2, l) % l;
    const std::uint64_t s = submod(u * u % l, a.det(), l);
    auto v = sqrt_mod(s * invmod(delta, l) % l, l);
    if (!v)
        throw std::logic_error("nonsplit witness: s/delta is not a square");
    const std::uint64_t vi = invmod(*v, l);
    const std::uint64_t b_a = submod(a.a(), u, l) * vi % l;
    const std::uint64_t b_c = std::uint64_t{a.c()} * vi % l;
    return {CartanKind::nonsplit, static_cast<std::uint32_t>(delta),
            GL2Element(ell, 1, static_cast<std::int64_t>(b_a), 0, static_cast<std::int64_t>(b_c))};
}

bool subset_of(const Subgroup& g, const std::vector<GL2Element>& sorted)
{
    return std::all_of(g.elements().begin(), g.elements().end(),
                       [&](const GL2Element& e) { return std::binary_search(sorted.begin(), sorted.end(), e); });
}

bool witness_holds(const Subgroup& g, const CartanSpec& spec, bool in_normalizer)
{
    auto c = cartan(g.ell(), spec);
    return subset_of(g, in_normalizer ? normalizer_of_cartan(c) : c);
}

std::optional<CartanSpec> brute_force_witness(const Subgroup& g, bool in_normalizer)
{
    if (g.ell() > 7)
        return std::nullopt;
    for (CartanKind kind : {CartanKind::split, CartanKind::nonsplit}) {
        auto base = cartan(kind, g.ell());
        auto target = in_normalizer ? normalizer_of_cartan(base) : base;
        for (const auto& x : all_pgl2_lifts(g.ell())) {
            GL2Element xi = x.inverse();
            bool ok = std::all_of(g.elements().begin(), g.elements().end(), [&](const GL2Element& e) {
                return std::binary_search(target.begin(), target.end(), xi * e * x);
            });
            if (ok) {
                std::optional<std::uint32_t> delta;
                if (kind == CartanKind::nonsplit && g.ell() > 2)
                    delta = static_cast<std::uint32_t>(smallest_nonresidue(g.ell()));
                return CartanSpec{kind, delta, x};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ClassificationResult classify(const Subgroup& g)
{
    const std::uint32_t ell = g.ell();
    if (g.order() % ell == 0)
        throw NotSemisimpleError("not semisimple: " + std::to_string(ell) + " divides |G| = " +
                                 std::to_string(g.order()));
    ProjectiveImage image = image_structure(projective_image(g));
    auto gens = gens_or_elements(g);

    std::vector<GL2Element> nonscalar;
    for (const auto& e : g.elements())
        if (!e.is_scalar())
            nonscalar.push_back(e);

    ClassificationResult res{ClassificationCase::exceptional, image, std::nullopt};
    const GL2Element* anchor = nullptr;
    if (nonscalar.empty()) {
        res.kind = ClassificationCase::cartan_contained;
        res.cartan = CartanSpec{CartanKind::split, std::nullopt, GL2Element::identity(ell)};
    } else {
        for (const auto& a : nonscalar)
            if (std::all_of(gens.begin(), gens.end(), [&](const GL2Element& s) { return in_algebra_of(s, a); })) {
                res.kind = ClassificationCase::cartan_contained;
                anchor = &a;
                break;
            }
        if (!anchor)
            for (const auto& a : nonscalar)
                if (std::all_of(gens.begin(), gens.end(),
                                [&](const GL2Element& s) { return in_algebra_of(s * a * s.inverse(), a); })) {
                    res.kind = ClassificationCase::normalizer_not_cartan;
                    anchor = &a;
                    break;
                }
        if (anchor) {
            bool in_norm = res.kind == ClassificationCase::normalizer_not_cartan;
            CartanSpec spec = witness_for(*anchor);
            if (!witness_holds(g, spec, in_norm)) {
                auto fallback = brute_force_witness(g, in_norm);
                if (!fallback)
                    throw std::logic_error("classify: no Cartan witness found");
                spec = *fallback;
            }
            res.cartan = spec;
        }
    }

    bool consistent = (res.kind == ClassificationCase::cartan_contained && image.kind == ImageKind::cyclic) ||
                      (res.kind == ClassificationCase::normalizer_not_cartan && image.kind == ImageKind::dihedral) ||
                      (res.kind == ClassificationCase::exceptional && image.kind != ImageKind::cyclic &&
                       image.kind != ImageKind::dihedral);
    if (!consistent)
        throw std::logic_error(std::string("classify: case ") + to_string(res.kind) + " with image " + image.str());
    return res;
}

bool lemma1_hypothesis(const Subgroup& g)
{
    ProjectiveLine line(g.ell());
    bool odd = false;
    for (const auto& e : g.elements()) {
        if (line.fixed_point_count(e) == 0)
            return false;
        if (!odd && permutation_sign(line.permutation(e)) < 0)
            odd = true;
    }
    return odd && line.common_fixed_points(g.elements()).empty();
}

LemmaReport lemma1_report(const Subgroup& g)
{
    const std::uint32_t ell = g.ell();
    ProjectiveLine line(ell);
    LemmaReport r{g, false, 0, std::nullopt, false, 0, false, {}, false, {}};
    r.hypothesis_met = lemma1_hypothesis(g);
    r.ell_mod_4 = ell % 4;
    r.orbit_sizes = line.orbit_sizes(g.elements());
    r.has_orbit_of_size_2 = std::find(r.orbit_sizes.begin(), r.orbit_sizes.end(), 2u) != r.orbit_sizes.end();
    r.nontrivial_fix_two = std::all_of(g.elements().begin(), g.elements().end(), [&](const GL2Element& e) {
        return e.is_scalar() || line.fixed_point_count(e) == 2;
    });

    if (g.order() % ell != 0) {
        ClassificationResult c = classify(g);
        if (c.image.kind == ImageKind::dihedral)
            r.n = c.image.order / 2;
        if (c.cartan) {
            r.cartan_kind = c.cartan->kind;
            auto norm = normalizer_of_cartan(cartan(ell, *c.cartan));
            r.proper_containment = subset_of(g, norm) && g.order() < norm.size();
        }
    } else if (r.hypothesis_met) {
        r.violations.push_back("order divisible by ell");
    }

    if (!r.hypothesis_met)
        return r;
    auto& v = r.violations;
    if (!(r.n > 1 && r.n % 2 == 1 && ((ell - 1) / 2) % r.n == 0))
        v.push_back("image is not dihedral of order 2n with n > 1 an odd divisor of (ell-1)/2 (n = " +
                    std::to_string(r.n) + ")");
    if (r.cartan_kind != CartanKind::split)
        v.push_back("not in the normalizer of a split Cartan");
    if (!r.proper_containment)
        v.push_back("containment in the normalizer is not proper");
    if (r.ell_mod_4 != 3)
        v.push_back("ell is not 3 mod 4");
    if (!r.has_orbit_of_size_2)
        v.push_back("no orbit of size 2");
    if (!r.nontrivial_fix_two)
        v.push_back("a non-scalar element does not fix exactly two lines");
    return r;
}

std::size_t LemmaVerification::violation_count() const
{
    std::size_t n = 0;
    for (const auto& r : reports)
        n += r.violations.size();
    return n;
}

LemmaVerification lemma1_verify(std::uint32_t ell, LemmaOptions options)
{
    auto classes = enumerate_subgroups(ell, {options.expensive, options.parallel});
    const long count = static_cast<long>(classes.size());
    std::vector<std::optional<LemmaReport>> slots(classes.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (long i = 0; i < count; ++i) {
        const Subgroup& g = classes[static_cast<std::size_t>(i)];
        if (lemma1_hypothesis(g))
            slots[static_cast<std::size_t>(i)] = lemma1_report(g);
    }
    LemmaVerification out{ell, classes.size(), {}};
    for (auto& s : slots)
        if (s)
            out.reports.push_back(std::move(*s));
    return out;
}

Subgroup construct_prop3_group(std::uint32_t ell, std::uint32_t n)
{
    auto fail = [&](const std::string& what) {
        throw GroupError("construct_prop3_group(" + std::to_string(ell) + ", " + std::to_string(n) +
                         "): " + what);
    };
    if (!is_prime(ell))
        fail("ell is not prime");
    if (ell <= 3)
        fail("ell must exceed 3");
    if (ell % 4 != 3)
        fail("ell is not 3 mod 4");
    if (ell >= 256)
        fail("ell must be below 256");
    if (n % 2 == 0)
        fail("n is not odd");
    if (n < 3)
        fail("n must be at least 3");
    if (((ell - 1) / 2) % n != 0)
        fail("n does not divide (ell-1)/2");

    const std::uint32_t d = (ell - 1) / n;
    const auto alpha = static_cast<std::int64_t>(primitive_root(ell).value());
    auto ap = [&](std::uint32_t e) { return static_cast<std::int64_t>(powmod(alpha, e, ell)); };
    std::vector<GL2Element> gens = {GL2Element::diag(ell, alpha, alpha), GL2Element::diag(ell, 1, ap(d)),
                                    GL2Element::antidiag(ell, 1, 1)};
    Subgroup g = closure(ell, gens);
    const std::size_t expected = 2 * static_cast<std::size_t>(ell - 1) * (ell - 1) / d;
    if (g.order() != expected)
        throw std::logic_error("construct_prop3_group: order " + std::to_string(g.order()) + ", expected " +
                               std::to_string(expected));
    return g;
}

Prop3Properties prop3_properties(const Subgroup& g)
{
    ProjectiveLine line(g.ell());
    Prop3Properties p;
    p.det_surjective = g.determinant_image_size() == g.ell() - 1;
    p.min_fixed_lines = g.ell() + 1;
    for (const auto& e : g.elements())
        p.min_fixed_lines = std::min(p.min_fixed_lines, line.fixed_point_count(e));
    p.common_fixed_lines = line.common_fixed_points(g.elements()).size();
    p.image = classify(g).image;
    p.orbit_sizes = line.orbit_sizes(g.elements());
    return p;
}

}  // namespace lgi
