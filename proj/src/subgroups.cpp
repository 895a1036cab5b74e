#include "lgi/subgroups.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lgi {

Subgroup::Subgroup(std::uint32_t ell, std::vector<GL2Element> elements, std::vector<GL2Element> generators)
    : ell_(ell), elements_(std::move(elements)), generators_(std::move(generators))
{
    std::sort(elements_.begin(), elements_.end());
}

bool Subgroup::contains(const GL2Element& g) const
{
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool Subgroup::is_abelian() const
{
    for (const auto& x : generators_)
        for (const auto& y : generators_)
            if (x * y != y * x)
                return false;
    return true;
}

std::vector<std::uint64_t> Subgroup::element_orders() const
{
    std::vector<std::uint64_t> out;
    out.reserve(elements_.size());
    for (const auto& g : elements_)
        out.push_back(g.order());
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Subgroup::determinant_image_size() const
{
    std::set<std::uint32_t> dets;
    for (const auto& g : elements_)
        dets.insert(g.det());
    return dets.size();
}

void Subgroup::validate() const
{
    if (!contains(GL2Element::identity(ell_)))
        throw GroupError("subgroup lacks the identity");
    for (const auto& g : elements_) {
        if (g.ell() != ell_)
            throw GroupError("subgroup element over the wrong field");
        if (!contains(g.inverse()))
            throw GroupError("subgroup not closed under inverse");
        for (const auto& h : elements_)
            if (!contains(g * h))
                throw GroupError("subgroup not closed under products");
    }
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
        throw GroupError("subgroup has duplicate elements");
    if (closure(ell_, generators_).elements() != elements_)
        throw GroupError("generators do not generate the element set");
}

namespace {

// Dense membership over codes in [0, ell^4).
class CodeSet {
public:
    explicit CodeSet(std::uint32_t ell) : bits_(static_cast<std::size_t>(ell) * ell * ell * ell, 0) {}
    bool test(std::uint32_t c) const { return bits_[c] != 0; }
    void set(std::uint32_t c) { bits_[c] = 1; }

private:
    std::vector<std::uint8_t> bits_;
};

std::vector<GL2Element> saturate(std::uint32_t ell, std::span<const GL2Element> gens)
{
    CodeSet member(ell);
    std::vector<GL2Element> elems{GL2Element::identity(ell)};
    member.set(elems.front().code());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& s : gens) {
            GL2Element p = elems[i] * s;
            if (!member.test(p.code())) {
                member.set(p.code());
                elems.push_back(p);
            }
        }
    }
    return elems;
}

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-independent fingerprint of an element set.
struct SetHash {
    std::uint64_t order = 0;
    std::uint64_t h1 = 0;
    std::uint64_t h2 = 0;
    bool operator==(const SetHash&) const = default;
};

struct SetHashHasher {
    std::size_t operator()(const SetHash& h) const { return h.h1 ^ (h.h2 * 31) ^ h.order; }
};

SetHash fingerprint(std::span<const GL2Element> elems)
{
    SetHash h;
    h.order = elems.size();
    for (const auto& g : elems) {
        std::uint64_t c = g.code();
        h.h1 += splitmix(c);
        h.h2 += splitmix(c ^ 0x5bd1e9955bd1e995ULL) * (2 * c + 1);
    }
    return h;
}

std::vector<std::uint32_t> sorted_codes(std::span<const GL2Element> elems)
{
    std::vector<std::uint32_t> codes;
    codes.reserve(elems.size());
    for (const auto& g : elems)
        codes.push_back(g.code());
    std::sort(codes.begin(), codes.end());
    return codes;
}

void require_same_field(const Subgroup& a, const Subgroup& b)
{
    if (a.ell() != b.ell())
        throw GroupError("subgroups over different fields");
}

}  // namespace

Subgroup closure(std::uint32_t ell, std::span<const GL2Element> gens)
{
    for (const auto& g : gens)
        if (g.ell() != ell)
            throw GroupError("closure: generator over F_" + std::to_string(g.ell()) + ", expected F_" +
                             std::to_string(ell));
    std::vector<GL2Element> gv(gens.begin(), gens.end());
    return Subgroup(ell, saturate(ell, gens), std::move(gv));
}

Subgroup conjugate(const Subgroup& g, const GL2Element& x)
{
    GL2Element xi = x.inverse();
    std::vector<GL2Element> elems, gens;
    elems.reserve(g.order());
    for (const auto& e : g.elements())
        elems.push_back(x * e * xi);
    for (const auto& e : g.generators())
        gens.push_back(x * e * xi);
    return Subgroup(g.ell(), std::move(elems), std::move(gens));
}

ConjugacyKey conjugacy_key(const Subgroup& g)
{
    ConjugacyKey best{sorted_codes(g.elements())};
    std::vector<GL2Element> buf(g.order(), GL2Element::identity(g.ell()));
    for (const auto& x : all_pgl2_lifts(g.ell())) {
        GL2Element xi = x.inverse();
        for (std::size_t i = 0; i < g.order(); ++i)
            buf[i] = x * g.elements()[i] * xi;
        auto codes = sorted_codes(buf);
        if (codes < best.codes)
            best.codes = std::move(codes);
    }
    return best;
}

std::optional<GL2Element> conjugating_element(const Subgroup& g1, const Subgroup& g2)
{
    require_same_field(g1, g2);
    if (g1.order() != g2.order())
        return std::nullopt;
    if (g1.element_orders() != g2.element_orders())
        return std::nullopt;
    // generators of g1, or all elements when none were recorded
    std::span<const GL2Element> gens = g1.generators().empty() ? std::span<const GL2Element>(g1.elements())
                                                               : std::span<const GL2Element>(g1.generators());
    for (const auto& x : all_pgl2_lifts(g1.ell())) {
        GL2Element xi = x.inverse();
        bool ok = std::all_of(gens.begin(), gens.end(), [&](const GL2Element& s) { return g2.contains(x * s * xi); });
        if (ok)
            return x;
    }
    return std::nullopt;
}

bool are_conjugate(const Subgroup& g1, const Subgroup& g2)
{
    return conjugating_element(g1, g2).has_value();
}

Subgroup normalizer_in_gl2(const Subgroup& g)
{
    std::span<const GL2Element> gens = g.generators().empty() ? std::span<const GL2Element>(g.elements())
                                                              : std::span<const GL2Element>(g.generators());
    std::vector<GL2Element> out;
    for (const auto& x : all_gl2(g.ell())) {
        GL2Element xi = x.inverse();
        if (std::all_of(gens.begin(), gens.end(), [&](const GL2Element& s) { return g.contains(x * s * xi); }))
            out.push_back(x);
    }
    // the normalizer of a finite group is generated by its elements; keep a short list
    Subgroup n(g.ell(), out, {});
    return Subgroup(g.ell(), std::move(out), small_generating_set(n, 0));
}

std::vector<GL2Element> small_generating_set(const Subgroup& g, std::uint64_t seed)
{
    const auto& el = g.elements();
    const std::uint32_t ell = g.ell();
    if (g.order() == 1)
        return {};
    auto generates = [&](std::initializer_list<GL2Element> gens) {
        return saturate(ell, std::span<const GL2Element>(gens.begin(), gens.size())).size() == g.order();
    };
    for (const auto& e : el)
        if (e.order() == g.order())
            return {e};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
    for (int t = 0; t < 48; ++t) {
        GL2Element a = el[pick(rng)], b = el[pick(rng)];
        if (generates({a, b}))
            return {a, b};
    }
    // the scalar part is cyclic; pair two random elements with its generator
    std::optional<GL2Element> zgen;
    std::size_t zcount = 0;
    for (const auto& e : el)
        if (e.is_scalar())
            ++zcount;
    for (const auto& e : el)
        if (e.is_scalar() && e.order() == zcount)
            zgen = e;
    for (int t = 0; zgen && t < 48; ++t) {
        GL2Element a = el[pick(rng)], b = el[pick(rng)];
        if (generates({a, b, *zgen}))
            return {a, b, *zgen};
    }
    for (int t = 0; t < 96; ++t) {
        GL2Element a = el[pick(rng)], b = el[pick(rng)], c = el[pick(rng)];
        if (generates({a, b, c}))
            return {a, b, c};
    }
    // greedy reduction of the recorded generators
    std::vector<GL2Element> gens = g.generators();
    for (std::size_t i = gens.size(); i-- > 0;) {
        std::vector<GL2Element> trial = gens;
        trial.erase(trial.begin() + static_cast<long>(i));
        if (saturate(ell, trial).size() == g.order())
            gens = std::move(trial);
    }
    return gens;
}

// --- enumeration -------------------------------------------------------------------

namespace {

struct Invariants {
    std::size_t order;
    std::vector<std::uint64_t> element_orders;
    bool abelian;
    std::size_t det_image;
    auto operator<=>(const Invariants&) const = default;
};

Invariants invariants_of(const Subgroup& g)
{
    return {g.order(), g.element_orders(), g.is_abelian(), g.determinant_image_size()};
}

class ClassRegistry {
public:
    explicit ClassRegistry(std::uint32_t ell) : ell_(ell), pgl_(all_pgl2_lifts(ell)) {}

    bool seen(const SetHash& h) const { return seen_.contains(h); }

    // Registers a subgroup whose fingerprint was not seen; returns true when
    // it opens a new conjugacy class.
    bool add(Subgroup g)
    {
        Invariants inv = invariants_of(g);
        auto [key, conjugate_hashes] = key_and_conjugates(g);
        auto& bucket = by_invariants_[inv];
        for (std::size_t id : bucket)
            if (keys_[id] == key) {
                for (const auto& h : conjugate_hashes)
                    seen_.emplace(h, id);
                return false;
            }
        std::size_t id = classes_.size();
        bucket.push_back(id);
        for (const auto& h : conjugate_hashes)
            seen_.emplace(h, id);
        classes_.push_back(std::move(g));
        keys_.push_back(std::move(key));
        return true;
    }

    std::vector<Subgroup>& classes() { return classes_; }
    const std::vector<ConjugacyKey>& keys() const { return keys_; }
    std::size_t subgroups_seen() const { return seen_.size(); }

private:
    std::pair<ConjugacyKey, std::vector<SetHash>> key_and_conjugates(const Subgroup& g) const
    {
        ConjugacyKey best{sorted_codes(g.elements())};
        std::vector<SetHash> hashes;
        std::vector<GL2Element> buf(g.order(), GL2Element::identity(ell_));
        for (const auto& x : pgl_) {
            GL2Element xi = x.inverse();
            for (std::size_t i = 0; i < g.order(); ++i)
                buf[i] = x * g.elements()[i] * xi;
            hashes.push_back(fingerprint(buf));
            auto codes = sorted_codes(buf);
            if (codes < best.codes)
                best.codes = std::move(codes);
        }
        std::sort(hashes.begin(), hashes.end(), [](const SetHash& a, const SetHash& b) {
            return std::tie(a.h1, a.h2) < std::tie(b.h1, b.h2);
        });
        hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
        return {std::move(best), std::move(hashes)};
    }

    std::uint32_t ell_;
    std::vector<GL2Element> pgl_;
    std::unordered_map<SetHash, std::size_t, SetHashHasher> seen_;
    std::map<Invariants, std::vector<std::size_t>> by_invariants_;
    std::vector<Subgroup> classes_;
    std::vector<ConjugacyKey> keys_;
};

// Left coset representatives g of H in G = GL_2(F_ell), g not in H.
std::vector<GL2Element> coset_representatives(const Subgroup& h, const std::vector<GL2Element>& group)
{
    const std::uint32_t ell = h.ell();
    CodeSet covered(ell);
    for (const auto& e : h.elements())
        covered.set(e.code());
    std::vector<GL2Element> reps;
    for (const auto& g : group) {
        if (covered.test(g.code()))
            continue;
        reps.push_back(g);
        for (const auto& e : h.elements())
            covered.set((g * e).code());
    }
    return reps;
}

}  // namespace

EnumerationResult enumerate_subgroups_detailed(std::uint32_t ell, EnumerationOptions options)
{
    if (!(ell == 2 || ell == 3 || ell == 5 || ell == 7 || (ell == 11 && options.expensive)))
        throw GroupError("subgroup enumeration supports ell in {2,3,5,7} (11 with the expensive flag), got " +
                         std::to_string(ell));
    const std::vector<GL2Element> group = all_gl2(ell);
    ClassRegistry registry(ell);
    EnumerationResult result;

    registry.add(closure(ell, {}));
    for (std::size_t next = 0; next < registry.classes().size(); ++next) {
        const Subgroup h = registry.classes()[next];
        const std::vector<GL2Element> reps = coset_representatives(h, group);
        std::vector<SetHash> hashes(reps.size());

        // phase 1: fingerprints of every one-element extension
        const long n = static_cast<long>(reps.size());
#pragma omp parallel for schedule(dynamic, 4) if (options.parallel)
        for (long i = 0; i < n; ++i) {
            std::vector<GL2Element> gens = h.generators();
            gens.push_back(reps[static_cast<std::size_t>(i)]);
            hashes[static_cast<std::size_t>(i)] = fingerprint(saturate(ell, gens));
        }
        result.closures_computed += reps.size();

        // phase 2: register unseen subgroups in coset order, so the outcome
        // does not depend on the schedule
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (registry.seen(hashes[i]))
                continue;
            std::vector<GL2Element> gens = h.generators();
            gens.push_back(reps[i]);
            Subgroup k = closure(ell, gens);
            std::vector<GL2Element> small = small_generating_set(k, registry.classes().size());
            registry.add(Subgroup(ell, k.elements(), std::move(small)));
        }
    }

    std::vector<std::size_t> idx(registry.classes().size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    const auto& keys = registry.keys();
    auto& classes = registry.classes();
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (classes[a].order() != classes[b].order())
            return classes[a].order() < classes[b].order();
        return keys[a] < keys[b];
    });
    for (std::size_t i : idx) {
        result.max_generators = std::max(result.max_generators, classes[i].generators().size());
        result.classes.push_back(std::move(classes[i]));
    }
    result.subgroups_seen = registry.subgroups_seen();
    return result;
}

std::vector<Subgroup> enumerate_subgroups(std::uint32_t ell, EnumerationOptions options)
{
    return enumerate_subgroups_detailed(ell, options).classes;
}

}  // namespace lgi
