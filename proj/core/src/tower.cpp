#include "horonerve/tower.hpp"

#include "horonerve/error.hpp"

namespace horonerve {

namespace {

Homomorphism identity_on(const AbelianGroup& g) { return {g, g, IntMatrix::identity(g.dimension())}; }

// Composite A_from -> A_to along the tower (from <= to inductive, from >= to projective).
Homomorphism composite(const Tower& t, std::size_t from, std::size_t to) {
    Homomorphism h = identity_on(t.groups[from]);
    if (t.direction == TowerDirection::Inductive)
        for (std::size_t i = from; i < to; ++i) h = compose(t.map(i), h);
    else
        for (std::size_t i = from; i > to; --i) h = compose(t.map(i - 1), h);
    return h;
}

AbelianGroup as_group(const Lattice& image, const AbelianGroup& ambient) {
    return lattice_quotient(image, ambient.relations());
}

}  // namespace

void Tower::validate() const {
    if (groups.empty()) throw ShapeError("tower has no groups");
    if (maps.size() + 1 != groups.size())
        throw ShapeError("tower with " + std::to_string(groups.size()) + " groups needs " +
                         std::to_string(groups.size() - 1) + " maps");
    for (std::size_t i = 0; i < maps.size(); ++i) map(i).validate();
}

Homomorphism Tower::map(std::size_t i) const {
    if (direction == TowerDirection::Inductive) return {groups.at(i), groups.at(i + 1), maps.at(i)};
    return {groups.at(i + 1), groups.at(i), maps.at(i)};
}

DirectLimitReport direct_limit_report(const Tower& t) {
    if (t.direction != TowerDirection::Inductive) throw InvalidArgumentError("direct limit needs an inductive tower");
    t.validate();
    const std::size_t m = t.groups.size() - 1;
    DirectLimitReport r;
    if (m == 0) {
        r.limit = t.groups[0];
        return r;
    }
    std::vector<Lattice> images;
    for (std::size_t i = 0; i < m; ++i) {
        images.push_back(image_lattice(composite(t, i, m)));
        r.eventual_images.push_back(as_group(images.back(), t.groups[m]));
    }
    std::size_t s = m - 1;
    while (s > 0 && images[s - 1] == images[m - 1]) --s;
    r.stabilized_at = s + 1;
    r.limit = r.eventual_images.back();
    return r;
}

std::string to_string(Lim1Verdict v) {
    switch (v) {
        case Lim1Verdict::Zero: return "zero";
        case Lim1Verdict::NotML: return "not-ML";
        case Lim1Verdict::Undetermined: return "undetermined";
    }
    return "undetermined";
}

Lim1Report ml_lim1(const Tower& t) {
    if (t.direction != TowerDirection::Projective) throw InvalidArgumentError("lim^1 needs a projective tower");
    t.validate();
    const std::size_t m = t.groups.size() - 1;
    Lim1Report r;
    bool all_stable = true;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<Lattice> chain;
        for (std::size_t l = k; l <= m; ++l) chain.push_back(image_lattice(composite(t, l, k)));
        if (!(chain[chain.size() - 1] == chain[chain.size() - 2])) all_stable = false;
        bool strict = chain.size() >= 3;
        for (std::size_t i = 1; i < chain.size() && strict; ++i) strict = !(chain[i] == chain[i - 1]);
        if (strict && !r.witness_stage) {
            r.witness_stage = k + 1;
            for (std::size_t i = 1; i < chain.size(); ++i)
                r.witness_quotients.push_back(lattice_quotient(Lattice::full(t.groups[k].dimension()), chain[i]));
        }
    }
    if (all_stable) {
        r.verdict = Lim1Verdict::Zero;
        r.detail = "image chains stabilize at every stage in view";
        r.witness_stage.reset();
        r.witness_quotients.clear();
    } else if (r.witness_stage) {
        r.verdict = Lim1Verdict::NotML;
        r.detail = "images into stage " + std::to_string(*r.witness_stage) + " strictly decrease";
    } else {
        r.verdict = Lim1Verdict::Undetermined;
        r.detail = "some image chain has not stabilized by the last stage";
    }
    return r;
}

InverseLimitReport inverse_limit(const Tower& t) {
    if (t.direction != TowerDirection::Projective) throw InvalidArgumentError("inverse limit needs a projective tower");
    t.validate();
    const std::size_t m = t.groups.size() - 1;
    InverseLimitReport r;
    r.finite_limit = t.groups[m];
    for (std::size_t k = 0; k <= m; ++k)
        r.stable_images.push_back(as_group(image_lattice(composite(t, m, k)), t.groups[k]));
    return r;
}

} // namespace horonerve
