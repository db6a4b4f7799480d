#include "horonerve/rips.hpp"

#include "horonerve/error.hpp"

#include <boost/dynamic_bitset.hpp>

#include <memory>

namespace horonerve {

SimplicialComplex rips(const MetricGraph& g, int D, int dim_cap) {
    if (D < 1) throw InvalidArgumentError("Rips parameter must be >= 1");
    std::vector<int> vertices(g.size());
    for (int i = 0; i < g.size(); ++i) vertices[i] = i;
    // Diameter <= D is a pairwise condition, so R_D is a flag complex.
    return SimplicialComplex::flag_complex(vertices, [&](int a, int b) { return g.distance(a, b) <= D; }, dim_cap);
}

void LevelWindow::validate() const {
    if (r < 1 || R < r)
        throw InvalidArgumentError("level window needs 1 <= r <= R (got r = " + std::to_string(r) +
                                   ", R = " + std::to_string(R) + ")");
}

bool in_window(const VertexId& v, const LevelWindow& w, WindowPart part) {
    const bool horoball = v.kind == VertexKind::Horoball;
    const bool lower = horoball && v.level >= w.r;
    const bool upper = !horoball || v.level <= w.R;
    switch (part) {
        case WindowPart::Lower: return lower;
        case WindowPart::Upper: return upper;
        case WindowPart::Band: return lower && upper;
    }
    return false;
}

SimplicialComplex full_subcomplex(const SimplicialComplex& c, const MetricGraph& g, const LevelWindow& w,
                                  WindowPart part) {
    w.validate();
    return c.full_subcomplex([&](int v) { return in_window(g.vertex(v), w, part); });
}

WindowDecompositionReport window_decomposition_check(const MetricGraph& g, int D, const LevelWindow& w, int dim_cap) {
    w.validate();
    WindowDecompositionReport rep;
    rep.D = D;
    rep.window = w;
    rep.hypothesis = w.r + D <= w.R;
    const auto all = rips(g, D, dim_cap);
    const auto lower = full_subcomplex(all, g, w, WindowPart::Lower);
    const auto upper = full_subcomplex(all, g, w, WindowPart::Upper);
    const auto band = full_subcomplex(all, g, w, WindowPart::Band);

    rep.union_holds = true;
    for (int d = 0; d <= all.dimension() && rep.union_holds; ++d)
        for (const auto& s : all.simplices(d))
            if (!lower.contains(s) && !upper.contains(s)) {
                rep.union_holds = false;
                rep.union_witness = s;
                break;
            }
    rep.intersection_holds = true;
    auto fail = [&](const Simplex& s) {
        rep.intersection_holds = false;
        rep.intersection_witness = s;
    };
    for (int d = 0; d <= band.dimension() && rep.intersection_holds; ++d)
        for (const auto& s : band.simplices(d))
            if (!lower.contains(s) || !upper.contains(s)) {
                fail(s);
                break;
            }
    for (int d = 0; d <= lower.dimension() && rep.intersection_holds; ++d)
        for (const auto& s : lower.simplices(d))
            if (upper.contains(s) && !band.contains(s)) {
                fail(s);
                break;
            }
    return rep;
}

ContractibilityProxy contractibility_proxy(const SimplicialComplex& c) {
    if (c.empty()) throw InvalidArgumentError("contractibility proxy needs a nonempty complex");
    ContractibilityProxy p;
    p.vertices = c.count(0);
    p.top_degree = c.truncated() ? c.dim_cap() - 1 : c.dimension();
    SimplicialHomology h(std::make_shared<const SimplicialComplex>(c), true);
    p.proxy_contractible = true;
    for (int d = 0; d <= p.top_degree; ++d) {
        p.reduced.push_back(h.group(d));
        p.betti.push_back(h.group(d).rank);
        if (!h.group(d).is_trivial()) p.proxy_contractible = false;
    }
    return p;
}

std::vector<int> rips_dominated_core(const MetricGraph& g, int D) {
    if (D < 1) throw InvalidArgumentError("Rips parameter must be >= 1");
    const int n = g.size();
    std::vector<boost::dynamic_bitset<>> closed(n, boost::dynamic_bitset<>(n));
    for (int v = 0; v < n; ++v) {
        const auto& row = g.distance_row(v);
        for (int w = 0; w < n; ++w)
            if (row[w] <= D) closed[v].set(w);
    }
    boost::dynamic_bitset<> alive(n);
    alive.set();
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive.test(v)) continue;
            const auto nv = closed[v] & alive;
            for (auto w = nv.find_first(); w != boost::dynamic_bitset<>::npos; w = nv.find_next(w)) {
                if (static_cast<int>(w) == v) continue;
                if (nv.is_subset_of(closed[w])) {
                    alive.reset(v);
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<int> out;
    for (auto v = alive.find_first(); v != boost::dynamic_bitset<>::npos; v = alive.find_next(v))
        out.push_back(static_cast<int>(v));
    return out;
}

ContractibilityProxy rips_contractibility_proxy(const MetricGraph& g, int D, int dim_cap) {
    const auto core = rips_dominated_core(g, D);
    return contractibility_proxy(
        SimplicialComplex::flag_complex(core, [&](int a, int b) { return g.distance(a, b) <= D; }, dim_cap));
}

} // namespace horonerve
