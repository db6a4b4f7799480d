#include "horonerve/horoball.hpp"

#include "horonerve/error.hpp"
#include "horonerve/limits.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <memory>

namespace horonerve {

FiniteMetricSpace FiniteMetricSpace::integer_interval(int lo, int hi) {
    if (hi < lo) throw InvalidArgumentError("empty integer interval");
    FiniteMetricSpace s;
    const int n = hi - lo + 1;
    for (int i = 0; i < n; ++i) s.labels.push_back(std::to_string(lo + i));
    s.distance.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.distance[i][j] = std::abs(i - j);
    return s;
}

MetricGraph build_horoball(const FiniteMetricSpace& base, LevelInterval levels, int lmax) {
    if (base.size() == 0) throw InvalidArgumentError("horoball base is empty");
    if (static_cast<int>(base.distance.size()) != base.size())
        throw InvalidArgumentError("base distance matrix has the wrong shape");
    if (levels.lo < 0 || lmax < 0) throw InvalidArgumentError("horoball levels must be nonnegative");
    const int top = std::min(lmax, levels.hi.value_or(lmax));
    if (top < levels.lo) throw InvalidArgumentError("level range is empty after truncation");
    const int n = base.size();
    if (static_cast<std::size_t>(n) * static_cast<std::size_t>(top - levels.lo + 1) > vertex_budget())
        throw ResourceLimitError("horoball exceeds the vertex budget");

    GraphBuilder b;
    auto id = [&](int p, int l) { return (l - levels.lo) * n + p; };
    for (int l = levels.lo; l <= top; ++l)
        for (int p = 0; p < n; ++p) b.add_vertex(l == 0 ? VertexId::cayley(p) : VertexId::horoball(1, p, l));
    for (int l = levels.lo; l <= top; ++l) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q)
                if (horoball_horizontal(base.distance[p][q], l)) b.add_edge(id(p, l), id(q, l));
            if (l < top) b.add_edge(id(p, l), id(p, l + 1));
        }
    }
    return std::move(b).build(std::make_shared<const std::vector<std::string>>(base.labels));
}

int AugmentedSpace::word_distance(int p, int q) const {
    const int n = element_count();
    if (!word_distance_matrix.empty()) return word_distance_matrix[static_cast<std::size_t>(p) * n + q];
    return static_cast<int>(word_metric(elements.at(p), elements.at(q)));
}

std::string AugmentedSpace::element_label(int p) const { return format_element(spec, elements.at(p)); }

int AugmentedSpace::horoball_position(std::int64_t coset) const {
    for (int i = 0; i < static_cast<int>(horoballs.size()); ++i)
        if (horoballs[i].coset == coset) return i;
    return -1;
}

namespace {

AugmentedSpace build_space(const GroupSpec& spec, const PeripheralSpec& periph, AugmentedTruncation trunc,
                           bool level_vertex_space) {
    if (trunc.rg < 0 || trunc.lmax < 0 || (trunc.mmax && *trunc.mmax < 0))
        throw InvalidArgumentError("truncation bounds must be nonnegative");
    validate(spec, periph);

    AugmentedSpace s;
    s.spec = spec;
    s.periph = periph;
    s.truncation = trunc;
    s.level_vertex_space = level_vertex_space;
    s.elements = ball(spec, trunc.rg);
    const int n = s.element_count();

    std::map<Element, int> index;
    for (int i = 0; i < n; ++i) index.emplace(s.elements[i], i);

    if (static_cast<std::size_t>(n) <= kAllPairsThreshold) {
        s.word_distance_matrix.assign(static_cast<std::size_t>(n) * n, 0);
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const int d = static_cast<int>(word_metric(s.elements[p], s.elements[q]));
                s.word_distance_matrix[static_cast<std::size_t>(p) * n + q] = d;
                s.word_distance_matrix[static_cast<std::size_t>(q) * n + p] = d;
            }
    }

    if (!periph.empty()) {
        s.cosets = enumerate_cosets(spec, periph, trunc.rg);
        const int available = static_cast<int>(s.cosets.entries.size());
        int m = trunc.mmax.value_or(available);
        if (m > available) {
            s.warnings.push_back("requested " + std::to_string(m) + " horoballs but only " +
                                 std::to_string(available) + " cosets meet the ball; attaching " +
                                 std::to_string(available));
            m = available;
        }
        for (int c = 0; c < m; ++c) {
            const auto& entry = s.cosets.entries[c];
            const int atom = periph.atoms[entry.peripheral - 1];
            AttachedHoroball h{entry.index, entry.peripheral, entry.representative, {}};
            for (int p = 0; p < n; ++p)
                if (coset_representative(s.elements[p], atom) == entry.representative) h.points.push_back(p);
            if (h.points.empty()) {
                s.warnings.push_back("coset " + std::to_string(entry.index) + " misses the ball; horoball skipped");
                continue;
            }
            // d_i is the restriction of d_S; on an atom coset it is the atom's own L1 metric.
            const Element rep_inv = inverse(entry.representative);
            for (int p : h.points) {
                const Element a = multiply(rep_inv, s.elements[p]);
                if (!in_atom(a, atom)) throw InvalidArgumentError("coset point outside g_i P_(i)");
                for (int q : h.points)
                    if (word_metric(a, multiply(rep_inv, s.elements[q])) != s.word_distance(p, q))
                        throw InvalidArgumentError("restricted coset metric differs from the peripheral metric");
            }
            s.horoballs.push_back(std::move(h));
        }
    } else if (trunc.mmax.value_or(0) > 0) {
        s.warnings.push_back("no peripheral subgroups; no horoballs attached");
    }

    std::size_t total = static_cast<std::size_t>(n);
    for (const auto& h : s.horoballs) total += h.points.size() * static_cast<std::size_t>(trunc.lmax);
    if (total > vertex_budget())
        throw ResourceLimitError("augmented space needs " + std::to_string(total) + " vertices, budget is " +
                                 std::to_string(vertex_budget()));

    GraphBuilder b;
    for (int p = 0; p < n; ++p) b.add_vertex(VertexId::cayley(p));
    if (level_vertex_space) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                if (s.word_distance(p, q) == 1) b.add_edge(p, q);
    } else {
        for (int p = 0; p < n; ++p)
            for (int g = 0; g < spec.generator_count(); ++g) {
                auto it = index.find(multiply(s.elements[p], from_letter(spec, 2 * g)));
                if (it != index.end()) b.add_edge(p, it->second);
            }
    }
    for (const auto& h : s.horoballs) {
        const int m = static_cast<int>(h.points.size());
        const int first = b.vertex_count();
        auto id = [&](int local, int level) { return first + (level - 1) * m + local; };
        for (int l = 1; l <= trunc.lmax; ++l)
            for (int p : h.points) b.add_vertex(VertexId::horoball(h.coset, p, l));
        for (int l = 0; l <= trunc.lmax; ++l) {
            for (int a = 0; a < m; ++a) {
                // Level 0 is pasted onto the Cayley ball by psi_i(x, 0) = x.
                if (l >= 1) {
                    for (int c = a + 1; c < m; ++c)
                        if (horoball_horizontal(s.word_distance(h.points[a], h.points[c]), l))
                            b.add_edge(id(a, l), id(c, l));
                } else if (!level_vertex_space) {
                    for (int c = a + 1; c < m; ++c)
                        if (horoball_horizontal(s.word_distance(h.points[a], h.points[c]), 0))
                            b.add_edge(h.points[a], h.points[c]);
                }
                if (l < trunc.lmax) b.add_edge(l == 0 ? h.points[a] : id(a, l), id(a, l + 1));
            }
        }
    }
    auto labels = std::make_shared<std::vector<std::string>>();
    for (int p = 0; p < n; ++p) labels->push_back(format_element(spec, s.elements[p]));
    s.graph = std::move(b).build(std::move(labels));
    return s;
}

} // namespace

AugmentedSpace build_augmented(const GroupSpec& spec, const PeripheralSpec& periph, AugmentedTruncation trunc) {
    return build_space(spec, periph, trunc, false);
}

AugmentedSpace build_level_vertex_space(const GroupSpec& spec, const PeripheralSpec& periph, int rg, int lmax) {
    return build_space(spec, periph, {rg, lmax, std::nullopt}, true);
}

std::vector<int> subspace_vertices(const AugmentedSpace& space, SubspaceKind which, int param) {
    const auto& g = space.graph;
    const int attached = static_cast<int>(space.horoballs.size());
    if (which == SubspaceKind::Xn) {
        if (param < 1 || param > attached + 1)
            throw InvalidArgumentError("filtration index must lie in 1.." + std::to_string(attached + 1));
    } else if (param < 1 || param > space.truncation.lmax) {
        throw InvalidArgumentError("level parameter must lie in 1.." + std::to_string(space.truncation.lmax));
    }
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v) {
        const auto& id = g.vertex(v);
        const bool cayley = id.kind == VertexKind::Cayley;
        bool keep = false;
        switch (which) {
        case SubspaceKind::XN: keep = cayley || id.level <= param; break;
        case SubspaceKind::YN: keep = !cayley && id.level >= param; break;
        case SubspaceKind::ZN: keep = !cayley && id.level == param; break;
        case SubspaceKind::Xn: keep = cayley || space.horoball_position(id.coset) + 1 >= param; break;
        }
        if (keep) out.push_back(v);
    }
    return out;
}

std::pair<MetricGraph, std::vector<int>> subspace(const AugmentedSpace& space, SubspaceKind which, int param) {
    return space.graph.induced_subgraph(subspace_vertices(space, which, param));
}

std::vector<int> horoball_vertices(const AugmentedSpace& space, int position, bool with_base) {
    const auto& h = space.horoballs.at(position);
    std::vector<int> out;
    if (with_base) out = h.points;
    for (int v = 0; v < space.graph.size(); ++v) {
        const auto& id = space.graph.vertex(v);
        if (id.kind == VertexKind::Horoball && id.coset == h.coset) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool FiltrationExcision::finite() const {
    return std::all_of(results.begin(), results.end(), [](const ExcisionResult& r) { return r.minimal_s.has_value(); });
}

bool FiltrationExcision::monotone() const {
    std::optional<int> prev;
    for (const auto& r : results) {
        if (!r.minimal_s) continue;
        if (prev && *r.minimal_s < *prev) return false;
        prev = r.minimal_s;
    }
    return true;
}

FiltrationExcision filtration_excision_check(const AugmentedSpace& space, int n, const std::vector<int>& radii) {
    const int attached = static_cast<int>(space.horoballs.size());
    if (n < 1 || n > attached)
        throw InvalidArgumentError("excision stage must lie in 1.." + std::to_string(attached));
    const auto [g, parent] = subspace(space, SubspaceKind::Xn, n);
    std::vector<int> local(space.graph.size(), -1);
    for (std::size_t i = 0; i < parent.size(); ++i) local[parent[i]] = static_cast<int>(i);
    const auto to_local = [&](const std::vector<int>& vs) {
        std::vector<int> out;
        for (const int v : vs) out.push_back(local.at(v));
        return out;
    };
    const auto a = to_local(subspace_vertices(space, SubspaceKind::Xn, n + 1));
    const auto b = to_local(horoball_vertices(space, n - 1, true));
    FiltrationExcision r;
    r.n = n;
    r.vertices = static_cast<std::size_t>(g.size());
    r.a_vertices = a.size();
    r.b_vertices = b.size();
    std::vector<int> sa = a, sb = b, both;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
    r.shared = both.size();
    r.results = omega_excisive_check(g, a, b, radii);
    return r;
}

} // namespace horonerve
