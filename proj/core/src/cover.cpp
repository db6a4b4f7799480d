#include "horonerve/cover.hpp"

#include "horonerve/error.hpp"
#include "horonerve/limits.hpp"

#include <algorithm>
#include <set>

namespace horonerve {

namespace {

std::int64_t reach(int exponent) {
    return exponent >= 62 ? std::numeric_limits<std::int64_t>::max() : (std::int64_t{1} << exponent);
}

std::string format_columns(const std::vector<int>& cols) {
    std::string out = "{";
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + std::to_string(cols[i]);
    return out + "}";
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

int Schedule::j(int n) const {
    if (n < 0) throw InvalidArgumentError("stage index must be nonnegative");
    if (kind == ScheduleKind::Linear) return n + 1;
    if (n > 18) throw ResourceLimitError("stage " + std::to_string(n) + " is beyond any representable scale");
    int v = 1;
    for (int i = 0; i < n; ++i) v *= 3;
    return v;
}

int Schedule::N(int n) const { return j(n) + 1; }

std::string Schedule::name() const { return kind == ScheduleKind::Paper ? "paper" : "linear"; }

Schedule Schedule::parse(const std::string& text) {
    if (text == "paper") return {ScheduleKind::Paper};
    if (text == "linear") return {ScheduleKind::Linear};
    throw ConfigError("unknown schedule '" + text + "' (expected paper or linear)");
}

Cover::Cover(std::shared_ptr<const AugmentedSpace> space, int scale) : space_(std::move(space)), scale_(scale) {
    if (scale_ < 1) throw InvalidArgumentError("cover scale must be >= 1");
    const auto& g = space_->graph;
    const int v = g.size();
    if (static_cast<std::size_t>(v) * static_cast<std::size_t>(v) > 64 * face_budget())
        throw ResourceLimitError("cover over " + std::to_string(v) + " vertices exceeds the memory budget");

    std::vector<int> cayley;
    std::map<std::int64_t, std::vector<int>> by_coset;
    for (int i = 0; i < v; ++i) {
        const auto& id = g.vertex(i);
        if (id.kind == VertexKind::Cayley)
            cayley.push_back(i);
        else
            by_coset[id.coset].push_back(i);
    }
    bits_.assign(v, boost::dynamic_bitset<>(v));
    stars_.assign(v, {});
    std::size_t memberships = 0;
    for (int c = 0; c < v; ++c) {
        const auto& center = g.vertex(c);
        const int t = static_cast<int>(center.level);
        auto take = [&](int w, std::int64_t radius) {
            const auto& y = g.vertex(w);
            if (space_->word_distance(static_cast<int>(center.point), static_cast<int>(y.point)) <= radius) {
                bits_[c].set(w);
                stars_[w].push_back(c);
                ++memberships;
            }
        };
        if (center.kind == VertexKind::Cayley) {
            const std::int64_t radius = reach(scale_);
            for (int w = 0; w < v; ++w)
                if (g.vertex(w).level <= scale_) take(w, radius);
        } else {
            const std::int64_t radius = reach(t + scale_);
            for (int w : by_coset.at(center.coset)) {
                const auto l = g.vertex(w).level;
                if (l >= t && l <= t + scale_) take(w, radius);
            }
        }
        if (memberships > face_budget())
            throw ResourceLimitError("cover memberships exceed the face budget of " + std::to_string(face_budget()));
    }
}

Column Cover::column(int id) const {
    const auto& b = bits_.at(id);
    Column col{id, {}};
    for (auto i = b.find_first(); i != boost::dynamic_bitset<>::npos; i = b.find_next(i))
        col.members.push_back(static_cast<int>(i));
    return col;
}

std::vector<int> Cover::meeting(const std::vector<int>& vertices) const {
    std::vector<int> out;
    for (int v : vertices) out.insert(out.end(), star(v).begin(), star(v).end());
    return sorted_unique(std::move(out));
}

std::shared_ptr<const Cover> build_cover(std::shared_ptr<const AugmentedSpace> space, int j) {
    return std::make_shared<const Cover>(std::move(space), j);
}

std::vector<int> depth_x(const AugmentedSpace& space, int N) {
    std::vector<int> out;
    for (int i = 0; i < space.graph.size(); ++i)
        if (space.graph.vertex(i).level <= N) out.push_back(i);
    return out;
}

std::vector<int> depth_y(const AugmentedSpace& space, int N) {
    std::vector<int> out;
    for (int i = 0; i < space.graph.size(); ++i) {
        const auto& v = space.graph.vertex(i);
        if (v.kind == VertexKind::Horoball && v.level >= N) out.push_back(i);
    }
    return out;
}

std::vector<int> depth_z(const AugmentedSpace& space, int N) {
    std::vector<int> out;
    for (int i = 0; i < space.graph.size(); ++i) {
        const auto& v = space.graph.vertex(i);
        if (v.kind == VertexKind::Horoball && v.level == N) out.push_back(i);
    }
    return out;
}

Decomposition decompose(const Cover& cover, int n, Schedule schedule) {
    Decomposition d;
    d.n = n;
    d.schedule = schedule;
    d.j = schedule.j(n);
    d.N = schedule.N(n);
    if (cover.scale() != d.j)
        throw ScheduleError("cover has scale " + std::to_string(cover.scale()) + " but the " + schedule.name() +
                            " schedule needs j_" + std::to_string(n) + " = " + std::to_string(d.j));
    const auto& space = cover.space();
    for (int c = 0; c < cover.size(); ++c) d.u.push_back(c);
    d.x = cover.meeting(depth_x(space, d.N));
    d.y = cover.meeting(depth_y(space, d.N));
    d.z = cover.meeting(depth_z(space, d.N));

    std::vector<int> x_or_y;
    std::set_union(d.x.begin(), d.x.end(), d.y.begin(), d.y.end(), std::back_inserter(x_or_y));
    d.union_holds = x_or_y == d.u;
    d.intersection_holds = intersect(d.x, d.y) == d.z;

    std::vector<int> seen;
    bool disjoint = true;
    for (std::size_t pos = 0; pos < space.horoballs.size(); ++pos) {
        const auto block = intersect(d.z, cover.meeting(horoball_vertices(space, static_cast<int>(pos), false)));
        if (!intersect(seen, block).empty()) disjoint = false;
        seen.insert(seen.end(), block.begin(), block.end());
        seen = sorted_unique(std::move(seen));
        d.z_blocks.emplace_back(space.horoballs[pos].coset, block);
    }
    d.blocks_partition = disjoint && seen == d.z;
    return d;
}

bool columns_intersect(const Cover& cover, const std::vector<int>& columns) {
    if (columns.empty()) return true;
    boost::dynamic_bitset<> acc = cover.column_bits(columns[0]);
    for (std::size_t i = 1; i < columns.size() && acc.any(); ++i) acc &= cover.column_bits(columns[i]);
    return acc.any();
}

namespace {

SetSystem family_system(const Cover& cover, const std::vector<int>& family) {
    SetSystem sys;
    for (int c : family) {
        sys.sets.push_back(cover.column_bits(c));
        sys.labels.push_back(c);
    }
    return sys;
}

void check_system(const SetSystem& system, int dim_cap) {
    if (dim_cap < 1) throw InvalidArgumentError("nerve dimension cap must be >= 1");
    if (system.sets.size() != system.labels.size()) throw ShapeError("set system needs one label per set");
    for (const auto& s : system.sets)
        if (s.size() != system.sets.front().size()) throw ShapeError("sets of a set system share one point range");
}

}  // namespace

std::shared_ptr<const SimplicialComplex> nerve_of_sets(const SetSystem& system, int dim_cap) {
    check_system(system, dim_cap);
    const std::size_t n = system.sets.empty() ? 0 : system.sets.front().size();
    std::set<Simplex> stars;
    for (std::size_t p = 0; p < n; ++p) {
        Simplex s;
        for (std::size_t i = 0; i < system.sets.size(); ++i)
            if (system.sets[i].test(p)) s.push_back(system.labels[i]);
        std::sort(s.begin(), s.end());
        if (!s.empty()) stars.insert(std::move(s));
    }
    // Only maximal stars contribute facets.
    std::vector<Simplex> by_size(stars.begin(), stars.end());
    std::stable_sort(by_size.begin(), by_size.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<Simplex> facets;
    for (const auto& s : by_size) {
        const bool inside = std::any_of(facets.begin(), facets.end(), [&](const Simplex& f) {
            return std::includes(f.begin(), f.end(), s.begin(), s.end());
        });
        if (!inside) facets.push_back(s);
    }
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets(facets, dim_cap));
}

SetCore strong_collapse_core(const SetSystem& system, int dim_cap) {
    check_system(system, dim_cap);
    using Bits = boost::dynamic_bitset<>;
    const std::size_t f = system.sets.size();
    const std::size_t v = f == 0 ? 0 : system.sets.front().size();
    std::vector<Bits> trace(system.sets);
    std::vector<Bits> pstar(v, Bits(f));
    Bits point_alive(v), set_alive(f);
    set_alive.set();
    for (std::size_t a = 0; a < f; ++a) {
        if (trace[a].none()) throw InvalidArgumentError("set system contains an empty set");
        point_alive |= trace[a];
        for (auto p = trace[a].find_first(); p != Bits::npos; p = trace[a].find_next(p)) pstar[p].set(a);
    }

    std::vector<std::size_t> step(f, Bits::npos);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto p = point_alive.find_first(); p != Bits::npos; p = point_alive.find_next(p)) {
            const auto a = pstar[p].find_first();
            bool dominated = false;
            for (auto q = trace[a].find_first(); q != Bits::npos && !dominated; q = trace[a].find_next(q))
                dominated = q != p && pstar[p].is_subset_of(pstar[q]);
            if (!dominated) continue;
            point_alive.reset(p);
            for (auto b = pstar[p].find_first(); b != Bits::npos; b = pstar[p].find_next(b)) trace[b].reset(p);
            changed = true;
        }
        for (auto a = set_alive.find_first(); a != Bits::npos; a = set_alive.find_next(a)) {
            const auto p = trace[a].find_first();
            std::size_t by = Bits::npos;
            for (auto b = pstar[p].find_first(); b != Bits::npos && by == Bits::npos; b = pstar[p].find_next(b))
                if (b != a && trace[a].is_subset_of(trace[b])) by = b;
            if (by == Bits::npos) continue;
            set_alive.reset(a);
            step[a] = by;
            for (auto q = trace[a].find_first(); q != Bits::npos; q = trace[a].find_next(q)) pstar[q].reset(a);
            changed = true;
        }
    }

    SetCore core;
    for (std::size_t a = 0; a < f; ++a) {
        std::size_t b = a;
        while (!set_alive.test(b)) b = step[b];
        core.retraction.emplace(system.labels[a], system.labels[b]);
        if (b == a) core.kept.push_back(system.labels[a]);
    }
    std::sort(core.kept.begin(), core.kept.end());
    std::set<Simplex> facets;
    for (auto p = point_alive.find_first(); p != Bits::npos; p = point_alive.find_next(p)) {
        core.points.push_back(static_cast<int>(p));
        Simplex s;
        for (auto a = pstar[p].find_first(); a != Bits::npos; a = pstar[p].find_next(a)) s.push_back(system.labels[a]);
        std::sort(s.begin(), s.end());
        facets.insert(std::move(s));
    }
    core.complex = std::make_shared<const SimplicialComplex>(
        SimplicialComplex::from_facets(std::vector<Simplex>(facets.begin(), facets.end()), dim_cap));
    return core;
}

std::shared_ptr<const SimplicialComplex> nerve(const Cover& cover, const std::vector<int>& family, int dim_cap) {
    return nerve_of_sets(family_system(cover, sorted_unique(family)), dim_cap);
}

NerveCore nerve_core(std::shared_ptr<const Cover> cover, const std::vector<int>& family, int dim_cap) {
    NerveCore out;
    out.cover = cover;
    out.family = sorted_unique(family);
    auto core = strong_collapse_core(family_system(*cover, out.family), dim_cap);
    out.kept = std::move(core.kept);
    out.points = std::move(core.points);
    out.retraction = std::move(core.retraction);
    out.complex = std::move(core.complex);
    return out;
}

std::string to_string(MapKind kind) {
    switch (kind) {
        case MapKind::Alpha: return "alpha";
        case MapKind::Beta: return "beta";
        case MapKind::Gamma: return "gamma";
        case MapKind::Refine: return "refine";
        case MapKind::Q: return "q";
    }
    return "?";
}

std::vector<int> family_meeting_x(const Cover& cover, int N) { return cover.meeting(depth_x(cover.space(), N)); }

std::vector<int> family_meeting_y(const Cover& cover, int N) { return cover.meeting(depth_y(cover.space(), N)); }

FamilyMap connecting_map(MapKind kind, std::shared_ptr<const Cover> source, std::shared_ptr<const Cover> target,
                         int n, Schedule schedule, int s) {
    if (source->space_ptr() != target->space_ptr())
        throw DomainMismatchError("source and target covers live on different spaces");
    auto require = [&](const Cover& c, int j, const char* which) {
        if (c.scale() != j)
            throw ScheduleError(std::string(which) + " cover has scale " + std::to_string(c.scale()) + ", expected " +
                                std::to_string(j) + " (" + schedule.name() + " schedule, n = " + std::to_string(n) +
                                ")");
    };
    const auto& g = source->space().graph;
    FamilyMap m;
    m.source = source;
    m.target = target;
    auto relevel = [&](int c, std::int64_t level) {
        const auto& v = g.vertex(c);
        if (v.kind == VertexKind::Cayley || level == v.level) return c;
        const auto w = g.find(VertexId::horoball(v.coset, v.point, level));
        if (!w) throw EmptyWindowError("vertex " + g.label(c) + " has no copy at level " + std::to_string(level));
        return *w;
    };
    switch (kind) {
        case MapKind::Alpha:
            require(*source, schedule.j(n), "source");
            require(*target, schedule.j(n), "target");
            m.name = "alpha_" + std::to_string(n);
            m.source_family = family_meeting_x(*source, 1);
            m.target_family = family_meeting_x(*target, schedule.N(n));
            for (int c : m.source_family) m.image.emplace(c, c);
            break;
        case MapKind::Beta:
            require(*source, schedule.j(n), "source");
            require(*target, schedule.j(n + 1), "target");
            m.name = "beta_" + std::to_string(n);
            m.source_family = family_meeting_x(*source, schedule.N(n));
            m.target_family = family_meeting_x(*target, 1);
            for (int c : m.source_family) m.image.emplace(c, relevel(c, std::min<std::int64_t>(g.vertex(c).level, 1)));
            break;
        case MapKind::Gamma:
            require(*source, schedule.j(n), "source");
            require(*target, schedule.j(n + 1), "target");
            m.name = "gamma_" + std::to_string(n);
            m.source_family = family_meeting_x(*source, schedule.N(n));
            m.target_family = family_meeting_x(*target, schedule.N(n + 1));
            for (int c : m.source_family) m.image.emplace(c, c);
            break;
        case MapKind::Refine:
            if (source->scale() > target->scale())
                throw ScheduleError("refinement needs the source scale to be at most the target scale");
            m.name = "refine_" + std::to_string(source->scale()) + "_" + std::to_string(target->scale());
            for (int c = 0; c < source->size(); ++c) {
                m.source_family.push_back(c);
                m.target_family.push_back(c);
                m.image.emplace(c, c);
            }
            break;
        case MapKind::Q: {
            require(*source, schedule.j(n), "source");
            require(*target, schedule.j(n + 1), "target");
            if (s < 0) throw InvalidArgumentError("q_{n,s} needs s >= 0");
            m.name = "q_" + std::to_string(n) + "_" + std::to_string(s);
            m.source_family = family_meeting_y(*source, schedule.N(n));
            m.target_family = family_meeting_y(*target, schedule.N(n + 1));
            if (!m.source_family.empty() && m.target_family.empty())
                throw EmptyWindowError("Y_" + std::to_string(n + 1) + " is empty: truncation depth " +
                                       std::to_string(source->space().truncation.lmax) + " is below N_" +
                                       std::to_string(n + 1) + " = " + std::to_string(schedule.N(n + 1)));
            for (int c : m.source_family) m.image.emplace(c, relevel(c, std::max<std::int64_t>(g.vertex(c).level, s)));
            break;
        }
    }
    for (const auto& [c, w] : m.image)
        if (!std::binary_search(m.target_family.begin(), m.target_family.end(), w))
            throw DomainMismatchError(m.name + " sends column " + g.label(c) + " to " + g.label(w) +
                                      ", which is outside the target family");
    check_simplicial(m);
    return m;
}

FamilyMap compose(const FamilyMap& g, const FamilyMap& f) {
    if (f.target != g.source) throw DomainMismatchError("cannot compose " + g.name + " after " + f.name);
    FamilyMap out;
    out.name = g.name + "∘" + f.name;
    out.source = f.source;
    out.target = g.target;
    out.source_family = f.source_family;
    out.target_family = g.target_family;
    for (const auto& [c, w] : f.image) {
        auto it = g.image.find(w);
        if (it == g.image.end())
            throw DomainMismatchError(f.name + " lands outside the source family of " + g.name);
        out.image.emplace(c, it->second);
    }
    return out;
}

namespace {

// For each source point, the star within the source family; stars that
// repeat are visited once.
template <class Visit>
void for_each_point_star(const FamilyMap& f, Visit&& visit) {
    std::set<std::vector<int>> seen;
    for (int p = 0; p < f.source->space().graph.size(); ++p) {
        auto s = intersect(f.source->star(p), f.source_family);
        if (s.empty() || !seen.insert(s).second) continue;
        if (!visit(s)) return;
    }
}

}  // namespace

void check_simplicial(const FamilyMap& f) {
    for_each_point_star(f, [&](const std::vector<int>& star) {
        std::vector<int> img;
        for (int c : star) img.push_back(f.image.at(c));
        if (!columns_intersect(*f.target, sorted_unique(std::move(img))))
            throw NonSimplicialMapError(f.name + " sends the simplex " + format_columns(star) +
                                        " to columns without a common vertex");
        return true;
    });
}

ContiguityResult contiguous(const FamilyMap& f, const FamilyMap& g) {
    if (f.source != g.source || f.target != g.target || f.source_family != g.source_family ||
        f.target_family != g.target_family)
        throw DomainMismatchError(f.name + " and " + g.name + " have different domains");
    ContiguityResult r;
    for_each_point_star(f, [&](const std::vector<int>& star) {
        std::vector<int> img;
        for (int c : star) {
            img.push_back(f.image.at(c));
            img.push_back(g.image.at(c));
        }
        if (columns_intersect(*f.target, sorted_unique(std::move(img)))) return true;
        r = {false, star};
        return false;
    });
    return r;
}

SimplicialMap core_map(const FamilyMap& f, const NerveCore& source, const NerveCore& target) {
    if (source.cover != f.source || target.cover != f.target || source.family != f.source_family ||
        target.family != f.target_family)
        throw DomainMismatchError("cores do not belong to the families of " + f.name);
    std::map<int, int> m;
    for (int c : source.kept) m.emplace(c, target.retraction.at(f.image.at(c)));
    return SimplicialMap(source.complex, target.complex, std::move(m));
}

InteriorWindow interior_window(const AugmentedSpace& space, int j) {
    InteriorWindow w;
    w.radius = static_cast<int>(std::min<std::int64_t>(reach(j + 1), kInfinite - 1));
    const auto& g = space.graph;
    std::vector<int> boundary;
    for (int i = 0; i < g.size(); ++i) {
        const auto& v = g.vertex(i);
        const bool rim = space.elements.at(v.point).length() >= space.truncation.rg;
        if (rim || (v.kind == VertexKind::Horoball && v.level >= space.truncation.lmax)) boundary.push_back(i);
    }
    w.vertices = static_cast<std::size_t>(g.size());
    w.boundary = boundary.size();
    const auto dist = g.multi_source_distances(boundary);
    for (int i = 0; i < g.size(); ++i)
        if (dist[i] >= w.radius) w.interior.push_back(i);
    return w;
}

} // namespace horonerve
