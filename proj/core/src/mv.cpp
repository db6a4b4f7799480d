#include "horonerve/mv.hpp"

#include "horonerve/error.hpp"

#include <algorithm>
#include <set>

namespace horonerve {

namespace {

// Position of a's coordinate i, or b's coordinate i, inside coordinate_sum(a, b).
std::size_t left_slot(const AbelianGroup& a, const AbelianGroup& b, std::size_t i) {
    return i < a.torsion.size() ? i : i + b.torsion.size();
}

std::size_t right_slot(const AbelianGroup& a, const AbelianGroup& b, std::size_t i) {
    return i < b.torsion.size() ? a.torsion.size() + i : a.torsion.size() + a.rank + i;
}

void require_shape(const IntMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
    if (m.rows() != rows || m.cols() != cols)
        throw ShapeError(what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                         std::to_string(rows) + "x" + std::to_string(cols));
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool has(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

SetSystem subsystem(const SetSystem& sys, const std::vector<int>& labels) {
    SetSystem out;
    for (std::size_t i = 0; i < sys.labels.size(); ++i)
        if (has(labels, sys.labels[i])) {
            out.sets.push_back(sys.sets[i]);
            out.labels.push_back(sys.labels[i]);
        }
    return out;
}

// Labels of the sets containing each point.
std::vector<std::vector<int>> point_stars(const SetSystem& sys) {
    const std::size_t n = sys.sets.empty() ? 0 : sys.sets.front().size();
    std::vector<std::vector<int>> stars(n);
    for (std::size_t i = 0; i < sys.sets.size(); ++i)
        for (auto p = sys.sets[i].find_first(); p != boost::dynamic_bitset<>::npos; p = sys.sets[i].find_next(p))
            stars[p].push_back(sys.labels[i]);
    for (auto& s : stars) std::sort(s.begin(), s.end());
    return stars;
}

SimplicialMap retract_into(const SetCore& source, const SetCore& target, const std::map<int, int>* relabel = nullptr) {
    std::map<int, int> m;
    for (int c : source.kept) {
        int w = c;
        if (relabel) {
            auto it = relabel->find(c);
            if (it == relabel->end()) throw DomainMismatchError("label " + std::to_string(c) + " has no image");
            w = it->second;
        }
        auto it = target.retraction.find(w);
        if (it == target.retraction.end())
            throw DomainMismatchError("label " + std::to_string(w) + " is outside the target family");
        m.emplace(c, it->second);
    }
    return SimplicialMap(source.complex, target.complex, std::move(m));
}

// delta[p]: take the X-part a of a U-cycle; its boundary lies in N(Z).
Homomorphism snake(const MVTriple& t, int p) {
    const auto& cu = *t.u.complex;
    const auto& target = t.hz->group(p - 1);
    std::vector<std::vector<Integer>> columns;
    for (const auto& gen : t.hu->generators(p)) {
        std::map<Simplex, Integer> boundary;
        for (const auto& [cell, coef] : gen) {
            const Simplex& s = cu.simplices(p)[cell];
            if (!std::all_of(s.begin(), s.end(), [&](int c) { return has(t.x_labels, c); })) continue;
            for (int i = 0; i <= p; ++i) {
                Simplex face = s;
                face.erase(face.begin() + i);
                boundary[face] += i % 2 == 0 ? coef : Integer(-coef);
            }
        }
        Chain z;
        for (const auto& [face, coef] : boundary) {
            if (coef == 0) continue;
            Simplex image;
            for (int c : face) {
                auto it = t.z.retraction.find(c);
                if (it == t.z.retraction.end())
                    throw DecompositionError("snake: boundary of the X-part leaves Z at column " + std::to_string(c));
                image.push_back(it->second);
            }
            add_scaled(z, t.z.complex->oriented(image), coef);
        }
        columns.push_back(target.normalize(t.hz->coordinates(p - 1, z)));
    }
    Homomorphism h{t.hu->group(p), target, IntMatrix::from_columns(columns, target.dimension())};
    h.validate();
    return h;
}

}  // namespace

AbelianGroup coordinate_sum(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup s;
    s.rank = a.rank + b.rank;
    s.torsion = a.torsion;
    s.torsion.insert(s.torsion.end(), b.torsion.begin(), b.torsion.end());
    return s;
}

IntMatrix sum_column(const AbelianGroup& a, const AbelianGroup& b, const IntMatrix& top, const IntMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw ShapeError("sum_column: blocks have different widths");
    require_shape(top, a.dimension(), top.cols(), "upper block");
    require_shape(bottom, b.dimension(), bottom.cols(), "lower block");
    IntMatrix m(a.dimension() + b.dimension(), top.cols());
    for (std::size_t c = 0; c < top.cols(); ++c) {
        for (std::size_t r = 0; r < a.dimension(); ++r) m(left_slot(a, b, r), c) = top(r, c);
        for (std::size_t r = 0; r < b.dimension(); ++r) m(right_slot(a, b, r), c) = bottom(r, c);
    }
    return m;
}

IntMatrix sum_row(const AbelianGroup& a, const AbelianGroup& b, const IntMatrix& left, const IntMatrix& right) {
    if (left.rows() != right.rows()) throw ShapeError("sum_row: blocks have different heights");
    require_shape(left, left.rows(), a.dimension(), "left block");
    require_shape(right, right.rows(), b.dimension(), "right block");
    IntMatrix m(left.rows(), a.dimension() + b.dimension());
    for (std::size_t r = 0; r < left.rows(); ++r) {
        for (std::size_t c = 0; c < a.dimension(); ++c) m(r, left_slot(a, b, c)) = left(r, c);
        for (std::size_t c = 0; c < b.dimension(); ++c) m(r, right_slot(a, b, c)) = right(r, c);
    }
    return m;
}

IntMatrix sum_diagonal(const AbelianGroup& a, const AbelianGroup& b, const AbelianGroup& c, const AbelianGroup& d,
                       const IntMatrix& f, const IntMatrix& g) {
    require_shape(f, c.dimension(), a.dimension(), "first diagonal block");
    require_shape(g, d.dimension(), b.dimension(), "second diagonal block");
    IntMatrix m(c.dimension() + d.dimension(), a.dimension() + b.dimension());
    for (std::size_t r = 0; r < c.dimension(); ++r)
        for (std::size_t k = 0; k < a.dimension(); ++k) m(left_slot(c, d, r), left_slot(a, b, k)) = f(r, k);
    for (std::size_t r = 0; r < d.dimension(); ++r)
        for (std::size_t k = 0; k < b.dimension(); ++k) m(right_slot(c, d, r), right_slot(a, b, k)) = g(r, k);
    return m;
}

MVTriple assemble_mv(std::shared_ptr<const SetSystem> system, const std::vector<int>& x_labels,
                     const std::vector<int>& y_labels, int dim_cap) {
    MVTriple t;
    t.dim_cap = dim_cap;
    t.system = system;
    t.x_labels = sorted_unique(x_labels);
    t.y_labels = sorted_unique(y_labels);
    std::set_intersection(t.x_labels.begin(), t.x_labels.end(), t.y_labels.begin(), t.y_labels.end(),
                          std::back_inserter(t.z_labels));

    const auto all = sorted_unique(system->labels);
    if (all.size() != system->labels.size()) throw InvalidArgumentError("set system labels repeat");
    std::vector<int> x_or_y;
    std::set_union(t.x_labels.begin(), t.x_labels.end(), t.y_labels.begin(), t.y_labels.end(),
                   std::back_inserter(x_or_y));
    if (x_or_y != all) throw DecompositionError("X and Y do not cover the family exactly");
    for (const auto& star : point_stars(*system)) {
        const bool in_x = std::includes(t.x_labels.begin(), t.x_labels.end(), star.begin(), star.end());
        const bool in_y = std::includes(t.y_labels.begin(), t.y_labels.end(), star.begin(), star.end());
        if (!in_x && !in_y)
            throw DecompositionError("a point star meets both X \\ Y and Y \\ X, so N(U) is not N(X) ∪ N(Y)");
    }

    t.u = strong_collapse_core(*system, dim_cap);
    t.x = strong_collapse_core(subsystem(*system, t.x_labels), dim_cap);
    t.y = strong_collapse_core(subsystem(*system, t.y_labels), dim_cap);
    t.z = strong_collapse_core(subsystem(*system, t.z_labels), dim_cap);
    t.hu = std::make_shared<const SimplicialHomology>(t.u.complex);
    t.hx = std::make_shared<const SimplicialHomology>(t.x.complex);
    t.hy = std::make_shared<const SimplicialHomology>(t.y.complex);
    t.hz = std::make_shared<const SimplicialHomology>(t.z.complex);
    t.i.emplace(retract_into(t.z, t.x));
    t.j.emplace(retract_into(t.z, t.y));
    t.k.emplace(retract_into(t.x, t.u));
    t.l.emplace(retract_into(t.y, t.u));

    // Truncated cores have no homology in degree dim_cap.
    const auto all_trusted = [&](int p) {
        return t.hu->trusted(p) && t.hx->trusted(p) && t.hy->trusted(p) && t.hz->trusted(p);
    };
    t.top_degree = all_trusted(dim_cap) ? dim_cap : dim_cap - 1;
    for (int p = 0; p <= t.top_degree; ++p) {
        t.trusted.push_back(all_trusted(p));
        const auto& gz = t.hz->group(p);
        const auto& gx = t.hx->group(p);
        const auto& gy = t.hy->group(p);
        const auto& gu = t.hu->group(p);
        const auto mi = induced_map(*t.i, p, *t.hz, *t.hx);
        const auto mj = induced_map(*t.j, p, *t.hz, *t.hy);
        const auto mk = induced_map(*t.k, p, *t.hx, *t.hu);
        const auto ml = induced_map(*t.l, p, *t.hy, *t.hu);
        t.sum.push_back(coordinate_sum(gx, gy));
        t.phi.push_back({gz, t.sum.back(), sum_column(gx, gy, mi, IntMatrix(mj.rows(), mj.cols()) - mj)});
        t.psi.push_back({t.sum.back(), gu, sum_row(gx, gy, mk, ml)});
        t.composites_agree.push_back(same_map({gz, gu, mk * mi}, {gz, gu, ml * mj}));
    }
    t.delta.resize(t.top_degree + 1);
    for (int p = 1; p <= t.top_degree; ++p)
        if (t.hu->trusted(p) && t.hz->trusted(p - 1)) t.delta[p] = snake(t, p);
    return t;
}

MVStage assemble_mv(std::shared_ptr<const AugmentedSpace> space, int n, Schedule schedule, int dim_cap) {
    MVStage s;
    s.n = n;
    s.schedule = schedule;
    const int j = schedule.j(n);
    const int N = schedule.N(n);
    if (!space->horoballs.empty() && N > space->truncation.lmax)
        throw EmptyWindowError("stage " + std::to_string(n) + " needs depth N = " + std::to_string(N) +
                               " but the horoballs are truncated at level " +
                               std::to_string(space->truncation.lmax));
    s.cover = build_cover(space, j);
    s.decomposition = decompose(*s.cover, n, schedule);
    s.window = interior_window(*space, j);
    auto sys = std::make_shared<SetSystem>();
    for (int c = 0; c < s.cover->size(); ++c) {
        sys->sets.push_back(s.cover->column_bits(c));
        sys->labels.push_back(c);
    }
    s.triple = assemble_mv(std::move(sys), s.decomposition.x, s.decomposition.y, dim_cap);
    return s;
}

std::string to_string(SlotVerdict v) {
    switch (v) {
        case SlotVerdict::Exact: return "exact";
        case SlotVerdict::NotExact: return "not-exact";
        case SlotVerdict::CapLimited: return "cap-limited";
    }
    return "?";
}

bool MVExactnessReport::all_certified_exact() const {
    return std::none_of(slots.begin(), slots.end(), [](const SlotReport& s) { return s.verdict == SlotVerdict::NotExact; });
}

const SlotReport& MVExactnessReport::at(const std::string& slot, int degree) const {
    for (const auto& s : slots)
        if (s.slot == slot && s.degree == degree) return s;
    throw InvalidArgumentError("no slot " + slot + " in degree " + std::to_string(degree));
}

MVExactnessReport check_mv_exactness(const MVTriple& t) {
    MVExactnessReport r;
    auto verdict = [](const ExactnessReport& e) { return e.exact ? SlotVerdict::Exact : SlotVerdict::NotExact; };
    for (int p = 0; p <= t.top_degree; ++p) {
        SlotReport z{"z", p, SlotVerdict::CapLimited, "connecting map into this slot not constructed"};
        if (p + 1 <= t.top_degree && t.delta[p + 1] && t.trusted[p]) {
            const auto e = exactness_check(*t.delta[p + 1], t.phi[p]);
            z = {"z", p, verdict(e), e.diagnostics};
        }
        SlotReport xy{"xy", p, SlotVerdict::CapLimited, "degree above the trusted range"};
        if (t.trusted[p]) {
            const auto e = exactness_check(t.phi[p], t.psi[p]);
            xy = {"xy", p, verdict(e), e.diagnostics};
        }
        SlotReport u{"u", p, SlotVerdict::CapLimited, "connecting map out of this slot not constructed"};
        if (p == 0 && t.trusted[0]) {
            const bool onto = is_surjective(t.psi[0]);
            u = {"u", 0, onto ? SlotVerdict::Exact : SlotVerdict::NotExact,
                 onto ? "exact" : "cokernel " + cokernel_group(t.psi[0]).to_string()};
        } else if (p > 0 && t.delta[p] && t.trusted[p]) {
            const auto e = exactness_check(t.psi[p], *t.delta[p]);
            u = {"u", p, verdict(e), e.diagnostics};
        }
        r.slots.push_back(std::move(z));
        r.slots.push_back(std::move(xy));
        r.slots.push_back(std::move(u));
    }
    return r;
}

bool ClusterReport::holds() const {
    auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    return block_diagonal && all(groups_match) && all(sum_map_iso);
}

ClusterReport cluster_check(const MVTriple& t, const std::vector<std::pair<std::int64_t, std::vector<int>>>& blocks) {
    ClusterReport r;
    std::map<int, std::size_t> owner;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int c : blocks[b].second)
            if (!owner.emplace(c, b).second)
                throw DecompositionError("column " + std::to_string(c) + " lies in two blocks of Z");
    std::vector<int> covered;
    for (const auto& [c, b] : owner) covered.push_back(c);
    if (covered != t.z_labels) throw DecompositionError("the blocks do not partition Z");

    r.block_diagonal = true;
    for (const auto& star : point_stars(subsystem(*t.system, t.z_labels))) {
        std::set<std::size_t> touched;
        for (int c : star) touched.insert(owner.at(c));
        if (touched.size() > 1) r.block_diagonal = false;
    }

    std::vector<SetCore> cores;
    std::vector<SimplicialHomology> homology;
    for (const auto& [coset, labels] : blocks) {
        cores.push_back(strong_collapse_core(subsystem(*t.system, sorted_unique(labels)), t.dim_cap));
        homology.emplace_back(cores.back().complex);
        r.blocks.push_back({coset, sorted_unique(labels), {}});
    }
    for (int p = 0; p <= t.top_degree; ++p) {
        bool trusted = t.hz->trusted(p);
        for (const auto& h : homology) trusted = trusted && h.trusted(p);
        if (!trusted) continue;
        AbelianGroup expected, coords;
        IntMatrix m(t.hz->group(p).dimension(), 0);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& g = homology[b].group(p);
            r.blocks[b].groups.push_back(g);
            expected = AbelianGroup::direct_sum(expected, g);
            const auto mb = induced_map(retract_into(cores[b], t.z), p, homology[b], *t.hz);
            m = sum_row(coords, g, m, mb);
            coords = coordinate_sum(coords, g);
        }
        r.groups_match.push_back(expected == t.hz->group(p));
        r.sum_map_iso.push_back(is_isomorphism({coords, t.hz->group(p), m}));
    }
    return r;
}

ClusterReport cluster_check(const MVStage& s) { return cluster_check(s.triple, s.decomposition.z_blocks); }

bool YVanishingReport::holds() const {
    if (vacuous) return true;
    for (const auto& c : chain)
        if (!c.contiguous) return false;
    for (const auto& cl : clusters) {
        if (!cl.coned) return false;
        for (const auto& d : cl.degrees)
            if (!d.trusted || !d.zero) return false;
    }
    return true;
}

YVanishingReport y_vanishing_check(std::shared_ptr<const AugmentedSpace> space, int n, Schedule schedule,
                                   int dim_cap) {
    YVanishingReport r;
    r.n = n;
    const auto source = build_cover(space, schedule.j(n));
    if (family_meeting_y(*source, schedule.N(n)).empty()) {
        r.vacuous = true;
        return r;
    }
    const auto target = build_cover(space, schedule.j(n + 1));
    const int lmax = space->truncation.lmax;
    std::vector<FamilyMap> q;
    for (int s = 0; s <= lmax; ++s) q.push_back(connecting_map(MapKind::Q, source, target, n, schedule, s));
    for (int s = 0; s < lmax; ++s) r.chain.push_back(contiguous(q[s], q[s + 1]));

    const auto& g = space->graph;
    auto by_coset = [&](const std::vector<int>& family) {
        std::map<std::int64_t, std::vector<int>> out;
        for (int c : family) out[g.vertex(c).coset].push_back(c);
        return out;
    };
    const auto src_clusters = by_coset(q[0].source_family);
    const auto tgt_clusters = by_coset(q[0].target_family);
    for (const auto& [coset, cols] : src_clusters) {
        YCluster cl;
        cl.coset = coset;
        cl.source_columns = cols.size();
        auto it = tgt_clusters.find(coset);
        if (it == tgt_clusters.end())
            throw EmptyWindowError("horoball " + std::to_string(coset) + " has no columns in Y_" +
                                   std::to_string(n + 1));
        cl.target_columns = it->second.size();

        std::vector<int> deepest;
        for (int c : cols) deepest.push_back(q[lmax].image.at(c));
        cl.coned = columns_intersect(*target, sorted_unique(std::move(deepest)));

        FamilyMap f = q[0];
        f.source_family = cols;
        f.target_family = it->second;
        f.image.clear();
        for (int c : cols) f.image.emplace(c, q[0].image.at(c));
        const auto sc = nerve_core(source, f.source_family, dim_cap);
        const auto tc = nerve_core(target, f.target_family, dim_cap);
        const auto m = core_map(f, sc, tc);
        SimplicialHomology hs(sc.complex, true), ht(tc.complex, true);
        for (int p = 0; p <= 2; ++p) {
            YClusterDegree d;
            d.degree = p;
            d.trusted = hs.trusted(p) && ht.trusted(p);
            if (d.trusted) {
                d.source = hs.group(p);
                d.target = ht.group(p);
                d.matrix = induced_map(m, p, hs, ht);
                d.zero = Homomorphism{d.source, d.target, d.matrix}.is_zero();
            }
            cl.degrees.push_back(std::move(d));
        }
        r.clusters.push_back(std::move(cl));
    }
    return r;
}

bool LadderReport::holds() const {
    return !failing_square && five_lemma_consistent;
}

LadderReport ladder_check(const Ladder& l) {
    const std::size_t len = l.top.groups.size();
    if (l.bottom.groups.size() != len || l.verticals.size() != len)
        throw ShapeError("ladder rows and verticals have different lengths");
    if (len == 0) throw ShapeError("empty ladder");
    for (const auto* row : {&l.top, &l.bottom}) {
        const char* name = row == &l.top ? "top" : "bottom";
        if (row->maps.size() + 1 != len) throw ShapeError(std::string(name) + " row needs one map fewer than groups");
        for (std::size_t i = 0; i + 1 < len; ++i)
            require_shape(row->maps[i], row->groups[i + 1].dimension(), row->groups[i].dimension(),
                          std::string(name) + " map " + std::to_string(i) + " (square " + std::to_string(i) + ")");
    }
    for (std::size_t i = 0; i < len; ++i)
        require_shape(l.verticals[i], l.bottom.groups[i].dimension(), l.top.groups[i].dimension(),
                      "vertical " + std::to_string(i));

    LadderReport r;
    for (std::size_t i = 0; i + 1 < len; ++i) {
        const auto& target = l.bottom.groups[i + 1];
        const bool ok = same_map({l.top.groups[i], target, l.bottom.maps[i] * l.verticals[i]},
                                 {l.top.groups[i], target, l.verticals[i + 1] * l.top.maps[i]});
        r.squares_commute.push_back(ok);
        if (!ok && !r.failing_square) r.failing_square = i;
    }
    for (const auto* row : {&l.top, &l.bottom}) {
        auto& out = row == &l.top ? r.top_exact : r.bottom_exact;
        for (std::size_t i = 1; i + 1 < len; ++i)
            out.push_back(exactness_check({row->groups[i - 1], row->groups[i], row->maps[i - 1]},
                                          {row->groups[i], row->groups[i + 1], row->maps[i]})
                              .exact);
    }
    for (std::size_t i = 0; i < len; ++i)
        r.vertical_iso.push_back(is_isomorphism({l.top.groups[i], l.bottom.groups[i], l.verticals[i]}));

    auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    if (len == 5) {
        r.middle_iso = r.vertical_iso[2];
        r.five_lemma_applicable = !r.failing_square && all(r.top_exact) && all(r.bottom_exact) && r.vertical_iso[0] &&
                                  r.vertical_iso[1] && r.vertical_iso[3] && r.vertical_iso[4];
    }
    r.five_lemma_consistent = !r.five_lemma_applicable || r.middle_iso;
    return r;
}

LadderRow mv_row(const MVTriple& t, int p) {
    if (p < 1 || p > t.top_degree || !t.delta[p])
        throw InvalidArgumentError("no connecting map out of degree " + std::to_string(p));
    LadderRow row;
    row.groups = {t.hz->group(p), t.sum[p], t.hu->group(p), t.hz->group(p - 1), t.sum[p - 1]};
    row.maps = {t.phi[p].matrix, t.psi[p].matrix, t.delta[p]->matrix, t.phi[p - 1].matrix};
    return row;
}

Ladder mv_ladder(const MVTriple& a, const MVTriple& b, const std::map<int, int>& label_map, int p) {
    Ladder l;
    l.top = mv_row(a, p);
    l.bottom = mv_row(b, p);
    const auto fz = retract_into(a.z, b.z, &label_map);
    const auto fx = retract_into(a.x, b.x, &label_map);
    const auto fy = retract_into(a.y, b.y, &label_map);
    const auto fu = retract_into(a.u, b.u, &label_map);
    auto sum_vertical = [&](int d) {
        return sum_diagonal(a.hx->group(d), a.hy->group(d), b.hx->group(d), b.hy->group(d),
                            induced_map(fx, d, *a.hx, *b.hx), induced_map(fy, d, *a.hy, *b.hy));
    };
    l.verticals = {induced_map(fz, p, *a.hz, *b.hz), sum_vertical(p), induced_map(fu, p, *a.hu, *b.hu),
                   induced_map(fz, p - 1, *a.hz, *b.hz), sum_vertical(p - 1)};
    return l;
}

MilnorReport milnor_counterexample_demo() {
    constexpr int kRadius = 10;
    constexpr int kStages = 5;
    MilnorReport r;
    auto points_of = [](int n) {
        std::vector<int> pts;
        for (int x = -kRadius; x <= kRadius; ++x)
            if (std::abs(x) > n) pts.push_back(x);
        return pts;
    };
    std::vector<std::shared_ptr<const SimplicialComplex>> nerves;
    std::vector<SimplicialHomology> h0;
    for (int n = 1; n <= kStages; ++n) {
        MilnorStage st;
        st.n = n;
        st.points = points_of(n);
        SetSystem sys;
        for (int x : st.points) {
            boost::dynamic_bitset<> ball(2 * kRadius + 1);
            for (int y : st.points)
                if (std::abs(x - y) <= 1) ball.set(y + kRadius);
            sys.sets.push_back(std::move(ball));
            sys.labels.push_back(x);
        }
        nerves.push_back(nerve_of_sets(sys, 2));
        h0.emplace_back(nerves.back());
        st.nerve_vertices = nerves.back()->count(0);
        st.nerve_edges = nerves.back()->count(1);
        st.h0 = h0.back().group(0);
        r.stages.push_back(std::move(st));
    }
    Tower tower;
    tower.direction = TowerDirection::Projective;
    r.maps_identity = true;
    for (int i = 0; i < kStages; ++i) tower.groups.push_back(r.stages[i].h0);
    for (int i = 0; i + 1 < kStages; ++i) {
        std::map<int, int> inclusion;
        for (int x : r.stages[i + 1].points) inclusion.emplace(x, x);
        SimplicialMap f(nerves[i + 1], nerves[i], std::move(inclusion));
        r.maps.push_back(induced_map(f, 0, h0[i + 1], h0[i]));
        r.maps_identity = r.maps_identity && r.maps.back() == IntMatrix::identity(r.maps.back().rows()) &&
                          r.maps.back().rows() == r.maps.back().cols();
        tower.maps.push_back(r.maps.back());
    }
    tower.validate();
    r.inverse_limit = inverse_limit(tower).finite_limit;
    r.lim1 = ml_lim1(tower);
    // Every point leaves Y_n once n reaches the window radius.
    const auto nothing = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets({}));
    r.intersection_h0 = SimplicialHomology(nothing).group(0);
    r.naive_sequence_exact = r.inverse_limit == r.intersection_h0;
    return r;
}

} // namespace horonerve
