#include "horonerve/error.hpp"
#include "horonerve/mv.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace horonerve;

namespace {

// Points are the faces of K; the set of vertex v is its closed star. The
// nerve of this system is K itself.
std::shared_ptr<const SetSystem> star_system(const SimplicialComplex& k) {
    std::vector<Simplex> faces;
    for (int d = 0; d <= k.dimension(); ++d) faces.insert(faces.end(), k.simplices(d).begin(), k.simplices(d).end());
    auto sys = std::make_shared<SetSystem>();
    for (int v : k.vertices()) {
        boost::dynamic_bitset<> s(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (std::binary_search(faces[f].begin(), faces[f].end(), v)) s.set(f);
        sys->sets.push_back(std::move(s));
        sys->labels.push_back(v);
    }
    return sys;
}

// Unit balls of the integers in [lo, hi]; labels are the centers.
std::shared_ptr<const SetSystem> interval_system(int lo, int hi) {
    auto sys = std::make_shared<SetSystem>();
    for (int x = lo; x <= hi; ++x) {
        boost::dynamic_bitset<> s(hi - lo + 1);
        for (int y = std::max(lo, x - 1); y <= std::min(hi, x + 1); ++y) s.set(y - lo);
        sys->sets.push_back(std::move(s));
        sys->labels.push_back(x);
    }
    return sys;
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int x = lo; x <= hi; ++x) v.push_back(x);
    return v;
}

// Y = complement of X together with its neighbours, so every face lies in X or in Y.
std::vector<int> closing_partner(const SimplicialComplex& k, const std::vector<int>& x) {
    std::set<int> y;
    for (int v : k.vertices())
        if (!std::binary_search(x.begin(), x.end(), v)) y.insert(v);
    const std::set<int> outside = y;
    for (const auto& e : k.simplices(1))
        if (outside.count(e[0]) || outside.count(e[1])) y.insert(e.begin(), e.end());
    return {y.begin(), y.end()};
}

SimplicialHomology full_homology(const SimplicialComplex& k, const std::vector<int>& keep) {
    return SimplicialHomology(std::make_shared<const SimplicialComplex>(
        k.full_subcomplex([&](int v) { return std::binary_search(keep.begin(), keep.end(), v); })));
}

const std::vector<Simplex> kRP2 = {{0, 1, 3}, {1, 2, 3}, {0, 2, 4}, {1, 2, 4}, {0, 3, 4},
                                   {2, 3, 5}, {0, 1, 5}, {0, 2, 5}, {1, 4, 5}, {3, 4, 5}};

std::vector<Simplex> torus() {
    std::vector<Simplex> t;
    for (int i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return t;
}

void require_all_exact(const MVExactnessReport& r) {
    for (const auto& s : r.slots) {
        INFO(s.slot << s.degree << ": " << s.detail);
        CHECK(s.verdict != SlotVerdict::NotExact);
    }
}

IntMatrix mat(std::vector<std::vector<Integer>> rows, std::size_t cols) { return IntMatrix::from_rows(rows, cols); }

}  // namespace

TEST_CASE("coordinate sums place blocks consistently") {
    const AbelianGroup a{1, {2}}, b{2, {3}};
    const auto s = coordinate_sum(a, b);
    CHECK(s.dimension() == 5);
    CHECK(s.torsion == std::vector<Integer>{2, 3});
    const auto top = mat({{1}, {4}}, 1), bottom = mat({{2}, {5}, {7}}, 1);
    const auto left = mat({{1, 2}}, 2), right = mat({{3, 4, 5}}, 3);
    // Row times column equals the sum of the block products.
    CHECK(sum_row(a, b, left, right) * sum_column(a, b, top, bottom) == left * top + right * bottom);
    const auto diag = sum_diagonal(a, b, a, b, IntMatrix::identity(2), IntMatrix::identity(3));
    CHECK(diag == IntMatrix::identity(5));
    CHECK_THROWS_AS(sum_column(a, b, top, mat({{1}}, 1)), ShapeError);
}

TEST_CASE("line split into two half-lines") {
    const auto t = assemble_mv(interval_system(-5, 5), range(-5, 1), range(-1, 5), 2);
    CHECK(t.z_labels == range(-1, 1));
    for (const auto* h : {t.hz.get(), t.hx.get(), t.hy.get(), t.hu.get()}) CHECK(h->group(0) == AbelianGroup::free(1));
    // Each nerve is connected, so H_0 = Z with the vertex class as generator.
    CHECK(t.phi[0].matrix == mat({{1}, {-1}}, 1));
    CHECK(t.psi[0].matrix == mat({{1, 1}}, 2));
    const auto r = check_mv_exactness(t);
    CHECK(r.at("xy", 0).verdict == SlotVerdict::Exact);
    CHECK(r.at("u", 0).verdict == SlotVerdict::Exact);
    CHECK(r.at("z", 0).verdict == SlotVerdict::Exact);
    CHECK(r.at("z", 2).verdict == SlotVerdict::CapLimited);
    require_all_exact(r);
}

TEST_CASE("circle split into two arcs") {
    // C_8 as a flag complex; the arcs overlap in two disjoint edges.
    std::vector<Simplex> edges;
    for (int i = 0; i < 8; ++i) edges.push_back({std::min(i, (i + 1) % 8), std::max(i, (i + 1) % 8)});
    const auto k = SimplicialComplex::from_facets(edges);
    const auto t = assemble_mv(star_system(k), {0, 1, 2, 3, 4}, {0, 4, 5, 6, 7}, 3);
    CHECK(t.hu->group(1) == AbelianGroup::free(1));
    CHECK(t.hz->group(0) == AbelianGroup::free(2));
    REQUIRE(t.delta[1].has_value());
    // The loop maps to a generator of ker(phi_0) = span(e_0 - e_1).
    const auto img = t.delta[1]->matrix.column(0);
    CHECK(img.size() == 2);
    CHECK(img[0] == -img[1]);
    CHECK(abs(img[0]) == 1);
    require_all_exact(check_mv_exactness(t));
    for (bool agree : t.composites_agree) CHECK(agree);
}

TEST_CASE("disjoint union: Z empty") {
    const auto k = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {3, 4}});
    const auto t = assemble_mv(star_system(k), {0, 1, 2}, {3, 4}, 2);
    CHECK(t.z_labels.empty());
    CHECK(t.hz->group(0).is_trivial());
    CHECK(t.hu->group(0) == AbelianGroup::free(2));
    CHECK(is_isomorphism(t.psi[0]));
    require_all_exact(check_mv_exactness(t));
}

TEST_CASE("decompositions that do not split the nerve are rejected") {
    const auto sys = interval_system(-3, 3);
    // Columns -1 and 1 share the point 0 but neither family holds both.
    CHECK_THROWS_AS(assemble_mv(sys, range(-3, 0), range(0, 3), 2), DecompositionError);
    CHECK_THROWS_AS(assemble_mv(sys, range(-3, 1), range(-1, 2), 2), DecompositionError);
}

TEST_CASE("random splits of random complexes") {
    std::mt19937_64 rng(11);
    int exercised_delta = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<Simplex> facets;
        if (trial == 0) facets = kRP2;
        else if (trial == 1) facets = torus();
        else if (trial % 2) {
            // A long cycle with two chords, split along an arc: loops cross from X \ Y to Y \ X.
            const int n = 8 + static_cast<int>(rng() % 5);
            for (int v = 0; v < n; ++v) facets.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
            for (int c = 0; c < 2; ++c) {
                const int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
                if (a != b) facets.push_back({std::min(a, b), std::max(a, b)});
            }
        } else {
            const int n = 6 + static_cast<int>(rng() % 4);
            for (int f = 0; f < 10; ++f) {
                std::set<int> s;
                const int size = 2 + static_cast<int>(rng() % 3);
                while (static_cast<int>(s.size()) < size) s.insert(static_cast<int>(rng() % n));
                facets.emplace_back(s.begin(), s.end());
            }
        }
        const auto k = SimplicialComplex::from_facets(facets);
        std::vector<int> x;
        if (trial > 1 && trial % 2) {
            const int n = static_cast<int>(k.vertices().size());
            const int start = static_cast<int>(rng() % n), len = 2 + static_cast<int>(rng() % (n - 3));
            for (int i = 0; i < len; ++i) x.push_back((start + i) % n);
            std::sort(x.begin(), x.end());
        } else {
            for (int v : k.vertices())
                if (rng() % 2) x.push_back(v);
        }
        if (x.empty()) x.push_back(k.vertices().front());
        const auto y = closing_partner(k, x);
        const auto t = assemble_mv(star_system(k), x, y, 3);
        INFO("trial " << trial);

        // Cores against homology of the full subcomplexes.
        const SimplicialHomology hk(std::make_shared<const SimplicialComplex>(k));
        const auto hx = full_homology(k, t.x_labels), hy = full_homology(k, t.y_labels),
                   hz = full_homology(k, t.z_labels);
        for (int p = 0; p <= 2; ++p) {
            CHECK(t.hu->group(p) == hk.group(p));
            CHECK(t.hx->group(p) == hx.group(p));
            CHECK(t.hy->group(p) == hy.group(p));
            CHECK(t.hz->group(p) == hz.group(p));
            CHECK(t.composites_agree[p]);
        }
        const auto r = check_mv_exactness(t);
        require_all_exact(r);
        for (int p = 0; p <= 2; ++p) CHECK(r.at("xy", p).verdict == SlotVerdict::Exact);
        for (int p = 1; p <= 2; ++p)
            if (t.delta[p] && !t.delta[p]->is_zero()) ++exercised_delta;
    }
    CHECK(exercised_delta > 10);
}

TEST_CASE("ladders") {
    const AbelianGroup z = AbelianGroup::free(1);
    LadderRow row{{z, z, z, z, z}, {IntMatrix::identity(1), IntMatrix::identity(1), IntMatrix::identity(1),
                                    IntMatrix::identity(1)}};
    Ladder id{row, row, std::vector<IntMatrix>(5, IntMatrix::identity(1))};
    // Identity maps between copies of Z are not an exact row, so the five lemma does not apply.
    auto r = ladder_check(id);
    CHECK(r.holds());
    CHECK_FALSE(r.five_lemma_applicable);

    const AbelianGroup zero;
    LadderRow exact_row{{zero, z, z, zero, zero}, {IntMatrix(1, 0), IntMatrix::identity(1), IntMatrix(0, 1),
                                                    IntMatrix(0, 0)}};
    Ladder five{exact_row, exact_row, {IntMatrix(0, 0), IntMatrix::identity(1), IntMatrix::identity(1),
                                       IntMatrix(0, 0), IntMatrix(0, 0)}};
    r = ladder_check(five);
    CHECK(r.five_lemma_applicable);
    CHECK(r.middle_iso);
    CHECK(r.holds());

    five.verticals[2] = mat({{-1}}, 1);
    r = ladder_check(five);
    REQUIRE(r.failing_square.has_value());
    CHECK(*r.failing_square == 1);
    CHECK_FALSE(r.holds());

    five.verticals[2] = IntMatrix(2, 1);
    try {
        ladder_check(five);
        FAIL("expected a shape error");
    } catch (const ShapeError& e) {
        CHECK(std::string(e.what()).find("vertical 2") != std::string::npos);
    }
}

TEST_CASE("ladder between two caps of one decomposition") {
    for (const auto& facets : {kRP2, torus()}) {
        const auto k = SimplicialComplex::from_facets(facets);
        const std::vector<int> x = {0, 1, 2, 3};
        const auto y = closing_partner(k, x);
        const auto sys = star_system(k);
        const auto a = assemble_mv(sys, x, y, 3), b = assemble_mv(sys, x, y, 4);
        std::map<int, int> id;
        for (int v : k.vertices()) id.emplace(v, v);
        for (int p = 1; p <= 2; ++p) {
            const auto rep = ladder_check(mv_ladder(a, b, id, p));
            CHECK(rep.holds());
            CHECK(rep.five_lemma_applicable);
            CHECK(rep.middle_iso);
        }
    }
}

TEST_CASE("cover stages") {
    const auto line = std::make_shared<const AugmentedSpace>(
        build_augmented(GroupSpec::free_abelian(1), PeripheralSpec{{0}}, {16, 5, 1}));
    const auto s = assemble_mv(line, 0, Schedule{}, 3);
    CHECK(s.decomposition.identities_hold());
    CHECK_FALSE(s.window.interior.empty());
    const auto r = check_mv_exactness(s.triple);
    CHECK(r.at("xy", 0).verdict == SlotVerdict::Exact);
    CHECK(r.at("xy", 1).verdict == SlotVerdict::Exact);
    require_all_exact(r);
    CHECK(cluster_check(s).holds());
    CHECK_THROWS_AS(assemble_mv(line, 2, Schedule{}, 3), EmptyWindowError);

    // Without horoballs Y is empty and X -> U is an isomorphism.
    const auto tree = std::make_shared<const AugmentedSpace>(
        build_augmented(GroupSpec::free(2), PeripheralSpec{}, {3, 0, std::nullopt}));
    const auto bare = assemble_mv(tree, 0, Schedule{}, 3);
    CHECK(bare.triple.y_labels.empty());
    for (int p = 0; p <= 2; ++p)
        CHECK(is_isomorphism({bare.triple.hx->group(p), bare.triple.hu->group(p),
                              induced_map(*bare.triple.k, p, *bare.triple.hx, *bare.triple.hu)}));

    const auto two = std::make_shared<const AugmentedSpace>(
        build_augmented(GroupSpec::free(2), PeripheralSpec{{0}}, {3, 3, 2}));
    const auto st = assemble_mv(two, 0, Schedule{}, 3);
    REQUIRE(st.decomposition.z_blocks.size() == 2);
    const auto cl = cluster_check(st);
    CHECK(cl.holds());
    CHECK(st.triple.hz->group(0).rank == cl.blocks[0].groups[0].rank + cl.blocks[1].groups[0].rank);

    auto overlapping = st.decomposition.z_blocks;
    overlapping[1].second.push_back(overlapping[0].second.front());
    CHECK_THROWS_AS(cluster_check(st.triple, overlapping), DecompositionError);
}

TEST_CASE("Y tower vanishing") {
    const auto line = std::make_shared<const AugmentedSpace>(
        build_augmented(GroupSpec::free_abelian(1), PeripheralSpec{{0}}, {8, 4, 1}));
    for (auto kind : {ScheduleKind::Paper, ScheduleKind::Linear}) {
        const auto r = y_vanishing_check(line, 0, Schedule{kind});
        CHECK_FALSE(r.vacuous);
        CHECK(r.chain.size() == 4);
        REQUIRE(r.clusters.size() == 1);
        CHECK(r.clusters[0].coned);
        // One horoball: the coarser nerve is connected, so reduced H_0 is 0 at the target.
        CHECK(r.clusters[0].degrees[0].target.is_trivial());
        CHECK(r.holds());
    }
    CHECK_THROWS_AS(y_vanishing_check(line, 1, Schedule{}), EmptyWindowError);

    const auto tree = std::make_shared<const AugmentedSpace>(
        build_augmented(GroupSpec::free(2), PeripheralSpec{}, {2, 0, std::nullopt}));
    const auto v = y_vanishing_check(tree, 0, Schedule{});
    CHECK(v.vacuous);
    CHECK(v.holds());

    const auto several = std::make_shared<const AugmentedSpace>(
        build_augmented(GroupSpec::free(2), PeripheralSpec{{0}}, {3, 4, 5}));
    const auto r = y_vanishing_check(several, 0, Schedule{});
    CHECK(r.clusters.size() == 5);
    CHECK(r.holds());
}

TEST_CASE("half-line tower") {
    const auto r = milnor_counterexample_demo();
    REQUIRE(r.stages.size() == 5);
    for (const auto& s : r.stages) {
        CHECK(s.h0 == AbelianGroup::free(2));
        CHECK(s.points.size() == static_cast<std::size_t>(2 * (10 - s.n)));
        // Centers at distance 1 or 2 share a point: 2m - 3 edges on each side of m points.
        const std::size_t m = 10 - s.n;
        CHECK(s.nerve_vertices == 2 * m);
        CHECK(s.nerve_edges == 2 * (2 * m - 3));
    }
    CHECK(r.maps.size() == 4);
    CHECK(r.maps_identity);
    CHECK(r.inverse_limit == AbelianGroup::free(2));
    CHECK(r.lim1.verdict == Lim1Verdict::Zero);
    CHECK(r.intersection_h0.is_trivial());
    CHECK_FALSE(r.naive_sequence_exact);
}
