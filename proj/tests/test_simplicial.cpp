#include "horonerve/error.hpp"
#include "horonerve/simplicial.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace horonerve;

namespace {

using Ptr = std::shared_ptr<const SimplicialComplex>;

Ptr make(const std::vector<Simplex>& facets, int cap = SimplicialComplex::kNoCap) {
    return std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets(facets, cap));
}

// Downward closure by bitmask enumeration.
std::set<Simplex> closure_oracle(const std::vector<Simplex>& facets, int cap) {
    std::set<Simplex> out;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        const int n = static_cast<int>(f.size());
        for (int mask = 1; mask < (1 << n); ++mask) {
            Simplex s;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) s.push_back(f[i]);
            if (cap < 0 || static_cast<int>(s.size()) <= cap + 1) out.insert(s);
        }
    }
    return out;
}

std::set<Simplex> all_faces(const SimplicialComplex& c) {
    std::set<Simplex> out;
    for (int d = 0; d <= c.dimension(); ++d) out.insert(c.simplices(d).begin(), c.simplices(d).end());
    return out;
}

std::vector<Simplex> random_facets(std::mt19937_64& rng, int n, int count, int max_size) {
    std::vector<Simplex> facets;
    for (int k = 0; k < count; ++k) {
        std::set<int> f;
        const int size = 1 + static_cast<int>(rng() % max_size);
        while (static_cast<int>(f.size()) < size) f.insert(static_cast<int>(rng() % n));
        facets.emplace_back(f.begin(), f.end());
    }
    return facets;
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

// Reduces every column of m modulo the torsion of the target group.
IntMatrix normalized(const IntMatrix& m, const AbelianGroup& g) {
    IntMatrix out = m;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto col = g.normalize(m.column(j));
        for (std::size_t i = 0; i < col.size(); ++i) out(i, j) = col[i];
    }
    return out;
}

}  // namespace

TEST_CASE("face sets match the downward-closure oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto facets = random_facets(rng, 9, 1 + static_cast<int>(rng() % 6), 5);
        for (int cap : {SimplicialComplex::kNoCap, 1, 2}) {
            const auto c = SimplicialComplex::from_facets(facets, cap);
            CHECK(all_faces(c) == closure_oracle(facets, cap));
            bool big = false;
            for (const auto& f : facets) big = big || (cap >= 0 && static_cast<int>(f.size()) > cap + 1);
            CHECK(c.truncated() == big);
            for (const auto& s : c.maximal_simplices()) CHECK(c.contains(s));
        }
    }
}

TEST_CASE("flag complex equals the clique oracle") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 7;
        std::set<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.emplace(i, j);
        auto adj = [&](int a, int b) { return edges.count({std::min(a, b), std::max(a, b)}) > 0; };
        std::vector<int> verts(n);
        for (int i = 0; i < n; ++i) verts[i] = i;
        const auto c = SimplicialComplex::flag_complex(verts, adj, 3);
        std::set<Simplex> oracle;
        bool bigger = false;
        for (int mask = 1; mask < (1 << n); ++mask) {
            Simplex s;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) s.push_back(i);
            bool clique = true;
            for (std::size_t a = 0; a < s.size(); ++a)
                for (std::size_t b = a + 1; b < s.size(); ++b) clique = clique && adj(s[a], s[b]);
            if (!clique) continue;
            if (s.size() <= 4)
                oracle.insert(s);
            else
                bigger = true;
        }
        CHECK(all_faces(c) == oracle);
        CHECK(c.truncated() == bigger);
    }
}

TEST_CASE("path complex, disjoint vertices and a single vertex") {
    const auto path = SimplicialComplex::flag_complex({0, 1, 2}, [](int a, int b) { return std::abs(a - b) <= 1; }, 3);
    CHECK(path.count(1) == 2);
    CHECK(path.count(2) == 0);
    CHECK(path.components().size() == 1);
    const auto two = SimplicialComplex::from_facets({{4}, {9}});
    CHECK(two.components() == std::vector<std::vector<int>>{{4}, {9}});
    CHECK(SimplicialComplex::from_facets({{3}}).face_count() == 1);
}

TEST_CASE("homology of standard complexes") {
    SimplicialHomology rp2(make(kRP2));
    CHECK(rp2.group(0).to_string() == "Z");
    CHECK(rp2.group(1).to_string() == "Z/2");
    CHECK(rp2.group(2).is_trivial());

    SimplicialHomology t(make(torus()));
    CHECK(t.group(1).to_string() == "Z^2");
    CHECK(t.group(2).to_string() == "Z");

    const auto three = make({{0, 1}, {2}, {3, 4, 5}});
    SimplicialHomology unreduced(three), reduced(three, true);
    CHECK(unreduced.group(0).to_string() == "Z^3");
    CHECK(reduced.group(0).to_string() == "Z^2");
    CHECK(reduced.coordinates(0, Chain{{2, 1}, {0, -1}}) == std::vector<Integer>{1, 0});
    CHECK_THROWS_AS(reduced.coordinates(0, Chain{{2, 1}}), InvalidArgumentError);

    SimplicialHomology point(make({{7}}), true);
    CHECK(point.group(0).is_trivial());
}

TEST_CASE("cap marks the top degree as untrusted") {
    const auto full = make({{0, 1, 2, 3}}, 1);
    SimplicialHomology h(full);
    CHECK(full->truncated());
    CHECK(h.trusted(0));
    CHECK_FALSE(h.trusted(1));
    // H_1 of the K4 graph is Z^3, which says nothing about the solid simplex.
    CHECK_THROWS_AS(h.group(1), InvalidArgumentError);
    CHECK_THROWS_AS(h.generators(1), InvalidArgumentError);

    // One degree below the cap is computed from the cells at the cap.
    const auto solid = make({{0, 1, 2, 3}}, 2);
    SimplicialHomology hs(solid);
    CHECK(hs.trusted(1));
    CHECK(hs.group(1).is_trivial());
    CHECK_THROWS_AS(hs.group(2), InvalidArgumentError);
}

TEST_CASE("simpliciality is enforced with a witness") {
    const auto src = make({{0, 1}, {1, 2}});
    const auto tgt = make({{0, 1}, {2}});
    CHECK_NOTHROW(SimplicialMap(src, tgt, {{0, 0}, {1, 1}, {2, 1}}));
    try {
        SimplicialMap(src, tgt, {{0, 0}, {1, 1}, {2, 2}});
        FAIL("expected NonSimplicialMapError");
    } catch (const NonSimplicialMapError& e) {
        CHECK(std::string(e.what()).find("{1,2}") != std::string::npos);
    }
    CHECK_THROWS_AS(SimplicialMap(src, tgt, {{0, 0}, {1, 1}}), InvalidArgumentError);
}

TEST_CASE("identity and constant maps on homology") {
    const auto t = make(torus());
    SimplicialHomology h(t);
    std::map<int, int> id, constant;
    for (int v : t->vertices()) {
        id[v] = v;
        constant[v] = 0;
    }
    SimplicialMap f(t, t, id), c(t, t, constant);
    for (int d = 0; d <= 2; ++d) CHECK(induced_map(f, d, h, h) == IntMatrix::identity(h.group(d).dimension()));
    CHECK(induced_map(c, 0, h, h) == IntMatrix::identity(1));
    CHECK(induced_map(c, 1, h, h).is_zero());
    CHECK(induced_map(c, 2, h, h).is_zero());
}

TEST_CASE("chain maps commute with the boundary and induced maps are functorial") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const auto k = make(random_facets(rng, 7, 6, 3));
        std::map<int, int> phi, psi;
        for (int v : k->vertices()) phi[v] = static_cast<int>(rng() % 6);
        std::vector<Simplex> l_facets = random_facets(rng, 6, 3, 3);
        for (const auto& s : k->maximal_simplices()) {
            Simplex img;
            for (int v : s) img.push_back(phi[v]);
            l_facets.push_back(img);
        }
        const auto l = make(l_facets);
        for (int v : l->vertices()) psi[v] = static_cast<int>(rng() % 5);
        std::vector<Simplex> m_facets = random_facets(rng, 5, 2, 3);
        for (const auto& s : l->maximal_simplices()) {
            Simplex img;
            for (int v : s) img.push_back(psi[v]);
            m_facets.push_back(img);
        }
        const auto m = make(m_facets);
        SimplicialMap f(k, l, phi), g(l, m, psi);
        const auto gf = compose(g, f);

        const auto ck = k->chain_complex();
        const auto cl = l->chain_complex();
        for (int d = 1; d <= k->dimension(); ++d)
            for (std::size_t s = 0; s < k->count(d); ++s) {
                const Chain one{{s, 1}};
                CHECK(cl.boundary_of(d, f.push(d, one)) == f.push(d - 1, ck.boundary_of(d, one)));
            }

        for (bool reduced : {false, true}) {
            SimplicialHomology hk(k, reduced), hl(l, reduced), hm(m, reduced);
            for (int d = 0; d <= 2; ++d) {
                const auto lhs = induced_map(gf, d, hk, hm);
                const auto rhs = normalized(induced_map(g, d, hl, hm) * induced_map(f, d, hk, hl), hm.group(d));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("contiguity") {
    const auto src = make({{0, 1}});
    const auto tgt = make({{0, 1}, {2}});
    SimplicialMap f(src, tgt, {{0, 0}, {1, 1}}), g(src, tgt, {{0, 0}, {1, 0}});
    CHECK(contiguous(f, f).contiguous);
    CHECK(contiguous(f, g).contiguous);
    SimplicialMap a(src, tgt, {{0, 0}, {1, 0}}), b(src, tgt, {{0, 2}, {1, 2}});
    const auto r = contiguous(a, b);
    CHECK_FALSE(r.contiguous);
    CHECK(r.witness == Simplex{0, 1});
    const auto other = make({{0, 1}});
    SimplicialMap h(other, make({{5}}), {{0, 5}, {1, 5}});
    CHECK_THROWS_AS(contiguous(f, h), DomainMismatchError);
}

TEST_CASE("barycentric subdivision") {
    const auto tri = SimplicialComplex::from_facets({{0, 1, 2}});
    const auto sd = barycentric_subdivision(tri, 1);
    CHECK(sd.count(0) == 7);
    CHECK(sd.count(1) == 12);
    CHECK(sd.count(2) == 6);
    CHECK(barycentric_subdivision(tri, 0) == tri);
    CHECK(barycentric_subdivision(tri, 2).count(2) == 36);
    CHECK(barycentric_subdivision(SimplicialComplex::from_facets({{0, 1, 2, 3}}), 1).count(3) == 24);

    for (const auto& facets : {kRP2, torus()}) {
        SimplicialHomology before(make(facets));
        SimplicialHomology after(std::make_shared<const SimplicialComplex>(
            barycentric_subdivision(SimplicialComplex::from_facets(facets), 1)));
        for (int d = 0; d <= 2; ++d) CHECK(before.group(d) == after.group(d));
    }
}
