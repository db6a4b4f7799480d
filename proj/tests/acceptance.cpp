// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every tolerance is pinned below.
#include "horonerve/cover.hpp"
#include "horonerve/error.hpp"
#include "horonerve/hyperbolicity.hpp"
#include "horonerve/mv.hpp"
#include "horonerve/opencone.hpp"
#include "horonerve/rips.hpp"
#include "horonerve/tools/cli.hpp"
#include "horonerve/tools/config.hpp"
#include "horonerve/tools/export.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

using namespace horonerve;
using namespace horonerve::tools;

namespace {

// Criteria 1-8 and 10 are exact (integers, half-integers carried doubled,
// booleans, Smith forms). Criterion 9 compares Euclidean distances on the
// discretisation grid with this slack.
constexpr double kConeSlack = kConeTolerance;
static_assert(kConeSlack == 1e-9);
constexpr std::size_t kMinWindowTriples = 20;

const std::string kSource = HORONERVE_SOURCE_DIR;
const std::vector<std::string> kInstances{"z-line", "z2-z", "free2-a"};

std::string instance_path(const std::string& name) { return kSource + "/instances/" + name + ".cfg"; }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::shared_ptr<const AugmentedSpace> shipped_space(const std::string& name) {
    const auto c = load_instance(instance_path(name));
    return std::make_shared<const AugmentedSpace>(build_augmented(c.group(), c.peripherals(), c.truncation()));
}

Schedule shipped_schedule(const std::string& name) { return load_instance(instance_path(name)).schedule; }

// 1 ------------------------------------------------------------------------

void horoball_fidelity(Outcome& o) {
    const auto base = FiniteMetricSpace::integer_interval(-8, 8);
    const auto g = build_horoball(base, {0, 3}, 3);
    using Key = std::pair<VertexId, VertexId>;
    std::set<Key> expected, actual;
    for (int l = 0; l <= 3; ++l)
        for (int p = 0; p < 17; ++p)
            for (int l2 = 0; l2 <= 3; ++l2)
                for (int q = 0; q < 17; ++q) {
                    const auto a = l == 0 ? VertexId::cayley(p) : VertexId::horoball(1, p, l);
                    const auto b = l2 == 0 ? VertexId::cayley(q) : VertexId::horoball(1, q, l2);
                    if (!(a < b)) continue;
                    const int d = std::abs(p - q);
                    const bool horizontal = l == l2 && 0 < d && d <= (1 << l);
                    const bool vertical = p == q && std::abs(l - l2) == 1;
                    if (horizontal || vertical) expected.insert({a, b});
                }
    for (const auto& [u, v] : g.edges()) {
        const auto a = g.vertex(u), b = g.vertex(v);
        actual.insert(a < b ? Key{a, b} : Key{b, a});
    }
    o.require(actual == expected, "edge set differs from the predicate oracle");
    // Base point 0 has index 8, base point 8 has index 16.
    const int d = g.bfs_distance(VertexId::cayley(8), VertexId::cayley(16));
    o.require(d == 6, "d((0,0),(8,0)) = " + std::to_string(d));
    o.detail << expected.size() << " edges match the oracle, d((0,0),(8,0)) = " << d;
}

// 2 ------------------------------------------------------------------------

void hyperbolicity(Outcome& o) {
    std::int64_t worst_free = 0;
    for (int r = 1; r <= 6; ++r) {
        const auto ball = build_augmented(GroupSpec::free(2), {}, {r, 0, std::nullopt});
        worst_free = std::max(worst_free, four_point_delta(ball.graph, DeltaMode::exhaustive()).twice_delta);
    }
    o.require(worst_free == 0, "free(2) ball delta " + format_half(worst_free));

    GraphBuilder c4;
    for (int i = 0; i < 4; ++i) c4.add_vertex(VertexId::cayley(i));
    for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
    const auto square = four_point_delta(std::move(c4).build(), DeltaMode::exhaustive()).twice_delta;
    o.require(square == 2, "C4 delta " + format_half(square));

    const auto base = FiniteMetricSpace::integer_interval(-32, 32);
    const auto l4 = four_point_delta(build_horoball(base, {0, std::nullopt}, 4), DeltaMode::exhaustive()).twice_delta;
    const auto l5 = four_point_delta(build_horoball(base, {0, std::nullopt}, 5), DeltaMode::exhaustive()).twice_delta;
    o.require(l4 == l5, "horoball delta changes with the truncation");
    o.require(l4 == 3, "horoball delta " + format_half(l4) + " differs from the recorded 1.5");
    o.detail << "free(2) radius<=6: " << format_half(worst_free) << ", C4: " << format_half(square)
             << ", Z-horoball L=4: " << format_half(l4) << ", L=5: " << format_half(l5);
}

// 3 ------------------------------------------------------------------------

/// Columns meeting X(N), Y(N), Z(N), recomputed from member levels.
struct OracleFamilies {
    std::vector<int> x, y, z;
    std::map<std::int64_t, std::set<int>> blocks;
    bool single_coset = true;  // every Z column meets level N in one horoball
};

OracleFamilies oracle_families(const Cover& cover, int N) {
    OracleFamilies f;
    const auto& g = cover.space().graph;
    for (int c = 0; c < cover.size(); ++c) {
        bool mx = false, my = false;
        std::set<std::int64_t> cosets;
        for (const int v : cover.column(c).members) {
            const auto& id = g.vertex(v);
            const bool cayley = id.kind == VertexKind::Cayley;
            mx = mx || cayley || id.level <= N;
            my = my || (!cayley && id.level >= N);
            if (!cayley && id.level == N) cosets.insert(id.coset);
        }
        if (mx) f.x.push_back(c);
        if (my) f.y.push_back(c);
        if (!cosets.empty()) {
            f.z.push_back(c);
            f.single_coset = f.single_coset && cosets.size() == 1;
            for (const auto k : cosets) f.blocks[k].insert(c);
        }
    }
    return f;
}

void decomposition_identities(Outcome& o) {
    const auto space = shipped_space("z2-z");
    const Schedule paper{ScheduleKind::Paper};
    for (int n : {0, 1}) {
        const auto cover = build_cover(space, paper.j(n));
        const auto d = decompose(*cover, n, paper);
        const auto f = oracle_families(*cover, d.N);
        std::vector<int> uni, inter;
        std::set_union(f.x.begin(), f.x.end(), f.y.begin(), f.y.end(), std::back_inserter(uni));
        std::set_intersection(f.x.begin(), f.x.end(), f.y.begin(), f.y.end(), std::back_inserter(inter));
        const std::string at = " at n = " + std::to_string(n);
        o.require(static_cast<int>(uni.size()) == cover->size(), "U != X ∪ Y" + at);
        o.require(inter == f.z, "X ∩ Y != Z" + at);
        o.require(f.single_coset, "a Z column meets two horoballs" + at);
        std::size_t block_total = 0;
        for (const auto& [k, cols] : f.blocks) block_total += cols.size();
        o.require(block_total == f.z.size(), "Z blocks overlap" + at);
        o.require(d.x == f.x && d.y == f.y && d.z == f.z, "library families differ from the oracle" + at);
        o.require(d.identities_hold(), "library identity flags" + at);
        o.detail << "n=" << n << " (j=" << d.j << ", N=" << d.N << "): |U|=" << d.u.size() << " |X|=" << d.x.size()
                 << " |Y|=" << d.y.size() << " |Z|=" << d.z.size() << " in " << f.blocks.size() << " blocks; ";
    }
}

// 4 ------------------------------------------------------------------------

void contiguity(Outcome& o) {
    for (const auto& name : kInstances) {
        const auto space = shipped_space(name);
        const auto schedule = shipped_schedule(name);
        const auto c0 = build_cover(space, schedule.j(0));
        const auto c1 = build_cover(space, schedule.j(1));
        const auto beta = connecting_map(MapKind::Beta, c0, c1, 0, schedule);
        const auto alpha = connecting_map(MapKind::Alpha, c1, c1, 1, schedule);
        const auto gamma = connecting_map(MapKind::Gamma, c0, c1, 0, schedule);
        const bool abg = contiguous(compose(alpha, beta), gamma).contiguous;
        o.require(abg, name + ": alpha_1 beta_0 !~ gamma_0");
        const int lmax = space->truncation.lmax;
        int chain = 0;
        for (int s = 0; s < lmax; ++s) {
            const bool ok = contiguous(connecting_map(MapKind::Q, c0, c1, 0, schedule, s),
                                       connecting_map(MapKind::Q, c0, c1, 0, schedule, s + 1))
                                .contiguous;
            o.require(ok, name + ": q_{0," + std::to_string(s) + "} !~ q_{0," + std::to_string(s + 1) + "}");
            chain += ok;
        }
        o.detail << name << ": abg " << (abg ? "ok" : "FAIL") << ", q chain " << chain << "/" << lmax << "; ";
    }
}

// 5 ------------------------------------------------------------------------

void mv_exactness(Outcome& o) {
    for (const auto& name : kInstances) {
        const auto space = shipped_space(name);
        const auto stage = assemble_mv(space, 0, shipped_schedule(name), 3);
        o.require(!stage.window.interior.empty(), name + ": interior window is empty");
        const auto r = check_mv_exactness(stage.triple);
        for (int p : {0, 1}) {
            const auto& slot = r.at("xy", p);
            o.require(slot.verdict == SlotVerdict::Exact,
                      name + ": middle slot p=" + std::to_string(p) + " is " + to_string(slot.verdict));
        }
        o.detail << name << ": interior " << stage.window.interior.size() << ", H0(U)=" << stage.triple.hu->group(0).to_string()
                 << ", H1(U)=" << stage.triple.hu->group(1).to_string() << "; ";
    }
}

// 6 ------------------------------------------------------------------------

void y_vanishing(Outcome& o) {
    for (const auto& name : kInstances) {
        const auto space = shipped_space(name);
        const auto r = y_vanishing_check(space, 0, shipped_schedule(name), 3);
        o.require(!r.vacuous, name + ": Y_0 is empty");
        o.require(r.holds(), name + ": contiguity chain or coning fails");
        std::size_t matrices = 0;
        for (const auto& c : r.clusters)
            for (const auto& d : c.degrees) {
                o.require(d.trusted && d.degree <= 2, name + ": untrusted degree");
                o.require(d.matrix.rows() == d.target.dimension() && d.matrix.cols() == d.source.dimension(),
                          name + ": matrix shape");
                bool zero = true;
                for (std::size_t i = 0; i < d.matrix.rows(); ++i)
                    for (std::size_t j = 0; j < d.matrix.cols(); ++j) zero = zero && d.matrix(i, j) == 0;
                o.require(zero, name + ": nonzero entry in degree " + std::to_string(d.degree));
                ++matrices;
            }
        o.detail << name << ": " << r.clusters.size() << " horoballs, " << matrices << " zero matrices; ";
    }
}

// 7 ------------------------------------------------------------------------

void rips_window(Outcome& o) {
    std::size_t hypothesized = 0;
    for (const auto& name : kInstances) {
        const auto c = load_instance(instance_path(name));
        const int rg = c.rips_rg.value_or(1), lmax = c.rips_lmax.value_or(3), dmax = c.rips_dmax.value_or(2);
        const auto space = build_level_vertex_space(c.group(), c.peripherals(), rg, lmax);
        for (int D = 1; D <= dmax; ++D)
            for (int r = 1; r <= lmax; ++r)
                for (int R = r + D; R <= lmax; ++R) {
                    const auto rep = window_decomposition_check(space.graph, D, {r, R}, 3);
                    ++hypothesized;
                    o.require(rep.hypothesis && rep.holds(), name + ": (r,R,D) = (" + std::to_string(r) + "," +
                                                                 std::to_string(R) + "," + std::to_string(D) + ")");
                }
    }
    o.require(hypothesized >= kMinWindowTriples, "only " + std::to_string(hypothesized) + " triples");

    // r = R with D = 2: the face {(x, r-1), (x, r+1)} lies in neither part.
    const auto line = build_level_vertex_space(GroupSpec::free_abelian(1), {{0}}, 3, 5);
    const auto bad = window_decomposition_check(line.graph, 2, {2, 2}, 3);
    o.require(!bad.hypothesis && !bad.union_holds && bad.union_witness.has_value(), "violation fixture did not fail");
    o.detail << hypothesized << " triples with r+D<=R pass; violation (r,R,D)=(2,2,2) fails";
    if (bad.union_witness) {
        o.detail << " with witness {";
        for (std::size_t i = 0; i < bad.union_witness->size(); ++i)
            o.detail << (i ? ", " : "") << to_string(line.graph.vertex((*bad.union_witness)[i]));
        o.detail << "}";
    }
}

// 8 ------------------------------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void milnor(Outcome& o) {
    std::ostringstream out, err;
    const int code = run({"milnor-demo"}, out, err);
    o.require(code == kExitPass, "exit code " + std::to_string(code));
    o.require(out.str() == slurp(kSource + "/tests/golden/milnor_demo.json"), "report differs from the golden file");
    const auto r = milnor_counterexample_demo();
    bool all_z2 = r.stages.size() == 5;
    for (const auto& s : r.stages) {
        // Two rays of m = 10 - n points; unit balls on a ray of m points give
        // m vertices and 2m - 3 edges (centers at distance 1 or 2 meet).
        const std::size_t m = 10 - s.n;
        all_z2 = all_z2 && s.h0 == AbelianGroup::free(2) && s.points.size() == 2 * m &&
                 s.nerve_vertices == 2 * m && s.nerve_edges == 2 * (2 * m - 3);
    }
    o.require(all_z2, "stage sizes or H0 differ from the two-ray count");
    o.require(!r.naive_sequence_exact, "lim H0 agrees with H0 of the intersection");
    o.require(r.maps_identity, "tower maps are not the identity");
    o.require(r.inverse_limit == AbelianGroup::free(2), "lim = " + r.inverse_limit.to_string());
    o.require(r.lim1.verdict == Lim1Verdict::Zero, "lim1 verdict " + to_string(r.lim1.verdict));
    o.require(r.intersection_h0.is_trivial(), "H0 of the intersection is " + r.intersection_h0.to_string());
    o.detail << "H0 = Z^2 at n=1..5, identity maps, lim = " << r.inverse_limit.to_string()
             << ", lim1 " << to_string(r.lim1.verdict) << ", H0(intersection) = " << r.intersection_h0.to_string()
             << ", golden byte-identical";
}

// 9 ------------------------------------------------------------------------

void open_cone(Outcome& o) {
    std::vector<std::string> fixtures;
    for (const auto& e : std::filesystem::directory_iterator(kSource + "/instances/cones"))
        if (e.path().extension() == ".json") fixtures.push_back(e.path().string());
    std::sort(fixtures.begin(), fixtures.end());
    std::size_t good = 0, adversarial = 0;
    for (const auto& f : fixtures) {
        std::ostringstream out, err;
        const int code = run({"opencone", "--instance", f}, out, err);
        const auto j = Json::parse(out.str());
        const bool is_adversarial = std::filesystem::path(f).filename().string().rfind("adversarial", 0) == 0;
        bool band_fails = false, all_hold = true;
        for (const auto& l : j["levels"]) {
            all_hold = all_hold && l["net_check"]["holds"] == true && l["band_check"]["holds"] == true;
            band_fails = band_fails || l["band_check"]["holds"] == false;
        }
        const std::string name = std::filesystem::path(f).stem().string();
        if (is_adversarial) {
            ++adversarial;
            o.require(code == kExitVerdictFailure && band_fails, name + ": adversarial net passed");
        } else {
            ++good;
            o.require(code == kExitPass && all_hold, name + ": covering check failed");
        }
    }
    o.require(good >= 3 && adversarial >= 1, "fixture corpus is too small");
    o.detail << good << " fixtures pass net and band checks, " << adversarial
             << " adversarial fixture fails the band check (slack " << kConeSlack << ")";
}

// 10 -----------------------------------------------------------------------

void omega_excisive(Outcome& o) {
    const auto c = load_instance(instance_path("free2-a"));
    o.require(c.excision_n.has_value(), "free2-a has no excision stage");
    const auto space = build_augmented(c.group(), c.peripherals(), c.truncation());
    const auto ex = filtration_excision_check(space, c.excision_n.value_or(1), {1, 2, 4});
    o.require(ex.finite(), "some R has no finite S");
    o.require(ex.monotone(), "S is not monotone in R");
    o.detail << "X_" << ex.n << " = X_" << ex.n + 1 << " ∪ H: ";
    for (const auto& r : ex.results)
        o.detail << "R=" << r.radius << " S=" << (r.minimal_s ? std::to_string(*r.minimal_s) : "none") << " ";
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"horoball construction fidelity", horoball_fidelity},
        {"hyperbolicity witnesses", hyperbolicity},
        {"cover decomposition identities", decomposition_identities},
        {"contiguity assertions", contiguity},
        {"Mayer-Vietoris middle-slot exactness", mv_exactness},
        {"Y tower vanishing", y_vanishing},
        {"Rips window decomposition", rips_window},
        {"half-line tower golden report", milnor},
        {"open cone net and band covering", open_cone},
        {"omega-excisive filtration", omega_excisive},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << criteria[i].first << ": "
                  << o.detail.str() << " (" << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    }
    std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria pass" << std::endl;
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
