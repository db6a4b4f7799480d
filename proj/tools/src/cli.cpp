#include "horonerve/tools/cli.hpp"

#include "horonerve/cover.hpp"
#include "horonerve/error.hpp"
#include "horonerve/hyperbolicity.hpp"
#include "horonerve/mv.hpp"
#include "horonerve/opencone.hpp"
#include "horonerve/rips.hpp"
#include "horonerve/tools/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

namespace horonerve::tools {

Json RunConfig::to_json() const {
    return Json{{"subcommand", subcommand},
                {"instance", instance.empty() ? Json(nullptr) : Json(instance)},
                {"truncation", {{"rg", rg}, {"lmax", lmax}, {"mmax", mmax ? Json(*mmax) : Json(nullptr)}}},
                {"schedule", schedule},
                {"dimcap", dimcap},
                {"seed", seed},
                {"format", format},
                {"stage", stage},
                {"family", family},
                {"samples", samples}};
}

namespace {

/// A report, its text in the requested format, and whether every verdict passed.
struct Artifact {
    std::string text;
    bool pass = true;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json header(const RunConfig& cfg) {
    return Json{{"schema_version", kSchemaVersion}, {"command", cfg.subcommand}, {"config", cfg.to_json()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (cfg.format == f) return;
    std::string list;
    for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
    throw UsageError(cfg.subcommand + " does not export --format " + cfg.format + " (supported: " + list + ")");
}

/// The instance file fixes the group; flags override its truncation and run settings.
struct Loaded {
    InstanceConfig instance;
    GroupSpec group = GroupSpec::free(1);
    PeripheralSpec periph;
};

Loaded load_group(RunConfig& cfg, const std::set<std::string>& given) {
    if (cfg.instance.empty()) throw UsageError(cfg.subcommand + " requires --instance");
    Loaded l;
    l.instance = load_instance(cfg.instance);
    const auto& ic = l.instance;
    if (!given.count("--rg")) cfg.rg = ic.rg;
    if (!given.count("--lmax")) cfg.lmax = ic.lmax;
    if (!given.count("--mmax")) cfg.mmax = ic.mmax;
    if (!given.count("--schedule")) cfg.schedule = ic.schedule.name();
    if (!given.count("--dimcap")) cfg.dimcap = ic.dimcap;
    if (!given.count("--seed")) cfg.seed = ic.seed;
    l.group = ic.group();
    l.periph = ic.peripherals();
    return l;
}

std::shared_ptr<const AugmentedSpace> build_space(const RunConfig& cfg, const Loaded& l) {
    return std::make_shared<const AugmentedSpace>(build_augmented(l.group, l.periph, {cfg.rg, cfg.lmax, cfg.mmax}));
}

Json instance_json(const Loaded& l) {
    Json atoms = Json::array();
    for (const int a : l.periph.atoms) atoms.push_back(a);
    return Json{{"name", l.instance.name}, {"group", l.group.describe()}, {"peripheral_atoms", atoms}};
}

Json space_json(const AugmentedSpace& s) {
    Json horoballs = Json::array();
    for (const auto& h : s.horoballs)
        horoballs.push_back({{"coset", h.coset},
                             {"peripheral", h.peripheral},
                             {"representative", format_element(s.spec, h.representative)},
                             {"base_points", h.points.size()}});
    return Json{{"elements", s.element_count()},
                {"vertices", s.graph.size()},
                {"edges", s.graph.edge_count()},
                {"cosets", s.cosets.entries.size()},
                {"horoballs", horoballs},
                {"warnings", s.warnings}};
}

Json witness_json(const std::optional<Simplex>& w) { return w ? Json(*w) : Json(nullptr); }

Json check_json(const CoverCheck& c) {
    Json j{{"holds", c.holds}, {"checked", c.checked}, {"worst", c.worst}};
    j["uncovered"] = c.uncovered ? Json{{"ray", c.uncovered->ray}, {"step", c.uncovered->step}} : Json(nullptr);
    return j;
}

// ---------------------------------------------------------------- subcommands

Artifact cmd_build_augmented(RunConfig& cfg, const std::set<std::string>& given) {
    require_format(cfg, {"json", "dot", "csv"});
    const auto l = load_group(cfg, given);
    const auto space = build_space(cfg, l);
    if (cfg.format == "dot") return {graph_dot(space->graph, l.instance.name.empty() ? "G" : l.instance.name), true};
    if (cfg.format == "csv") return {coset_table_csv(l.group, space->cosets), true};

    Json j = header(cfg);
    j["instance"] = instance_json(l);
    j["space"] = space_json(*space);
    Json cosets = Json::array();
    for (const auto& c : space->cosets.entries)
        cosets.push_back({{"index", c.index},
                          {"peripheral", c.peripheral},
                          {"representative", format_element(l.group, c.representative)}});
    j["cosets"] = cosets;
    bool pass = true;
    if (l.instance.excision_n) {
        const auto ex = filtration_excision_check(*space, *l.instance.excision_n, {1, 2, 4});
        Json results = Json::array();
        for (const auto& r : ex.results)
            results.push_back({{"radius", r.radius}, {"minimal_s", r.minimal_s ? Json(*r.minimal_s) : Json(nullptr)}});
        j["excision"] = {{"n", ex.n},
                         {"vertices", ex.vertices},
                         {"a_vertices", ex.a_vertices},
                         {"b_vertices", ex.b_vertices},
                         {"shared", ex.shared},
                         {"results", results},
                         {"finite", ex.finite()},
                         {"monotone", ex.monotone()}};
        pass = ex.finite() && ex.monotone();
    }
    j["graph"] = graph_json(space->graph);
    j["pass"] = pass;
    return {dump(j), pass};
}

Artifact cmd_delta(RunConfig& cfg, const std::set<std::string>& given) {
    require_format(cfg, {"json"});
    const auto l = load_group(cfg, given);
    const auto space = build_space(cfg, l);
    const auto mode = cfg.samples > 0 ? DeltaMode::sampled(cfg.samples, cfg.seed) : DeltaMode::exhaustive();
    const auto est = four_point_delta(space->graph, mode);
    Json j = header(cfg);
    j["instance"] = instance_json(l);
    j["delta"] = static_cast<double>(est.twice_delta) / 2.0;
    j["twice_delta"] = est.twice_delta;
    j["mode"] = mode.kind == DeltaMode::Kind::Exhaustive ? "exhaustive" : "sampled";
    j["quadruples_checked"] = est.quadruples_checked;
    j["truncation"] = {{"rg", cfg.rg},
                       {"lmax", cfg.lmax},
                       {"mmax", cfg.mmax ? Json(*cfg.mmax) : Json(nullptr)},
                       {"vertices", space->graph.size()}};
    j["blocks"] = est.blocks;
    j["largest_block"] = est.largest_block;
    j["witness"] = est.witness;
    j["pass"] = true;
    return {dump(j), true};
}

/// The cover at scale j_n and the chosen family of its decomposition.
struct StageFamily {
    std::shared_ptr<const Cover> cover;
    Decomposition decomposition;
    std::vector<int> columns;
};

StageFamily stage_family(const RunConfig& cfg, const std::shared_ptr<const AugmentedSpace>& space) {
    const auto schedule = Schedule::parse(cfg.schedule);
    StageFamily s;
    s.cover = build_cover(space, schedule.j(cfg.stage));
    s.decomposition = decompose(*s.cover, cfg.stage, schedule);
    const auto& d = s.decomposition;
    s.columns = cfg.family == "u" ? d.u : cfg.family == "x" ? d.x : cfg.family == "y" ? d.y : d.z;
    return s;
}

Json stage_json(const Decomposition& d) {
    return Json{{"n", d.n}, {"schedule", d.schedule.name()}, {"j", d.j}, {"N", d.N}};
}

Artifact cmd_nerve(RunConfig& cfg, const std::set<std::string>& given) {
    require_format(cfg, {"json", "dot", "csv"});
    const auto l = load_group(cfg, given);
    const auto space = build_space(cfg, l);
    const auto s = stage_family(cfg, space);
    const auto core = nerve_core(s.cover, s.columns, cfg.dimcap);
    if (cfg.format == "dot") return {complex_dot(*core.complex, cfg.family), true};
    if (cfg.format == "csv") return {vertex_map_csv(core.retraction), true};
    Json j = header(cfg);
    j["instance"] = instance_json(l);
    j["stage"] = stage_json(s.decomposition);
    j["family"] = cfg.family;
    j["columns"] = s.columns.size();
    j["core_vertices"] = core.kept;
    j["core_points"] = core.points.size();
    j["complex"] = face_list_json(*core.complex);
    Json retraction = Json::array();
    for (const auto& [from, to] : core.retraction) retraction.push_back(Json::array({from, to}));
    j["retraction"] = retraction;
    j["pass"] = true;
    return {dump(j), true};
}

Artifact cmd_homology(RunConfig& cfg, const std::set<std::string>& given) {
    require_format(cfg, {"json", "csv"});
    const auto l = load_group(cfg, given);
    const auto space = build_space(cfg, l);
    const auto s = stage_family(cfg, space);
    const auto core = nerve_core(s.cover, s.columns, cfg.dimcap);
    const SimplicialHomology h(core.complex), hr(core.complex, true);
    const int top = std::max(0, std::min(cfg.dimcap, core.complex->dimension()));
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "degree,rank,torsion,reduced_rank,trusted\n";
        for (int d = 0; d <= top; ++d) {
            std::string torsion;
            for (const auto& t : h.group(d).torsion) torsion += (torsion.empty() ? "" : " ") + t.str();
            out << d << ',' << h.group(d).rank << ',' << torsion << ',' << hr.group(d).rank << ','
                << (h.trusted(d) ? "true" : "false") << '\n';
        }
        return {out.str(), true};
    }
    Json j = header(cfg);
    j["instance"] = instance_json(l);
    j["stage"] = stage_json(s.decomposition);
    j["family"] = cfg.family;
    j["core_vertices"] = core.kept.size();
    Json degrees = Json::array();
    for (int d = 0; d <= top; ++d)
        degrees.push_back({{"degree", d},
                           {"group", to_json(h.group(d))},
                           {"reduced", to_json(hr.group(d))},
                           {"trusted", h.trusted(d)}});
    j["homology"] = degrees;
    j["pass"] = true;
    return {dump(j), true};
}

Artifact cmd_mv_verify(RunConfig& cfg, const std::set<std::string>& given) {
    require_format(cfg, {"json"});
    const auto l = load_group(cfg, given);
    const auto space = build_space(cfg, l);
    const auto schedule = Schedule::parse(cfg.schedule);
    const auto stage = assemble_mv(space, cfg.stage, schedule, cfg.dimcap);
    const auto& d = stage.decomposition;
    const auto& t = stage.triple;
    const auto exact = check_mv_exactness(t);
    const auto cluster = cluster_check(stage);

    Json j = header(cfg);
    j["instance"] = instance_json(l);
    j["stage"] = stage_json(d);
    j["window"] = {{"j", d.j},
                   {"radius", stage.window.radius},
                   {"vertices", stage.window.vertices},
                   {"boundary", stage.window.boundary},
                   {"interior", stage.window.interior.size()},
                   {"nonempty", !stage.window.interior.empty()}};
    j["decomposition"] = {{"u", d.u.size()},
                          {"x", d.x.size()},
                          {"y", d.y.size()},
                          {"z", d.z.size()},
                          {"z_blocks", d.z_blocks.size()},
                          {"union_holds", d.union_holds},
                          {"intersection_holds", d.intersection_holds},
                          {"blocks_partition", d.blocks_partition}};

    Json groups = Json::array();
    for (int p = 0; p <= t.top_degree; ++p)
        groups.push_back({{"degree", p},
                          {"z", to_json(t.hz->group(p))},
                          {"x", to_json(t.hx->group(p))},
                          {"y", to_json(t.hy->group(p))},
                          {"u", to_json(t.hu->group(p))},
                          {"trusted", static_cast<bool>(t.trusted[p])},
                          {"composites_agree", static_cast<bool>(t.composites_agree[p])},
                          {"phi", to_json(t.phi[p].matrix)},
                          {"psi", to_json(t.psi[p].matrix)},
                          {"delta", t.delta[p] ? to_json(t.delta[p]->matrix) : Json(nullptr)}});
    j["groups"] = groups;
    Json slots = Json::array();
    for (const auto& s : exact.slots)
        slots.push_back({{"slot", s.slot}, {"degree", s.degree}, {"verdict", to_string(s.verdict)}, {"detail", s.detail}});
    j["slots"] = slots;

    Json blocks = Json::array();
    for (const auto& b : cluster.blocks) {
        Json g = Json::array();
        for (const auto& x : b.groups) g.push_back(to_json(x));
        blocks.push_back({{"coset", b.coset}, {"columns", b.labels.size()}, {"groups", g}});
    }
    std::vector<bool> gm(cluster.groups_match.begin(), cluster.groups_match.end());
    std::vector<bool> si(cluster.sum_map_iso.begin(), cluster.sum_map_iso.end());
    j["cluster"] = {{"blocks", blocks},
                    {"block_diagonal", cluster.block_diagonal},
                    {"groups_match", gm},
                    {"sum_map_iso", si},
                    {"holds", cluster.holds()}};

    // α_{n+1} ∘ β_n ~ γ_n needs the cover at the next scale.
    bool contiguity_ok = true;
    Json contiguity;
    try {
        const auto next = build_cover(space, schedule.j(cfg.stage + 1));
        const auto beta = connecting_map(MapKind::Beta, stage.cover, next, cfg.stage, schedule);
        const auto alpha = connecting_map(MapKind::Alpha, next, next, cfg.stage + 1, schedule);
        const auto gamma = connecting_map(MapKind::Gamma, stage.cover, next, cfg.stage, schedule);
        const auto r = contiguous(compose(alpha, beta), gamma);
        contiguity = {{"status", "checked"}, {"contiguous", r.contiguous}, {"witness", witness_json(r.witness)}};
        contiguity_ok = r.contiguous;
    } catch (const EmptyWindowError& e) {
        contiguity = {{"status", "unavailable"}, {"reason", e.what()}};
    }
    j["alpha_beta_gamma"] = contiguity;

    bool composites = true;
    for (const bool b : t.composites_agree) composites = composites && b;
    const bool pass = exact.all_certified_exact() && cluster.holds() && d.identities_hold() && contiguity_ok && composites;
    j["pass"] = pass;
    return {dump(j), pass};
}

Artifact cmd_y_vanish(RunConfig& cfg, const std::set<std::string>& given) {
    require_format(cfg, {"json"});
    const auto l = load_group(cfg, given);
    const auto space = build_space(cfg, l);
    const auto r = y_vanishing_check(space, cfg.stage, Schedule::parse(cfg.schedule), cfg.dimcap);
    Json j = header(cfg);
    j["instance"] = instance_json(l);
    j["n"] = r.n;
    j["vacuous"] = r.vacuous;
    Json chain = Json::array();
    for (std::size_t s = 0; s < r.chain.size(); ++s)
        chain.push_back({{"s", s}, {"contiguous", r.chain[s].contiguous}, {"witness", witness_json(r.chain[s].witness)}});
    j["q_chain"] = chain;
    Json clusters = Json::array();
    for (const auto& c : r.clusters) {
        Json degrees = Json::array();
        for (const auto& d : c.degrees)
            degrees.push_back({{"degree", d.degree},
                               {"source", to_json(d.source)},
                               {"target", to_json(d.target)},
                               {"matrix", to_json(d.matrix)},
                               {"trusted", d.trusted},
                               {"zero", d.zero}});
        clusters.push_back({{"coset", c.coset},
                            {"source_columns", c.source_columns},
                            {"target_columns", c.target_columns},
                            {"coned", c.coned},
                            {"degrees", degrees}});
    }
    j["clusters"] = clusters;
    j["pass"] = r.holds();
    return {dump(j), r.holds()};
}

Artifact cmd_rips_check(RunConfig& cfg, const std::set<std::string>& given) {
    require_format(cfg, {"json"});
    const auto l = load_group(cfg, given);
    const int rg = l.instance.rips_rg.value_or(std::min(cfg.rg, 2));
    const int lmax = l.instance.rips_lmax.value_or(std::min(cfg.lmax, 4));
    const int dmax = l.instance.rips_dmax.value_or(3);
    const auto space = build_level_vertex_space(l.group, l.periph, rg, lmax);

    Json j = header(cfg);
    j["instance"] = instance_json(l);
    j["space"] = {{"rg", rg}, {"lmax", lmax}, {"vertices", space.graph.size()}, {"edges", space.graph.edge_count()}};
    Json triples = Json::array(), proxies = Json::array();
    std::size_t hypothesized = 0, hypothesized_pass = 0, outside_fail = 0;
    for (int D = 1; D <= dmax; ++D) {
        const auto complex = rips(space.graph, D, cfg.dimcap);
        const auto proxy = rips_contractibility_proxy(space.graph, D, cfg.dimcap);
        Json reduced = Json::array();
        for (const auto& g : proxy.reduced) reduced.push_back(to_json(g));
        proxies.push_back({{"D", D},
                           {"faces", complex.face_count()},
                           {"core_vertices", proxy.vertices},
                           {"top_degree", proxy.top_degree},
                           {"reduced", reduced},
                           {"proxy_contractible", proxy.proxy_contractible}});
        for (int r = 1; r <= lmax; ++r)
            for (int R = r; R <= lmax; ++R) {
                const auto rep = window_decomposition_check(space.graph, D, {r, R}, cfg.dimcap);
                if (rep.hypothesis) {
                    ++hypothesized;
                    if (rep.holds()) ++hypothesized_pass;
                } else if (!rep.holds()) {
                    ++outside_fail;
                }
                triples.push_back({{"r", r},
                                   {"R", R},
                                   {"D", D},
                                   {"hypothesis", rep.hypothesis},
                                   {"union_holds", rep.union_holds},
                                   {"intersection_holds", rep.intersection_holds},
                                   {"union_witness", witness_json(rep.union_witness)},
                                   {"intersection_witness", witness_json(rep.intersection_witness)}});
            }
    }
    j["contractibility_proxy"] = proxies;
    j["triples"] = triples;
    j["summary"] = {{"triples", triples.size()},
                    {"hypothesized", hypothesized},
                    {"hypothesized_pass", hypothesized_pass},
                    {"failures_outside_hypothesis", outside_fail}};
    const bool pass = hypothesized == hypothesized_pass;
    j["pass"] = pass;
    return {dump(j), pass};
}

std::vector<std::vector<double>> matrix_field(const Json& fixture, const char* key) {
    std::vector<std::vector<double>> out;
    for (const auto& row : fixture.at(key)) out.push_back(row.get<std::vector<double>>());
    return out;
}

Artifact cmd_opencone(RunConfig& cfg, const std::set<std::string>&) {
    require_format(cfg, {"json"});
    if (cfg.instance.empty()) throw UsageError("opencone requires --instance with a cone fixture");
    std::ifstream in(cfg.instance);
    if (!in) throw ConfigError("cannot open cone fixture '" + cfg.instance + "'");
    Json fixture;
    try {
        fixture = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigError(cfg.instance + ": " + e.what());
    }
    Json j = header(cfg);
    j["fixture"] = fixture.value("name", "");
    bool pass = true;
    try {
        const int levels = fixture.at("levels").get<int>();
        const int grid = fixture.value("grid", 4);
        const int max_scale = fixture.value("max_scale", 3);
        std::optional<ConedSpace> cone;
        if (fixture.contains("base")) {
            cone.emplace(matrix_field(fixture, "base"), levels, grid);
        } else {
            cone.emplace(embed_and_cone(matrix_field(fixture, "distances"), fixture.at("dimension").get<int>(),
                                        levels, grid, fixture.value("max_distortion", 4.0)));
        }
        j["cone"] = {{"rays", cone->rays()},
                     {"dimension", cone->dimension()},
                     {"levels", cone->levels()},
                     {"grid", cone->subdivisions()},
                     {"points", cone->points().size()},
                     {"distortion", cone->distortion()}};
        const Json overrides = fixture.value("nets", Json::object());
        std::vector<LevelNet> nets;
        Json level_reports = Json::array();
        for (int n = 1; n <= levels; ++n) {
            LevelNet net = build_net(*cone, n);
            const auto key = std::to_string(n);
            const bool overridden = overrides.contains(key);
            if (overridden) net.rays = overrides.at(key).get<std::vector<int>>();
            const auto nc = net_cover_check(*cone, net);
            const auto bc = band_cover_check(*cone, net);
            pass = pass && nc.holds && bc.holds;
            level_reports.push_back({{"level", n},
                                     {"centers", net.rays},
                                     {"overridden", overridden},
                                     {"net_check", check_json(nc)},
                                     {"band_check", check_json(bc)}});
            nets.push_back(std::move(net));
        }
        j["levels"] = level_reports;
        const auto tower = cone_cover_tower(*cone, nets, max_scale, cfg.dimcap);
        Json stages = Json::array();
        for (const auto& s : tower.stages) {
            Json h = Json::array();
            for (const auto& g : s.homology) h.push_back(to_json(g));
            stages.push_back({{"i", s.i},
                              {"radius", s.radius},
                              {"sets", s.sets},
                              {"full_simplex", s.full_simplex},
                              {"pen_inclusion", s.pen_inclusion},
                              {"core_vertices", s.core_vertices},
                              {"homology", h}});
            pass = pass && s.pen_inclusion;
        }
        Json limits = Json::array();
        for (std::size_t d = 0; d < tower.limits.size(); ++d) {
            const auto& lim = tower.limits[d];
            limits.push_back({{"degree", d},
                              {"limit", to_json(lim.limit)},
                              {"stabilized_at", lim.stabilized_at ? Json(*lim.stabilized_at) : Json(nullptr)}});
        }
        j["tower"] = {{"stages", stages}, {"limits", limits}};
    } catch (const EmbeddingError& e) {
        j["error"] = {{"kind", e.kind()}, {"message", e.what()}, {"distortion", e.distortion()}};
        pass = false;
    } catch (const Json::exception& e) {
        throw ConfigError(cfg.instance + ": " + e.what());
    }
    j["pass"] = pass;
    return {dump(j), pass};
}

Artifact cmd_milnor_demo(RunConfig& cfg, const std::set<std::string>&) {
    require_format(cfg, {"json"});
    const auto r = milnor_counterexample_demo();
    Json j = header(cfg);
    Json stages = Json::array();
    for (const auto& s : r.stages)
        stages.push_back({{"n", s.n},
                          {"points", s.points.size()},
                          {"nerve_vertices", s.nerve_vertices},
                          {"nerve_edges", s.nerve_edges},
                          {"h0", to_json(s.h0)}});
    j["stages"] = stages;
    Json maps = Json::array();
    for (const auto& m : r.maps) maps.push_back(to_json(m));
    j["maps"] = maps;
    j["maps_identity"] = r.maps_identity;
    j["inverse_limit"] = to_json(r.inverse_limit);
    j["lim1"] = {{"verdict", to_string(r.lim1.verdict)}, {"detail", r.lim1.detail}};
    j["intersection_h0"] = to_json(r.intersection_h0);
    j["naive_sequence_exact"] = r.naive_sequence_exact;
    const bool pass = r.maps_identity && r.lim1.verdict == Lim1Verdict::Zero;
    j["pass"] = pass;
    return {dump(j), pass};
}

using Command = std::function<Artifact(RunConfig&, const std::set<std::string>&)>;

struct CommandInfo {
    const char* name;
    const char* help;
    Command fn;
    bool staged;  // takes --stage
    bool family;  // takes --family
};

const std::vector<CommandInfo>& commands() {
    static const std::vector<CommandInfo> list{
        {"build-augmented", "Build the truncated augmented space; export graph (json/dot) or coset table (csv)",
         cmd_build_augmented, false, false},
        {"delta", "Four-point hyperbolicity constant of the truncated space", cmd_delta, false, false},
        {"nerve", "Strong-collapse core of a cover family nerve at stage n", cmd_nerve, true, true},
        {"homology", "Homology of a cover family nerve at stage n", cmd_homology, true, true},
        {"mv-verify", "Mayer-Vietoris exactness, cluster splitting and contiguity at stage n", cmd_mv_verify, true,
         false},
        {"y-vanish", "Vanishing of Y_n -> Y_{n+1} on reduced homology", cmd_y_vanish, true, false},
        {"rips-check", "Rips window decompositions on the level-graded vertex space", cmd_rips_check, false, false},
        {"opencone", "Net and band covering checks and the nerve tower of a cone fixture", cmd_opencone, false,
         false},
        {"milnor-demo", "Half-line tower whose inverse limit differs from the intersection", cmd_milnor_demo, false,
         false},
    };
    return list;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nerve towers, Mayer-Vietoris checks and hyperbolicity on truncated augmented spaces", "horonerve"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string out_path;
    int mmax = -1;

    std::vector<std::pair<CLI::App*, const CommandInfo*>> subs;
    for (const auto& c : commands()) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--instance", cfg.instance, "Instance file (key = value), or a JSON cone fixture");
        sub->add_option("--rg", cfg.rg, "Cayley ball radius")->check(CLI::NonNegativeNumber);
        sub->add_option("--lmax", cfg.lmax, "Deepest horoball level")->check(CLI::Range(0, 60));
        sub->add_option("--mmax", mmax, "Number of attached horoballs")->check(CLI::NonNegativeNumber);
        sub->add_option("--schedule", cfg.schedule, "Scale schedule")->check(CLI::IsMember({"paper", "linear"}));
        sub->add_option("--dimcap", cfg.dimcap, "Nerve dimension cap")->check(CLI::Range(1, 16));
        sub->add_option("--seed", cfg.seed, "Seed for sampled computations");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot", "csv"}));
        sub->add_option("--out", out_path, "Write the artifact here instead of standard output");
        if (c.staged) sub->add_option("--stage", cfg.stage, "Stage n")->check(CLI::NonNegativeNumber);
        if (c.family)
            sub->add_option("--family", cfg.family, "Cover family")->check(CLI::IsMember({"u", "x", "y", "z"}));
        if (std::string(c.name) == "delta")
            sub->add_option("--samples", cfg.samples, "Sample this many quadruples instead of an exhaustive scan");
        subs.emplace_back(sub, &c);
    }

    std::vector<std::string> argv_store{"horonerve"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    const CommandInfo* chosen = nullptr;
    CLI::App* chosen_app = nullptr;
    for (const auto& [sub, info] : subs)
        if (sub->parsed()) {
            chosen = info;
            chosen_app = sub;
        }
    cfg.subcommand = chosen->name;
    std::set<std::string> given;
    for (const auto* opt : chosen_app->get_options())
        if (opt->count() > 0) given.insert(opt->get_name());
    if (mmax >= 0) cfg.mmax = mmax;

    Artifact artifact;
    try {
        artifact = chosen->fn(cfg, given);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n\n" << chosen_app->help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error [" << e.kind() << "]: " << e.what() << '\n';
        return kExitUsage;
    }

    if (out_path.empty()) {
        out << artifact.text;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
        file << artifact.text;
    }
    if (!artifact.pass) err << cfg.subcommand << ": verdict failure\n";
    return artifact.pass ? kExitPass : kExitVerdictFailure;
}

} // namespace horonerve::tools
