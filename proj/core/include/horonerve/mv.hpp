#pragma once
// Mayer-Vietoris bookkeeping for nerves of set systems and column covers:
// assembly of the triple Z -> X + Y -> U, stage-wise exactness, the cluster
// splitting of Z, the vanishing of the Y tower, commutative ladders, and
// the half-line tower whose inverse limit is not the homology of the
// intersection.
#include "horonerve/abelian.hpp"
#include "horonerve/cover.hpp"
#include "horonerve/simplicial.hpp"
#include "horonerve/tower.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace horonerve {

/// Coordinates of A + B laid out as (torsion of A, torsion of B, free of A,
/// free of B). The torsion list is a concatenation, not invariant factors.
AbelianGroup coordinate_sum(const AbelianGroup& a, const AbelianGroup& b);
/// Block matrices in coordinate_sum layout.
IntMatrix sum_column(const AbelianGroup& a, const AbelianGroup& b, const IntMatrix& top, const IntMatrix& bottom);
IntMatrix sum_row(const AbelianGroup& a, const AbelianGroup& b, const IntMatrix& left, const IntMatrix& right);
IntMatrix sum_diagonal(const AbelianGroup& a, const AbelianGroup& b, const AbelianGroup& c, const AbelianGroup& d,
                       const IntMatrix& f, const IntMatrix& g);

/// The nerve triple of a set system split into two subfamilies X and Y with
/// N(U) = N(X) ∪ N(Y) and N(X) ∩ N(Y) = N(Z), Z = X ∩ Y. Every nerve is
/// replaced by its strong-collapse core; maps between cores are
/// retraction ∘ inclusion. Homology is unreduced.
///
/// phi[p] = (i_*, -j_*) : H_p(Z) -> H_p(X) + H_p(Y) and
/// psi[p] = k_* + l_* : H_p(X) + H_p(Y) -> H_p(U). delta[p] : H_p(U) ->
/// H_{p-1}(Z) is the snake map, built for 1 <= p when both ends are trusted.
struct MVTriple {
    int dim_cap = 0;
    std::shared_ptr<const SetSystem> system;  // the whole family U
    std::vector<int> x_labels, y_labels, z_labels;
    SetCore u, x, y, z;
    std::shared_ptr<const SimplicialHomology> hu, hx, hy, hz;
    std::optional<SimplicialMap> i, j, k, l;  // Z->X, Z->Y, X->U, Y->U
    int top_degree = 0;                       // dim_cap, or dim_cap - 1 when a core is truncated
    std::vector<bool> trusted;                // all four groups uncut in degree p
    std::vector<AbelianGroup> sum;            // H_p(X) + H_p(Y)
    std::vector<Homomorphism> phi, psi;
    std::vector<std::optional<Homomorphism>> delta;
    std::vector<bool> composites_agree;       // k_* i_* = l_* j_* in degree p
};

/// Throws DecompositionError unless X ∪ Y covers the labels of `system` and
/// every point star lies in X or in Y.
MVTriple assemble_mv(std::shared_ptr<const SetSystem> system, const std::vector<int>& x_labels,
                     const std::vector<int>& y_labels, int dim_cap);

/// A cover stage: the triple for U_n, X_n, Y_n, Z_n at scale j_n and depth N_n.
struct MVStage {
    int n = 0;
    Schedule schedule;
    std::shared_ptr<const Cover> cover;
    Decomposition decomposition;
    InteriorWindow window;
    MVTriple triple;
};

/// Throws EmptyWindowError when horoballs are attached but N_n exceeds the
/// truncation depth, so that Y_n and Z_n are empty for want of levels.
MVStage assemble_mv(std::shared_ptr<const AugmentedSpace> space, int n, Schedule schedule, int dim_cap);

enum class SlotVerdict { Exact, NotExact, CapLimited };
std::string to_string(SlotVerdict v);

/// Slot names: "z" at H_p(Z), "xy" at H_p(X) + H_p(Y), "u" at H_p(U).
struct SlotReport {
    std::string slot;
    int degree = 0;
    SlotVerdict verdict = SlotVerdict::CapLimited;
    std::string detail;
};

struct MVExactnessReport {
    std::vector<SlotReport> slots;
    /// Whether every slot that is not cap-limited is exact.
    bool all_certified_exact() const;
    const SlotReport& at(const std::string& slot, int degree) const;
};

MVExactnessReport check_mv_exactness(const MVTriple& t);

/// H_p(Z) against the direct sum of H_p(Z^i) over the blocks of Z.
struct ClusterBlock {
    std::int64_t coset = 0;
    std::vector<int> labels;
    std::vector<AbelianGroup> groups;
};

struct ClusterReport {
    std::vector<ClusterBlock> blocks;
    bool block_diagonal = false;        // no point star meets two blocks
    std::vector<bool> groups_match;     // H_p(Z) ≅ sum of H_p(Z^i)
    std::vector<bool> sum_map_iso;      // the map from the sum induced by inclusions is an isomorphism
    bool holds() const;
};

/// Throws DecompositionError when the blocks overlap or miss part of Z.
ClusterReport cluster_check(const MVTriple& t, const std::vector<std::pair<std::int64_t, std::vector<int>>>& blocks);
ClusterReport cluster_check(const MVStage& s);

/// q_{n,0} : Y_n -> Y_{n+1} on reduced homology, horoball by horoball.
struct YClusterDegree {
    int degree = 0;
    AbelianGroup source, target;
    IntMatrix matrix;
    bool trusted = false;
    bool zero = false;
};

struct YCluster {
    std::int64_t coset = 0;
    std::size_t source_columns = 0, target_columns = 0;
    bool coned = false;  // the image of q_{n,lmax} has a common vertex
    std::vector<YClusterDegree> degrees;
};

struct YVanishingReport {
    int n = 0;
    bool vacuous = false;  // Y_n is empty
    std::vector<ContiguityResult> chain;  // q_{n,s} ~ q_{n,s+1}, s = 0..lmax-1
    std::vector<YCluster> clusters;
    bool holds() const;
};

/// Throws EmptyWindowError when Y_n is nonempty but Y_{n+1} is empty.
YVanishingReport y_vanishing_check(std::shared_ptr<const AugmentedSpace> space, int n, Schedule schedule,
                                   int dim_cap = 3);

/// A row A_0 -> A_1 -> ... -> A_m; maps[i] : A_i -> A_{i+1}.
struct LadderRow {
    std::vector<AbelianGroup> groups;
    std::vector<IntMatrix> maps;
};

/// verticals[i] : top.groups[i] -> bottom.groups[i].
struct Ladder {
    LadderRow top, bottom;
    std::vector<IntMatrix> verticals;
};

struct LadderReport {
    std::vector<bool> squares_commute;     // square i spans columns i, i+1
    std::optional<std::size_t> failing_square;
    std::vector<bool> top_exact, bottom_exact;  // at interior positions 1..m-1
    std::vector<bool> vertical_iso;
    bool five_lemma_applicable = false;    // five terms, exact rows, commuting squares, outer four iso
    bool middle_iso = false;
    bool five_lemma_consistent = false;    // not applicable, or the middle vertical is iso
    bool holds() const;
};

/// Throws ShapeError naming the square or vertical whose shapes do not fit.
LadderReport ladder_check(const Ladder& l);

/// The five-term window H_p(Z) -> H_p(X)+H_p(Y) -> H_p(U) -> H_{p-1}(Z) ->
/// H_{p-1}(X)+H_{p-1}(Y). Throws InvalidArgumentError unless delta[p] exists.
LadderRow mv_row(const MVTriple& t, int p);

/// Ladder from the row of `a` to the row of `b` whose verticals are induced
/// by `label_map` on each of Z, X, Y, U (composed with b's retractions).
Ladder mv_ladder(const MVTriple& a, const MVTriple& b, const std::map<int, int>& label_map, int p);

/// Y_n = Z ∩ [-10, 10] minus [-n, n] for n = 1..5 with unit-ball covers.
struct MilnorStage {
    int n = 0;
    std::vector<int> points;
    std::size_t nerve_vertices = 0, nerve_edges = 0;
    AbelianGroup h0;
};

struct MilnorReport {
    std::vector<MilnorStage> stages;
    std::vector<IntMatrix> maps;            // H_0(Y_{n+1}) -> H_0(Y_n)
    bool maps_identity = false;
    AbelianGroup inverse_limit;
    Lim1Report lim1;
    AbelianGroup intersection_h0;           // H_0 of the empty intersection
    bool naive_sequence_exact = false;      // lim H_0(Y_n) ≅ H_0(∩ Y_n)
};

MilnorReport milnor_counterexample_demo();

} // namespace horonerve
