#pragma once

#include "horonerve/group.hpp"
#include "horonerve/metric_graph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace horonerve {

/// Finite metric space with integer distances, used as a horoball base.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> distance;

    int size() const noexcept { return static_cast<int>(labels.size()); }

    /// Z ∩ [lo, hi] with |x - y|; point p has label lo + p.
    static FiniteMetricSpace integer_interval(int lo, int hi);
};

/// I ∩ (N ∪ {0}) for a closed interval I = [lo, hi]; hi empty means unbounded.
struct LevelInterval {
    int lo = 0;
    std::optional<int> hi;
};

/// H(P; I) cut at level `lmax`. Level-0 vertices are tagged Cayley, the
/// rest Horoball with coset 1; `point` is the base point index. Throws
/// InvalidArgumentError on an empty base or empty level range.
MetricGraph build_horoball(const FiniteMetricSpace& base, LevelInterval levels, int lmax);

/// The horizontal edge rule of a combinatorial horoball.
constexpr bool horoball_horizontal(std::int64_t d, int level) {
    return d > 0 && level < 62 && d <= (std::int64_t{1} << level);
}

struct AugmentedTruncation {
    int rg = 0;                 // Cayley ball radius
    int lmax = 0;               // deepest horoball level
    std::optional<int> mmax;    // attached horoballs; empty = every coset meeting the ball
};

struct AttachedHoroball {
    int coset = 0;              // global coset index i
    int peripheral = 0;         // r with P_(i) = P_r
    Element representative;
    std::vector<int> points;    // ball element ids in g_i P_(i), ascending
};

/// A truncated augmented space together with the data it was built from.
/// Vertex `point` fields are indices into `elements`; horoball vertices
/// carry the global coset index.
struct AugmentedSpace {
    GroupSpec spec = GroupSpec::free(1);
    PeripheralSpec periph;
    AugmentedTruncation truncation;
    bool level_vertex_space = false;
    std::vector<Element> elements;     // Cayley ball, breadth-first
    CosetTable cosets;
    std::vector<AttachedHoroball> horoballs;
    MetricGraph graph;
    std::vector<std::string> warnings;

    int element_count() const noexcept { return static_cast<int>(elements.size()); }
    /// d_S between ball elements.
    int word_distance(int p, int q) const;
    std::string element_label(int p) const;
    /// Position of coset index i among the attached horoballs, or -1.
    int horoball_position(std::int64_t coset) const;

    std::vector<int> word_distance_matrix;  // row-major, filled when small
};

AugmentedSpace build_augmented(const GroupSpec& spec, const PeripheralSpec& periph, AugmentedTruncation trunc);

/// Vertex space V(G, P, d_G) with d_G the word metric: level-0 edges join
/// elements at distance one, every coset meeting the ball gets levels
/// 1..lmax.
AugmentedSpace build_level_vertex_space(const GroupSpec& spec, const PeripheralSpec& periph, int rg, int lmax);

enum class SubspaceKind { XN, YN, ZN, Xn };

/// Vertex indices of X(N), Y(N), Z(N) (1 <= N <= lmax) or of the filtration
/// stage X_n (1 <= n <= attached + 1), which keeps the Cayley ball and the
/// attached horoballs from position n on. Throws InvalidArgumentError when
/// the parameter is out of range.
std::vector<int> subspace_vertices(const AugmentedSpace& space, SubspaceKind which, int param);
std::pair<MetricGraph, std::vector<int>> subspace(const AugmentedSpace& space, SubspaceKind which, int param);

/// Vertices of the attached horoball at `position` (levels >= 1), plus its
/// level-0 base when `with_base`.
std::vector<int> horoball_vertices(const AugmentedSpace& space, int position, bool with_base);

/// X_n = X_{n+1} ∪ H(g_n P_(n)) inside the graph of X_n, with the horoball
/// taken together with its level-0 base.
struct FiltrationExcision {
    int n = 0;
    std::size_t vertices = 0, a_vertices = 0, b_vertices = 0, shared = 0;
    std::vector<ExcisionResult> results;

    bool finite() const;
    /// S nondecreasing in R over the finite results.
    bool monotone() const;
};

/// Throws InvalidArgumentError unless 1 <= n <= number of attached horoballs.
FiltrationExcision filtration_excision_check(const AugmentedSpace& space, int n, const std::vector<int>& radii);

} // namespace horonerve
