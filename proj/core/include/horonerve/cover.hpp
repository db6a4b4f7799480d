#pragma once

// Column covers of a truncated augmented space, their decomposition along a
// horoball depth, nerves, and the simplicial maps between nerves at
// consecutive scales.

#include "horonerve/horoball.hpp"
#include "horonerve/simplicial.hpp"

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace horonerve {

enum class ScheduleKind { Paper, Linear };

/// Scale schedule: paper j_n = 3^n, N_n = 3^n + 1; linear j_n = n + 1,
/// N_n = n + 2.
struct Schedule {
    ScheduleKind kind = ScheduleKind::Paper;

    int j(int n) const;
    int N(int n) const;
    std::string name() const;
    /// "paper" or "linear"; throws ConfigError otherwise.
    static Schedule parse(const std::string& text);
};

/// B((x,t), j) for the vertex (x,t) with index `center`. Horoball centers
/// take {(y,l) in the same horoball : d_S(x,y) <= 2^(t+j), t <= l <= t+j};
/// Cayley centers take every vertex (y,l) with d_S(x,y) <= 2^j and l <= j.
/// Both are clipped to the truncation.
struct Column {
    int center = 0;
    std::vector<int> members;  // sorted vertex indices
};

/// U(j): one column per vertex of the truncated space. Column ids are the
/// center vertex indices.
class Cover {
public:
    Cover(std::shared_ptr<const AugmentedSpace> space, int scale);

    const AugmentedSpace& space() const noexcept { return *space_; }
    const std::shared_ptr<const AugmentedSpace>& space_ptr() const noexcept { return space_; }
    int scale() const noexcept { return scale_; }
    int size() const noexcept { return static_cast<int>(bits_.size()); }

    /// Materializes the member list of a column.
    Column column(int id) const;
    const boost::dynamic_bitset<>& column_bits(int id) const { return bits_.at(id); }
    bool contains(int column, int vertex) const { return bits_.at(column).test(vertex); }
    /// Columns containing a vertex, ascending.
    const std::vector<int>& star(int vertex) const { return stars_.at(vertex); }

    /// Columns meeting a vertex set.
    std::vector<int> meeting(const std::vector<int>& vertices) const;

private:
    std::shared_ptr<const AugmentedSpace> space_;
    int scale_;
    std::vector<boost::dynamic_bitset<>> bits_;
    std::vector<std::vector<int>> stars_;
};

std::shared_ptr<const Cover> build_cover(std::shared_ptr<const AugmentedSpace> space, int j);

/// X(N): Cayley vertices and horoball levels <= N; Y(N): horoball levels
/// >= N; Z(N): horoball level N. N may exceed the truncation depth.
std::vector<int> depth_x(const AugmentedSpace& space, int N);
std::vector<int> depth_y(const AugmentedSpace& space, int N);
std::vector<int> depth_z(const AugmentedSpace& space, int N);

struct Decomposition {
    int n = 0;
    Schedule schedule;
    int j = 0;
    int N = 0;
    std::vector<int> u, x, y, z;                         // column ids, ascending
    std::vector<std::pair<std::int64_t, std::vector<int>>> z_blocks;  // coset index -> Z^i
    bool union_holds = false;         // U = X ∪ Y
    bool intersection_holds = false;  // X ∩ Y = Z
    bool blocks_partition = false;    // Z = disjoint union of Z^i
    bool identities_hold() const { return union_holds && intersection_holds && blocks_partition; }
};

/// Throws ScheduleError when the cover's scale is not j_n.
Decomposition decompose(const Cover& cover, int n, Schedule schedule);

/// A finite set system: sets[i] is a subset of {0, ..., n-1}; labels[i] is
/// the nerve vertex of set i.
struct SetSystem {
    std::vector<boost::dynamic_bitset<>> sets;
    std::vector<int> labels;
};

/// Nerve of a set system up to `dim_cap`; facets are the maximal point stars.
std::shared_ptr<const SimplicialComplex> nerve_of_sets(const SetSystem& system, int dim_cap);

/// Strong-collapse core of the nerve of a set system. Points whose star lies
/// in another point's star, and sets whose trace on the remaining points lies
/// in another set's trace, are removed one at a time until nothing changes.
/// The nerve of what remains is a strong deformation retract of the full
/// nerve, and `retraction` (label -> kept label) is simplicial with
/// retraction ∘ inclusion = id.
struct SetCore {
    std::vector<int> kept;          // labels, ascending
    std::vector<int> points;        // surviving points, ascending
    std::map<int, int> retraction;
    std::shared_ptr<const SimplicialComplex> complex;
};

SetCore strong_collapse_core(const SetSystem& system, int dim_cap);

/// Nerve of a subfamily with faces up to `dim_cap`. Vertex labels are column
/// ids. Throws ResourceLimitError past the face budget.
std::shared_ptr<const SimplicialComplex> nerve(const Cover& cover, const std::vector<int>& family, int dim_cap);

/// Whether the columns have a common vertex.
bool columns_intersect(const Cover& cover, const std::vector<int>& columns);

/// Strong-collapse core of the nerve of a subfamily of columns.
struct NerveCore {
    std::shared_ptr<const Cover> cover;
    std::vector<int> family;           // ascending
    std::vector<int> kept;             // ascending
    std::vector<int> points;           // surviving points, ascending
    std::map<int, int> retraction;     // family column -> kept column
    std::shared_ptr<const SimplicialComplex> complex;
};

NerveCore nerve_core(std::shared_ptr<const Cover> cover, const std::vector<int>& family, int dim_cap);

/// Vertex map between two nerves, given on column ids.
struct FamilyMap {
    std::string name;
    std::shared_ptr<const Cover> source, target;
    std::vector<int> source_family, target_family;
    std::map<int, int> image;
};

enum class MapKind { Alpha, Beta, Gamma, Refine, Q };

std::string to_string(MapKind kind);

/// U(N, j): columns of the cover meeting X(N).
std::vector<int> family_meeting_x(const Cover& cover, int N);
/// Y_n at the cover's scale: columns meeting Y(N).
std::vector<int> family_meeting_y(const Cover& cover, int N);

/// α_n : U(1, j_n) -> U(N_n, j_n), inclusion.
/// β_n : U(N_n, j_n) -> U(1, j_{n+1}), (x,t) -> (x, min(t, 1)).
/// γ_n : U(N_n, j_n) -> U(N_{n+1}, j_{n+1}), (x,t) -> (x,t).
/// refine : the whole of U(j) -> U(j') with j <= j', (x,t) -> (x,t).
/// q_{n,s} : Y_n -> Y_{n+1}, (x,t) -> (x, max(t, s)).
/// `source` and `target` must be the covers at the scales the kind needs.
/// Throws ScheduleError on a scale mismatch, EmptyWindowError when a column
/// image leaves the truncation, and NonSimplicialMapError (with a witness)
/// when the map is not simplicial on the nerves.
FamilyMap connecting_map(MapKind kind, std::shared_ptr<const Cover> source, std::shared_ptr<const Cover> target,
                         int n, Schedule schedule, int s = 0);

/// g ∘ f on column ids; throws DomainMismatchError unless f lands in g's
/// source family.
FamilyMap compose(const FamilyMap& g, const FamilyMap& f);

/// Simpliciality on the full nerves: the image of every point star has a
/// common vertex. Throws NonSimplicialMapError with the failing star.
void check_simplicial(const FamilyMap& f);

/// Contiguity on the full (uncapped) nerves, tested on the maximal
/// simplices, which are the point stars. Throws DomainMismatchError unless
/// the maps share source and target families.
ContiguityResult contiguous(const FamilyMap& f, const FamilyMap& g);

/// r_target ∘ f ∘ i_source between cores.
SimplicialMap core_map(const FamilyMap& f, const NerveCore& source, const NerveCore& target);

/// Interior window: vertices at distance >= 2^(j+1) from the truncation
/// boundary (Cayley points of maximal word length, and the deepest level).
struct InteriorWindow {
    int radius = 0;
    std::size_t vertices = 0;
    std::size_t boundary = 0;
    std::vector<int> interior;
};

InteriorWindow interior_window(const AugmentedSpace& space, int j);

} // namespace horonerve
