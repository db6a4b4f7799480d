#pragma once

#include "horonerve/chain.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace horonerve {

/// Sorted, duplicate-free list of vertex labels.
using Simplex = std::vector<int>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

/// Finite abstract simplicial complex, optionally cut at a dimension cap.
/// Simplices of each dimension are stored in lexicographic order; the
/// position in that order is the simplex's cell index in the chain complex.
class SimplicialComplex {
public:
    static constexpr int kNoCap = -1;

    SimplicialComplex() = default;

    /// Downward closure of `facets`, keeping faces of dimension <= `dim_cap`.
    /// Throws ResourceLimitError past the face budget.
    static SimplicialComplex from_facets(const std::vector<Simplex>& facets, int dim_cap = kNoCap);
    /// Clique complex of a graph on `vertices`; `adjacent` is queried on
    /// pairs of distinct vertices.
    static SimplicialComplex flag_complex(const std::vector<int>& vertices,
                                          const std::function<bool(int, int)>& adjacent, int dim_cap);

    /// -1 when empty.
    int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }
    int dim_cap() const noexcept { return cap_; }
    /// True when some face above the cap was dropped.
    bool truncated() const noexcept { return truncated_; }
    bool empty() const noexcept { return faces_.empty(); }

    const std::vector<Simplex>& simplices(int d) const;
    std::size_t count(int d) const { return d < 0 || d > dimension() ? 0 : faces_[d].size(); }
    std::size_t face_count() const;
    std::optional<std::size_t> index(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index(s).has_value(); }
    std::vector<int> vertices() const;

    /// Simplices not contained in a larger one.
    std::vector<Simplex> maximal_simplices() const;
    /// Faces whose vertices all satisfy `keep`.
    SimplicialComplex full_subcomplex(const std::function<bool(int)>& keep) const;
    /// Vertex sets of the connected components, each sorted, ordered by
    /// least vertex.
    std::vector<std::vector<int>> components() const;

    ChainComplex chain_complex() const;

    /// Chain of a single oriented simplex (vertices in any order).
    Chain oriented(const Simplex& vertices) const;

    bool operator==(const SimplicialComplex& other) const {
        return faces_ == other.faces_ && cap_ == other.cap_;
    }

private:
    friend SimplicialComplex barycentric_subdivision(const SimplicialComplex&, int);
    void finish();

    std::vector<std::vector<Simplex>> faces_;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
    int cap_ = kNoCap;
    bool truncated_ = false;
};

/// Integral homology of a simplicial complex. Degree 0 uses the component
/// basis: unreduced generators are the least vertex of each component;
/// reduced generators are [v_c] - [v_0] for c >= 1. Higher degrees go through
/// HomologyEngine. When the complex is truncated at cap k, degrees above k-1
/// are not homology of the uncut complex: `trusted` says so, and asking for
/// their groups, generators or coordinates throws InvalidArgumentError.
class SimplicialHomology {
public:
    SimplicialHomology(std::shared_ptr<const SimplicialComplex> complex, bool reduced = false);

    const SimplicialComplex& complex() const noexcept { return *complex_; }
    bool reduced() const noexcept { return reduced_; }
    /// Whether degree d is homology of the uncut complex.
    bool trusted(int d) const noexcept;

    const AbelianGroup& group(int d) const;
    const std::vector<Chain>& generators(int d) const;
    std::vector<Integer> coordinates(int d, const Chain& cycle) const;

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    bool reduced_;
    std::vector<int> component_of_;   // vertex cell index -> component
    AbelianGroup h0_;
    std::vector<Chain> h0_generators_;
    std::optional<HomologyEngine> engine_;
};

/// Vertex map between two complexes that sends simplices to simplices.
class SimplicialMap {
public:
    /// Throws NonSimplicialMapError naming the first simplex whose image is
    /// not a face of the target, and InvalidArgumentError if a source vertex
    /// is missing from `vertex_map`.
    SimplicialMap(std::shared_ptr<const SimplicialComplex> source, std::shared_ptr<const SimplicialComplex> target,
                  std::map<int, int> vertex_map);

    const SimplicialComplex& source() const noexcept { return *source_; }
    const SimplicialComplex& target() const noexcept { return *target_; }
    const std::shared_ptr<const SimplicialComplex>& source_ptr() const noexcept { return source_; }
    const std::shared_ptr<const SimplicialComplex>& target_ptr() const noexcept { return target_; }
    const std::map<int, int>& vertex_map() const noexcept { return map_; }

    int operator()(int v) const;
    /// Sorted, deduplicated image vertex set.
    Simplex image(const Simplex& s) const;
    /// Chain map in degree d: oriented image, zero when degenerate.
    Chain push(int d, const Chain& chain) const;

private:
    std::shared_ptr<const SimplicialComplex> source_, target_;
    std::map<int, int> map_;
};

/// g ∘ f; throws DomainMismatchError unless f's target is g's source.
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

struct ContiguityResult {
    bool contiguous = true;
    std::optional<Simplex> witness;  // source simplex whose images do not span a face
};

/// f and g are contiguous when f(σ) ∪ g(σ) spans a simplex of the target for
/// every σ. It suffices to test maximal simplices. `spans` decides whether a
/// vertex set spans a simplex; by default it is face membership, which on a
/// capped target requires every subset of size cap+1 to be a face.
ContiguityResult contiguous(const SimplicialMap& f, const SimplicialMap& g,
                            const std::function<bool(const Simplex&)>& spans = nullptr);

/// Matrix of f_* in the coordinate systems of the two homology objects.
/// Throws DomainMismatchError when the homology objects do not belong to
/// f's complexes, or when only one of them is reduced.
IntMatrix induced_map(const SimplicialMap& f, int degree, const SimplicialHomology& source,
                      const SimplicialHomology& target);

/// n-th barycentric subdivision. Vertices of each round are numbered in the
/// order of the previous round's simplices (by dimension, then lexicographic).
SimplicialComplex barycentric_subdivision(const SimplicialComplex& c, int times);

} // namespace horonerve
