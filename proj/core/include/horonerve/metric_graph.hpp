#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace horonerve {

enum class VertexKind { Cayley, Horoball };

/// A vertex of a cusped space. Cayley vertices sit at level 0 with coset 0;
/// horoball vertices carry the 1-based coset index and a level >= 1. `point`
/// is an element id of the underlying group ball, or a plain integer label
/// for graphs not built from a group.
struct VertexId {
    VertexKind kind = VertexKind::Cayley;
    std::int64_t coset = 0;
    std::int64_t point = 0;
    std::int64_t level = 0;

    static VertexId cayley(std::int64_t point) { return {VertexKind::Cayley, 0, point, 0}; }
    static VertexId horoball(std::int64_t coset, std::int64_t point, std::int64_t level) {
        return {VertexKind::Horoball, coset, point, level};
    }

    auto operator<=>(const VertexId&) const = default;
    bool operator==(const VertexId&) const = default;
};

std::string to_string(const VertexId& v);

inline constexpr int kInfinite = std::numeric_limits<int>::max();

class MetricGraph;

/// Collects vertices and edges, then freezes them into a MetricGraph.
class GraphBuilder {
public:
    int add_vertex(const VertexId& v);
    /// Ignores self-loops and duplicate edges.
    void add_edge(int u, int v);
    int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }
    std::optional<int> find(const VertexId& v) const;

    MetricGraph build(std::shared_ptr<const std::vector<std::string>> point_labels = nullptr) &&;

private:
    std::vector<VertexId> vertices_;
    std::vector<std::pair<int, int>> edges_;
};

/// Finite simple undirected graph with its shortest-path metric. Immutable;
/// distance rows are computed on demand and cached behind a mutex, so a
/// graph may be shared across threads.
class MetricGraph {
public:
    MetricGraph();

    int size() const noexcept;
    const VertexId& vertex(int i) const;
    std::span<const VertexId> vertices() const noexcept;
    /// Throws UnknownVertexError.
    int index_of(const VertexId& v) const;
    std::optional<int> find(const VertexId& v) const;

    std::span<const int> neighbors(int i) const;
    bool has_edge(int u, int v) const;
    std::size_t edge_count() const noexcept;
    /// Sorted pairs with u < v.
    std::vector<std::pair<int, int>> edges() const;

    /// Breadth-first distances from `source`; kInfinite when unreachable.
    const std::vector<int>& distance_row(int source) const;
    int distance(int u, int v) const;
    int bfs_distance(const VertexId& u, const VertexId& v) const;
    std::vector<int> multi_source_distances(std::span<const int> sources, int limit = kInfinite) const;

    bool is_connected() const;
    int diameter() const;

    /// Full subgraph on `keep` (vertex indices); returns the graph and the
    /// parent index of each new vertex (= `keep`, sorted and deduplicated).
    std::pair<MetricGraph, std::vector<int>> induced_subgraph(std::vector<int> keep) const;

    /// Optional human-readable labels for point ids (group elements).
    const std::vector<std::string>* point_labels() const noexcept;
    std::string label(int i) const;

private:
    friend class GraphBuilder;
    struct Data;
    struct Cache;
    std::shared_ptr<const Data> data_;
    std::shared_ptr<Cache> cache_;
};

/// Pen(A; R): vertices within distance R of A.
std::vector<int> pen(const MetricGraph& g, std::span<const int> a, int radius);

struct ExcisionResult {
    int radius = 0;
    std::optional<int> minimal_s;  // nullopt: no finite S works
};

/// For each R, the least S with Pen(A;R) ∩ Pen(B;R) ⊂ Pen(A∩B;S).
/// Throws DecompositionError unless A ∪ B covers every vertex.
std::vector<ExcisionResult> omega_excisive_check(const MetricGraph& g, std::span<const int> a,
                                                 std::span<const int> b, const std::vector<int>& radii);

} // namespace horonerve
