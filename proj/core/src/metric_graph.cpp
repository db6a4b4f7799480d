#include "horonerve/metric_graph.hpp"

#include "horonerve/error.hpp"
#include "horonerve/limits.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>

namespace horonerve {

std::string to_string(const VertexId& v) {
    if (v.kind == VertexKind::Cayley) return "(" + std::to_string(v.point) + ",0)";
    return "(H" + std::to_string(v.coset) + ":" + std::to_string(v.point) + "," + std::to_string(v.level) + ")";
}

struct MetricGraph::Data {
    std::vector<VertexId> vertices;
    std::map<VertexId, int> index;
    std::vector<int> offsets{0};  // CSR adjacency
    std::vector<int> adjacency;
    std::size_t edge_count = 0;
    std::shared_ptr<const std::vector<std::string>> point_labels;
};

struct MetricGraph::Cache {
    std::mutex mutex;
    std::vector<std::unique_ptr<std::vector<int>>> rows;
};

int GraphBuilder::add_vertex(const VertexId& v) {
    if ((v.kind == VertexKind::Cayley) != (v.level == 0))
        throw InvalidArgumentError("vertex " + to_string(v) + ": level is 0 exactly for Cayley vertices");
    if (v.level < 0) throw InvalidArgumentError("negative vertex level");
    vertices_.push_back(v);
    return static_cast<int>(vertices_.size()) - 1;
}

void GraphBuilder::add_edge(int u, int v) {
    const int n = vertex_count();
    if (u < 0 || v < 0 || u >= n || v >= n) throw UnknownVertexError("edge endpoint out of range");
    if (u == v) return;
    edges_.emplace_back(std::min(u, v), std::max(u, v));
}

std::optional<int> GraphBuilder::find(const VertexId& v) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
}

MetricGraph GraphBuilder::build(std::shared_ptr<const std::vector<std::string>> point_labels) && {
    auto data = std::make_shared<MetricGraph::Data>();
    data->vertices = std::move(vertices_);
    for (int i = 0; i < static_cast<int>(data->vertices.size()); ++i) {
        if (!data->index.emplace(data->vertices[i], i).second)
            throw InvalidArgumentError("duplicate vertex " + to_string(data->vertices[i]));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    data->edge_count = edges_.size();

    const std::size_t n = data->vertices.size();
    std::vector<int> degree(n, 0);
    for (auto [u, v] : edges_) {
        ++degree[u];
        ++degree[v];
    }
    data->offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) data->offsets[i + 1] = data->offsets[i] + degree[i];
    data->adjacency.assign(data->offsets[n], 0);
    std::vector<int> fill(data->offsets.begin(), data->offsets.end() - 1);
    for (auto [u, v] : edges_) {
        data->adjacency[fill[u]++] = v;
        data->adjacency[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i)
        std::sort(data->adjacency.begin() + data->offsets[i], data->adjacency.begin() + data->offsets[i + 1]);
    data->point_labels = std::move(point_labels);

    MetricGraph g;
    g.data_ = std::move(data);
    g.cache_ = std::make_shared<MetricGraph::Cache>();
    g.cache_->rows.resize(n);
    if (n <= kAllPairsThreshold)
        for (int i = 0; i < static_cast<int>(n); ++i) g.distance_row(i);
    return g;
}

MetricGraph::MetricGraph() : data_(std::make_shared<Data>()), cache_(std::make_shared<Cache>()) {}

int MetricGraph::size() const noexcept { return static_cast<int>(data_->vertices.size()); }

const VertexId& MetricGraph::vertex(int i) const {
    if (i < 0 || i >= size()) throw UnknownVertexError("vertex index " + std::to_string(i) + " out of range");
    return data_->vertices[i];
}

std::span<const VertexId> MetricGraph::vertices() const noexcept { return data_->vertices; }

int MetricGraph::index_of(const VertexId& v) const {
    auto it = data_->index.find(v);
    if (it == data_->index.end()) throw UnknownVertexError("unknown vertex " + to_string(v));
    return it->second;
}

std::optional<int> MetricGraph::find(const VertexId& v) const {
    auto it = data_->index.find(v);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

std::span<const int> MetricGraph::neighbors(int i) const {
    vertex(i);
    return std::span<const int>(data_->adjacency).subspan(data_->offsets[i], data_->offsets[i + 1] - data_->offsets[i]);
}

bool MetricGraph::has_edge(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t MetricGraph::edge_count() const noexcept { return data_->edge_count; }

std::vector<std::pair<int, int>> MetricGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < size(); ++u)
        for (int v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

const std::vector<int>& MetricGraph::distance_row(int source) const {
    vertex(source);
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->rows[source];
    if (!slot) {
        const int s = source;
        slot = std::make_unique<std::vector<int>>(multi_source_distances(std::span<const int>(&s, 1)));
    }
    return *slot;
}

int MetricGraph::distance(int u, int v) const {
    vertex(v);
    return distance_row(u)[v];
}

int MetricGraph::bfs_distance(const VertexId& u, const VertexId& v) const { return distance(index_of(u), index_of(v)); }

std::vector<int> MetricGraph::multi_source_distances(std::span<const int> sources, int limit) const {
    std::vector<int> dist(size(), kInfinite);
    std::deque<int> queue;
    for (int s : sources) {
        vertex(s);
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (dist[u] >= limit) continue;
        for (int w : neighbors(u)) {
            if (dist[w] == kInfinite) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

bool MetricGraph::is_connected() const {
    if (size() == 0) return true;
    const auto& row = distance_row(0);
    return std::none_of(row.begin(), row.end(), [](int d) { return d == kInfinite; });
}

int MetricGraph::diameter() const {
    int best = 0;
    for (int i = 0; i < size(); ++i)
        for (int d : distance_row(i)) best = std::max(best, d);
    return best;
}

std::pair<MetricGraph, std::vector<int>> MetricGraph::induced_subgraph(std::vector<int> keep) const {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<int> local(size(), -1);
    GraphBuilder builder;
    for (int p : keep) local[p] = builder.add_vertex(vertex(p));
    for (int p : keep)
        for (int q : neighbors(p))
            if (local[q] >= 0 && p < q) builder.add_edge(local[p], local[q]);
    return {std::move(builder).build(data_->point_labels), std::move(keep)};
}

const std::vector<std::string>* MetricGraph::point_labels() const noexcept { return data_->point_labels.get(); }

std::string MetricGraph::label(int i) const {
    const auto& v = vertex(i);
    std::string point = std::to_string(v.point);
    if (const auto* labels = point_labels(); labels && v.point >= 0 && v.point < static_cast<std::int64_t>(labels->size()))
        point = (*labels)[v.point];
    if (v.kind == VertexKind::Cayley) return "(" + point + ",0)";
    return "(H" + std::to_string(v.coset) + ":" + point + "," + std::to_string(v.level) + ")";
}

std::vector<int> pen(const MetricGraph& g, std::span<const int> a, int radius) {
    if (radius < 0) throw InvalidArgumentError("penumbra radius must be nonnegative");
    const auto dist = g.multi_source_distances(a, radius);
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (dist[v] <= radius) out.push_back(v);
    return out;
}

std::vector<ExcisionResult> omega_excisive_check(const MetricGraph& g, std::span<const int> a,
                                                 std::span<const int> b, const std::vector<int>& radii) {
    std::vector<char> in_a(g.size(), 0), in_b(g.size(), 0);
    for (int v : a) in_a.at(v) = 1;
    for (int v : b) in_b.at(v) = 1;
    std::vector<int> both;
    for (int v = 0; v < g.size(); ++v) {
        if (!in_a[v] && !in_b[v]) throw DecompositionError("A ∪ B misses vertex " + g.label(v));
        if (in_a[v] && in_b[v]) both.push_back(v);
    }
    const auto da = g.multi_source_distances(a);
    const auto db = g.multi_source_distances(b);
    const auto dab = g.multi_source_distances(both);

    std::vector<ExcisionResult> out;
    for (int r : radii) {
        if (r < 0) throw InvalidArgumentError("excision radius must be nonnegative");
        ExcisionResult res{r, 0};
        for (int v = 0; v < g.size(); ++v) {
            if (da[v] > r || db[v] > r) continue;
            if (dab[v] == kInfinite) {
                res.minimal_s.reset();
                break;
            }
            res.minimal_s = std::max(*res.minimal_s, dab[v]);
        }
        out.push_back(res);
    }
    return out;
}

} // namespace horonerve
