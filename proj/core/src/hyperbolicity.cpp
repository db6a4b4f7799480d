#include "horonerve/hyperbolicity.hpp"

#include "horonerve/error.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <thread>

namespace horonerve {

std::string format_half(std::int64_t twice) {
    const std::int64_t whole = twice / 2;
    if (twice % 2 == 0) return std::to_string(whole);
    return (twice < 0 && whole == 0 ? "-" : "") + std::to_string(whole) + ".5";
}

std::int64_t gromov_product_twice(const MetricGraph& g, int x, int y, int w) {
    const int dxw = g.distance(x, w);
    const int dyw = g.distance(y, w);
    const int dxy = g.distance(x, y);
    if (dxw == kInfinite || dyw == kInfinite || dxy == kInfinite)
        throw DisconnectedError("Gromov product of vertices in different components");
    return std::int64_t{dxw} + dyw - dxy;
}

namespace {

std::int64_t quad_twice(const std::vector<int>& d, int n, int x, int y, int z, int w) {
    auto at = [&](int a, int b) { return std::int64_t{d[static_cast<std::size_t>(a) * n + b]}; };
    std::int64_t s[3] = {at(x, y) + at(z, w), at(x, z) + at(y, w), at(x, w) + at(y, z)};
    std::sort(s, s + 3);
    return s[2] - s[1];
}

struct BlockResult {
    std::int64_t twice = 0;
    std::uint64_t checked = 0;
    std::vector<int> witness;
};

// Pairs sorted by decreasing distance; for pair p = (x,y) only partners q
// listed before it are tried, so d(z,w) >= d(x,y). If d(x,y) + d(z,w) is the
// largest of the three sums then twice the quadruple's delta is at most
// d(x,y), so the scan stops once d(x,y) <= best.
BlockResult scan_block(const std::vector<int>& d, int n, unsigned threads) {
    struct Pair {
        int dist, a, b;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({d[static_cast<std::size_t>(a) * n + b], a, b});
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) { return p.dist > q.dist; });

    std::atomic<std::int64_t> best{0};
    std::atomic<std::uint64_t> checked{0};
    std::atomic<std::size_t> next{0};
    std::mutex witness_mutex;
    BlockResult out;

    auto worker = [&] {
        std::uint64_t local_checked = 0;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pairs.size() || pairs[i].dist <= best.load()) break;
            const auto& p = pairs[i];
            for (std::size_t j = 0; j <= i; ++j) {
                const auto& q = pairs[j];
                const std::int64_t s1 = std::int64_t{p.dist} + q.dist;
                const std::int64_t s2 = std::int64_t{d[static_cast<std::size_t>(p.a) * n + q.a]} +
                                        d[static_cast<std::size_t>(p.b) * n + q.b];
                const std::int64_t s3 = std::int64_t{d[static_cast<std::size_t>(p.a) * n + q.b]} +
                                        d[static_cast<std::size_t>(p.b) * n + q.a];
                ++local_checked;
                const std::int64_t t = s1 - std::max(s2, s3);
                if (t > best.load()) {
                    std::lock_guard lock(witness_mutex);
                    if (t > best.load()) {
                        best.store(t);
                        out.witness = {p.a, p.b, q.a, q.b};
                    }
                }
            }
        }
        checked.fetch_add(local_checked);
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    out.twice = best.load();
    out.checked = checked.load();
    return out;
}

} // namespace

std::vector<std::vector<int>> biconnected_blocks(const MetricGraph& g) {
    const int n = g.size();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::pair<int, int>> edge_stack;
    std::vector<std::vector<int>> blocks;
    int timer = 0;

    struct Frame {
        int v, parent;
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        if (g.neighbors(root).empty()) {
            disc[root] = timer++;
            blocks.push_back({root});
            continue;
        }
        std::vector<Frame> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            auto& f = stack.back();
            const auto nb = g.neighbors(f.v);
            if (f.next < nb.size()) {
                const int w = nb[f.next++];
                if (disc[w] < 0) {
                    edge_stack.emplace_back(f.v, w);
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, f.v, 0});
                } else if (w != f.parent && disc[w] < disc[f.v]) {
                    edge_stack.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            const int v = f.v;
            const int parent = f.parent;
            stack.pop_back();
            if (parent < 0) continue;
            low[parent] = std::min(low[parent], low[v]);
            if (low[v] >= disc[parent]) {
                std::vector<int> block;
                while (!edge_stack.empty()) {
                    const auto e = edge_stack.back();
                    edge_stack.pop_back();
                    block.push_back(e.first);
                    block.push_back(e.second);
                    if (e == std::pair{parent, v}) break;
                }
                std::sort(block.begin(), block.end());
                block.erase(std::unique(block.begin(), block.end()), block.end());
                blocks.push_back(std::move(block));
            }
        }
    }
    return blocks;
}

DeltaEstimate four_point_delta(const MetricGraph& g, const DeltaMode& mode) {
    if (!g.is_connected()) throw DisconnectedError("four-point delta needs a connected graph");
    DeltaEstimate est;
    est.mode = mode;
    const int n = g.size();
    if (n < 4) return est;

    if (mode.kind == DeltaMode::Kind::Sampled) {
        std::mt19937_64 rng(mode.seed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (std::uint64_t s = 0; s < mode.samples; ++s) {
            const int x = pick(rng), y = pick(rng), z = pick(rng), w = pick(rng);
            const std::int64_t s1 = std::int64_t{g.distance(x, y)} + g.distance(z, w);
            const std::int64_t s2 = std::int64_t{g.distance(x, z)} + g.distance(y, w);
            const std::int64_t s3 = std::int64_t{g.distance(x, w)} + g.distance(y, z);
            std::int64_t sums[3] = {s1, s2, s3};
            std::sort(sums, sums + 3);
            if (sums[2] - sums[1] > est.twice_delta) {
                est.twice_delta = sums[2] - sums[1];
                est.witness = {x, y, z, w};
            }
        }
        est.quadruples_checked = mode.samples;
        return est;
    }

    const unsigned threads = mode.threads ? mode.threads : std::max(1u, std::thread::hardware_concurrency());
    for (const auto& block : biconnected_blocks(g)) {
        ++est.blocks;
        est.largest_block = std::max(est.largest_block, block.size());
        const int b = static_cast<int>(block.size());
        if (b < 4) continue;  // at most three vertices: delta 0
        // Blocks are isometrically embedded, so global distances apply.
        std::vector<int> d(static_cast<std::size_t>(b) * b);
        for (int i = 0; i < b; ++i) {
            const auto& row = g.distance_row(block[i]);
            for (int j = 0; j < b; ++j) d[static_cast<std::size_t>(i) * b + j] = row[block[j]];
        }
        auto r = scan_block(d, b, threads);
        est.quadruples_checked += r.checked;
        if (r.twice > est.twice_delta) {
            est.twice_delta = r.twice;
            est.witness.clear();
            for (int v : r.witness) est.witness.push_back(block[v]);
        }
    }
    return est;
}

std::int64_t four_point_delta_naive_twice(const MetricGraph& g) {
    if (!g.is_connected()) throw DisconnectedError("four-point delta needs a connected graph");
    const int n = g.size();
    std::vector<int> d(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const auto& row = g.distance_row(i);
        std::copy(row.begin(), row.end(), d.begin() + static_cast<long>(i) * n);
    }
    std::int64_t best = 0;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                for (int w = z + 1; w < n; ++w) best = std::max(best, quad_twice(d, n, x, y, z, w));
    return best;
}

} // namespace horonerve
