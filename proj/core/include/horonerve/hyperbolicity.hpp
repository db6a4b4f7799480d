#pragma once

#include "horonerve/metric_graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace horonerve {

/// Half-integers are carried as twice their value.
std::string format_half(std::int64_t twice);

/// Twice the Gromov product (x|y)_w = d(x,w) + d(y,w) - d(x,y). Throws
/// DisconnectedError when the three vertices do not share a component.
std::int64_t gromov_product_twice(const MetricGraph& g, int x, int y, int w);

struct DeltaMode {
    enum class Kind { Exhaustive, Sampled };
    Kind kind = Kind::Exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency

    static DeltaMode exhaustive() { return {}; }
    static DeltaMode sampled(std::uint64_t samples, std::uint64_t seed) {
        return {Kind::Sampled, samples, seed, 0};
    }
};

struct DeltaEstimate {
    std::int64_t twice_delta = 0;
    DeltaMode mode;
    std::uint64_t quadruples_checked = 0;
    std::size_t blocks = 0;         // biconnected blocks scanned (exhaustive)
    std::size_t largest_block = 0;
    std::vector<int> witness;       // a quadruple attaining the value, if any

    std::string delta() const { return format_half(twice_delta); }
};

/// Four-point delta. Exhaustive mode is exact: the value is the maximum over
/// biconnected blocks, each scanned over pairs of vertex pairs in decreasing
/// distance order with the min(d(x,y), d(z,w)) cutoff. Sampled mode draws
/// uniform quadruples from a seeded generator and gives a lower bound.
/// Throws DisconnectedError on a disconnected graph.
DeltaEstimate four_point_delta(const MetricGraph& g, const DeltaMode& mode);

/// Unpruned scan over all quadruples; reference implementation.
std::int64_t four_point_delta_naive_twice(const MetricGraph& g);

/// Vertex sets of the biconnected blocks (bridges count as two-vertex blocks;
/// isolated vertices as singleton blocks).
std::vector<std::vector<int>> biconnected_blocks(const MetricGraph& g);

} // namespace horonerve
