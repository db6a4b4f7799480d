#pragma once

#include "horonerve/metric_graph.hpp"
#include "horonerve/simplicial.hpp"

#include <optional>
#include <vector>

namespace horonerve {

/// R_D(V): faces are vertex sets of diameter <= D, up to `dim_cap`. Vertex
/// labels are graph vertex indices. Throws InvalidArgumentError for D < 1
/// and ResourceLimitError past the face budget.
SimplicialComplex rips(const MetricGraph& g, int D, int dim_cap);

/// r <= R selects V_r (horoball levels >= r), V^R (Cayley vertices and
/// levels 1..R) and V_r^R (levels r..R).
struct LevelWindow {
    int r = 1;
    int R = 1;

    /// Throws InvalidArgumentError unless 1 <= r <= R.
    void validate() const;
};

enum class WindowPart { Lower, Upper, Band };

bool in_window(const VertexId& v, const LevelWindow& w, WindowPart part);

/// Faces of `c` whose vertices all lie in the selected part of the window.
SimplicialComplex full_subcomplex(const SimplicialComplex& c, const MetricGraph& g, const LevelWindow& w,
                                  WindowPart part);

struct WindowDecompositionReport {
    int D = 0;
    LevelWindow window;
    bool hypothesis = false;          // r + D <= R
    bool union_holds = false;         // R_D = R_D_r ∪ R_D^R
    bool intersection_holds = false;  // R_D_r^R = R_D_r ∩ R_D^R
    std::optional<Simplex> union_witness;
    std::optional<Simplex> intersection_witness;
    bool holds() const { return union_holds && intersection_holds; }
};

/// Checks both face-set identities; witnesses name a failing face.
WindowDecompositionReport window_decomposition_check(const MetricGraph& g, int D, const LevelWindow& w, int dim_cap);

struct ContractibilityProxy {
    std::size_t vertices = 0;           // of the complex whose homology was taken
    std::vector<AbelianGroup> reduced;  // H~_0 .. H~_top
    std::vector<std::size_t> betti;     // their ranks
    int top_degree = 0;                 // highest degree certified (cap - 1 when truncated)
    bool proxy_contractible = false;    // every listed group vanishes
};

/// Reduced homology up to the dimension, or up to cap - 1 when the complex
/// was truncated. A vanishing vector is evidence, not a proof.
ContractibilityProxy contractibility_proxy(const SimplicialComplex& c);

/// Vertices of R_D(V) left after repeatedly deleting a vertex whose closed
/// neighbourhood (at distance <= D) lies in that of another survivor. Each
/// deletion is a strong collapse of the flag complex, so the Rips complex on
/// the survivors is homotopy equivalent to R_D(V).
std::vector<int> rips_dominated_core(const MetricGraph& g, int D);

/// contractibility_proxy of the Rips complex on rips_dominated_core.
ContractibilityProxy rips_contractibility_proxy(const MetricGraph& g, int D, int dim_cap);

} // namespace horonerve
