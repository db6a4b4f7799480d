#pragma once

#include "horonerve/abelian.hpp"

#include <map>
#include <vector>

namespace horonerve {

/// Chain with integer coefficients: cell index -> nonzero coefficient.
using Chain = std::map<std::size_t, Integer>;

void add_scaled(Chain& target, const Chain& source, const Integer& factor);

/// Free chain complex C_0 <- C_1 <- ... <- C_top with sparse boundaries.
class ChainComplex {
public:
    /// `cells[d]` is the rank of C_d; `boundary[d]` (d >= 1) lists, for every
    /// d-cell, its boundary as a chain of (d-1)-cells.
    ChainComplex(std::vector<std::size_t> cells, std::vector<std::vector<Chain>> boundary);

    int top() const noexcept { return static_cast<int>(cells_.size()) - 1; }
    std::size_t cells(int d) const { return d < 0 || d > top() ? 0 : cells_[d]; }
    /// Empty chain for 0-cells.
    const Chain& boundary(int d, std::size_t cell) const;
    Chain boundary_of(int d, const Chain& chain) const;
    IntMatrix boundary_matrix(int d) const;

    /// Throws InvalidArgumentError with the offending degree if ∂∂ ≠ 0.
    void check_square_zero() const;

private:
    std::vector<std::size_t> cells_;
    std::vector<std::vector<Chain>> boundary_;
};

/// Integral homology of a chain complex with chain-level access.
///
/// Unit pivots are eliminated first (each step is a chain homotopy
/// equivalence whose projection and lift are recorded); the remaining small
/// complex is handled densely with Smith forms. Class coordinates follow the
/// AbelianGroup convention: torsion coordinates first, reduced modulo their
/// orders, then free ones.
class HomologyEngine {
public:
    /// Homology is computed in degrees 0..max_degree (all degrees when
    /// negative); cells above still take part in the elimination.
    explicit HomologyEngine(ChainComplex complex, int max_degree = -1);

    const ChainComplex& complex() const noexcept { return complex_; }
    /// Trivial group beyond the top degree. Throws InvalidArgumentError for
    /// a degree that was skipped.
    const AbelianGroup& group(int d) const;
    bool computed(int d) const noexcept { return d < 0 || d > complex_.top() || d < computed_; }
    /// Cycles representing the coordinate generators.
    const std::vector<Chain>& generators(int d) const;
    /// Coordinates of the class of a d-cycle; throws InvalidArgumentError if
    /// the chain is not a cycle.
    std::vector<Integer> coordinates(int d, const Chain& cycle) const;
    /// Cells left after elimination, per degree.
    std::size_t reduced_cells(int d) const;

private:
    struct Step {
        int dim;          // degree of b
        std::size_t a;    // (dim-1)-cell
        std::size_t b;    // dim-cell
        Integer eps;      // coefficient of a in ∂b, ±1
        Chain boundary_b;
        Chain row_a;      // dim-cells c -> coefficient of a in ∂c at elimination time
    };
    struct Degree {
        AbelianGroup group;
        std::vector<Chain> generators;
        std::vector<std::size_t> alive;        // reduced cells, original indices
        std::map<std::size_t, std::size_t> position;
        IntMatrix kernel;                      // alive-cells x z
        std::optional<BasisSolver> solver;
        IntMatrix p;                           // Smith transform on kernel coordinates
        std::vector<std::size_t> torsion_index, free_index;
        std::vector<Integer> torsion_order;
    };

    Chain project(int d, Chain chain) const;
    Chain lift(int d, Chain chain) const;

    ChainComplex complex_;
    std::vector<Step> steps_;
    std::vector<Degree> degrees_;
    int computed_ = 0;
};

} // namespace horonerve
