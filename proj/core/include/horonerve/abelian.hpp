#pragma once

#include "horonerve/integer_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace horonerve {

/// Finitely generated abelian group Z^rank + Z/t_1 + ... + Z/t_m with
/// t_1 | t_2 | ... and every t_i > 1.
///
/// Elements are written in coordinates Z^(m + rank): torsion coordinates
/// first, then free ones. The relation lattice is spanned by t_i e_i.
/// Homomorphisms are integer matrices in these coordinates, well defined
/// modulo the target's relations.
struct AbelianGroup {
    std::size_t rank = 0;
    std::vector<Integer> torsion;

    std::size_t dimension() const noexcept { return torsion.size() + rank; }
    bool is_trivial() const noexcept { return rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup&) const = default;

    /// Relation lattice in coordinates.
    Lattice relations() const;
    /// Reduces torsion coordinates into [0, t_i).
    std::vector<Integer> normalize(std::vector<Integer> v) const;

    std::string to_string() const;

    static AbelianGroup free(std::size_t rank) { return {rank, {}}; }
    static AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
    /// Invariant factors of Z^n / L.
    static AbelianGroup quotient(const Lattice& l);
};

/// A homomorphism A -> B in coordinates.
struct Homomorphism {
    AbelianGroup source;
    AbelianGroup target;
    IntMatrix matrix;  // target.dimension() x source.dimension()

    /// Throws ShapeError on a bad shape and InvalidArgumentError when the
    /// matrix does not respect the relations.
    void validate() const;
    bool is_zero() const;
};

/// {x : f(x) = 0} as a lattice in source coordinates (contains L_A).
Lattice kernel_lattice(const Homomorphism& f);
/// im f + L_B as a lattice in target coordinates.
Lattice image_lattice(const Homomorphism& f);

/// Structure of K / L for lattices L ⊆ K. Throws InvalidArgumentError when
/// L is not contained in K.
AbelianGroup lattice_quotient(const Lattice& k, const Lattice& l);

AbelianGroup kernel_group(const Homomorphism& f);
AbelianGroup image_group(const Homomorphism& f);
AbelianGroup cokernel_group(const Homomorphism& f);

bool is_isomorphism(const Homomorphism& f);
bool is_injective(const Homomorphism& f);
bool is_surjective(const Homomorphism& f);

/// Equality of homomorphisms A -> B modulo the relations of B.
bool same_map(const Homomorphism& f, const Homomorphism& g);

Homomorphism compose(const Homomorphism& g, const Homomorphism& f);  // g ∘ f

struct ExactnessReport {
    bool exact = false;
    bool composite_zero = false;      // im f ⊆ ker g
    bool kernel_in_image = false;     // ker g ⊆ im f
    AbelianGroup homology;            // ker g / im f when composite_zero
    std::string diagnostics;
};

/// Exactness of A --f--> B --g--> C at B. Throws ShapeError when the middle
/// groups disagree.
ExactnessReport exactness_check(const Homomorphism& f, const Homomorphism& g);

} // namespace horonerve
