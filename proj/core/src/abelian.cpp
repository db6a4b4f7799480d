#include "horonerve/abelian.hpp"

#include "horonerve/error.hpp"

#include <algorithm>
#include <sstream>

namespace horonerve {

Lattice AbelianGroup::relations() const {
    std::vector<std::vector<Integer>> gens;
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        std::vector<Integer> v(dimension());
        v[i] = torsion[i];
        gens.push_back(std::move(v));
    }
    return Lattice::from_vectors(gens, dimension());
}

std::vector<Integer> AbelianGroup::normalize(std::vector<Integer> v) const {
    if (v.size() != dimension()) throw ShapeError("element has the wrong number of coordinates");
    for (std::size_t i = 0; i < torsion.size(); ++i) v[i] = mod_floor(v[i], torsion[i]);
    return v;
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream out;
    bool first = true;
    if (rank > 0) {
        out << "Z";
        if (rank > 1) out << "^" << rank;
        first = false;
    }
    for (const auto& t : torsion) {
        out << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return out.str();
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    // Recompute invariant factors from the combined relation lattice.
    std::vector<std::vector<Integer>> gens;
    const std::size_t n = a.torsion.size() + b.torsion.size();
    std::size_t i = 0;
    for (const auto& t : a.torsion) {
        std::vector<Integer> v(n);
        v[i++] = t;
        gens.push_back(std::move(v));
    }
    for (const auto& t : b.torsion) {
        std::vector<Integer> v(n);
        v[i++] = t;
        gens.push_back(std::move(v));
    }
    auto g = quotient(Lattice::from_vectors(gens, n));
    g.rank += a.rank + b.rank;
    return g;
}

AbelianGroup AbelianGroup::quotient(const Lattice& l) {
    AbelianGroup g;
    const auto s = smith_form(l.basis_columns());
    std::size_t nonunit = 0;
    for (const auto& d : s.diagonal()) {
        if (d > 1) g.torsion.push_back(d);
        if (d != 0) ++nonunit;
    }
    g.rank = l.ambient() - nonunit;
    return g;
}

void Homomorphism::validate() const {
    if (matrix.rows() != target.dimension() || matrix.cols() != source.dimension())
        throw ShapeError("homomorphism matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + ", expected " + std::to_string(target.dimension()) + "x" +
                         std::to_string(source.dimension()));
    const auto lb = target.relations();
    for (std::size_t i = 0; i < source.torsion.size(); ++i) {
        auto col = matrix.column(i);
        for (auto& x : col) x *= source.torsion[i];
        if (!lb.contains(col)) throw InvalidArgumentError("matrix does not respect the source relations");
    }
}

bool Homomorphism::is_zero() const {
    const auto lb = target.relations();
    for (std::size_t j = 0; j < matrix.cols(); ++j)
        if (!lb.contains(matrix.column(j))) return false;
    return true;
}

namespace {

IntMatrix relation_columns(const AbelianGroup& g) {
    IntMatrix d(g.dimension(), g.torsion.size());
    for (std::size_t i = 0; i < g.torsion.size(); ++i) d(i, i) = g.torsion[i];
    return d;
}

} // namespace

Lattice kernel_lattice(const Homomorphism& f) {
    // x with M x ∈ L_B: the x-part of ker [M | D_B].
    const auto k = kernel_basis(hstack(f.matrix, relation_columns(f.target)));
    const std::size_t a = f.source.dimension();
    std::vector<std::vector<Integer>> gens;
    for (std::size_t c = 0; c < k.cols(); ++c) {
        std::vector<Integer> v(a);
        for (std::size_t r = 0; r < a; ++r) v[r] = k(r, c);
        gens.push_back(std::move(v));
    }
    return Lattice::from_vectors(gens, a) + f.source.relations();
}

Lattice image_lattice(const Homomorphism& f) {
    return Lattice::from_columns(f.matrix) + f.target.relations();
}

AbelianGroup lattice_quotient(const Lattice& k, const Lattice& l) {
    if (!k.contains(l)) throw InvalidArgumentError("quotient of lattices requires L ⊆ K");
    const std::size_t z = k.rank();
    std::vector<std::vector<Integer>> coords;
    for (std::size_t r = 0; r < l.rank(); ++r) coords.push_back(*k.coordinates(l.basis().row(r)));
    return AbelianGroup::quotient(Lattice::from_vectors(coords, z));
}

AbelianGroup kernel_group(const Homomorphism& f) {
    return lattice_quotient(kernel_lattice(f), f.source.relations());
}

AbelianGroup image_group(const Homomorphism& f) {
    return lattice_quotient(image_lattice(f), f.target.relations());
}

AbelianGroup cokernel_group(const Homomorphism& f) {
    return lattice_quotient(Lattice::full(f.target.dimension()), image_lattice(f));
}

bool is_injective(const Homomorphism& f) { return kernel_lattice(f) == f.source.relations(); }

bool is_surjective(const Homomorphism& f) { return image_lattice(f) == Lattice::full(f.target.dimension()); }

bool is_isomorphism(const Homomorphism& f) { return is_injective(f) && is_surjective(f); }

bool same_map(const Homomorphism& f, const Homomorphism& g) {
    if (f.matrix.rows() != g.matrix.rows() || f.matrix.cols() != g.matrix.cols())
        throw ShapeError("comparing maps of different shapes");
    return Homomorphism{f.source, f.target, f.matrix - g.matrix}.is_zero();
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
    if (!(f.target == g.source)) throw ShapeError("composition: middle groups differ");
    return {f.source, g.target, g.matrix * f.matrix};
}

ExactnessReport exactness_check(const Homomorphism& f, const Homomorphism& g) {
    if (!(f.target == g.source))
        throw ShapeError("exactness: f lands in " + f.target.to_string() + " but g starts at " + g.source.to_string());
    f.validate();
    g.validate();
    ExactnessReport rep;
    const auto im = image_lattice(f);
    const auto ker = kernel_lattice(g);
    rep.composite_zero = ker.contains(im);
    rep.kernel_in_image = im.contains(ker);
    rep.exact = rep.composite_zero && rep.kernel_in_image;
    std::ostringstream diag;
    if (rep.composite_zero) {
        rep.homology = lattice_quotient(ker, im);
        if (!rep.exact) diag << "ker g / im f = " << rep.homology.to_string();
    } else {
        diag << "g ∘ f is nonzero";
        if (!rep.kernel_in_image) diag << "; ker g not contained in im f";
    }
    rep.diagnostics = rep.exact ? "exact" : diag.str();
    return rep;
}

} // namespace horonerve
