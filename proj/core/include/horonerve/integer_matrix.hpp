#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace horonerve {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Integer> row(std::size_t r) const;
    std::vector<Integer> column(std::size_t c) const;

    IntMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const IntMatrix& other) const = default;

    // Elementary operations.
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void swap_rows(std::size_t a, std::size_t b);
    void swap_columns(std::size_t a, std::size_t b);
    void negate_row(std::size_t r);
    void negate_column(std::size_t c);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& x);

/// Block diagonal and horizontal/vertical concatenation.
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

/// Floor division with a nonnegative remainder (b > 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

/// P * A * Q = D with P, Q unimodular and D diagonal, d_1 | d_2 | ... >= 0.
struct SmithForm {
    IntMatrix d;
    IntMatrix p, p_inv;
    IntMatrix q, q_inv;
    std::size_t rank = 0;

    std::vector<Integer> diagonal() const;
};

SmithForm smith_form(const IntMatrix& a);

/// Row-style Hermite normal form of the row lattice: strictly increasing
/// pivot columns, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows removed. `transform` (optional) receives T with
/// T * a = [H; 0] (T unimodular, rows of H first).
IntMatrix hermite_rows(const IntMatrix& a, IntMatrix* transform = nullptr);

/// Basis (as columns) of the integer kernel {x : a x = 0}. The basis spans a
/// saturated lattice.
IntMatrix kernel_basis(const IntMatrix& a);

/// Rank over Q.
std::size_t rank(const IntMatrix& a);

/// Sublattice of Z^n spanned by generator vectors; canonical HNF basis.
class Lattice {
public:
    explicit Lattice(std::size_t ambient = 0);
    /// Generators are the columns of `g`.
    static Lattice from_columns(const IntMatrix& g);
    static Lattice from_vectors(const std::vector<std::vector<Integer>>& gens, std::size_t ambient);
    static Lattice full(std::size_t ambient);

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return basis_.rows(); }
    /// Canonical basis, one generator per row.
    const IntMatrix& basis() const noexcept { return basis_; }
    IntMatrix basis_columns() const { return basis_.transpose(); }

    bool contains(const std::vector<Integer>& v) const;
    bool contains(const Lattice& other) const;
    bool operator==(const Lattice& other) const { return ambient_ == other.ambient_ && basis_ == other.basis_; }

    Lattice operator+(const Lattice& other) const;

    /// Coefficients c with sum c_i basis_i = v, or nullopt when v is outside.
    std::optional<std::vector<Integer>> coordinates(const std::vector<Integer>& v) const;

private:
    std::size_t ambient_;
    IntMatrix basis_;
};

/// Solver for coordinates with respect to a fixed (not necessarily
/// canonical) basis of a lattice.
class BasisSolver {
public:
    /// `basis` holds one basis vector per column; columns must be independent.
    explicit BasisSolver(const IntMatrix& basis);
    std::optional<std::vector<Integer>> solve(const std::vector<Integer>& v) const;
    std::size_t size() const noexcept { return transform_.rows(); }

private:
    IntMatrix hermite_;    // H = T * B^T
    IntMatrix transform_;  // T
};

} // namespace horonerve
