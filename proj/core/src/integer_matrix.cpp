#include "horonerve/integer_matrix.hpp"

#include "horonerve/error.hpp"

#include <algorithm>
#include <sstream>

namespace horonerve {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw ShapeError("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows) {
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw ShapeError("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_)};
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
    std::vector<Integer> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        const auto& s = (*this)(source, c);
        if (s != 0) (*this)(target, c) += factor * s;
    }
}

void IntMatrix::add_column_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto& s = (*this)(r, source);
        if (s != 0) (*this)(r, target) += factor * s;
    }
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_column(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        out << (r ? "; " : "");
        for (std::size_t c = 0; c < cols_; ++c) out << (c ? " " : "") << (*this)(r, c);
    }
    out << "]";
    return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) out(i, j) += x * b(k, j);
        }
    return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix difference shape mismatch");
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sum shape mismatch");
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& x) {
    if (a.cols() != x.size()) throw ShapeError("matrix-vector shape mismatch");
    std::vector<Integer> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (x[k] != 0 && a(i, k) != 0) out[i] += a(i, k) * x[k];
    return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("hstack row mismatch");
    IntMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw ShapeError("vstack column mismatch");
    IntMatrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b) { return a - floor_div(a, b) * b; }

std::vector<Integer> SmithForm::diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
}

SmithForm smith_form(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    SmithForm s{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n), 0};
    auto& d = s.d;

    auto row_add = [&](std::size_t i, std::size_t j, const Integer& c) {
        d.add_row_multiple(i, j, c);
        s.p.add_row_multiple(i, j, c);
        s.p_inv.add_column_multiple(j, i, -c);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        d.swap_rows(i, j);
        s.p.swap_rows(i, j);
        s.p_inv.swap_columns(i, j);
    };
    auto col_add = [&](std::size_t i, std::size_t j, const Integer& c) {
        d.add_column_multiple(i, j, c);
        s.q.add_column_multiple(i, j, c);
        s.q_inv.add_row_multiple(j, i, -c);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        d.swap_columns(i, j);
        s.q.swap_columns(i, j);
        s.q_inv.swap_rows(i, j);
    };

    std::size_t t = 0;
    while (t < std::min(m, n)) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t bi = m, bj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (d(i, j) != 0 && (bi == m || abs(d(i, j)) < abs(d(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi == m) break;
        row_swap(t, bi);
        col_swap(t, bj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (d(i, t) != 0) {
                    row_add(i, t, -Integer(d(i, t) / d(t, t)));
                    if (d(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (d(t, j) != 0) {
                    col_add(j, t, -Integer(d(t, j) / d(t, t)));
                    if (d(t, j) != 0) clean = false;
                }
            if (!clean) {
                std::size_t bi2 = t, bj2 = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (d(i, t) != 0 && abs(d(i, t)) < abs(d(bi2, bj2))) {
                        bi2 = i;
                        bj2 = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(t, j) != 0 && abs(d(t, j)) < abs(d(bi2, bj2))) {
                        bi2 = t;
                        bj2 = j;
                    }
                row_swap(t, bi2);
                col_swap(t, bj2);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.p.negate_row(t);
            s.p_inv.negate_column(t);
        }
        ++t;
    }
    s.rank = t;
    return s;
}

IntMatrix hermite_rows(const IntMatrix& a, IntMatrix* transform) {
    IntMatrix h = a;
    IntMatrix t = transform ? IntMatrix::identity(a.rows()) : IntMatrix();
    const std::size_t m = a.rows();
    auto row_add = [&](std::size_t i, std::size_t j, const Integer& c) {
        h.add_row_multiple(i, j, c);
        if (transform) t.add_row_multiple(i, j, c);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        h.swap_rows(i, j);
        if (transform) t.swap_rows(i, j);
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < m; ++c) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == m) break;
            row_swap(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i)
                if (h(i, c) != 0) {
                    row_add(i, r, -Integer(h(i, c) / h(r, c)));
                    if (h(i, c) != 0) clean = false;
                }
            if (clean) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            h.negate_row(r);
            if (transform) t.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i)
            if (h(i, c) != 0) row_add(i, r, -floor_div(h(i, c), h(r, c)));
        ++r;
    }
    if (transform) *transform = std::move(t);
    IntMatrix out(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = h(i, j);
    return out;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    IntMatrix t;
    const auto h = hermite_rows(a.transpose(), &t);
    const std::size_t n = a.cols();
    IntMatrix out(n, n - h.rows());
    for (std::size_t k = h.rows(); k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) out(j, k - h.rows()) = t(k, j);
    return out;
}

std::size_t rank(const IntMatrix& a) { return hermite_rows(a).rows(); }

namespace {

std::optional<std::vector<Integer>> solve_rows(const IntMatrix& h, std::vector<Integer> w) {
    std::vector<Integer> c(h.rows());
    std::size_t col = 0;
    for (std::size_t k = 0; k < h.rows(); ++k) {
        while (h(k, col) == 0) ++col;
        if (w[col] % h(k, col) != 0) return std::nullopt;
        c[k] = w[col] / h(k, col);
        if (c[k] != 0)
            for (std::size_t j = col; j < h.cols(); ++j) w[j] -= c[k] * h(k, j);
    }
    if (std::any_of(w.begin(), w.end(), [](const Integer& x) { return x != 0; })) return std::nullopt;
    return c;
}

} // namespace

Lattice::Lattice(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

Lattice Lattice::from_columns(const IntMatrix& g) {
    Lattice l(g.rows());
    l.basis_ = hermite_rows(g.transpose());
    if (l.basis_.cols() != l.ambient_) l.basis_ = IntMatrix(0, l.ambient_);
    return l;
}

Lattice Lattice::from_vectors(const std::vector<std::vector<Integer>>& gens, std::size_t ambient) {
    Lattice l(ambient);
    if (!gens.empty()) l.basis_ = hermite_rows(IntMatrix::from_rows(gens, ambient));
    return l;
}

Lattice Lattice::full(std::size_t ambient) {
    Lattice l(ambient);
    l.basis_ = IntMatrix::identity(ambient);
    return l;
}

bool Lattice::contains(const std::vector<Integer>& v) const {
    if (v.size() != ambient_) throw ShapeError("lattice membership: dimension mismatch");
    return solve_rows(basis_, v).has_value();
}

bool Lattice::contains(const Lattice& other) const {
    if (other.ambient_ != ambient_) throw ShapeError("lattice inclusion: dimension mismatch");
    for (std::size_t r = 0; r < other.basis_.rows(); ++r)
        if (!contains(other.basis_.row(r))) return false;
    return true;
}

Lattice Lattice::operator+(const Lattice& other) const {
    if (other.ambient_ != ambient_) throw ShapeError("lattice sum: dimension mismatch");
    Lattice l(ambient_);
    l.basis_ = hermite_rows(vstack(basis_, other.basis_));
    return l;
}

std::optional<std::vector<Integer>> Lattice::coordinates(const std::vector<Integer>& v) const {
    if (v.size() != ambient_) throw ShapeError("lattice coordinates: dimension mismatch");
    return solve_rows(basis_, v);
}

BasisSolver::BasisSolver(const IntMatrix& basis) {
    hermite_ = hermite_rows(basis.transpose(), &transform_);
    if (hermite_.rows() != basis.cols()) throw InvalidArgumentError("basis vectors are linearly dependent");
}

std::optional<std::vector<Integer>> BasisSolver::solve(const std::vector<Integer>& v) const {
    if (v.size() != hermite_.cols()) throw ShapeError("basis solve: dimension mismatch");
    if (transform_.rows() == 0) {
        if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; })) return std::nullopt;
        return std::vector<Integer>{};
    }
    auto c = solve_rows(hermite_, v);
    if (!c) return std::nullopt;
    std::vector<Integer> out(transform_.cols());
    for (std::size_t k = 0; k < c->size(); ++k)
        if ((*c)[k] != 0)
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += (*c)[k] * transform_(k, j);
    return out;
}

} // namespace horonerve
