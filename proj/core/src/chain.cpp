#include "horonerve/chain.hpp"

#include "horonerve/error.hpp"

#include <algorithm>
#include <set>

namespace horonerve {

void add_scaled(Chain& target, const Chain& source, const Integer& factor) {
    if (factor == 0) return;
    for (const auto& [cell, coef] : source) {
        auto [it, inserted] = target.try_emplace(cell, 0);
        it->second += factor * coef;
        if (it->second == 0) target.erase(it);
    }
}

ChainComplex::ChainComplex(std::vector<std::size_t> cells, std::vector<std::vector<Chain>> boundary)
    : cells_(std::move(cells)), boundary_(std::move(boundary)) {
    boundary_.resize(cells_.size());
    for (int d = 0; d <= top(); ++d) {
        if (d == 0) {
            boundary_[0].assign(cells_[0], Chain{});
            continue;
        }
        if (boundary_[d].size() != cells_[d]) throw ShapeError("boundary list size differs from cell count");
        for (const auto& col : boundary_[d])
            for (const auto& [cell, coef] : col)
                if (cell >= cells_[d - 1] || coef == 0) throw ShapeError("boundary entry out of range");
    }
}

const Chain& ChainComplex::boundary(int d, std::size_t cell) const {
    if (d < 0 || d > top() || cell >= cells_[d]) throw InvalidArgumentError("no such cell");
    return boundary_[d][cell];
}

Chain ChainComplex::boundary_of(int d, const Chain& chain) const {
    Chain out;
    if (d <= 0) return out;
    for (const auto& [cell, coef] : chain) add_scaled(out, boundary(d, cell), coef);
    return out;
}

IntMatrix ChainComplex::boundary_matrix(int d) const {
    IntMatrix m(cells(d - 1), cells(d));
    if (d <= 0 || d > top()) return m;
    for (std::size_t c = 0; c < cells_[d]; ++c)
        for (const auto& [r, v] : boundary_[d][c]) m(r, c) = v;
    return m;
}

void ChainComplex::check_square_zero() const {
    for (int d = 2; d <= top(); ++d)
        for (std::size_t c = 0; c < cells_[d]; ++c)
            if (!boundary_of(d - 1, boundary_[d][c]).empty())
                throw InvalidArgumentError("boundary squared is nonzero in degree " + std::to_string(d));
}

HomologyEngine::HomologyEngine(ChainComplex complex, int max_degree) : complex_(std::move(complex)) {
    const int top = complex_.top();
    if (top < 0) return;
    std::vector<std::vector<Chain>> cols(top + 1);
    std::vector<std::vector<std::set<std::size_t>>> rows(top + 1);
    std::vector<std::vector<char>> alive(top + 1);
    for (int d = 0; d <= top; ++d) {
        alive[d].assign(complex_.cells(d), 1);
        rows[d].resize(complex_.cells(d));
        cols[d].resize(complex_.cells(d));
    }
    for (int d = 1; d <= top; ++d)
        for (std::size_t c = 0; c < complex_.cells(d); ++c) {
            cols[d][c] = complex_.boundary(d, c);
            for (const auto& entry : cols[d][c]) rows[d - 1][entry.first].insert(c);
        }

    auto eliminate = [&](int d, std::size_t a, std::size_t b) {
        Step step{d, a, b, cols[d][b].at(a), cols[d][b], {}};
        for (std::size_t c : rows[d - 1][a]) step.row_a.emplace(c, cols[d][c].at(a));
        for (const auto& [c, coef] : step.row_a) {
            if (c == b) continue;
            const Integer factor = -coef * step.eps;
            auto& col = cols[d][c];
            for (const auto& [x, v] : step.boundary_b) {
                auto [it, inserted] = col.try_emplace(x, 0);
                it->second += factor * v;
                if (it->second == 0) {
                    col.erase(it);
                    rows[d - 1][x].erase(c);
                } else {
                    rows[d - 1][x].insert(c);
                }
            }
        }
        for (const auto& entry : cols[d][b]) rows[d - 1][entry.first].erase(b);
        cols[d][b].clear();
        alive[d][b] = 0;
        alive[d - 1][a] = 0;
        rows[d - 1][a].clear();
        if (d - 1 >= 1) {
            for (const auto& entry : cols[d - 1][a]) rows[d - 2][entry.first].erase(a);
            cols[d - 1][a].clear();
        }
        if (d < top) {
            for (std::size_t e : rows[d][b]) cols[d + 1][e].erase(b);
            rows[d][b].clear();
        }
        steps_.push_back(std::move(step));
    };

    for (int d = top; d >= 1; --d) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t b = 0; b < complex_.cells(d); ++b) {
                if (!alive[d][b]) continue;
                std::size_t best = 0;
                std::size_t best_weight = SIZE_MAX;
                for (const auto& [a, coef] : cols[d][b])
                    if ((coef == 1 || coef == -1) && rows[d - 1][a].size() < best_weight) {
                        best = a;
                        best_weight = rows[d - 1][a].size();
                    }
                if (best_weight == SIZE_MAX) continue;
                eliminate(d, best, b);
                progress = true;
            }
        }
    }

    degrees_.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        auto& deg = degrees_[d];
        for (std::size_t c = 0; c < complex_.cells(d); ++c)
            if (alive[d][c]) {
                deg.position.emplace(c, deg.alive.size());
                deg.alive.push_back(c);
            }
    }
    auto dense = [&](int d) {
        // Reduced boundary C'_d -> C'_{d-1}.
        const auto& src = degrees_[d];
        IntMatrix m(d == 0 ? 0 : degrees_[d - 1].alive.size(), src.alive.size());
        if (d == 0) return m;
        for (std::size_t j = 0; j < src.alive.size(); ++j)
            for (const auto& [x, v] : cols[d][src.alive[j]]) m(degrees_[d - 1].position.at(x), j) = v;
        return m;
    };

    computed_ = max_degree < 0 ? top + 1 : std::min(top, max_degree) + 1;
    for (int d = 0; d < computed_; ++d) {
        auto& deg = degrees_[d];
        deg.kernel = kernel_basis(dense(d));
        deg.solver.emplace(deg.kernel);
        const std::size_t z = deg.kernel.cols();
        IntMatrix next = d < top ? dense(d + 1) : IntMatrix(deg.alive.size(), 0);
        IntMatrix coords(z, next.cols());
        for (std::size_t j = 0; j < next.cols(); ++j) {
            const auto w = deg.solver->solve(next.column(j));
            if (!w) throw InvalidArgumentError("boundary squared is nonzero in degree " + std::to_string(d + 1));
            for (std::size_t i = 0; i < z; ++i) coords(i, j) = (*w)[i];
        }
        const auto s = smith_form(coords);
        deg.p = s.p;
        for (std::size_t i = 0; i < z; ++i) {
            if (i < s.rank) {
                if (s.d(i, i) > 1) {
                    deg.torsion_index.push_back(i);
                    deg.torsion_order.push_back(s.d(i, i));
                }
            } else {
                deg.free_index.push_back(i);
            }
        }
        deg.group.torsion = deg.torsion_order;
        deg.group.rank = deg.free_index.size();
        std::vector<std::size_t> order = deg.torsion_index;
        order.insert(order.end(), deg.free_index.begin(), deg.free_index.end());
        for (std::size_t i : order) {
            const auto cycle = deg.kernel * s.p_inv.column(i);
            Chain reduced;
            for (std::size_t k = 0; k < cycle.size(); ++k)
                if (cycle[k] != 0) reduced.emplace(deg.alive[k], cycle[k]);
            deg.generators.push_back(lift(d, std::move(reduced)));
        }
    }
}

namespace {

void require_computed(bool computed, int d) {
    if (!computed) throw InvalidArgumentError("homology in degree " + std::to_string(d) + " was not computed");
}

} // namespace

const AbelianGroup& HomologyEngine::group(int d) const {
    static const AbelianGroup trivial;
    require_computed(computed(d), d);
    if (d < 0 || d >= static_cast<int>(degrees_.size())) return trivial;
    return degrees_[d].group;
}

const std::vector<Chain>& HomologyEngine::generators(int d) const {
    static const std::vector<Chain> none;
    require_computed(computed(d), d);
    if (d < 0 || d >= static_cast<int>(degrees_.size())) return none;
    return degrees_[d].generators;
}

std::size_t HomologyEngine::reduced_cells(int d) const {
    if (d < 0 || d >= static_cast<int>(degrees_.size())) return 0;
    return degrees_[d].alive.size();
}

Chain HomologyEngine::project(int d, Chain chain) const {
    for (const auto& s : steps_) {
        if (s.dim == d + 1) {
            auto it = chain.find(s.a);
            if (it != chain.end()) {
                const Integer v = it->second;
                add_scaled(chain, s.boundary_b, -s.eps * v);
            }
        } else if (s.dim == d) {
            chain.erase(s.b);
        }
    }
    return chain;
}

Chain HomologyEngine::lift(int d, Chain chain) const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        if (it->dim != d) continue;
        Integer sum = 0;
        for (const auto& [c, coef] : chain) {
            auto r = it->row_a.find(c);
            if (r != it->row_a.end()) sum += coef * r->second;
        }
        if (sum != 0) add_scaled(chain, Chain{{it->b, 1}}, -it->eps * sum);
    }
    return chain;
}

std::vector<Integer> HomologyEngine::coordinates(int d, const Chain& cycle) const {
    require_computed(computed(d), d);
    if (d < 0 || d >= static_cast<int>(degrees_.size())) {
        if (!cycle.empty()) throw InvalidArgumentError("chain in a degree without cells");
        return {};
    }
    if (!complex_.boundary_of(d, cycle).empty()) throw InvalidArgumentError("chain is not a cycle");
    const auto& deg = degrees_[d];
    const auto reduced = project(d, cycle);
    std::vector<Integer> v(deg.alive.size());
    for (const auto& [c, coef] : reduced) v[deg.position.at(c)] = coef;
    const auto w = deg.solver->solve(v);
    if (!w) throw InvalidArgumentError("projected chain left the cycle lattice");
    const auto u = deg.p * *w;
    std::vector<Integer> out;
    for (std::size_t k = 0; k < deg.torsion_index.size(); ++k)
        out.push_back(mod_floor(u[deg.torsion_index[k]], deg.torsion_order[k]));
    for (std::size_t i : deg.free_index) out.push_back(u[i]);
    return out;
}

} // namespace horonerve
