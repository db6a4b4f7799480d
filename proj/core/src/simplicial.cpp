#include "horonerve/simplicial.hpp"

#include "horonerve/error.hpp"
#include "horonerve/limits.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace horonerve {

namespace {

std::string format_simplex(const Simplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

// Sorts `v` in place and returns the sign of the sorting permutation, or 0 if
// `v` has a repeated entry.
int sort_with_sign(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j]) return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

// Calls visit on every subset of `s` with size <= max_size, in a fixed order.
template <class Visit>
void for_each_subset(const Simplex& s, std::size_t max_size, Visit&& visit) {
    const std::size_t n = s.size();
    Simplex subset;
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k <= std::min(n, max_size); ++k) {
        idx.resize(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            subset.clear();
            for (std::size_t i : idx) subset.push_back(s[i]);
            visit(subset);
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

}  // namespace

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
    std::size_t h = s.size();
    for (int v : s) h ^= std::hash<int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<Simplex>& facets, int dim_cap) {
    if (dim_cap < kNoCap) throw InvalidArgumentError("dimension cap must be >= 0");
    SimplicialComplex c;
    c.cap_ = dim_cap;
    std::vector<std::unordered_set<Simplex, SimplexHash>> sets;
    std::size_t total = 0;
    const std::size_t budget = face_budget();
    for (Simplex f : facets) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        if (f.empty()) continue;
        std::size_t max_size = f.size();
        if (dim_cap != kNoCap && f.size() > static_cast<std::size_t>(dim_cap) + 1) {
            max_size = dim_cap + 1;
            c.truncated_ = true;
        }
        if (sets.size() < max_size) sets.resize(max_size);
        if (f.size() == max_size && sets[max_size - 1].count(f)) continue;
        for_each_subset(f, max_size, [&](const Simplex& s) {
            if (sets[s.size() - 1].insert(s).second && ++total > budget)
                throw ResourceLimitError("simplicial complex exceeds the face budget of " + std::to_string(budget));
        });
    }
    c.faces_.resize(sets.size());
    for (std::size_t d = 0; d < sets.size(); ++d) c.faces_[d].assign(sets[d].begin(), sets[d].end());
    c.finish();
    return c;
}

SimplicialComplex SimplicialComplex::flag_complex(const std::vector<int>& vertices,
                                                  const std::function<bool(int, int)>& adjacent, int dim_cap) {
    if (dim_cap < 0) throw InvalidArgumentError("dimension cap must be >= 0");
    std::vector<int> vs = vertices;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    const std::size_t n = vs.size();
    std::vector<std::vector<std::size_t>> later(n);  // neighbours with a larger position
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (adjacent(vs[i], vs[j])) later[i].push_back(j);

    SimplicialComplex c;
    c.cap_ = dim_cap;
    const std::size_t budget = face_budget();
    std::size_t total = 0;
    Simplex clique;
    auto emit = [&] {
        if (c.faces_.size() < clique.size()) c.faces_.resize(clique.size());
        c.faces_[clique.size() - 1].push_back(clique);
        if (++total > budget)
            throw ResourceLimitError("flag complex exceeds the face budget of " + std::to_string(budget));
    };
    std::function<void(const std::vector<std::size_t>&)> grow = [&](const std::vector<std::size_t>& candidates) {
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const std::size_t v = candidates[k];
            clique.push_back(vs[v]);
            emit();
            std::vector<std::size_t> next;
            std::set_intersection(candidates.begin() + k + 1, candidates.end(), later[v].begin(), later[v].end(),
                                  std::back_inserter(next));
            if (!next.empty()) {
                if (clique.size() == static_cast<std::size_t>(dim_cap) + 1)
                    c.truncated_ = true;
                else
                    grow(next);
            }
            clique.pop_back();
        }
    };
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    grow(all);
    c.finish();
    return c;
}

void SimplicialComplex::finish() {
    while (!faces_.empty() && faces_.back().empty()) faces_.pop_back();
    index_.assign(faces_.size(), {});
    for (std::size_t d = 0; d < faces_.size(); ++d) {
        std::sort(faces_[d].begin(), faces_[d].end());
        index_[d].reserve(faces_[d].size());
        for (std::size_t i = 0; i < faces_[d].size(); ++i) index_[d].emplace(faces_[d][i], i);
    }
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
    static const std::vector<Simplex> none;
    if (d < 0 || d > dimension()) return none;
    return faces_[d];
}

std::size_t SimplicialComplex::face_count() const {
    std::size_t n = 0;
    for (const auto& level : faces_) n += level.size();
    return n;
}

std::optional<std::size_t> SimplicialComplex::index(const Simplex& s) const {
    const int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d > dimension()) return std::nullopt;
    auto it = index_[d].find(s);
    if (it == index_[d].end()) return std::nullopt;
    return it->second;
}

std::vector<int> SimplicialComplex::vertices() const {
    std::vector<int> out;
    for (const auto& s : simplices(0)) out.push_back(s[0]);
    return out;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<std::vector<char>> covered(faces_.size());
    for (std::size_t d = 0; d < faces_.size(); ++d) covered[d].assign(faces_[d].size(), 0);
    for (int d = dimension(); d >= 1; --d)
        for (const auto& s : faces_[d])
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + i);
                covered[d - 1][index_[d - 1].at(face)] = 1;
            }
    std::vector<Simplex> out;
    for (std::size_t d = 0; d < faces_.size(); ++d)
        for (std::size_t i = 0; i < faces_[d].size(); ++i)
            if (!covered[d][i]) out.push_back(faces_[d][i]);
    return out;
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::function<bool(int)>& keep) const {
    SimplicialComplex c;
    c.cap_ = cap_;
    c.truncated_ = truncated_;
    c.faces_.resize(faces_.size());
    for (std::size_t d = 0; d < faces_.size(); ++d)
        for (const auto& s : faces_[d])
            if (std::all_of(s.begin(), s.end(), keep)) c.faces_[d].push_back(s);
    c.finish();
    return c;
}

std::vector<std::vector<int>> SimplicialComplex::components() const {
    const auto& verts = simplices(0);
    std::vector<std::size_t> parent(verts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : simplices(1)) {
        const auto a = find(index_[0].at({e[0]})), b = find(index_[0].at({e[1]}));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::vector<int>> groups;
    for (std::size_t i = 0; i < verts.size(); ++i) groups[find(i)].push_back(verts[i][0]);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

ChainComplex SimplicialComplex::chain_complex() const {
    std::vector<std::size_t> cells;
    std::vector<std::vector<Chain>> boundary(faces_.size());
    for (std::size_t d = 0; d < faces_.size(); ++d) {
        cells.push_back(faces_[d].size());
        if (d == 0) continue;
        boundary[d].reserve(faces_[d].size());
        for (const auto& s : faces_[d]) {
            Chain c;
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + i);
                c.emplace(index_[d - 1].at(face), i % 2 == 0 ? 1 : -1);
            }
            boundary[d].push_back(std::move(c));
        }
    }
    return ChainComplex(std::move(cells), std::move(boundary));
}

Chain SimplicialComplex::oriented(const Simplex& vertices) const {
    Simplex s = vertices;
    const int sign = sort_with_sign(s);
    if (sign == 0) return {};
    const auto i = index(s);
    if (!i) throw InvalidArgumentError("not a face: " + format_simplex(s));
    return Chain{{*i, sign}};
}

SimplicialHomology::SimplicialHomology(std::shared_ptr<const SimplicialComplex> complex, bool reduced)
    : complex_(std::move(complex)), reduced_(reduced) {
    const auto comps = complex_->components();
    component_of_.assign(complex_->count(0), 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c]) component_of_[*complex_->index({v})] = static_cast<int>(c);
    if (reduced_) {
        h0_ = AbelianGroup::free(comps.empty() ? 0 : comps.size() - 1);
        for (std::size_t c = 1; c < comps.size(); ++c)
            h0_generators_.push_back(
                Chain{{*complex_->index({comps[c][0]}), 1}, {*complex_->index({comps[0][0]}), -1}});
    } else {
        h0_ = AbelianGroup::free(comps.size());
        for (const auto& comp : comps) h0_generators_.push_back(Chain{{*complex_->index({comp[0]}), 1}});
    }
    if (complex_->dimension() >= 1)
        engine_.emplace(complex_->chain_complex(), complex_->truncated() ? complex_->dim_cap() - 1 : -1);
}

bool SimplicialHomology::trusted(int d) const noexcept {
    return !complex_->truncated() || d <= complex_->dim_cap() - 1;
}

namespace {

void require_trusted(const SimplicialHomology& h, int d) {
    if (!h.trusted(d))
        throw InvalidArgumentError("degree " + std::to_string(d) + " lies above the cap of a truncated complex");
}

} // namespace

const AbelianGroup& SimplicialHomology::group(int d) const {
    static const AbelianGroup trivial;
    require_trusted(*this, d);
    if (d == 0) return h0_;
    if (d < 0 || !engine_) return trivial;
    return engine_->group(d);
}

const std::vector<Chain>& SimplicialHomology::generators(int d) const {
    static const std::vector<Chain> none;
    require_trusted(*this, d);
    if (d == 0) return h0_generators_;
    if (d < 0 || !engine_) return none;
    return engine_->generators(d);
}

std::vector<Integer> SimplicialHomology::coordinates(int d, const Chain& cycle) const {
    require_trusted(*this, d);
    if (d == 0) {
        std::vector<Integer> sums(h0_generators_.size() + (reduced_ && !component_of_.empty() ? 1 : 0));
        for (const auto& [cell, coef] : cycle) {
            if (cell >= component_of_.size()) throw InvalidArgumentError("0-chain names an unknown vertex");
            sums[component_of_[cell]] += coef;
        }
        if (!reduced_) return sums;
        Integer total = 0;
        for (const auto& s : sums) total += s;
        if (total != 0) throw InvalidArgumentError("chain is not a reduced 0-cycle");
        if (!sums.empty()) sums.erase(sums.begin());
        return sums;
    }
    if (d < 0 || !engine_) {
        if (!cycle.empty()) throw InvalidArgumentError("chain in a degree without simplices");
        return {};
    }
    return engine_->coordinates(d, cycle);
}

SimplicialMap::SimplicialMap(std::shared_ptr<const SimplicialComplex> source,
                             std::shared_ptr<const SimplicialComplex> target, std::map<int, int> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
    for (int v : source_->vertices())
        if (!map_.count(v)) throw InvalidArgumentError("vertex map misses source vertex " + std::to_string(v));
    for (const auto& s : source_->maximal_simplices())
        if (!target_->contains(image(s)))
            throw NonSimplicialMapError("image of " + format_simplex(s) + " is " + format_simplex(image(s)) +
                                        ", not a face of the target");
}

int SimplicialMap::operator()(int v) const {
    auto it = map_.find(v);
    if (it == map_.end()) throw InvalidArgumentError("vertex " + std::to_string(v) + " is not in the source");
    return it->second;
}

Simplex SimplicialMap::image(const Simplex& s) const {
    Simplex out;
    out.reserve(s.size());
    for (int v : s) out.push_back((*this)(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Chain SimplicialMap::push(int d, const Chain& chain) const {
    Chain out;
    const auto& faces = source_->simplices(d);
    for (const auto& [cell, coef] : chain) {
        if (cell >= faces.size()) throw InvalidArgumentError("chain names an unknown simplex");
        Simplex img;
        for (int v : faces[cell]) img.push_back((*this)(v));
        add_scaled(out, target_->oriented(img), coef);
    }
    return out;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (f.target_ptr() != g.source_ptr() && !(f.target() == g.source()))
        throw DomainMismatchError("cannot compose: target of the first map is not the source of the second");
    std::map<int, int> m;
    for (const auto& [v, w] : f.vertex_map()) m.emplace(v, g(w));
    return SimplicialMap(f.source_ptr(), g.target_ptr(), std::move(m));
}

ContiguityResult contiguous(const SimplicialMap& f, const SimplicialMap& g,
                            const std::function<bool(const Simplex&)>& spans) {
    auto same = [](const auto& a, const auto& b) { return a == b || *a == *b; };
    if (!same(f.source_ptr(), g.source_ptr()) || !same(f.target_ptr(), g.target_ptr()))
        throw DomainMismatchError("contiguity needs maps with the same source and target");
    const auto& target = f.target();
    auto default_spans = [&](const Simplex& u) {
        const int cap = target.dim_cap();
        if (cap == SimplicialComplex::kNoCap || u.size() <= static_cast<std::size_t>(cap) + 1)
            return target.contains(u);
        bool ok = true;
        for_each_subset(u, cap + 1, [&](const Simplex& s) {
            if (ok && s.size() == static_cast<std::size_t>(cap) + 1 && !target.contains(s)) ok = false;
        });
        return ok;
    };
    for (const auto& s : f.source().maximal_simplices()) {
        Simplex u = f.image(s);
        const Simplex v = g.image(s);
        u.insert(u.end(), v.begin(), v.end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        if (!(spans ? spans(u) : default_spans(u))) return {false, s};
    }
    return {};
}

IntMatrix induced_map(const SimplicialMap& f, int degree, const SimplicialHomology& source,
                      const SimplicialHomology& target) {
    if (!(source.complex() == f.source()) || !(target.complex() == f.target()))
        throw DomainMismatchError("homology objects do not match the map's complexes");
    if (source.reduced() != target.reduced())
        throw DomainMismatchError("cannot mix reduced and unreduced homology");
    const auto& gens = source.generators(degree);
    IntMatrix m(target.group(degree).dimension(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const auto coords = target.coordinates(degree, f.push(degree, gens[j]));
        for (std::size_t i = 0; i < coords.size(); ++i) m(i, j) = coords[i];
    }
    return m;
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& c, int times) {
    if (times < 0) throw InvalidArgumentError("subdivision count must be >= 0");
    SimplicialComplex current = c;
    for (int round = 0; round < times; ++round) {
        std::map<Simplex, int> id;
        for (int d = 0; d <= current.dimension(); ++d)
            for (const auto& s : current.simplices(d)) id.emplace(s, static_cast<int>(id.size()));
        std::vector<Simplex> facets;
        for (Simplex m : current.maximal_simplices()) {
            do {
                Simplex flag, prefix;
                for (int v : m) {
                    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
                    flag.push_back(id.at(prefix));
                }
                facets.push_back(std::move(flag));
            } while (std::next_permutation(m.begin(), m.end()));
        }
        const bool was_truncated = current.truncated();
        current = SimplicialComplex::from_facets(facets, current.dim_cap());
        if (was_truncated) current.truncated_ = true;
    }
    return current;
}

} // namespace horonerve
