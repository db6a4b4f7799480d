#include "horonerve/opencone.hpp"

#include "horonerve/cover.hpp"
#include "horonerve/error.hpp"
#include "horonerve/simplicial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace horonerve {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

ConedSpace::ConedSpace(std::vector<std::vector<double>> base, int levels, int subdivisions)
    : base_(std::move(base)), levels_(levels), subdivisions_(subdivisions) {
    if (base_.empty()) throw InvalidArgumentError("cone base is empty");
    if (levels < 1) throw InvalidArgumentError("a cone needs at least one level");
    // Consecutive grid points must be closer than 1/2.
    if (subdivisions < 3) throw InvalidArgumentError("grid needs at least 3 subdivisions per unit");
    dimension_ = static_cast<int>(base_.front().size());
    for (const auto& x : base_) {
        if (static_cast<int>(x.size()) != dimension_) throw InvalidArgumentError("base points differ in dimension");
        if (std::abs(norm(x) - 1.0) > kConeTolerance) throw InvalidArgumentError("base point off the unit sphere");
    }
    gram_.assign(base_.size(), std::vector<double>(base_.size()));
    for (std::size_t a = 0; a < base_.size(); ++a)
        for (std::size_t b = 0; b < base_.size(); ++b) gram_[a][b] = dot(base_[a], base_[b]);
    points_.push_back({-1, 0});
    const int top = (levels + 1) * subdivisions;
    for (int r = 0; r < static_cast<int>(base_.size()); ++r)
        for (int s = 1; s <= top; ++s) points_.push_back({r, s});
}

std::vector<double> ConedSpace::coordinates(const ConePoint& p) const {
    std::vector<double> out(dimension_, 0.0);
    if (p.ray < 0) return out;
    for (int k = 0; k < dimension_; ++k) out[k] = t(p) * base_.at(p.ray)[k];
    return out;
}

double ConedSpace::distance(const ConePoint& a, const ConePoint& b) const {
    const double ta = a.ray < 0 ? 0.0 : t(a), tb = b.ray < 0 ? 0.0 : t(b);
    if (a.ray < 0 || b.ray < 0) return ta + tb;
    const double sq = ta * ta + tb * tb - 2 * ta * tb * gram_[a.ray][b.ray];
    return std::sqrt(std::max(0.0, sq));
}

double embedding_distortion(const std::vector<std::vector<double>>& points,
                            const std::vector<std::vector<double>>& distances) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            if (distances[a][b] <= 0) throw InvalidArgumentError("distinct points at distance 0");
            std::vector<double> diff(points[a].size());
            for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = points[a][k] - points[b][k];
            const double r = norm(diff) / distances[a][b];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    if (points.size() < 2) return 1.0;
    if (lo <= kConeTolerance) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

ConedSpace embed_and_cone(const std::vector<std::vector<double>>& distances, int dimension, int levels,
                          int subdivisions, double max_distortion) {
    const int n = static_cast<int>(distances.size());
    if (n == 0) throw InvalidArgumentError("empty metric space");
    if (dimension < 1) throw InvalidArgumentError("embedding dimension must be positive");
    for (const auto& row : distances)
        if (static_cast<int>(row.size()) != n) throw ShapeError("distance matrix is not square");

    std::vector<std::vector<double>> points(n, std::vector<double>(dimension, 0.0));
    if (n == 1) {
        points[0][0] = 1.0;
    } else {
        Eigen::MatrixXd sq(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) sq(a, b) = distances[a][b] * distances[a][b];
        const Eigen::MatrixXd centering = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
        const Eigen::MatrixXd gram = -0.5 * centering * sq * centering;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
        // Eigenvalues come in increasing order.
        for (int k = 0; k < std::min(dimension, n); ++k) {
            const int col = n - 1 - k;
            const double lambda = std::max(0.0, solver.eigenvalues()(col));
            for (int a = 0; a < n; ++a) points[a][k] = std::sqrt(lambda) * solver.eigenvectors()(a, col);
        }
    }
    for (auto& p : points) {
        const double len = norm(p);
        if (len <= kConeTolerance)
            throw EmbeddingError("a point sits at the centroid and has no radial projection",
                                 std::numeric_limits<double>::infinity());
        for (auto& v : p) v /= len;
    }
    const double d = embedding_distortion(points, distances);
    if (!(d <= max_distortion))
        throw EmbeddingError("distortion " + std::to_string(d) + " exceeds " + std::to_string(max_distortion), d);
    ConedSpace c(std::move(points), levels, subdivisions);
    c.set_distortion(d);
    return c;
}

LevelNet build_net(const ConedSpace& c, int n) {
    if (n < 1 || n > c.levels()) throw InvalidArgumentError("level " + std::to_string(n) + " is not populated");
    LevelNet net{n, {0}};
    const int rays = static_cast<int>(c.rays());
    std::vector<double> nearest(rays);
    for (int r = 0; r < rays; ++r) nearest[r] = c.distance(c.at_level(r, n), c.at_level(0, n));
    while (true) {
        const auto far = std::max_element(nearest.begin(), nearest.end());
        if (*far <= 1.0 + kConeTolerance) break;
        const int r = static_cast<int>(far - nearest.begin());
        net.rays.push_back(r);
        for (int q = 0; q < rays; ++q) nearest[q] = std::min(nearest[q], c.distance(c.at_level(q, n), c.at_level(r, n)));
    }
    return net;
}

namespace {

CoverCheck cover_check(const ConedSpace& c, const LevelNet& net, double radius, double t_lo, double t_hi) {
    CoverCheck out;
    for (const auto& p : c.points()) {
        const double t = p.ray < 0 ? 0.0 : c.t(p);
        if (t < t_lo - kConeTolerance || t > t_hi + kConeTolerance) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int r : net.rays) best = std::min(best, c.distance(p, c.at_level(r, net.level)));
        ++out.checked;
        out.worst = std::max(out.worst, best);
        if (best > radius + kConeTolerance && out.holds) {
            out.holds = false;
            out.uncovered = p;
        }
    }
    return out;
}

}  // namespace

CoverCheck net_cover_check(const ConedSpace& c, const LevelNet& net) {
    return cover_check(c, net, 1.0, net.level, net.level);
}

CoverCheck band_cover_check(const ConedSpace& c, const LevelNet& net) {
    return cover_check(c, net, 2.0, net.level - 1, net.level + 1);
}

std::size_t minimal_net_size(const ConedSpace& c, int n) {
    const int rays = static_cast<int>(c.rays());
    if (rays > 20) throw ResourceLimitError("exhaustive net search is limited to 20 rays");
    std::vector<std::uint32_t> reach(rays, 0);
    for (int a = 0; a < rays; ++a)
        for (int b = 0; b < rays; ++b)
            if (c.distance(c.at_level(a, n), c.at_level(b, n)) <= 1.0 + kConeTolerance) reach[a] |= 1u << b;
    const std::uint32_t all = (1u << rays) - 1;
    std::size_t best = static_cast<std::size_t>(rays);
    for (std::uint32_t mask = 1; mask <= all; ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
        if (size >= best) continue;
        std::uint32_t covered = 0;
        for (int a = 0; a < rays; ++a)
            if (mask & (1u << a)) covered |= reach[a];
        if (covered == all) best = size;
    }
    return best;
}

ConeTowerReport cone_cover_tower(const ConedSpace& c, const std::vector<LevelNet>& nets, int max_i, int dim_cap) {
    if (max_i < 1) throw InvalidArgumentError("the tower needs at least one scale");
    std::vector<ConePoint> centers;
    for (const auto& net : nets)
        for (int r : net.rays) centers.push_back(c.at_level(r, net.level));
    const auto& pts = c.points();

    ConeTowerReport rep;
    std::vector<SetCore> cores;
    std::vector<std::shared_ptr<const SimplicialHomology>> homology;
    for (int i = 1; i <= max_i; ++i) {
        ConeCoverStage st;
        st.i = i;
        st.radius = std::pow(3.0, i);
        st.sets = centers.size();
        st.pen_inclusion = true;
        SetSystem sys;
        boost::dynamic_bitset<> common(pts.size());
        common.set();
        for (std::size_t m = 0; m < centers.size(); ++m) {
            // Pen(OY, 3^i) contains the ball because the center lies on the cone; both facts are
            // rechecked from raw coordinates rather than the Gram matrix.
            const auto pc = c.coordinates(centers[m]);
            const auto& x = c.base().at(centers[m].ray);
            std::vector<double> off(pc.size());
            for (std::size_t k = 0; k < pc.size(); ++k) off[k] = pc[k] - c.t(centers[m]) * x[k];
            st.pen_inclusion = st.pen_inclusion && norm(off) <= kConeTolerance;
            boost::dynamic_bitset<> ball(pts.size());
            for (std::size_t p = 0; p < pts.size(); ++p) {
                if (c.distance(pts[p], centers[m]) > st.radius + kConeTolerance) continue;
                ball.set(p);
                const auto q = c.coordinates(pts[p]);
                for (std::size_t k = 0; k < q.size(); ++k) off[k] = q[k] - pc[k];
                st.pen_inclusion = st.pen_inclusion && norm(off) <= st.radius + kConeTolerance;
            }
            common &= ball;
            sys.sets.push_back(std::move(ball));
            sys.labels.push_back(static_cast<int>(m));
        }
        st.full_simplex = !centers.empty() && common.any();
        cores.push_back(strong_collapse_core(sys, dim_cap));
        homology.push_back(std::make_shared<const SimplicialHomology>(cores.back().complex));
        st.core_vertices = cores.back().kept.size();
        for (int p = 0; p < dim_cap; ++p) st.homology.push_back(homology.back()->group(p));
        rep.stages.push_back(std::move(st));
    }
    for (int p = 0; p < dim_cap; ++p) {
        Tower t;
        t.direction = TowerDirection::Inductive;
        for (int i = 0; i < max_i; ++i) t.groups.push_back(homology[i]->group(p));
        for (int i = 0; i + 1 < max_i; ++i) {
            std::map<int, int> m;
            for (int v : cores[i].kept) m.emplace(v, cores[i + 1].retraction.at(v));
            SimplicialMap f(cores[i].complex, cores[i + 1].complex, std::move(m));
            t.maps.push_back(induced_map(f, p, *homology[i], *homology[i + 1]));
        }
        t.validate();
        rep.limits.push_back(direct_limit_report(t));
        rep.towers.push_back(std::move(t));
    }
    return rep;
}

} // namespace horonerve
