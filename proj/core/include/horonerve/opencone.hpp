#pragma once
// Discretised open cones over finite subsets of a unit sphere, level nets,
// and the nerve tower of the cone covers at scales 3^i.
#include "horonerve/abelian.hpp"
#include "horonerve/tower.hpp"

#include <optional>
#include <vector>

namespace horonerve {

/// Tolerance for every floating-point comparison in this module.
inline constexpr double kConeTolerance = 1e-9;

/// A cone point t·x_ray with t = step / subdivisions. The apex (t = 0) is a
/// single point with ray -1.
struct ConePoint {
    int ray = -1;
    int step = 0;
};

/// Base points on the unit sphere of R^dimension and the cone over them,
/// truncated at t <= levels + 1 and sampled at t in (1/subdivisions) Z.
class ConedSpace {
public:
    /// Throws InvalidArgumentError unless every base point has unit norm and
    /// all have the same dimension.
    ConedSpace(std::vector<std::vector<double>> base, int levels, int subdivisions = 4);

    int dimension() const noexcept { return dimension_; }
    int levels() const noexcept { return levels_; }
    int subdivisions() const noexcept { return subdivisions_; }
    std::size_t rays() const noexcept { return base_.size(); }
    const std::vector<std::vector<double>>& base() const noexcept { return base_; }
    /// Bi-Lipschitz distortion of the embedding that produced the base; 1
    /// for bases given directly.
    double distortion() const noexcept { return distortion_; }
    void set_distortion(double d) { distortion_ = d; }

    /// Apex first, then ray by ray with increasing t.
    const std::vector<ConePoint>& points() const noexcept { return points_; }
    double t(const ConePoint& p) const { return static_cast<double>(p.step) / subdivisions_; }
    std::vector<double> coordinates(const ConePoint& p) const;
    double distance(const ConePoint& a, const ConePoint& b) const;
    /// The point level·x_ray.
    ConePoint at_level(int ray, int level) const { return {ray, level * subdivisions_}; }

private:
    std::vector<std::vector<double>> base_;
    std::vector<std::vector<double>> gram_;
    int dimension_ = 0;
    int levels_ = 0;
    int subdivisions_ = 0;
    double distortion_ = 1.0;
    std::vector<ConePoint> points_;
};

/// Embeds a finite metric space (distance matrix) in the unit sphere of
/// R^dimension: classical multidimensional scaling, then radial projection
/// from the centroid. Throws EmbeddingError carrying the achieved distortion
/// when it exceeds `max_distortion` or when a point lands on the centroid.
ConedSpace embed_and_cone(const std::vector<std::vector<double>>& distances, int dimension, int levels,
                          int subdivisions = 4, double max_distortion = 4.0);

/// max ratio / min ratio of |e_i - e_j| / d_ij over pairs i < j.
double embedding_distortion(const std::vector<std::vector<double>>& points,
                            const std::vector<std::vector<double>>& distances);

/// Centers p^n_m = n·x_ray at one level.
struct LevelNet {
    int level = 0;
    std::vector<int> rays;
};

/// Greedy farthest-point net of Y×{n} with closed radius-1 balls, starting
/// from ray 0.
LevelNet build_net(const ConedSpace& c, int n);

struct CoverCheck {
    bool holds = true;
    std::size_t checked = 0;
    std::optional<ConePoint> uncovered;
    double worst = 0.0;  // largest distance to the nearest center
};

/// Every point of Y×{n} lies within 1 of a center.
CoverCheck net_cover_check(const ConedSpace& c, const LevelNet& net);
/// Every grid point with t in [n-1, n+1] lies within 2 of a center.
CoverCheck band_cover_check(const ConedSpace& c, const LevelNet& net);

/// Smallest set of level-n centers (drawn from Y×{n}) covering Y×{n} with
/// radius 1, by exhaustive search. Throws ResourceLimitError past 20 rays.
std::size_t minimal_net_size(const ConedSpace& c, int n);

struct ConeCoverStage {
    int i = 0;
    double radius = 0.0;
    std::size_t sets = 0;
    bool full_simplex = false;    // all balls share a point
    bool pen_inclusion = false;   // every member within 3^i of its center
    std::size_t core_vertices = 0;
    std::vector<AbelianGroup> homology;  // degrees 0..dim_cap-1
};

struct ConeTowerReport {
    std::vector<ConeCoverStage> stages;
    /// One inductive tower per degree; maps are induced by the identity on centers.
    std::vector<Tower> towers;
    std::vector<DirectLimitReport> limits;
};

/// Covers by B(p^n_m, 3^i) ∩ cone for i = 1..max_i over the nets of levels
/// 1..N. Nerves are computed as strong-collapse cores.
ConeTowerReport cone_cover_tower(const ConedSpace& c, const std::vector<LevelNet>& nets, int max_i, int dim_cap = 3);

} // namespace horonerve
