#pragma once

#include "horonerve/abelian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace horonerve {

enum class TowerDirection { Inductive, Projective };

/// Finite sequence of groups A_0, ..., A_m with connecting maps. Inductive:
/// maps[i] : A_i -> A_{i+1}. Projective: maps[i] : A_{i+1} -> A_i.
/// Stages are reported 1-based.
struct Tower {
    TowerDirection direction = TowerDirection::Inductive;
    std::vector<AbelianGroup> groups;
    std::vector<IntMatrix> maps;

    /// Throws ShapeError when a map does not fit its groups, or
    /// InvalidArgumentError when it ignores relations.
    void validate() const;
    Homomorphism map(std::size_t i) const;
};

struct DirectLimitReport {
    /// im(A_i -> A_m) for i < m, as groups.
    std::vector<AbelianGroup> eventual_images;
    /// First stage from which the eventual images agree as subgroups of A_m.
    std::optional<std::size_t> stabilized_at;
    /// Eventual image of the next-to-last stage (A_m itself for one group).
    AbelianGroup limit;
};

/// Throws InvalidArgumentError on a projective tower.
DirectLimitReport direct_limit_report(const Tower& t);

enum class Lim1Verdict { Zero, NotML, Undetermined };

std::string to_string(Lim1Verdict v);

struct Lim1Report {
    Lim1Verdict verdict = Lim1Verdict::Undetermined;
    /// For not-ML: the stage whose image chain strictly decreases throughout,
    /// and the quotients A_k / im(A_l -> A_k) for l = k+1, ..., m.
    std::optional<std::size_t> witness_stage;
    std::vector<AbelianGroup> witness_quotients;
    std::string detail;
};

/// Mittag-Leffler test on the stages in view. For every stage k < m the
/// image chain im(A_l -> A_k), l = k..m, is computed; "zero" when every chain
/// ends with two equal terms, "not-ML" when some chain of at least two steps
/// decreases strictly at every step, "undetermined" otherwise. Throws
/// InvalidArgumentError on an inductive tower.
Lim1Report ml_lim1(const Tower& t);

struct InverseLimitReport {
    /// The limit of the finite tower, which is its last group.
    AbelianGroup finite_limit;
    /// im(A_m -> A_k) for every k.
    std::vector<AbelianGroup> stable_images;
};

InverseLimitReport inverse_limit(const Tower& t);

} // namespace horonerve
