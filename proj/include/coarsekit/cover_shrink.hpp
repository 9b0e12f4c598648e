#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coarsekit/extension.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/partitions.hpp"

namespace coarse {

/// Cover whose sets carry colors 1..m+2; sets of one color should be
/// r-disjoint and every set should have diameter at most C*r.
struct ColoredCover {
    Cover cover;
    std::vector<int> color;
    double r = 1.0;
    double C = 1.0;

    int colors() const;
    int m() const { return colors() - 2; }
};

ColoredCover make_colored_cover(const PointedMetricSpace& space, Cover cover,
                                std::vector<int> color, double r, double C);

struct ColoredCoverReport {
    bool ok = true;
    double min_same_color_gap = kInf;
    double max_diameter = 0.0;
    std::size_t disjointness_violations = 0;
    std::size_t mesh_violations = 0;
    std::vector<std::string> violations;
};

ColoredCoverReport validate_colored_cover(const PointedMetricSpace& space, const ColoredCover& cc);

/// Canonical nerve map of a colored cover, with lambda = r * Lip(phi).
struct ColoredNerve {
    NerveMap nerve;
    double lip_phi = 0.0;
    double lambda = 0.0;
    std::vector<std::vector<std::size_t>> support;        // per point, sorted set indices with phi > 0
    std::vector<std::vector<std::size_t>> top_simplices;  // supports with m+2 vertices
    std::vector<double> preimage_diameters;               // per top simplex
    double preimage_bound = 0.0;                          // 2*C*r
};

ColoredNerve nerve_map(const PointedMetricSpace& space, const ColoredCover& cc);

struct SimplexStage {
    std::vector<std::size_t> vertices;
    std::size_t points = 0;
    std::size_t seeds = 0;
    double lip_phi = 0.0;
    double lip_psi = 0.0;
    double ratio = 0.0;
    bool fallback = false;
    bool radial = false;
};

struct ShrinkReport {
    std::vector<std::vector<std::size_t>> shrunk_sets;
    std::vector<std::size_t> A_r;
    int m = 0;
    double lambda = 0.0;
    double t = 0.0;
    std::size_t original_multiplicity = 0;
    std::size_t multiplicity = 0;
    double lebesgue = 0.0;
    double proved_lebesgue_bound = 0.0;  // r / (lambda (m+2) t); 0 when nothing was shrunk
    std::size_t closed_ball_failures = 0;  // points with no s(U) containing B(x, bound)
    double max_preimage_diameter = 0.0;
    double preimage_bound = 0.0;
    bool subset_ok = false;
    bool multiplicity_ok = false;
    bool lebesgue_ok = false;
    bool preimage_ok = false;
    std::vector<SimplexStage> stages;
    std::vector<std::string> warnings;
};

ShrinkReport shrink(const PointedMetricSpace& space, const ColoredCover& cc,
                    SphereStrategy strategy = SphereStrategy::Nearest);

// min over x of max over U of d(x, X \ U); +inf when some U is the whole space.
double lebesgue_number(const PointedMetricSpace& space,
                       std::span<const std::vector<std::size_t>> sets);

std::size_t multiplicity(std::size_t points, std::span<const std::vector<std::size_t>> sets);

}  // namespace coarse
