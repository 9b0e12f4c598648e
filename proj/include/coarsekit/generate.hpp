#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "coarsekit/cover_shrink.hpp"
#include "coarsekit/maps.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/random.hpp"

namespace coarse::gen {

// {0..N} with d = |i - j|, basepoint 0.
PointedMetricSpace integer_path(std::size_t N);

// {0..N}^2 with the l1 grid metric, basepoint (0,0).
PointedMetricSpace grid_2d(std::size_t N);

// `count` distinct integer points in [-extent, extent]^dim plus the origin
// (the basepoint), with euclidean distances.
PointedMetricSpace random_point_cloud(Rng& rng, std::size_t count, std::size_t dim,
                                      int extent);

struct OscillatingDirections {
    PointedMetricSpace space;
    SphereMap f;
};

// f(2n) at chord distance 1/sqrt(n) from the pole e1, every other value at the pole.
OscillatingDirections oscillating_directions(std::size_t N);

struct IntervalCover {
    PointedMetricSpace space;
    ColoredCover cover;
};

// Colored intervals of width 2r overlapping by 1.25r on {0..N}, colors cycling 1, 2, 3.
IntervalCover colored_interval_cover(std::size_t N, double r);

struct RestrictedConeMap {
    PointedMetricSpace space;
    SphereMap global;                 // defined on all of X
    SphereMap restricted;             // its restriction to A
    std::vector<std::size_t> subset;  // A, always containing the basepoint
    double twist = 0.0;
};

// x -> |x| * direction, where the direction is x/|x| rotated in the first
// coordinate plane by twist*log(1+|x|); the induced map is (1+twist)-Lipschitz.
RestrictedConeMap restricted_cone_map(Rng& rng, std::size_t count, std::size_t dim,
                                      double keep = 0.5);

struct Params {
    std::string kind;
    std::uint64_t seed = 0;
    std::size_t size = 16;
    double r = 4.0;
    std::size_t dim = 2;
};

// Writes the instance files for `kind` into `dir` and returns their paths.
std::vector<std::filesystem::path> generate_instance(const Params& p,
                                                     const std::filesystem::path& dir);

const std::vector<std::string>& instance_kinds();

}  // namespace coarse::gen
