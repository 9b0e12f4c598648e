#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coarsekit/field.hpp"
#include "coarsekit/maps.hpp"
#include "coarsekit/metric_space.hpp"

namespace coarse {

/// Finite indexed family of point sets whose union is the whole space.
struct Cover {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> sets;  // sorted point indices
    bool proper = false;                         // no member equals the whole space

    std::size_t size() const { return sets.size(); }
};

Cover make_cover(const PointedMetricSpace& space, std::vector<std::string> names,
                 std::vector<std::vector<std::size_t>> sets);

// n x k matrix of d(x, X \ U_i); +inf when U_i = X.
Field complement_distances(const PointedMetricSpace& space, const Cover& cover);

/// phi_i(x) = d(x, X\U_i) / S(x) with S(x) = sum_j d(x, X\U_j).
struct PartitionOfUnity {
    Field phi;                  // n x k
    std::vector<double> total;  // S(x)
};

PartitionOfUnity canonical_partition(const PointedMetricSpace& space, const Cover& cover);

// min over non-basepoint x with |x| > 0 of S(x)/|x|; 0 when some S(x) = 0.
double sublinearity_gap(const PointedMetricSpace& space, const Cover& cover);
double sublinearity_gap(const PointedMetricSpace& space, const PartitionOfUnity& p);

struct PartitionCertificate {
    double epsilon = 0.0;        // sublinearity gap
    double proved_bound = 0.0;   // 3k/epsilon + 1
    double measured = 0.0;       // max over i and pairs of ||x|phi_i(x) - |y|phi_i(y)| / d(x,y)
    std::size_t violations = 0;
    double cone_lip = 0.0;       // Lip of x -> |x| phi(x) in R^k
    std::size_t converse_violations = 0;  // points with S(x) <= |x| / (2 cone_lip)
};

PartitionCertificate certify_partition_lipschitz(const PointedMetricSpace& space,
                                                 const Cover& cover);

/// Canonical map to the nerve: barycentric coordinates phi(x) and their cone lift |x| phi(x).
struct NerveMap {
    PartitionOfUnity partition;
    Field simplex_coords;
    Field cone_values;
};

NerveMap nerve_map(const PointedMetricSpace& space, const PartitionOfUnity& p);

struct ConvexCombination {
    Field h;
    double lip_f = 0.0;      // Lip(f')
    double lip_g = 0.0;      // Lip(g')
    double lip_gamma = 0.0;  // Lip(gamma')
    double lip_h = 0.0;      // Lip(h')
    double bound = 0.0;      // lip_f + lip_g + 2 lip_gamma + 2
    bool ok = false;
};

// h = alpha*f + beta*g with (alpha, beta) = gamma; all fields total on the space.
ConvexCombination convex_combine(const PointedMetricSpace& space, const Field& gamma,
                                 const Field& f, const Field& g);

}  // namespace coarse
