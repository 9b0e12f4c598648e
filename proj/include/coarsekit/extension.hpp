#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsekit/field.hpp"
#include "coarsekit/maps.hpp"
#include "coarsekit/metric_space.hpp"

namespace coarse {

// g(x) = min_a f(a) + L*d(x,a) on every point of the space, with g = f copied on A.
// L defaults to Lip(f); a smaller L is rejected.
std::vector<double> mcshane_extend(const PointedMetricSpace& space,
                                   std::span<const std::size_t> domain,
                                   std::span<const double> values,
                                   std::optional<double> L = std::nullopt);

// Closest point of `set` to x, ties broken by lowest index; nullopt for an empty set.
std::optional<std::size_t> nearest_in(const PointedMetricSpace& space, std::size_t x,
                                      std::span<const std::size_t> set);

struct TransferResult {
    SphereMap g;
    std::vector<std::size_t> source;  // a(x) for each point of g's domain
    double epsilon = 0.0;
    std::size_t checks = 0;
    std::size_t violations = 0;  // pairs breaking |g'(x)-g'(y)| <= lambda*d + 2*eps*lambda + M + 2*eps
};

// g(x) = f(a(x)) on A1 = {x in targets : d(x,A) < eps}; the bound is checked at
// every Pareto knee (lambda, M) of f'.
TransferResult nearest_point_transfer(const PointedMetricSpace& space, const SphereMap& f,
                                      std::span<const std::size_t> targets, double eps);

struct PasteResult {
    VectorMap u;
    double lip1 = 0.0;
    double lip2 = 0.0;
    double lip = 0.0;
    double gap = 0.0;    // d(X1\X2, X2\X1)
    double bound = 0.0;  // max(lip1, lip2, target_diam/mu)
    bool ok = false;
};

// Union of u1 and u2; values on X1 come from u1. Throws when they disagree on
// the overlap or the separated parts are closer than mu.
PasteResult paste(const PointedMetricSpace& space, const VectorMap& u1, const VectorMap& u2,
                  double mu, double target_diam);

enum class SphereStrategy { Nearest, Project };

std::string to_string(SphereStrategy s);
SphereStrategy parse_strategy(const std::string& name);

struct SphereExtension {
    SphereMap g;
    SphereStrategy requested = SphereStrategy::Nearest;
    SphereStrategy used = SphereStrategy::Nearest;
    bool fallback = false;
    double rho = 1.0;  // min norm of the coordinatewise extension (project only)
    double lip_in = 0.0;
    double lip_out = 0.0;
};

inline constexpr double kDefaultRhoMin = 0.1;

// Extends f over `targets` (which must contain f's domain) into the unit sphere.
SphereExtension extend_sphere_map(const PointedMetricSpace& space, const SphereMap& f,
                                  std::span<const std::size_t> targets,
                                  SphereStrategy strategy = SphereStrategy::Nearest,
                                  double rho_min = kDefaultRhoMin);

struct SpliceParams {
    std::optional<double> r;  // base scale; min positive norm when unset
    double ratio = 2.0;
    SphereStrategy strategy = SphereStrategy::Nearest;
    double rho_min = kDefaultRhoMin;
};

struct SpliceStage {
    int k = 0;
    double mu = 0.0;
    std::size_t band_size = 0;     // |An(X, rM^k, rM^{k+3})|
    double lip_pasted = 0.0;
    double paste_bound = 0.0;
    double lip_h = 0.0;
    std::size_t fallbacks = 0;
};

struct ExtensionCertificate {
    VectorMap input_map;
    VectorMap output_map;
    bool restriction_ok = false;
    bool norm_preserving_ok = false;
    double lip_in = 0.0;
    double lip_out = 0.0;
    AsymptoticFit fit_out;
    std::map<std::string, double> constants;
    std::vector<SpliceStage> stages;
    std::vector<std::string> warnings;
};

ExtensionCertificate splice_extend(const PointedMetricSpace& space, const NormPreservingMap& f,
                                   const SpliceParams& params = {});

struct RetractResult {
    VectorMap g;                      // on B(A, R) = {x : d(x, A) <= R}
    std::vector<std::size_t> source;  // r(x)
    bool vacuous = false;             // B(A, R) = A
    std::size_t fit_checks = 0;
    std::size_t fit_violations = 0;     // |g(x)-g(y)| <= lambda*d + 2*lambda*R + M
    std::size_t growth_violations = 0;  // |g(x)| >= c|x| - cR - b
};

RetractResult retract_extend(const PointedMetricSpace& space, const VectorMap& f,
                             const RadialGrowthBound& growth, double R);

struct ModulusInstance {
    const PointedMetricSpace* space = nullptr;
    SphereMap f;
    std::optional<double> s;  // Lip(f) * diam when unset
};

struct ModulusRow {
    double s = 0.0;
    std::size_t instances = 0;
    double raw = 0.0;        // max Lip(g)/Lip(f) in the bucket
    double regularized = 0.0;
};

// Per-s table of the worst observed extension ratio; regularized so that it
// is nonincreasing in s. 0/0 ratios count as 1; when only Lip(f) vanishes the
// ratio is taken against the allowance s/diam.
std::vector<ModulusRow> extension_modulus(std::span<const ModulusInstance> family,
                                          SphereStrategy strategy = SphereStrategy::Nearest);

}  // namespace coarse
