#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsekit/field.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/sublinear.hpp"

namespace coarse {

/// Map from a subset of a pointed metric space into euclidean R^dim.
/// `values[j]` is the value at ambient point `domain[j]`; the domain is
/// strictly increasing.
struct VectorMap {
    std::vector<std::size_t> domain;
    Field values;

    std::size_t size() const { return domain.size(); }
    std::size_t dim() const { return values.dim(); }
    std::optional<std::size_t> position_of(std::size_t point) const;

    static VectorMap total(Field values);
};

VectorMap make_vector_map(std::vector<std::size_t> domain, Field values);
VectorMap restrict_map(const VectorMap& f, std::span<const std::size_t> points);

/// Direction field: every value is a unit vector in R^{m+1}.
class SphereMap {
  public:
    static SphereMap from(VectorMap f);
    const VectorMap& map() const { return f_; }

  private:
    explicit SphereMap(VectorMap f) : f_(std::move(f)) {}
    VectorMap f_;
};

/// Norm-preserving map: |f'(x)| = |x| at every domain point.
class NormPreservingMap {
  public:
    static NormPreservingMap from(const PointedMetricSpace& space, VectorMap f);
    const VectorMap& map() const { return f_; }

  private:
    explicit NormPreservingMap(VectorMap f) : f_(std::move(f)) {}
    VectorMap f_;
};

// sup over distinct domain pairs of |f(x)-f(y)| / d(x,y); +inf when a
// zero-distance pair carries different values; 0 for < 2 points.
double lip_constant(const PointedMetricSpace& space, const VectorMap& f);

/// Pareto frontier of (lambda, M) with |f(x)-f(y)| <= lambda*d(x,y) + M.
/// M(lambda) = max over pairs of (|f(x)-f(y)| - lambda*d(x,y))^+ is convex,
/// piecewise linear and nonincreasing; `pareto` holds its vertices from
/// lambda = 0 to the first lambda with M = 0 (which is Lip(f)).
struct AsymptoticFit {
    struct Knee {
        double lambda;
        double M;
    };
    double lambda = 0.0;  // smallest lambda with M(lambda) = 0
    double M = 0.0;
    std::vector<Knee> pareto;

    double excess_at(double lambda) const;
};

AsymptoticFit asymptotic_fit(const PointedMetricSpace& space, const VectorMap& f);

NormPreservingMap induce(const PointedMetricSpace& space, const SphereMap& f);
// Inverse of induce away from the basepoint; zero-norm points get `default_direction`
// (first standard basis vector when empty).
SphereMap project(const PointedMetricSpace& space, const NormPreservingMap& f,
                  std::span<const double> default_direction = {});

/// Per-scale Lipschitz table for X_k = An(r*M^{k-1}, r*M^{k+1}) and
/// Y_k = An(r*M^{k-1}, inf), k = 1..K with K the last nonempty X_k.
struct AnnulusProfile {
    struct Row {
        int k = 0;
        double lower = 0.0;
        double upper = 0.0;
        std::size_t x_size = 0;
        std::size_t y_size = 0;
        double lip_x = 0.0;
        double lip_y = 0.0;
        double scaled_x = 0.0;  // M^k * Lip(f|X_k)
        double scaled_y = 0.0;  // M^k * Lip(f|Y_k)
    };
    double r = 0.0;
    double ratio = 0.0;
    std::vector<Row> rows;
    double bound_x = 0.0;  // max scaled_x
    double bound_y = 0.0;  // max scaled_y
    // max over the later half of rows >= 2 * max over the earlier half
    bool unbounded_trend = false;
};

AnnulusProfile annulus_profile(const PointedMetricSpace& space, const SphereMap& f, double r,
                               double ratio);

struct ProfileCertificate {
    double C = 0.0;
    double bound = 0.0;            // max(r*M*C + 1, 2/(M-1) + 1)
    double measured = 0.0;         // Lip(f') over pairs with both norms >= r or one at x0
    double measured_all = 0.0;     // Lip(f') over every pair
    std::size_t violations = 0;    // certified pairs exceeding the bound
};

// Checks Lip(f') <= max(r*M*C+1, 2/(M-1)+1) by pair enumeration for an explicit C.
ProfileCertificate certify_profile_bound(const PointedMetricSpace& space, const SphereMap& f,
                                         double r, double ratio, double C);
// Same, with C taken from the profile; throws on an unbounded-trend profile.
ProfileCertificate profile_implies_lipschitz(const PointedMetricSpace& space, const SphereMap& f,
                                             const AnnulusProfile& profile);

// max over pairs with min(|x|,|y|) >= R and d(x,y) <= s(|x|) of |f(x)-f(y)|.
double sublinear_defect(const PointedMetricSpace& space, const SphereMap& f,
                        const PiecewiseLinearFunction& s, double R);
// (lambda+1) * sup_{t>=R} s(t)/t + M/R for f' fitted by (lambda, M).
double sublinear_defect_bound(double lambda, double M, const PiecewiseLinearFunction& s,
                              double R);

/// |f(x)| >= c*|x| - b on every point.
struct RadialGrowthBound {
    double c = 0.0;
    double b = 0.0;
};

bool satisfies_growth(const PointedMetricSpace& space, const VectorMap& f,
                      const RadialGrowthBound& g);

/// F(x) = s(x) * f(x) together with both transfer directions checked pairwise.
struct RescaleCertificate {
    VectorMap F;
    AsymptoticFit fit_fprime;
    AsymptoticFit fit_F;
    double s_lambda = 0.0;     // Lip(s)
    double s_offset = 0.0;     // smallest M with s(x) <= Lip(s)*|x| + M
    double c = 0.0;            // half the certified growth slope
    double b = 0.0;
    std::size_t forward_checks = 0;
    std::size_t forward_violations = 0;   // f' fit => F fit
    std::size_t backward_checks = 0;
    std::size_t backward_violations = 0;  // F fit => f' fit
};

RescaleCertificate rescale_transfer(const PointedMetricSpace& space, const SphereMap& f,
                                    const VectorMap& s, const RadialGrowthBound& growth);

// Pointwise |x| * value.
VectorMap cone_lift(const PointedMetricSpace& space, const VectorMap& f);

}  // namespace coarse
