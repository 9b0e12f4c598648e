#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coarsekit/field.hpp"
#include "coarsekit/random.hpp"

namespace coarse {

enum class BaseKind { Sphere, Simplex, SimplexBoundary };

/// One of the three base sets used for open cones, with the standard
/// embeddings: S^m in R^{m+1}; Delta^m and its boundary in R^{m+1} with the
/// standard basis as vertices.
struct BaseSet {
    BaseKind kind = BaseKind::Sphere;
    int dim = 0;

    std::size_t ambient_dim() const { return static_cast<std::size_t>(dim) + 1; }
    bool contains(std::span<const double> k, double tol) const;
    bool contains(std::span<const double> k) const;
};

/// Point t*k of OpenCone(K); t = 0 is the apex whatever k is.
struct ConePoint {
    double t = 0.0;
    Vec k;

    Vec embed() const;
};

double cone_distance(const ConePoint& a, const ConePoint& b);

/// Map K -> L known on finitely many sample points.
class SampledBaseMap {
  public:
    SampledBaseMap(BaseSet domain, BaseSet codomain, std::vector<Vec> inputs,
                   std::vector<Vec> outputs);

    const BaseSet& domain() const { return domain_; }
    const BaseSet& codomain() const { return codomain_; }
    const std::vector<Vec>& inputs() const { return inputs_; }
    const std::vector<Vec>& outputs() const { return outputs_; }

    // Output at the sample matching k within tolerance, or nullptr.
    const Vec* lookup(std::span<const double> k) const;

  private:
    BaseSet domain_;
    BaseSet codomain_;
    std::vector<Vec> inputs_;
    std::vector<Vec> outputs_;
};

// t*k -> t*f(k).
ConePoint cone_transport(const SampledBaseMap& f, const ConePoint& p);

// Max ratio |f'(p)-f'(q)| / |p-q| over pairs of the given cone points.
double transported_lipschitz(const SampledBaseMap& f, std::span<const ConePoint> points);

/// Radial projection between S^m and the boundary of Delta^{m+1}, through the
/// barycenter after moving it to the origin. The sum-zero hyperplane of
/// R^{m+2} is identified with R^{m+1} by an orthonormal (Helmert) basis.
class SphereSimplexHomeo {
  public:
    explicit SphereSimplexHomeo(int m);

    int m() const { return m_; }
    // u: S^m -> boundary of Delta^{m+1}
    Vec to_boundary(std::span<const double> sphere_point) const;
    // v: boundary of Delta^{m+1} -> S^m
    Vec to_sphere(std::span<const double> simplex_point) const;
    // Push a point of Delta^{m+1} away from the barycenter onto the boundary;
    // the barycenter itself goes to u(e_1).
    Vec radial_push(std::span<const double> simplex_point) const;

  private:
    Vec embed_direction(std::span<const double> v) const;   // R^{m+1} -> sum-zero plane
    Vec flatten_direction(std::span<const double> w) const; // sum-zero plane -> R^{m+1}

    int m_;
    Field basis_;  // m+1 orthonormal vectors of R^{m+2}, each summing to 0
};

SphereSimplexHomeo sphere_simplex_homeo(int m);

struct HomeoDistortion {
    double lip_u = 0.0;
    double lip_v = 0.0;
    double distortion = 0.0;  // max(lip_u, lip_v)
    double max_roundtrip_error = 0.0;
};

HomeoDistortion measure_homeo(const SphereSimplexHomeo& h, std::span<const Vec> sphere_samples);

Vec random_sphere_point(Rng& rng, int m);
Vec random_simplex_point(Rng& rng, int m);

}  // namespace coarse
