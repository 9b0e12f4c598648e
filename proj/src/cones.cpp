#include "coarsekit/cones.hpp"

#include <algorithm>
#include <cmath>

#include "coarsekit/errors.hpp"
#include "coarsekit/kernels.hpp"
#include "coarsekit/tolerance.hpp"

namespace coarse {

namespace {
constexpr double kSnap = 1e-12;
}

bool BaseSet::contains(std::span<const double> k) const { return contains(k, tolerance()); }

bool BaseSet::contains(std::span<const double> k, double tol) const {
    if (k.size() != ambient_dim()) return false;
    if (kind == BaseKind::Sphere) return std::abs(euclidean_norm(k) - 1.0) <= tol;
    double sum = 0.0;
    double low = kInf;
    for (double c : k) {
        if (c < -tol) return false;
        sum += c;
        low = std::min(low, c);
    }
    if (std::abs(sum - 1.0) > tol) return false;
    if (kind == BaseKind::SimplexBoundary) return std::abs(low) <= tol;
    return true;
}

Vec ConePoint::embed() const {
    Vec out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = t * k[i];
    return out;
}

double cone_distance(const ConePoint& a, const ConePoint& b) {
    return euclidean_distance(a.embed(), b.embed());
}

SampledBaseMap::SampledBaseMap(BaseSet domain, BaseSet codomain, std::vector<Vec> inputs,
                               std::vector<Vec> outputs)
    : domain_(domain), codomain_(codomain), inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    if (inputs_.size() != outputs_.size()) throw PreconditionError("sample counts differ");
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        if (!domain_.contains(inputs_[i])) throw PreconditionError("sample input outside base set");
        if (!codomain_.contains(outputs_[i])) {
            throw PreconditionError("sample output outside target base set");
        }
    }
}

const Vec* SampledBaseMap::lookup(std::span<const double> k) const {
    if (k.size() != domain_.ambient_dim()) return nullptr;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        if (euclidean_distance(inputs_[i], k) <= tolerance()) return &outputs_[i];
    }
    return nullptr;
}

ConePoint cone_transport(const SampledBaseMap& f, const ConePoint& p) {
    if (!(p.t >= 0.0)) throw PreconditionError("cone radial coordinate must be nonnegative");
    const Vec* image = f.lookup(p.k);
    if (p.t == 0.0) {
        return ConePoint{0.0, image ? *image : f.outputs().empty() ? p.k : f.outputs().front()};
    }
    if (!f.domain().contains(p.k)) throw PreconditionError("cone point base outside domain base set");
    if (!image) throw PreconditionError("map is not defined at the cone point's base");
    return ConePoint{p.t, *image};
}

double transported_lipschitz(const SampledBaseMap& f, std::span<const ConePoint> points) {
    std::vector<Vec> src, dst;
    src.reserve(points.size());
    dst.reserve(points.size());
    for (const auto& p : points) {
        src.push_back(p.embed());
        dst.push_back(cone_transport(f, p).embed());
    }
    return kernels::pair_max(points.size(), [&](std::size_t a, std::size_t b) {
        const double den = euclidean_distance(src[a], src[b]);
        const double num = euclidean_distance(dst[a], dst[b]);
        if (den == 0.0) return num > 0.0 ? kInf : 0.0;
        return num / den;
    });
}

SphereSimplexHomeo::SphereSimplexHomeo(int m) : m_(m) {
    if (m < 0) throw PreconditionError("sphere dimension must be nonnegative");
    const auto amb = static_cast<std::size_t>(m) + 2;
    basis_ = Field(amb - 1, amb);
    for (std::size_t j = 0; j + 1 < amb; ++j) {
        const double len = std::sqrt(static_cast<double>((j + 1) * (j + 2)));
        auto col = basis_[j];
        for (std::size_t i = 0; i <= j; ++i) col[i] = 1.0 / len;
        col[j + 1] = -static_cast<double>(j + 1) / len;
    }
}

Vec SphereSimplexHomeo::embed_direction(std::span<const double> v) const {
    Vec w(basis_.dim(), 0.0);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        auto col = basis_[j];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += v[j] * col[i];
    }
    return w;
}

Vec SphereSimplexHomeo::flatten_direction(std::span<const double> w) const {
    Vec v(basis_.size(), 0.0);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        auto col = basis_[j];
        for (std::size_t i = 0; i < w.size(); ++i) v[j] += w[i] * col[i];
    }
    return v;
}

Vec SphereSimplexHomeo::to_boundary(std::span<const double> sphere_point) const {
    if (sphere_point.size() != basis_.size()) throw PreconditionError("sphere point has wrong dimension");
    const Vec w = embed_direction(sphere_point);
    const double bary = 1.0 / static_cast<double>(w.size());
    double tau = kInf;
    std::size_t hit = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0.0 && -bary / w[i] < tau) {
            tau = -bary / w[i];
            hit = i;
        }
    }
    if (tau == kInf) throw PreconditionError("direction does not leave the simplex");
    Vec p(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        p[i] = bary + tau * w[i];
        if (p[i] < kSnap) p[i] = 0.0;
    }
    p[hit] = 0.0;
    return p;
}

Vec SphereSimplexHomeo::to_sphere(std::span<const double> simplex_point) const {
    if (simplex_point.size() != basis_.dim()) {
        throw PreconditionError("simplex point has wrong dimension");
    }
    const double bary = 1.0 / static_cast<double>(simplex_point.size());
    Vec w(simplex_point.begin(), simplex_point.end());
    for (double& c : w) c -= bary;
    Vec v = flatten_direction(w);
    const double len = euclidean_norm(v);
    if (len == 0.0) throw PreconditionError("barycenter has no radial direction");
    for (double& c : v) c /= len;
    return v;
}

Vec SphereSimplexHomeo::radial_push(std::span<const double> simplex_point) const {
    const double bary = 1.0 / static_cast<double>(simplex_point.size());
    double off = 0.0;
    for (double c : simplex_point) off = std::max(off, std::abs(c - bary));
    if (off <= kSnap) return to_boundary(basis_vector(basis_.size()));
    return to_boundary(to_sphere(simplex_point));
}

SphereSimplexHomeo sphere_simplex_homeo(int m) { return SphereSimplexHomeo(m); }

HomeoDistortion measure_homeo(const SphereSimplexHomeo& h, std::span<const Vec> sphere_samples) {
    std::vector<Vec> images;
    images.reserve(sphere_samples.size());
    HomeoDistortion out;
    for (const auto& s : sphere_samples) {
        images.push_back(h.to_boundary(s));
        out.max_roundtrip_error =
            std::max(out.max_roundtrip_error, euclidean_distance(h.to_sphere(images.back()), s));
    }
    const std::size_t n = sphere_samples.size();
    out.lip_u = kernels::pair_max(n, [&](std::size_t a, std::size_t b) {
        const double den = euclidean_distance(sphere_samples[a], sphere_samples[b]);
        return den > 0.0 ? euclidean_distance(images[a], images[b]) / den : 0.0;
    });
    out.lip_v = kernels::pair_max(n, [&](std::size_t a, std::size_t b) {
        const double den = euclidean_distance(images[a], images[b]);
        return den > 0.0 ? euclidean_distance(sphere_samples[a], sphere_samples[b]) / den : 0.0;
    });
    out.distortion = std::max(out.lip_u, out.lip_v);
    return out;
}

Vec random_sphere_point(Rng& rng, int m) {
    Vec v(static_cast<std::size_t>(m) + 1);
    double len = 0.0;
    while (len < 1e-12) {
        for (double& c : v) c = rng.normal();
        len = euclidean_norm(v);
    }
    for (double& c : v) c /= len;
    return v;
}

Vec random_simplex_point(Rng& rng, int m) {
    Vec v(static_cast<std::size_t>(m) + 1);
    double sum = 0.0;
    for (double& c : v) {
        c = -std::log(1.0 - rng.uniform());
        sum += c;
    }
    for (double& c : v) c /= sum;
    return v;
}

}  // namespace coarse
