#pragma once

#include <string>
#include <vector>

#include "coarsekit/field.hpp"
#include "coarsekit/maps.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/random.hpp"
#include "oracles.hpp"

namespace testing {

using namespace coarse;

inline oracle::Matrix matrix_of(const PointedMetricSpace& s) {
    oracle::Matrix m(s.size(), std::vector<double>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s.distance(i, j);
    return m;
}

inline oracle::Points points_of(const Field& f) {
    oracle::Points p;
    for (std::size_t i = 0; i < f.size(); ++i) p.emplace_back(f[i].begin(), f[i].end());
    return p;
}

inline std::vector<std::string> numbered_ids(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    return ids;
}

// Points of R in the given order, basepoint at index 0.
inline PointedMetricSpace line_space(const std::vector<double>& xs, std::size_t base = 0) {
    Field c(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) c[i][0] = xs[i];
    return PointedMetricSpace::from_coordinates(numbered_ids(xs.size()), c, base);
}

inline PointedMetricSpace random_cloud(Rng& rng, std::size_t n, std::size_t dim, double scale) {
    Field c(n, dim);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < dim; ++k) c[i][k] = rng.uniform(-scale, scale);
    return PointedMetricSpace::from_coordinates(numbered_ids(n), c, 0);
}

inline Vec random_unit(Rng& rng, std::size_t dim) {
    Vec v(dim);
    double len = 0.0;
    while (len < 1e-9) {
        for (auto& c : v) c = rng.normal();
        len = euclidean_norm(v);
    }
    for (auto& c : v) c /= len;
    return v;
}

inline SphereMap random_sphere_map(Rng& rng, const std::vector<std::size_t>& dom, std::size_t dim) {
    Field f(dom.size(), dim);
    for (std::size_t j = 0; j < dom.size(); ++j) f.assign(j, random_unit(rng, dim));
    return SphereMap::from(make_vector_map(dom, std::move(f)));
}

inline std::vector<std::size_t> random_subset(Rng& rng, std::size_t n, double p,
                                              std::size_t must = static_cast<std::size_t>(-1)) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == must || rng.coin(p)) out.push_back(i);
    }
    if (out.empty()) out.push_back(rng.index(n));
    return out;
}

}  // namespace testing
