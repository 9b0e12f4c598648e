#include "coarsekit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "coarsekit/errors.hpp"
#include "coarsekit/kernels.hpp"

namespace coarse {

namespace {

void check_structure(std::span<const double> d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = d[i * n + j];
            if (std::isnan(v)) throw PreconditionError("distance matrix contains NaN");
            if (v < 0.0) throw PreconditionError("distance matrix has a negative entry");
            if (!std::isfinite(v)) throw PreconditionError("distance matrix has an infinite entry");
        }
        if (d[i * n + i] != 0.0) throw PreconditionError("distance matrix has a nonzero diagonal");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!approx_eq(d[i * n + j], d[j * n + i])) {
                throw PreconditionError("distance matrix is not symmetric");
            }
        }
    }
}

ValidationReport report_for(std::span<const double> d, std::size_t n) {
    ValidationReport rep;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = d[i * n + j];
            scale = std::max(scale, v);
            if (v == 0.0) {
                rep.has_coincident_points = true;
            } else {
                rep.min_positive_distance = std::min(rep.min_positive_distance, v);
            }
        }
    }
    rep.worst_triangle_violation = kernels::worst_triangle_violation(d, n);
    const bool triangle_ok =
        rep.worst_triangle_violation <= tolerance() * std::max(1.0, scale);
    rep.metric_ok = triangle_ok && !rep.has_coincident_points;
    return rep;
}

}  // namespace

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

PointedMetricSpace::PointedMetricSpace(std::vector<std::string> ids, std::vector<double> dist,
                                       std::size_t basepoint)
    : ids_(std::move(ids)), dist_(std::move(dist)), basepoint_(basepoint) {
    const std::size_t n = ids_.size();
    if (n == 0) throw PreconditionError("metric space must have at least one point");
    if (dist_.size() != n * n) throw PreconditionError("distance matrix is not square");
    if (basepoint_ >= n) throw PreconditionError("basepoint is not a point of the space");
    check_structure(dist_, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (dist_[i * n + j] + dist_[j * n + i]);
            dist_[i * n + j] = avg;
            dist_[j * n + i] = avg;
        }
    }
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!index_.emplace(ids_[i], i).second) {
            throw PreconditionError("duplicate point id: " + ids_[i]);
        }
    }
}

PointedMetricSpace PointedMetricSpace::from_coordinates(std::vector<std::string> ids,
                                                        const Field& coords,
                                                        std::size_t basepoint) {
    const std::size_t n = coords.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i * n + j] = d[j * n + i] = euclidean_distance(coords[i], coords[j]);
        }
    }
    return PointedMetricSpace(std::move(ids), std::move(d), basepoint);
}

std::optional<std::size_t> PointedMetricSpace::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t PointedMetricSpace::require_index(const std::string& id) const {
    auto idx = index_of(id);
    if (!idx) throw PreconditionError("unknown point id: " + id);
    return *idx;
}

PointedMetricSpace PointedMetricSpace::subspace(std::span<const std::size_t> indices) const {
    const std::size_t m = indices.size();
    std::vector<std::string> ids;
    ids.reserve(m);
    std::vector<double> d(m * m);
    std::optional<std::size_t> base;
    for (std::size_t a = 0; a < m; ++a) {
        ids.push_back(ids_[indices[a]]);
        if (indices[a] == basepoint_) base = a;
        for (std::size_t b = 0; b < m; ++b) d[a * m + b] = distance(indices[a], indices[b]);
    }
    if (!base) throw PreconditionError("subspace must contain the basepoint");
    return PointedMetricSpace(std::move(ids), std::move(d), *base);
}

PointedMetricSpace PointedMetricSpace::scaled(double factor) const {
    if (!(factor > 0.0)) throw PreconditionError("scale factor must be positive");
    std::vector<double> d = dist_;
    for (double& v : d) v *= factor;
    return PointedMetricSpace(ids_, std::move(d), basepoint_);
}

double PointedMetricSpace::distance_to(std::size_t i, std::span<const std::size_t> set) const {
    double best = kInf;
    for (std::size_t j : set) best = std::min(best, distance(i, j));
    return best;
}

double PointedMetricSpace::diameter() const {
    const std::size_t n = size();
    return kernels::pair_max(n, [&](std::size_t i, std::size_t j) { return distance(i, j); });
}

ValidationReport validate_space(const std::vector<std::vector<double>>& raw,
                                std::size_t basepoint) {
    const std::size_t n = raw.size();
    if (n == 0) throw PreconditionError("distance matrix is empty");
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : raw) {
        if (row.size() != n) throw PreconditionError("distance matrix is not square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    if (basepoint >= n) throw PreconditionError("basepoint is not a point of the space");
    check_structure(flat, n);
    return report_for(flat, n);
}

ValidationReport validate_space(const PointedMetricSpace& space) {
    return report_for(space.matrix(), space.size());
}

PointedMetricSpace metric_closure(std::vector<std::string> ids,
                                  const std::vector<WeightedEdge>& edges,
                                  const std::string& basepoint) {
    const std::size_t n = ids.size();
    if (n == 0) throw PreconditionError("graph has no vertices");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        if (!index.emplace(ids[i], i).second) throw PreconditionError("duplicate vertex " + ids[i]);
    }
    auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end()) throw PreconditionError("edge references unknown vertex " + id);
        return it->second;
    };
    std::vector<double> d(n * n, kInf);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
    for (const auto& e : edges) {
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw PreconditionError("edge weights must be positive and finite");
        }
        const std::size_t a = lookup(e.from);
        const std::size_t b = lookup(e.to);
        if (a == b) continue;
        d[a * n + b] = std::min(d[a * n + b], e.weight);
        d[b * n + a] = d[a * n + b];
    }
    kernels::floyd_warshall(d, n);
    if (std::any_of(d.begin(), d.end(), [](double v) { return v == kInf; })) {
        throw PreconditionError("graph is disconnected; distances would be infinite");
    }
    const std::size_t base = lookup(basepoint);
    return PointedMetricSpace(std::move(ids), std::move(d), base);
}

Annulus annulus(const PointedMetricSpace& space, std::span<const std::size_t> subset, double r,
                double s) {
    if (!(r >= 0.0)) throw PreconditionError("annulus lower radius must be nonnegative");
    if (r > s) throw PreconditionError("annulus requires r <= s");
    Annulus a{r, s, {}};
    for (std::size_t i : subset) {
        const double nx = space.norm(i);
        if (r <= nx && nx < s) a.members.push_back(i);
    }
    return a;
}

Annulus annulus(const PointedMetricSpace& space, double r, double s) {
    const auto all = all_indices(space.size());
    return annulus(space, all, r, s);
}

Net greedy_net(const PointedMetricSpace& space, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("net radius must be positive");
    std::vector<std::size_t> net{space.basepoint()};
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (i == space.basepoint()) continue;
        if (space.distance_to(i, net) >= eps) net.push_back(i);
    }
    std::sort(net.begin(), net.end());
    auto sub = space.subspace(net);
    return Net{std::move(net), std::move(sub)};
}

bool scale_connected(const PointedMetricSpace& space, double M) {
    if (!(M > 0.0)) throw PreconditionError("scale must be positive");
    const std::size_t n = space.size();
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t i = frontier.front();
        frontier.pop();
        for (std::size_t j = 0; j < n; ++j) {
            if (!seen[j] && space.distance(i, j) <= M) {
                seen[j] = 1;
                ++reached;
                frontier.push(j);
            }
        }
    }
    return reached == n;
}

}  // namespace coarse
