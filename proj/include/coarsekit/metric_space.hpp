#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "coarsekit/field.hpp"
#include "coarsekit/tolerance.hpp"

namespace coarse {

/// A finite metric space with a distinguished basepoint x0. Point ids are
/// stable strings; integer indices are positions in insertion order.
///
/// The constructor enforces the structural axioms (square, zero diagonal,
/// symmetric within tolerance, nonnegative). The triangle inequality is
/// reported, not enforced, by validate_space().
class PointedMetricSpace {
  public:
    PointedMetricSpace(std::vector<std::string> ids, std::vector<double> dist,
                       std::size_t basepoint);

    // Euclidean distances between the rows of `coords`.
    static PointedMetricSpace from_coordinates(std::vector<std::string> ids, const Field& coords,
                                               std::size_t basepoint);

    std::size_t size() const { return ids_.size(); }
    std::size_t basepoint() const { return basepoint_; }

    double distance(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
    double norm(std::size_t i) const { return distance(i, basepoint_); }

    std::span<const double> row(std::size_t i) const {
        return {dist_.data() + i * size(), size()};
    }
    std::span<const double> matrix() const { return dist_; }

    const std::string& id(std::size_t i) const { return ids_[i]; }
    const std::vector<std::string>& ids() const { return ids_; }
    std::optional<std::size_t> index_of(const std::string& id) const;
    std::size_t require_index(const std::string& id) const;

    // Induced subspace; the basepoint must be among `indices`.
    PointedMetricSpace subspace(std::span<const std::size_t> indices) const;
    PointedMetricSpace scaled(double factor) const;

    // min over `set` of d(i, .), +inf for an empty set.
    double distance_to(std::size_t i, std::span<const std::size_t> set) const;
    double diameter() const;

  private:
    std::vector<std::string> ids_;
    std::vector<double> dist_;
    std::size_t basepoint_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct ValidationReport {
    bool metric_ok = false;
    double worst_triangle_violation = 0.0;
    double min_positive_distance = kInf;  // +inf for spaces with < 2 points
    bool has_coincident_points = false;   // d(i,j)=0 for some i != j

    bool is_epsilon_discrete(double eps) const {
        return !has_coincident_points && min_positive_distance >= eps;
    }
};

ValidationReport validate_space(const std::vector<std::vector<double>>& raw,
                                std::size_t basepoint);
ValidationReport validate_space(const PointedMetricSpace& space);

struct WeightedEdge {
    std::string from;
    std::string to;
    double weight;
};

// Shortest-path metric of a connected, positively weighted graph.
PointedMetricSpace metric_closure(std::vector<std::string> ids,
                                  const std::vector<WeightedEdge>& edges,
                                  const std::string& basepoint);

/// Half-open annulus { x : lower <= |x| < upper }.
struct Annulus {
    double lower = 0.0;
    double upper = kInf;
    std::vector<std::size_t> members;
};

Annulus annulus(const PointedMetricSpace& space, double r, double s);
// Annulus restricted to the points of `subset`.
Annulus annulus(const PointedMetricSpace& space, std::span<const std::size_t> subset, double r,
                double s);

struct Net {
    std::vector<std::size_t> indices;
    PointedMetricSpace space;
};

// Greedy eps-net seeded with the basepoint, scanning points in stored order.
Net greedy_net(const PointedMetricSpace& space, double eps);

// Whether the graph with edges {d(x,y) <= M} is connected.
bool scale_connected(const PointedMetricSpace& space, double M);

std::vector<std::size_t> all_indices(std::size_t n);

}  // namespace coarse
