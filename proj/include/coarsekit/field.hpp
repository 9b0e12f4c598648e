#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace coarse {

using Vec = std::vector<double>;

// Row-major block of `size()` vectors of length `dim()`.
class Field {
  public:
    Field() = default;
    Field(std::size_t count, std::size_t dim, double fill = 0.0)
        : count_(count), dim_(dim), data_(count * dim, fill) {}

    std::size_t size() const { return count_; }
    std::size_t dim() const { return dim_; }

    std::span<double> operator[](std::size_t i) { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> operator[](std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }

    void assign(std::size_t i, std::span<const double> v) {
        for (std::size_t c = 0; c < dim_; ++c) data_[i * dim_ + c] = v[c];
    }

    const std::vector<double>& data() const { return data_; }

    bool operator==(const Field&) const = default;

  private:
    std::size_t count_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

inline double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline Vec basis_vector(std::size_t dim, std::size_t axis = 0) {
    Vec e(dim, 0.0);
    if (axis < dim) e[axis] = 1.0;
    return e;
}

}  // namespace coarse
