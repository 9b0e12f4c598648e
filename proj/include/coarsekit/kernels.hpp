#pragma once

// Pairwise kernels. Every kernel has a serial reference in `serial::` and an
// OpenMP version in `parallel::`; the unqualified names dispatch to the
// parallel one. Reductions are max/min, so both paths return identical bits.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>

#include "coarsekit/tolerance.hpp"

namespace coarse::kernels {

namespace serial {

// max over i < j < n of f(i, j); `floor` when there are no pairs.
template <class F>
double pair_max(std::size_t n, F&& f, double floor = 0.0) {
    double best = floor;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, f(i, j));
    }
    return best;
}

// Number of pairs i < j with pred(i, j).
template <class P>
std::size_t pair_count(std::size_t n, P&& pred) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) count += pred(i, j) ? 1 : 0;
    }
    return count;
}

inline void floyd_warshall(std::span<double> d, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double dik = d[i * n + k];
            if (dik == kInf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double via = dik + d[k * n + j];
                if (via < d[i * n + j]) d[i * n + j] = via;
            }
        }
    }
}

// max over triples of d(i,k) - d(i,j) - d(j,k), clipped at 0.
inline double worst_triangle_violation(std::span<const double> d, std::size_t n) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dij = d[i * n + j];
            for (std::size_t k = 0; k < n; ++k) {
                worst = std::max(worst, d[i * n + k] - dij - d[j * n + k]);
            }
        }
    }
    return worst;
}

}  // namespace serial

namespace parallel {

template <class F>
double pair_max(std::size_t n, F&& f, double floor = 0.0) {
    double best = floor;
    const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
    for (std::int64_t i = 0; i < sn; ++i) {
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
            best = std::max(best, f(static_cast<std::size_t>(i), j));
        }
    }
    return best;
}

template <class P>
std::size_t pair_count(std::size_t n, P&& pred) {
    std::size_t count = 0;
    const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count)
    for (std::int64_t i = 0; i < sn; ++i) {
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
            count += pred(static_cast<std::size_t>(i), j) ? 1 : 0;
        }
    }
    return count;
}

inline void floyd_warshall(std::span<double> d, std::size_t n) {
    const auto sn = static_cast<std::int64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Row k and column k are fixed points of pass k, so rows update independently.
#pragma omp parallel for schedule(static)
        for (std::int64_t si = 0; si < sn; ++si) {
            const auto i = static_cast<std::size_t>(si);
            const double dik = d[i * n + k];
            if (dik == kInf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double via = dik + d[k * n + j];
                if (via < d[i * n + j]) d[i * n + j] = via;
            }
        }
    }
}

inline double worst_triangle_violation(std::span<const double> d, std::size_t n) {
    double worst = 0.0;
    const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t si = 0; si < sn; ++si) {
        const auto i = static_cast<std::size_t>(si);
        for (std::size_t j = 0; j < n; ++j) {
            const double dij = d[i * n + j];
            for (std::size_t k = 0; k < n; ++k) {
                worst = std::max(worst, d[i * n + k] - dij - d[j * n + k]);
            }
        }
    }
    return worst;
}

}  // namespace parallel

using parallel::floyd_warshall;
using parallel::pair_count;
using parallel::pair_max;
using parallel::worst_triangle_violation;

}  // namespace coarse::kernels
