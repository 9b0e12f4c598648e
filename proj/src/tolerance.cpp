#include "coarsekit/tolerance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace coarse {

namespace {
std::atomic<double> g_tolerance{kDefaultTolerance};

double scale_of(double a, double b) {
    double s = 1.0;
    if (std::isfinite(a)) s = std::max(s, std::abs(a));
    if (std::isfinite(b)) s = std::max(s, std::abs(b));
    return s;
}
}  // namespace

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tol) {
    if (!(tol >= 0.0) || !std::isfinite(tol)) {
        throw std::invalid_argument("tolerance must be a finite nonnegative number");
    }
    g_tolerance.store(tol, std::memory_order_relaxed);
}

bool approx_leq(double a, double b, double tol) {
    if (a <= b) return true;
    return a - b <= tol * scale_of(a, b);
}

bool approx_eq(double a, double b, double tol) {
    if (a == b) return true;
    return std::abs(a - b) <= tol * scale_of(a, b);
}

}  // namespace coarse
