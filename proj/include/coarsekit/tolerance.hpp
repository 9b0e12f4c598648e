#pragma once

#include <limits>

namespace coarse {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultTolerance = 1e-9;

// Process-wide relative tolerance for inequality certificates. The CLI may
// override it once at startup (COARSEKIT_TOL); library code only reads it.
double tolerance();
void set_tolerance(double tol);

// a <= b up to tol relative to max(1, |a|, |b|).
bool approx_leq(double a, double b, double tol = tolerance());
bool approx_eq(double a, double b, double tol = tolerance());

}  // namespace coarse
