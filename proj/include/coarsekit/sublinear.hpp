#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

/// Continuous nonnegative piecewise-linear function on [0, inf).
///
/// Left of the first breakpoint the function is flat at the first value;
/// right of the last breakpoint it is a ray with slope `tail_slope`.
class PiecewiseLinearFunction {
  public:
    struct Breakpoint {
        double t;
        double value;
    };

    PiecewiseLinearFunction(std::vector<Breakpoint> breakpoints, double tail_slope);

    double operator()(double t) const;

    const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
    double tail_slope() const { return tail_slope_; }

    // Slopes of the interior segments, followed by the tail slope.
    std::vector<double> slopes() const;

    // sup over t >= from of s(t)/t (from > 0).
    double sup_ratio_from(double from) const;

  private:
    std::vector<Breakpoint> breakpoints_;
    double tail_slope_;
};

struct SublinearWitness {
    std::vector<double> slope_sequence;
    bool verdict = false;
    // For a positive tail slope sigma: the linear function r -> sigma*r/2 that s eventually exceeds.
    std::optional<double> witness_slope;
};

// Finite criterion: sublinear iff the final ray is flat.
SublinearWitness is_asymptotically_sublinear(const PiecewiseLinearFunction& s);

struct SublinearFit {
    PiecewiseLinearFunction function;
    std::vector<std::size_t> selected;  // sample indices hit exactly
    std::string selection;              // "nonincreasing-subsequence" or "greedy-chord-slopes"
};

// Piecewise-linear sublinear function with s(t_k) = a_k * t_k on a selected subsequence.
SublinearFit fit_sublinear_through(const std::vector<std::pair<double, double>>& samples);

}  // namespace coarse
