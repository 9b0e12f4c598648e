#include "coarsekit/sublinear.hpp"

#include <algorithm>
#include <cmath>

#include "coarsekit/errors.hpp"
#include "coarsekit/tolerance.hpp"

namespace coarse {

PiecewiseLinearFunction::PiecewiseLinearFunction(std::vector<Breakpoint> breakpoints,
                                                 double tail_slope)
    : breakpoints_(std::move(breakpoints)), tail_slope_(tail_slope) {
    if (breakpoints_.empty()) throw PreconditionError("piecewise-linear function needs a breakpoint");
    if (!(tail_slope_ >= 0.0) || !std::isfinite(tail_slope_)) {
        throw PreconditionError("tail slope must be finite and nonnegative");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const auto& b = breakpoints_[i];
        if (!(b.t >= 0.0) || !std::isfinite(b.t)) throw PreconditionError("breakpoints need t >= 0");
        if (!(b.value >= 0.0) || !std::isfinite(b.value)) {
            throw PreconditionError("piecewise-linear function must be nonnegative");
        }
        if (i > 0 && !(b.t > breakpoints_[i - 1].t)) {
            throw PreconditionError("breakpoints must be strictly increasing in t");
        }
    }
}

double PiecewiseLinearFunction::operator()(double t) const {
    const auto& bp = breakpoints_;
    if (t <= bp.front().t) return bp.front().value;
    if (t >= bp.back().t) return bp.back().value + tail_slope_ * (t - bp.back().t);
    auto it = std::upper_bound(bp.begin(), bp.end(), t,
                               [](double x, const Breakpoint& b) { return x < b.t; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    return lo.value + w * (hi.value - lo.value);
}

std::vector<double> PiecewiseLinearFunction::slopes() const {
    std::vector<double> out;
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        const auto& a = breakpoints_[i - 1];
        const auto& b = breakpoints_[i];
        out.push_back((b.value - a.value) / (b.t - a.t));
    }
    out.push_back(tail_slope_);
    return out;
}

double PiecewiseLinearFunction::sup_ratio_from(double from) const {
    if (!(from > 0.0)) throw PreconditionError("ratio supremum needs a positive start");
    // On each linear piece s(t)/t is monotone, so the sup sits at a piece
    // endpoint or at the tail limit.
    double best = (*this)(from) / from;
    for (const auto& b : breakpoints_) {
        if (b.t > from) best = std::max(best, b.value / b.t);
    }
    return std::max(best, tail_slope_);
}

SublinearWitness is_asymptotically_sublinear(const PiecewiseLinearFunction& s) {
    SublinearWitness w;
    w.slope_sequence = s.slopes();
    w.verdict = s.tail_slope() == 0.0;
    if (!w.verdict) w.witness_slope = s.tail_slope() / 2.0;
    return w;
}

SublinearFit fit_sublinear_through(const std::vector<std::pair<double, double>>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw PreconditionError("sublinear fit needs at least two samples");
    std::vector<double> t(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = samples[i].first;
        const double a = samples[i].second;
        if (!(t[i] >= 0.0) || !std::isfinite(t[i])) throw PreconditionError("sample t must be >= 0");
        if (i > 0 && !(t[i] > t[i - 1])) throw PreconditionError("sample t must strictly increase");
        if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("sample a must be positive");
        v[i] = a * t[i];
    }

    bool strictly_increasing = true;
    for (std::size_t i = 1; i < n; ++i) strictly_increasing = strictly_increasing && v[i] > v[i - 1];

    std::vector<std::size_t> chosen;
    std::string selection;
    if (!strictly_increasing) {
        // Start at the first maximum and follow values that never increase.
        selection = "nonincreasing-subsequence";
        std::size_t cur = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        chosen.push_back(cur);
        for (std::size_t j = cur + 1; j < n; ++j) {
            if (v[j] <= v[cur]) {
                chosen.push_back(j);
                cur = j;
            }
        }
    } else {
        // Greedy: from the current sample take the next one whose chord slope
        // strictly undercuts the previous chord.
        selection = "greedy-chord-slopes";
        std::size_t cur = 0;
        double prev = kInf;
        chosen.push_back(cur);
        for (std::size_t j = 1; j < n; ++j) {
            const double slope = (v[j] - v[cur]) / (t[j] - t[cur]);
            if (slope < prev) {
                chosen.push_back(j);
                prev = slope;
                cur = j;
            }
        }
    }

    std::vector<PiecewiseLinearFunction::Breakpoint> bps;
    bps.reserve(chosen.size());
    for (std::size_t k : chosen) bps.push_back({t[k], v[k]});
    return SublinearFit{PiecewiseLinearFunction(std::move(bps), 0.0), std::move(chosen),
                        std::move(selection)};
}

}  // namespace coarse
