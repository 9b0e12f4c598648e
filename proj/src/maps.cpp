#include "coarsekit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "coarsekit/errors.hpp"
#include "coarsekit/kernels.hpp"

namespace coarse {

std::optional<std::size_t> VectorMap::position_of(std::size_t point) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), point);
    if (it == domain.end() || *it != point) return std::nullopt;
    return static_cast<std::size_t>(it - domain.begin());
}

VectorMap VectorMap::total(Field values) {
    return VectorMap{all_indices(values.size()), std::move(values)};
}

VectorMap make_vector_map(std::vector<std::size_t> domain, Field values) {
    if (domain.size() != values.size()) {
        throw PreconditionError("map domain and value counts differ");
    }
    // Sort by point index, carrying values along.
    std::vector<std::size_t> order = all_indices(domain.size());
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
    VectorMap out{{}, Field(domain.size(), values.dim())};
    out.domain.reserve(domain.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        if (j > 0 && domain[order[j]] == out.domain.back()) {
            throw PreconditionError("map domain lists a point twice");
        }
        out.domain.push_back(domain[order[j]]);
        out.values.assign(j, values[order[j]]);
    }
    return out;
}

VectorMap restrict_map(const VectorMap& f, std::span<const std::size_t> points) {
    std::vector<std::size_t> dom;
    std::vector<std::size_t> pos;
    for (std::size_t p : points) {
        auto at = f.position_of(p);
        if (!at) throw PreconditionError("restriction point outside the map domain");
        dom.push_back(p);
        pos.push_back(*at);
    }
    Field vals(dom.size(), f.dim());
    for (std::size_t j = 0; j < dom.size(); ++j) vals.assign(j, f.values[pos[j]]);
    return make_vector_map(std::move(dom), std::move(vals));
}

SphereMap SphereMap::from(VectorMap f) {
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!approx_eq(euclidean_norm(f.values[j]), 1.0)) {
            throw PreconditionError("sphere map value is not a unit vector");
        }
    }
    return SphereMap(std::move(f));
}

NormPreservingMap NormPreservingMap::from(const PointedMetricSpace& space, VectorMap f) {
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!approx_eq(euclidean_norm(f.values[j]), space.norm(f.domain[j]))) {
            throw PreconditionError("map is not norm-preserving at point " +
                                    space.id(f.domain[j]));
        }
    }
    return NormPreservingMap(std::move(f));
}

namespace {

double pair_ratio(double num, double den) {
    if (den > 0.0) return num / den;
    return num > 0.0 ? kInf : 0.0;
}

}  // namespace

double lip_constant(const PointedMetricSpace& space, const VectorMap& f) {
    return kernels::pair_max(f.size(), [&](std::size_t a, std::size_t b) {
        return pair_ratio(euclidean_distance(f.values[a], f.values[b]),
                          space.distance(f.domain[a], f.domain[b]));
    });
}

double AsymptoticFit::excess_at(double lam) const {
    if (pareto.empty()) return 0.0;
    if (lam <= pareto.front().lambda) return pareto.front().M;
    for (std::size_t i = 1; i < pareto.size(); ++i) {
        const auto& lo = pareto[i - 1];
        const auto& hi = pareto[i];
        if (lam <= hi.lambda) {
            const double w = (lam - lo.lambda) / (hi.lambda - lo.lambda);
            return lo.M + w * (hi.M - lo.M);
        }
    }
    return pareto.back().M;
}

AsymptoticFit asymptotic_fit(const PointedMetricSpace& space, const VectorMap& f) {
    // One line M = a - d*lambda per pair; keep the highest line per slope.
    std::unordered_map<double, double> best_by_distance;
    double floor = 0.0;  // zero-distance pairs contribute a constant line
    for (std::size_t a = 0; a < f.size(); ++a) {
        for (std::size_t b = a + 1; b < f.size(); ++b) {
            const double gap = euclidean_distance(f.values[a], f.values[b]);
            const double d = space.distance(f.domain[a], f.domain[b]);
            if (d == 0.0) {
                floor = std::max(floor, gap);
                continue;
            }
            auto [it, inserted] = best_by_distance.emplace(d, gap);
            if (!inserted) it->second = std::max(it->second, gap);
        }
    }
    struct Line {
        double d;
        double a;
    };
    std::vector<Line> lines;
    lines.reserve(best_by_distance.size() + 1);
    for (const auto& [d, a] : best_by_distance) lines.push_back({d, a});
    lines.push_back({0.0, floor});
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) { return x.d > y.d; });

    // Upper envelope by gift wrapping from lambda = 0.
    std::size_t cur = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].a > lines[cur].a || (lines[i].a == lines[cur].a && lines[i].d < lines[cur].d)) {
            cur = i;
        }
    }
    AsymptoticFit fit;
    double lam = 0.0;
    fit.pareto.push_back({0.0, lines[cur].a});
    while (lines[cur].d > 0.0) {
        std::size_t next = cur;
        double next_lam = kInf;
        for (std::size_t j = cur + 1; j < lines.size(); ++j) {
            if (lines[j].d >= lines[cur].d) continue;
            const double x = (lines[cur].a - lines[j].a) / (lines[cur].d - lines[j].d);
            if (x < next_lam || (x == next_lam && lines[j].d < lines[next].d)) {
                next_lam = x;
                next = j;
            }
        }
        if (next == cur) break;
        lam = std::max(lam, next_lam);
        cur = next;
        const double m = lines[cur].d > 0.0 ? lines[cur].a - lines[cur].d * lam : lines[cur].a;
        fit.pareto.push_back({lam, std::max(0.0, m)});
    }
    if (floor > 0.0) {
        fit.lambda = kInf;
        fit.M = floor;
    } else {
        fit.lambda = fit.pareto.back().lambda;
        fit.M = 0.0;
        fit.pareto.back().M = 0.0;
    }
    return fit;
}

NormPreservingMap induce(const PointedMetricSpace& space, const SphereMap& f) {
    const auto& src = f.map();
    VectorMap out{src.domain, Field(src.size(), src.dim())};
    for (std::size_t j = 0; j < src.size(); ++j) {
        const double nx = space.norm(src.domain[j]);
        auto dst = out.values[j];
        auto v = src.values[j];
        for (std::size_t c = 0; c < v.size(); ++c) dst[c] = nx * v[c];
    }
    return NormPreservingMap::from(space, std::move(out));
}

SphereMap project(const PointedMetricSpace& space, const NormPreservingMap& f,
                  std::span<const double> default_direction) {
    const auto& src = f.map();
    Vec fallback = default_direction.empty()
                       ? basis_vector(src.dim())
                       : Vec(default_direction.begin(), default_direction.end());
    if (fallback.size() != src.dim()) throw PreconditionError("default direction has wrong dimension");
    VectorMap out{src.domain, Field(src.size(), src.dim())};
    for (std::size_t j = 0; j < src.size(); ++j) {
        const double nx = space.norm(src.domain[j]);
        if (nx == 0.0) {
            out.values.assign(j, fallback);
            continue;
        }
        auto dst = out.values[j];
        auto v = src.values[j];
        for (std::size_t c = 0; c < v.size(); ++c) dst[c] = v[c] / nx;
    }
    return SphereMap::from(std::move(out));
}

VectorMap cone_lift(const PointedMetricSpace& space, const VectorMap& f) {
    VectorMap out{f.domain, Field(f.size(), f.dim())};
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double nx = space.norm(f.domain[j]);
        auto dst = out.values[j];
        auto v = f.values[j];
        for (std::size_t c = 0; c < v.size(); ++c) dst[c] = nx * v[c];
    }
    return out;
}

AnnulusProfile annulus_profile(const PointedMetricSpace& space, const SphereMap& f, double r,
                               double ratio) {
    if (!(r > 0.0)) throw PreconditionError("profile base scale r must be positive");
    if (!(ratio > 1.0)) throw PreconditionError("profile ratio M must exceed 1");
    const auto& fm = f.map();
    double max_norm = -1.0;
    for (std::size_t p : fm.domain) {
        if (space.norm(p) >= r) max_norm = std::max(max_norm, space.norm(p));
    }
    if (max_norm < 0.0) throw PreconditionError("no nonempty annulus at or beyond r");

    AnnulusProfile prof;
    prof.r = r;
    prof.ratio = ratio;
    for (int k = 1; r * std::pow(ratio, k - 1) <= max_norm; ++k) {
        AnnulusProfile::Row row;
        row.k = k;
        row.lower = r * std::pow(ratio, k - 1);
        row.upper = r * std::pow(ratio, k + 1);
        const auto xk = annulus(space, fm.domain, row.lower, row.upper).members;
        const auto yk = annulus(space, fm.domain, row.lower, kInf).members;
        row.x_size = xk.size();
        row.y_size = yk.size();
        row.lip_x = lip_constant(space, restrict_map(fm, xk));
        row.lip_y = lip_constant(space, restrict_map(fm, yk));
        const double scale = std::pow(ratio, k);
        row.scaled_x = scale * row.lip_x;
        row.scaled_y = scale * row.lip_y;
        prof.rows.push_back(row);
    }
    while (!prof.rows.empty() && prof.rows.back().x_size == 0) prof.rows.pop_back();
    if (prof.rows.empty()) throw PreconditionError("no nonempty annulus at or beyond r");

    for (const auto& row : prof.rows) {
        prof.bound_x = std::max(prof.bound_x, row.scaled_x);
        prof.bound_y = std::max(prof.bound_y, row.scaled_y);
    }
    const std::size_t h = prof.rows.size();
    if (h >= 2) {
        double early = 0.0, late = 0.0;
        for (std::size_t i = 0; i < h; ++i) {
            double& half = i < h / 2 ? early : late;
            half = std::max(half, prof.rows[i].scaled_x);
        }
        prof.unbounded_trend = late > 0.0 && late >= 2.0 * early;
    }
    return prof;
}

ProfileCertificate certify_profile_bound(const PointedMetricSpace& space, const SphereMap& f,
                                         double r, double ratio, double C) {
    if (!(r > 0.0) || !(ratio > 1.0)) throw PreconditionError("need r > 0 and M > 1");
    const auto lifted = induce(space, f).map();
    ProfileCertificate cert;
    cert.C = C;
    cert.bound = std::max(r * ratio * C + 1.0, 2.0 / (ratio - 1.0) + 1.0);
    auto certified = [&](std::size_t a, std::size_t b) {
        const double na = space.norm(lifted.domain[a]);
        const double nb = space.norm(lifted.domain[b]);
        return (na >= r && nb >= r) || na == 0.0 || nb == 0.0;
    };
    auto ratio_at = [&](std::size_t a, std::size_t b) {
        return pair_ratio(euclidean_distance(lifted.values[a], lifted.values[b]),
                          space.distance(lifted.domain[a], lifted.domain[b]));
    };
    const std::size_t n = lifted.size();
    cert.measured = kernels::pair_max(
        n, [&](std::size_t a, std::size_t b) { return certified(a, b) ? ratio_at(a, b) : 0.0; });
    cert.measured_all = kernels::pair_max(n, ratio_at);
    cert.violations = kernels::pair_count(n, [&](std::size_t a, std::size_t b) {
        if (!certified(a, b)) return false;
        const double lhs = euclidean_distance(lifted.values[a], lifted.values[b]);
        const double rhs = cert.bound * space.distance(lifted.domain[a], lifted.domain[b]);
        return !approx_leq(lhs, rhs);
    });
    return cert;
}

ProfileCertificate profile_implies_lipschitz(const PointedMetricSpace& space, const SphereMap& f,
                                             const AnnulusProfile& profile) {
    if (profile.unbounded_trend) {
        throw PreconditionError("unbounded profile: M^k Lip(f|X_k) shows a growth trend");
    }
    return certify_profile_bound(space, f, profile.r, profile.ratio, profile.bound_x);
}

double sublinear_defect(const PointedMetricSpace& space, const SphereMap& f,
                        const PiecewiseLinearFunction& s, double R) {
    if (!(R >= 0.0)) throw PreconditionError("defect radius R must be nonnegative");
    const auto& fm = f.map();
    const std::size_t n = fm.size();
    std::vector<double> reach(n), norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        norms[j] = space.norm(fm.domain[j]);
        reach[j] = s(norms[j]);
    }
    return kernels::pair_max(n, [&](std::size_t a, std::size_t b) {
        if (std::min(norms[a], norms[b]) < R) return 0.0;
        const double d = space.distance(fm.domain[a], fm.domain[b]);
        if (d > reach[a] && d > reach[b]) return 0.0;
        return euclidean_distance(fm.values[a], fm.values[b]);
    });
}

double sublinear_defect_bound(double lambda, double M, const PiecewiseLinearFunction& s,
                              double R) {
    if (!(R > 0.0)) throw PreconditionError("defect bound needs R > 0");
    return (lambda + 1.0) * s.sup_ratio_from(R) + M / R;
}

bool satisfies_growth(const PointedMetricSpace& space, const VectorMap& f,
                      const RadialGrowthBound& g) {
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!approx_leq(g.c * space.norm(f.domain[j]) - g.b, euclidean_norm(f.values[j]))) {
            return false;
        }
    }
    return true;
}

RescaleCertificate rescale_transfer(const PointedMetricSpace& space, const SphereMap& f,
                                    const VectorMap& s, const RadialGrowthBound& growth) {
    const auto& fm = f.map();
    if (s.dim() != 1) throw PreconditionError("rescaling function must be real-valued");
    if (s.domain != fm.domain) throw PreconditionError("rescaling function and map domains differ");
    if (!(growth.c > 0.0) || !(growth.b >= 0.0)) {
        throw PreconditionError("growth bound needs c > 0 and b >= 0");
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s.values[j][0] < 0.0) throw PreconditionError("rescaling function must be nonnegative");
    }
    if (!satisfies_growth(space, s, growth)) {
        throw PreconditionError("rescaling function violates its growth bound");
    }

    const std::size_t n = fm.size();
    RescaleCertificate cert;
    cert.F = VectorMap{fm.domain, Field(n, fm.dim())};
    for (std::size_t j = 0; j < n; ++j) {
        auto dst = cert.F.values[j];
        auto v = fm.values[j];
        for (std::size_t c = 0; c < v.size(); ++c) dst[c] = s.values[j][0] * v[c];
    }
    const auto fprime = induce(space, f).map();
    cert.fit_fprime = asymptotic_fit(space, fprime);
    cert.fit_F = asymptotic_fit(space, cert.F);
    cert.s_lambda = lip_constant(space, s);
    for (std::size_t j = 0; j < n; ++j) {
        const double over = s.values[j][0] - cert.s_lambda * space.norm(s.domain[j]);
        cert.s_offset = std::max(cert.s_offset, over);
    }
    // The transfer argument is phrased with s >= 2c|x| - b.
    cert.c = growth.c / 2.0;
    cert.b = growth.b;
    const double c = cert.c;
    const double b = cert.b;
    const double cutoff = b / c;

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = space.norm(fm.domain[j]);

    // f' fitted (u, v)  =>  |F(x)-F(y)| bounded with the s constants (lambda, M).
    {
        const double lam = cert.s_lambda;
        const double M = cert.s_offset;
        for (const auto& knee : cert.fit_fprime.pareto) {
            const double u = knee.lambda;
            const double v = knee.M;
            cert.forward_checks += n * (n - 1) / 2;
            cert.forward_violations += kernels::pair_count(n, [&](std::size_t a, std::size_t bb) {
                std::size_t x = a, y = bb;
                if (norms[x] < norms[y]) std::swap(x, y);
                const double d = space.distance(fm.domain[x], fm.domain[y]);
                double bound;
                if (norms[y] <= cutoff) {
                    bound = lam * d + 2.0 * lam * cutoff + 2.0 * M;
                } else {
                    const double factor = b > 0.0 ? lam + M * c / b : lam + M / norms[x];
                    bound = factor * (u * d + d + v) + lam * d + M;
                }
                return !approx_leq(euclidean_distance(cert.F.values[x], cert.F.values[y]), bound);
            });
        }
    }
    // F fitted (lambda_F, M_F)  =>  f' bounded, after enlarging to cover s.
    for (const auto& knee : cert.fit_F.pareto) {
        const double lam = std::max(cert.s_lambda, knee.lambda);
        const double M = std::max(cert.s_offset, knee.M);
        cert.backward_checks += n * (n - 1) / 2;
        cert.backward_violations += kernels::pair_count(n, [&](std::size_t a, std::size_t bb) {
            std::size_t x = a, y = bb;
            if (norms[x] < norms[y]) std::swap(x, y);
            const double d = space.distance(fm.domain[x], fm.domain[y]);
            const double bound =
                norms[y] <= cutoff ? d + 2.0 * cutoff : (2.0 * lam * d + 2.0 * M) / c + d;
            return !approx_leq(euclidean_distance(fprime.values[x], fprime.values[y]), bound);
        });
    }
    return cert;
}

}  // namespace coarse
