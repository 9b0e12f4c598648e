#include "coarsekit/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "coarsekit/errors.hpp"
#include "coarsekit/kernels.hpp"

namespace coarse {

namespace {

bool on_simplex(std::span<const double> v) {
    double sum = 0.0;
    for (double c : v) {
        if (c < -tolerance()) return false;
        sum += c;
    }
    return approx_eq(sum, 1.0);
}

double cone_field_lip(const PointedMetricSpace& space, const Field& f) {
    return lip_constant(space, cone_lift(space, VectorMap::total(f)));
}

}  // namespace

Cover make_cover(const PointedMetricSpace& space, std::vector<std::string> names,
                 std::vector<std::vector<std::size_t>> sets) {
    if (sets.empty()) throw PreconditionError("cover needs at least one set");
    if (names.size() != sets.size()) throw PreconditionError("cover names and sets differ in count");
    const std::size_t n = space.size();
    std::vector<char> covered(n, 0);
    Cover c;
    c.proper = true;
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (std::size_t p : s) {
            if (p >= n) throw PreconditionError("cover set references a point outside the space");
            covered[p] = 1;
        }
        if (s.size() == n) c.proper = false;
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
        throw PreconditionError("family does not cover the space");
    }
    c.names = std::move(names);
    c.sets = std::move(sets);
    return c;
}

Field complement_distances(const PointedMetricSpace& space, const Cover& cover) {
    const std::size_t n = space.size();
    const std::size_t k = cover.size();
    Field out(n, k, kInf);
    std::vector<std::vector<char>> inside(k, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t p : cover.sets[i]) inside[i][p] = 1;
    }
    const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t sx = 0; sx < sn; ++sx) {
        const auto x = static_cast<std::size_t>(sx);
        auto row = out[x];
        for (std::size_t y = 0; y < n; ++y) {
            const double d = space.distance(x, y);
            for (std::size_t i = 0; i < k; ++i) {
                if (!inside[i][y]) row[i] = std::min(row[i], d);
            }
        }
    }
    return out;
}

PartitionOfUnity canonical_partition(const PointedMetricSpace& space, const Cover& cover) {
    if (!cover.proper) throw PreconditionError("cover is improper: some member is the whole space");
    const Field gaps = complement_distances(space, cover);
    const std::size_t n = space.size();
    const std::size_t k = cover.size();
    PartitionOfUnity p{Field(n, k), std::vector<double>(n, 0.0)};
    for (std::size_t x = 0; x < n; ++x) {
        double total = 0.0;
        for (double g : gaps[x]) total += g;
        if (!(total > 0.0)) {
            throw PreconditionError("cover is degenerate at point " + space.id(x) + " (S(x) = 0)");
        }
        p.total[x] = total;
        auto row = p.phi[x];
        for (std::size_t i = 0; i < k; ++i) row[i] = gaps[x][i] / total;
    }
    return p;
}

namespace {

double gap_from_totals(const PointedMetricSpace& space, const std::vector<double>& total) {
    double eps = kInf;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (x == space.basepoint()) continue;
        if (total[x] == 0.0) return 0.0;
        const double nx = space.norm(x);
        if (nx > 0.0) eps = std::min(eps, total[x] / nx);
    }
    return eps;
}

}  // namespace

double sublinearity_gap(const PointedMetricSpace& space, const Cover& cover) {
    const Field gaps = complement_distances(space, cover);
    std::vector<double> total(space.size(), 0.0);
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (double g : gaps[x]) total[x] += g;
    }
    return gap_from_totals(space, total);
}

double sublinearity_gap(const PointedMetricSpace& space, const PartitionOfUnity& p) {
    return gap_from_totals(space, p.total);
}

PartitionCertificate certify_partition_lipschitz(const PointedMetricSpace& space,
                                                 const Cover& cover) {
    const PartitionOfUnity p = canonical_partition(space, cover);
    PartitionCertificate cert;
    cert.epsilon = sublinearity_gap(space, p);
    if (!(cert.epsilon > 0.0)) throw PreconditionError("sublinearity gap is zero");
    const std::size_t n = space.size();
    const std::size_t k = cover.size();
    cert.proved_bound = 3.0 * static_cast<double>(k) / cert.epsilon + 1.0;
    const NerveMap nerve = nerve_map(space, p);

    auto coord_gap = [&](std::size_t x, std::size_t y, std::size_t i) {
        return std::abs(nerve.cone_values[x][i] - nerve.cone_values[y][i]);
    };
    cert.measured = kernels::pair_max(n, [&](std::size_t x, std::size_t y) {
        const double d = space.distance(x, y);
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double g = coord_gap(x, y, i);
            worst = std::max(worst, d > 0.0 ? g / d : (g > 0.0 ? kInf : 0.0));
        }
        return worst;
    });
    cert.violations = kernels::pair_count(n, [&](std::size_t x, std::size_t y) {
        const double rhs = cert.proved_bound * space.distance(x, y);
        for (std::size_t i = 0; i < k; ++i) {
            if (!approx_leq(coord_gap(x, y, i), rhs)) return true;
        }
        return false;
    });

    cert.cone_lip = cone_field_lip(space, p.phi);
    // If phi' is lambda-Lipschitz then S(x) > |x| / (2 lambda) wherever a complement witness exists.
    for (std::size_t x = 0; x < n; ++x) {
        const double nx = space.norm(x);
        if (nx == 0.0) continue;
        bool witnessed = false;
        for (const auto& s : cover.sets) {
            witnessed = witnessed || std::binary_search(s.begin(), s.end(), x);
        }
        if (!witnessed) continue;
        if (!(p.total[x] > nx / (2.0 * cert.cone_lip))) ++cert.converse_violations;
    }
    return cert;
}

NerveMap nerve_map(const PointedMetricSpace& space, const PartitionOfUnity& p) {
    NerveMap nm{p, p.phi, Field(p.phi.size(), p.phi.dim())};
    for (std::size_t x = 0; x < p.phi.size(); ++x) {
        const double nx = space.norm(x);
        auto dst = nm.cone_values[x];
        auto src = p.phi[x];
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = nx * src[i];
    }
    return nm;
}

ConvexCombination convex_combine(const PointedMetricSpace& space, const Field& gamma,
                                 const Field& f, const Field& g) {
    const std::size_t n = space.size();
    if (gamma.size() != n || f.size() != n || g.size() != n) {
        throw PreconditionError("convex combination inputs must be total on the space");
    }
    if (gamma.dim() != 2) throw PreconditionError("gamma must map into the 1-simplex");
    if (f.dim() != g.dim()) throw PreconditionError("f and g must share a target simplex");
    for (std::size_t x = 0; x < n; ++x) {
        if (!on_simplex(gamma[x]) || !on_simplex(f[x]) || !on_simplex(g[x])) {
            throw PreconditionError("convex combination inputs must be simplex-valued");
        }
    }
    ConvexCombination out;
    out.h = Field(n, f.dim());
    for (std::size_t x = 0; x < n; ++x) {
        const double alpha = gamma[x][0];
        const double beta = gamma[x][1];
        auto h = out.h[x];
        for (std::size_t c = 0; c < h.size(); ++c) h[c] = alpha * f[x][c] + beta * g[x][c];
    }
    out.lip_f = cone_field_lip(space, f);
    out.lip_g = cone_field_lip(space, g);
    out.lip_gamma = cone_field_lip(space, gamma);
    out.lip_h = cone_field_lip(space, out.h);
    out.bound = out.lip_f + out.lip_g + 2.0 * out.lip_gamma + 2.0;
    out.ok = approx_leq(out.lip_h, out.bound);
    return out;
}

}  // namespace coarse
