#include "coarsekit/cover_shrink.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>

#include "coarsekit/cones.hpp"
#include "coarsekit/errors.hpp"
#include "coarsekit/kernels.hpp"

namespace coarse {

int ColoredCover::colors() const {
    int top = 0;
    for (int c : color) top = std::max(top, c);
    return top;
}

ColoredCover make_colored_cover(const PointedMetricSpace& /*space*/, Cover cover,
                                std::vector<int> color, double r, double C) {
    if (color.size() != cover.size()) throw PreconditionError("every set needs a color");
    if (!(r > 0.0) || !(C > 0.0)) throw PreconditionError("r and C must be positive");
    for (int c : color) {
        if (c < 1) throw PreconditionError("colors start at 1");
    }
    ColoredCover cc{std::move(cover), std::move(color), r, C};
    if (cc.colors() < 2) throw PreconditionError("a colored cover needs at least two colors");
    return cc;
}

namespace {

double set_diameter(const PointedMetricSpace& space, const std::vector<std::size_t>& s) {
    double d = 0.0;
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = a + 1; b < s.size(); ++b) d = std::max(d, space.distance(s[a], s[b]));
    }
    return d;
}

double set_gap(const PointedMetricSpace& space, const std::vector<std::size_t>& s,
               const std::vector<std::size_t>& t) {
    double g = kInf;
    for (std::size_t x : s) g = std::min(g, space.distance_to(x, t));
    return g;
}

}  // namespace

ColoredCoverReport validate_colored_cover(const PointedMetricSpace& space, const ColoredCover& cc) {
    ColoredCoverReport rep;
    const auto& sets = cc.cover.sets;
    const double mesh = cc.C * cc.r;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const double diam = set_diameter(space, sets[i]);
        rep.max_diameter = std::max(rep.max_diameter, diam);
        if (!approx_leq(diam, mesh)) {
            ++rep.mesh_violations;
            rep.violations.push_back("set " + cc.cover.names[i] + " has diameter " +
                                     std::to_string(diam) + " above C*r");
        }
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            if (cc.color[i] != cc.color[j]) continue;
            const double gap = set_gap(space, sets[i], sets[j]);
            rep.min_same_color_gap = std::min(rep.min_same_color_gap, gap);
            if (!approx_leq(cc.r, gap)) {
                ++rep.disjointness_violations;
                rep.violations.push_back("sets " + cc.cover.names[i] + " and " + cc.cover.names[j] +
                                         " share a color at distance " + std::to_string(gap));
            }
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

ColoredNerve nerve_map(const PointedMetricSpace& space, const ColoredCover& cc) {
    const PartitionOfUnity p = canonical_partition(space, cc.cover);
    ColoredNerve out;
    out.nerve = nerve_map(space, p);
    out.lip_phi = lip_constant(space, VectorMap::total(p.phi));
    out.lambda = cc.r * out.lip_phi;
    const std::size_t n = space.size();
    const std::size_t top_size = static_cast<std::size_t>(cc.m()) + 2;
    out.support.resize(n);
    std::map<std::vector<std::size_t>, std::size_t> tops;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < p.phi.dim(); ++i) {
            if (p.phi[x][i] > 0.0) out.support[x].push_back(i);
        }
        if (out.support[x].size() >= top_size) tops.emplace(out.support[x], 0);
    }
    for (const auto& [verts, unused] : tops) out.top_simplices.push_back(verts);
    out.preimage_bound = 2.0 * cc.C * cc.r;
    for (const auto& verts : out.top_simplices) {
        std::vector<std::size_t> pre;
        for (std::size_t x = 0; x < n; ++x) {
            if (std::includes(verts.begin(), verts.end(), out.support[x].begin(),
                              out.support[x].end())) {
                pre.push_back(x);
            }
        }
        out.preimage_diameters.push_back(set_diameter(space, pre));
    }
    return out;
}

double lebesgue_number(const PointedMetricSpace& space,
                       std::span<const std::vector<std::size_t>> sets) {
    const std::size_t n = space.size();
    std::vector<std::vector<char>> inside(sets.size(), std::vector<char>(n, 0));
    std::vector<char> covered(n, 0);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t x : sets[i]) {
            if (x >= n) throw PreconditionError("set references a point outside the space");
            inside[i][x] = 1;
            covered[x] = 1;
        }
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
        throw PreconditionError("family does not cover the space");
    }
    double value = kInf;
    for (std::size_t x = 0; x < n; ++x) {
        double best = 0.0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (!inside[i][x]) continue;
            double out = kInf;
            for (std::size_t y = 0; y < n; ++y) {
                if (!inside[i][y]) out = std::min(out, space.distance(x, y));
            }
            best = std::max(best, out);
        }
        value = std::min(value, best);
    }
    return value;
}

std::size_t multiplicity(std::size_t points, std::span<const std::vector<std::size_t>> sets) {
    std::vector<std::size_t> count(points, 0);
    for (const auto& s : sets) {
        for (std::size_t x : s) {
            if (x >= points) throw PreconditionError("set references a point outside the space");
            ++count[x];
        }
    }
    std::size_t best = 0;
    for (std::size_t c : count) best = std::max(best, c);
    return best;
}

ShrinkReport shrink(const PointedMetricSpace& space, const ColoredCover& cc,
                    SphereStrategy strategy) {
    const ColoredNerve nerve = nerve_map(space, cc);
    const Field& phi = nerve.nerve.partition.phi;
    const std::size_t n = space.size();
    const std::size_t k = cc.cover.size();
    const int m = cc.m();
    const std::size_t top_size = static_cast<std::size_t>(m) + 2;

    ShrinkReport rep;
    rep.m = m;
    rep.lambda = nerve.lambda;
    rep.preimage_bound = nerve.preimage_bound;
    for (double d : nerve.preimage_diameters) {
        rep.max_preimage_diameter = std::max(rep.max_preimage_diameter, d);
    }
    rep.preimage_ok = approx_leq(rep.max_preimage_diameter, rep.preimage_bound);
    rep.original_multiplicity = multiplicity(n, cc.cover.sets);

    std::vector<char> in_ar(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        if (nerve.support[x].size() < top_size) {
            in_ar[x] = 1;
            rep.A_r.push_back(x);
        }
    }

    const SphereSimplexHomeo homeo(m);
    const std::size_t nt = nerve.top_simplices.size();
    rep.stages.resize(nt);
    // psi values of the interior points of each top simplex, in that simplex's coordinates.
    std::vector<std::vector<std::pair<std::size_t, Vec>>> interior(nt);
    std::vector<std::string> errors(nt);
    const auto snt = static_cast<std::int64_t>(nt);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t si = 0; si < snt; ++si) {
        const auto s = static_cast<std::size_t>(si);
        const auto& verts = nerve.top_simplices[s];
        SimplexStage& st = rep.stages[s];
        st.vertices = verts;
        try {
            std::vector<std::size_t> xs, seeds;
            for (std::size_t x = 0; x < n; ++x) {
                const auto& sup = nerve.support[x];
                if (!std::includes(verts.begin(), verts.end(), sup.begin(), sup.end())) continue;
                xs.push_back(x);
                if (in_ar[x]) seeds.push_back(x);
            }
            st.points = xs.size();
            st.seeds = seeds.size();
            Field local(xs.size(), top_size);
            for (std::size_t j = 0; j < xs.size(); ++j) {
                for (std::size_t v = 0; v < top_size; ++v) local[j][v] = phi[xs[j]][verts[v]];
            }
            const VectorMap phi_d{xs, local};
            st.lip_phi = lip_constant(space, phi_d);

            Field psi(xs.size(), top_size);
            const bool constant = st.lip_phi == 0.0;
            if (seeds.empty() || constant) {
                st.radial = true;
                for (std::size_t j = 0; j < xs.size(); ++j) psi.assign(j, homeo.radial_push(local[j]));
            } else {
                Field dirs(seeds.size(), static_cast<std::size_t>(m) + 1);
                for (std::size_t j = 0; j < seeds.size(); ++j) {
                    dirs.assign(j, homeo.to_sphere(local[*phi_d.position_of(seeds[j])]));
                }
                const auto ext = extend_sphere_map(
                    space, SphereMap::from(VectorMap{seeds, std::move(dirs)}), xs, strategy);
                st.fallback = ext.fallback;
                const auto& g = ext.g.map();
                for (std::size_t j = 0; j < xs.size(); ++j) {
                    if (in_ar[xs[j]]) {
                        psi.assign(j, local[j]);
                    } else {
                        psi.assign(j, homeo.to_boundary(g.values[*g.position_of(xs[j])]));
                    }
                }
            }
            st.lip_psi = lip_constant(space, VectorMap{xs, psi});
            st.ratio = constant ? 0.0 : st.lip_psi / st.lip_phi;
            for (std::size_t j = 0; j < xs.size(); ++j) {
                if (in_ar[xs[j]]) continue;
                auto row = psi[j];
                interior[s].emplace_back(xs[j], Vec(row.begin(), row.end()));
            }
        } catch (const std::exception& e) {
            errors[s] = "simplex " + std::to_string(s) + ": " + e.what();
        }
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw PreconditionError(e);
    }
    for (const auto& st : rep.stages) {
        if (st.seeds == 0) {
            rep.warnings.push_back("top simplex without boundary points; pushed radially");
        }
    }

    // s(U) = (U cap A_r) plus the interior points whose psi has a positive U-coordinate.
    rep.shrunk_sets.assign(k, {});
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t x : cc.cover.sets[i]) {
            if (in_ar[x]) rep.shrunk_sets[i].push_back(x);
        }
    }
    for (std::size_t s = 0; s < nt; ++s) {
        for (const auto& [x, val] : interior[s]) {
            if (owner[x] >= 0 && owner[x] != static_cast<int>(s)) {
                rep.warnings.push_back("point " + space.id(x) + " is interior to two top simplices");
            }
            owner[x] = static_cast<int>(s);
            for (std::size_t v = 0; v < top_size; ++v) {
                if (val[v] > 0.0) rep.shrunk_sets[nerve.top_simplices[s][v]].push_back(x);
            }
        }
    }
    for (auto& set : rep.shrunk_sets) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }

    rep.subset_ok = true;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& u = cc.cover.sets[i];
        const auto& su = rep.shrunk_sets[i];
        if (!std::includes(u.begin(), u.end(), su.begin(), su.end())) rep.subset_ok = false;
    }
    rep.multiplicity = multiplicity(n, rep.shrunk_sets);
    rep.multiplicity_ok = rep.multiplicity <= static_cast<std::size_t>(m) + 1;
    rep.lebesgue = lebesgue_number(space, rep.shrunk_sets);

    if (nt == 0) {
        rep.t = 0.0;
        rep.proved_lebesgue_bound = 0.0;
        rep.lebesgue_ok = true;
        return rep;
    }
    for (const auto& st : rep.stages) rep.t = std::max(rep.t, st.ratio);
    if (rep.t == 0.0) {
        rep.t = 1.0;
        rep.warnings.push_back("every top simplex was constant; t taken as 1");
    }
    rep.proved_lebesgue_bound = cc.r / (rep.lambda * static_cast<double>(m + 2) * rep.t);
    rep.lebesgue_ok = approx_leq(rep.proved_lebesgue_bound, rep.lebesgue);
    for (std::size_t x = 0; x < n; ++x) {
        bool contained = false;
        for (const auto& set : rep.shrunk_sets) {
            if (!std::binary_search(set.begin(), set.end(), x)) continue;
            bool all_in = true;
            for (std::size_t y = 0; y < n && all_in; ++y) {
                if (space.distance(x, y) <= rep.proved_lebesgue_bound &&
                    !std::binary_search(set.begin(), set.end(), y)) {
                    all_in = false;
                }
            }
            if (all_in) {
                contained = true;
                break;
            }
        }
        if (!contained) ++rep.closed_ball_failures;
    }
    return rep;
}

}  // namespace coarse
