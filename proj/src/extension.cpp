#include "coarsekit/extension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <exception>

#include "coarsekit/errors.hpp"
#include "coarsekit/kernels.hpp"
#include "coarsekit/tolerance.hpp"

namespace coarse {

namespace {

double pair_ratio(double num, double den) {
    if (den > 0.0) return num / den;
    return num > 0.0 ? kInf : 0.0;
}

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> pts) {
    std::vector<std::size_t> out(pts.begin(), pts.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> members_between(const PointedMetricSpace& space,
                                         std::span<const std::size_t> pts, double lo, double hi) {
    return annulus(space, pts, lo, hi).members;
}

}  // namespace

std::vector<double> mcshane_extend(const PointedMetricSpace& space,
                                   std::span<const std::size_t> domain,
                                   std::span<const double> values, std::optional<double> L) {
    if (domain.empty()) throw PreconditionError("cannot extend from an empty set");
    if (domain.size() != values.size()) throw PreconditionError("domain and values differ in size");
    double lip = 0.0;
    for (std::size_t a = 0; a < domain.size(); ++a) {
        for (std::size_t b = a + 1; b < domain.size(); ++b) {
            lip = std::max(lip, pair_ratio(std::abs(values[a] - values[b]),
                                           space.distance(domain[a], domain[b])));
        }
    }
    if (!std::isfinite(lip)) throw PreconditionError("map is not Lipschitz on its domain");
    const double use = L.value_or(lip);
    if (!approx_leq(lip, use)) throw PreconditionError("Lipschitz constant below Lip(f)");
    const std::size_t n = space.size();
    std::vector<double> g(n);
    for (std::size_t x = 0; x < n; ++x) {
        double best = kInf;
        for (std::size_t a = 0; a < domain.size(); ++a) {
            best = std::min(best, values[a] + use * space.distance(x, domain[a]));
        }
        g[x] = best;
    }
    for (std::size_t a = 0; a < domain.size(); ++a) g[domain[a]] = values[a];
    return g;
}

std::optional<std::size_t> nearest_in(const PointedMetricSpace& space, std::size_t x,
                                      std::span<const std::size_t> set) {
    std::optional<std::size_t> best;
    double best_d = kInf;
    for (std::size_t a : set) {
        const double d = space.distance(x, a);
        if (d < best_d || (d == best_d && best && a < *best)) {
            best_d = d;
            best = a;
        }
    }
    return best;
}

TransferResult nearest_point_transfer(const PointedMetricSpace& space, const SphereMap& f,
                                      std::span<const std::size_t> targets, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
    const auto& fm = f.map();
    std::vector<std::size_t> dom;
    std::vector<std::size_t> src;
    for (std::size_t x : sorted_unique(targets)) {
        if (fm.position_of(x)) {
            dom.push_back(x);
            src.push_back(x);
            continue;
        }
        auto a = nearest_in(space, x, fm.domain);
        if (a && space.distance(x, *a) < eps) {
            dom.push_back(x);
            src.push_back(*a);
        }
    }
    Field vals(dom.size(), fm.dim());
    for (std::size_t j = 0; j < dom.size(); ++j) vals.assign(j, fm.values[*fm.position_of(src[j])]);
    TransferResult out{SphereMap::from(VectorMap{dom, std::move(vals)}), src, eps, 0, 0};

    const AsymptoticFit fit = asymptotic_fit(space, induce(space, f).map());
    const VectorMap gp = induce(space, out.g).map();
    const std::size_t n = gp.size();
    for (const auto& knee : fit.pareto) {
        if (!std::isfinite(knee.lambda)) continue;
        const double add = 2.0 * eps * knee.lambda + knee.M + 2.0 * eps;
        out.checks += n * (n - 1) / 2;
        out.violations += kernels::pair_count(n, [&](std::size_t a, std::size_t b) {
            const double d = space.distance(gp.domain[a], gp.domain[b]);
            return !approx_leq(euclidean_distance(gp.values[a], gp.values[b]), knee.lambda * d + add);
        });
    }
    return out;
}

PasteResult paste(const PointedMetricSpace& space, const VectorMap& u1, const VectorMap& u2,
                  double mu, double target_diam) {
    if (!(mu > 0.0)) throw PreconditionError("pasting gap must be positive");
    if (u1.size() > 0 && u2.size() > 0 && u1.dim() != u2.dim()) {
        throw PreconditionError("pasted maps have different targets");
    }
    std::vector<std::size_t> only1, only2;
    for (std::size_t j = 0; j < u1.size(); ++j) {
        if (!u2.position_of(u1.domain[j])) only1.push_back(u1.domain[j]);
    }
    for (std::size_t j = 0; j < u2.size(); ++j) {
        const auto p = u1.position_of(u2.domain[j]);
        if (!p) {
            only2.push_back(u2.domain[j]);
            continue;
        }
        if (euclidean_distance(u1.values[*p], u2.values[j]) > tolerance()) {
            throw PreconditionError("pasted maps disagree at point " + space.id(u2.domain[j]));
        }
    }
    PasteResult out;
    out.gap = kInf;
    for (std::size_t x : only1) out.gap = std::min(out.gap, space.distance_to(x, only2));
    if (!approx_leq(mu, out.gap)) throw PreconditionError("separated parts are closer than mu");

    std::vector<std::size_t> dom(u1.domain);
    dom.insert(dom.end(), only2.begin(), only2.end());
    std::sort(dom.begin(), dom.end());
    const std::size_t dim = u1.size() > 0 ? u1.dim() : u2.dim();
    Field vals(dom.size(), dim);
    for (std::size_t j = 0; j < dom.size(); ++j) {
        if (auto p = u1.position_of(dom[j])) {
            vals.assign(j, u1.values[*p]);
        } else {
            vals.assign(j, u2.values[*u2.position_of(dom[j])]);
        }
    }
    out.u = VectorMap{std::move(dom), std::move(vals)};
    out.lip1 = lip_constant(space, u1);
    out.lip2 = lip_constant(space, u2);
    out.lip = lip_constant(space, out.u);
    out.bound = std::max({out.lip1, out.lip2, target_diam / mu});
    out.ok = approx_leq(out.lip, out.bound);
    return out;
}

std::string to_string(SphereStrategy s) { return s == SphereStrategy::Project ? "project" : "nearest"; }

SphereStrategy parse_strategy(const std::string& name) {
    if (name == "nearest") return SphereStrategy::Nearest;
    if (name == "project") return SphereStrategy::Project;
    throw PreconditionError("unknown strategy: " + name);
}

namespace {

VectorMap nearest_extension(const PointedMetricSpace& space, const VectorMap& fm,
                            const std::vector<std::size_t>& dom) {
    Field vals(dom.size(), fm.dim());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        if (auto p = fm.position_of(dom[j])) {
            vals.assign(j, fm.values[*p]);
        } else {
            vals.assign(j, fm.values[*fm.position_of(*nearest_in(space, dom[j], fm.domain))]);
        }
    }
    return VectorMap{dom, std::move(vals)};
}

}  // namespace

SphereExtension extend_sphere_map(const PointedMetricSpace& space, const SphereMap& f,
                                  std::span<const std::size_t> targets, SphereStrategy strategy,
                                  double rho_min) {
    const auto& fm = f.map();
    if (fm.size() == 0) throw PreconditionError("cannot extend from an empty set");
    std::vector<std::size_t> dom = sorted_unique(targets);
    for (std::size_t a : fm.domain) {
        if (!std::binary_search(dom.begin(), dom.end(), a)) {
            throw PreconditionError("extension targets must contain the map's domain");
        }
    }
    const double lip_in = lip_constant(space, fm);
    SphereExtension out{SphereMap::from(nearest_extension(space, fm, dom)), strategy,
                        SphereStrategy::Nearest, false, 1.0, lip_in, 0.0};

    if (strategy == SphereStrategy::Project) {
        const std::size_t dim = fm.dim();
        Field raw(space.size(), dim);
        std::vector<double> coord(fm.size());
        for (std::size_t c = 0; c < dim; ++c) {
            for (std::size_t j = 0; j < fm.size(); ++j) coord[j] = fm.values[j][c];
            const auto ext = mcshane_extend(space, fm.domain, coord, lip_in);
            for (std::size_t x = 0; x < space.size(); ++x) raw[x][c] = ext[x];
        }
        double rho = kInf;
        for (std::size_t x : dom) rho = std::min(rho, euclidean_norm(raw[x]));
        out.rho = rho;
        if (rho >= rho_min) {
            Field vals(dom.size(), dim);
            for (std::size_t j = 0; j < dom.size(); ++j) {
                if (auto p = fm.position_of(dom[j])) {
                    vals.assign(j, fm.values[*p]);
                    continue;
                }
                auto v = raw[dom[j]];
                const double len = euclidean_norm(v);
                for (std::size_t c = 0; c < dim; ++c) vals[j][c] = v[c] / len;
            }
            out.g = SphereMap::from(VectorMap{dom, std::move(vals)});
            out.used = SphereStrategy::Project;
        } else {
            out.fallback = true;
        }
    }
    out.lip_out = lip_constant(space, out.g.map());
    return out;
}

ExtensionCertificate splice_extend(const PointedMetricSpace& space, const NormPreservingMap& fp,
                                   const SpliceParams& params) {
    const VectorMap& input = fp.map();
    if (input.size() == 0) throw PreconditionError("cannot extend from an empty set");
    const auto report = validate_space(space);
    if (report.has_coincident_points) throw PreconditionError("space is not discrete");
    if (!(params.ratio > 1.0)) throw PreconditionError("ratio must exceed 1");
    const double lip_in = lip_constant(space, input);
    if (!std::isfinite(lip_in)) throw PreconditionError("input map is not Lipschitz");

    double r = 0.0;
    if (params.r) {
        r = *params.r;
    } else {
        r = kInf;
        for (std::size_t x = 0; x < space.size(); ++x) {
            if (space.norm(x) > 0.0) r = std::min(r, space.norm(x));
        }
        if (r == kInf) r = 1.0;
    }
    if (!(r > 0.0)) throw PreconditionError("base scale must be positive");
    const double M = params.ratio;
    const std::size_t dim = input.dim();
    const std::size_t x0 = space.basepoint();

    ExtensionCertificate cert;
    cert.input_map = input;
    cert.lip_in = lip_in;
    cert.constants = {{"r", r}, {"M", M}, {"rho_min", params.rho_min}};

    // Direction field on A, with the basepoint adjoined if needed.
    std::vector<std::size_t> adom = input.domain;
    Field avals(0, dim);
    {
        const Vec e1 = basis_vector(dim);
        bool has_base = input.position_of(x0).has_value();
        if (!has_base) {
            adom.push_back(x0);
            std::sort(adom.begin(), adom.end());
            cert.warnings.push_back("basepoint adjoined to the domain with direction e1");
        }
        avals = Field(adom.size(), dim);
        for (std::size_t j = 0; j < adom.size(); ++j) {
            const auto p = input.position_of(adom[j]);
            const double nx = space.norm(adom[j]);
            if (!p || nx == 0.0) {
                avals.assign(j, e1);
                continue;
            }
            for (std::size_t c = 0; c < dim; ++c) avals[j][c] = input.values[*p][c] / nx;
        }
    }
    const SphereMap f = SphereMap::from(VectorMap{adom, std::move(avals)});
    const auto all = all_indices(space.size());

    double max_norm = 0.0;
    for (std::size_t x = 0; x < space.size(); ++x) max_norm = std::max(max_norm, space.norm(x));
    int top = 0;
    while (r * std::pow(M, top + 2) <= max_norm) ++top;
    const auto scale = [&](int k) { return r * std::pow(M, k); };

    // Stage f_k: extension of f|An(A, rM^{k-1}, rM^{k+2}) over An(X, rM^{k-1}, rM^{k+2}).
    const int last_f = top + 3;
    std::vector<std::optional<SphereMap>> fk(static_cast<std::size_t>(last_f) + 1);
    std::vector<std::size_t> fk_fallbacks(fk.size(), 0);
    std::vector<std::string> errors(fk.size());
    std::vector<char> seeded_globally(fk.size(), 0);
    const auto nf = static_cast<std::int64_t>(fk.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t sk = 0; sk < nf; ++sk) {
        const int k = static_cast<int>(sk);
        try {
            const auto band = members_between(space, all, scale(k - 1), scale(k + 2));
            if (band.empty()) continue;
            auto seeds = members_between(space, f.map().domain, scale(k - 1), scale(k + 2));
            if (seeds.empty()) {
                seeds = f.map().domain;
                seeded_globally[sk] = 1;
            }
            std::vector<std::size_t> targets = band;
            targets.insert(targets.end(), seeds.begin(), seeds.end());
            const auto ext = extend_sphere_map(space, SphereMap::from(restrict_map(f.map(), seeds)),
                                               targets, params.strategy, params.rho_min);
            fk[sk] = SphereMap::from(restrict_map(ext.g.map(), band));
            fk_fallbacks[sk] = ext.fallback ? 1 : 0;
        } catch (const std::exception& e) {
            errors[sk] = "stage f_" + std::to_string(k) + ": " + e.what();
        }
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw PreconditionError(e);
    }
    for (std::size_t k = 0; k < seeded_globally.size(); ++k) {
        if (seeded_globally[k]) {
            cert.warnings.push_back("stage f_" + std::to_string(k) +
                                    " has no domain points in its band; seeded from the whole domain");
        }
    }

    // Stage h_k for even k: paste f_k with f_{k+2}, then extend over An(X, rM^k, rM^{k+3}).
    std::vector<int> evens;
    for (int k = 0; k <= top + 1; k += 2) evens.push_back(k);
    std::vector<std::optional<SphereMap>> hk(evens.size());
    std::vector<SpliceStage> stages(evens.size());
    std::vector<std::string> herrors(evens.size());
    const auto ne = static_cast<std::int64_t>(evens.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t si = 0; si < ne; ++si) {
        const int k = evens[static_cast<std::size_t>(si)];
        SpliceStage& st = stages[static_cast<std::size_t>(si)];
        st.k = k;
        try {
            const auto band = members_between(space, all, scale(k), scale(k + 3));
            st.band_size = band.size();
            if (band.empty()) continue;
            const auto piece1 = members_between(space, all, scale(k), scale(k + 1));
            const auto piece2 = members_between(space, f.map().domain, scale(k + 1), scale(k + 2));
            const auto piece3 = members_between(space, all, scale(k + 2), scale(k + 3));
            std::vector<std::size_t> x1 = piece1, x2 = piece2;
            x1.insert(x1.end(), piece2.begin(), piece2.end());
            x2.insert(x2.end(), piece3.begin(), piece3.end());
            const auto pick = [&](int j, const std::vector<std::size_t>& pts) {
                if (pts.empty() || !fk[static_cast<std::size_t>(j)]) return VectorMap{{}, Field(0, dim)};
                return restrict_map(fk[static_cast<std::size_t>(j)]->map(), pts);
            };
            const VectorMap u1 = pick(k, x1);
            const VectorMap u2 = pick(k + 2, x2);
            st.mu = scale(k + 1) * (M - 1.0);
            std::vector<std::size_t> seeds;
            VectorMap pasted{{}, Field(0, dim)};
            if (u1.size() == 0) {
                pasted = u2;
            } else if (u2.size() == 0) {
                pasted = u1;
            } else {
                const PasteResult pr = paste(space, u1, u2, st.mu, 2.0);
                if (!pr.ok) throw PreconditionError("paste bound violated");
                pasted = pr.u;
                st.paste_bound = pr.bound;
            }
            st.lip_pasted = lip_constant(space, pasted);
            VectorMap h;
            if (pasted.size() == 0) {
                // Nothing to seed from in this band; fall back to the global domain.
                auto targets = band;
                targets.insert(targets.end(), f.map().domain.begin(), f.map().domain.end());
                const auto ext = extend_sphere_map(space, f, targets, params.strategy, params.rho_min);
                st.fallbacks += ext.fallback ? 1 : 0;
                h = restrict_map(ext.g.map(), band);
            } else {
                auto targets = band;
                targets.insert(targets.end(), pasted.domain.begin(), pasted.domain.end());
                const auto ext = extend_sphere_map(space, SphereMap::from(pasted), targets,
                                                   params.strategy, params.rho_min);
                st.fallbacks += ext.fallback ? 1 : 0;
                h = restrict_map(ext.g.map(), band);
            }
            st.fallbacks += fk_fallbacks[static_cast<std::size_t>(k)];
            st.lip_h = lip_constant(space, h);
            hk[static_cast<std::size_t>(si)] = SphereMap::from(std::move(h));
        } catch (const std::exception& e) {
            herrors[static_cast<std::size_t>(si)] = "stage h_" + std::to_string(k) + ": " + e.what();
        }
    }
    for (const auto& e : herrors) {
        if (!e.empty()) throw PreconditionError(e);
    }

    // Core points below r take the nearest-scale extension of A near the basepoint.
    const auto core = members_between(space, all, 0.0, r);
    std::optional<SphereMap> core_map;
    if (!core.empty()) {
        auto seeds = members_between(space, f.map().domain, 0.0, scale(1));
        auto targets = core;
        targets.insert(targets.end(), seeds.begin(), seeds.end());
        const auto ext = extend_sphere_map(space, SphereMap::from(restrict_map(f.map(), seeds)),
                                           targets, params.strategy, params.rho_min);
        core_map = SphereMap::from(restrict_map(ext.g.map(), core));
    }

    // Splice: h_k owns [rM^k, rM^{k+2}) for even k, folded in increasing k.
    Field out(space.size(), dim);
    std::vector<char> assigned(space.size(), 0);
    if (core_map) {
        const auto& cm = core_map->map();
        for (std::size_t j = 0; j < cm.size(); ++j) {
            const std::size_t x = cm.domain[j];
            const double nx = space.norm(x);
            for (std::size_t c = 0; c < dim; ++c) out[x][c] = nx * cm.values[j][c];
            assigned[x] = 1;
        }
    }
    for (std::size_t i = 0; i < evens.size(); ++i) {
        if (!hk[i]) continue;
        const int k = evens[i];
        const auto& hm = hk[i]->map();
        for (std::size_t x : members_between(space, hm.domain, scale(k), scale(k + 2))) {
            if (assigned[x]) continue;
            const auto p = *hm.position_of(x);
            const double nx = space.norm(x);
            for (std::size_t c = 0; c < dim; ++c) out[x][c] = nx * hm.values[p][c];
            assigned[x] = 1;
        }
    }
    for (std::size_t j = 0; j < input.size(); ++j) {
        out.assign(input.domain[j], input.values[j]);
        assigned[input.domain[j]] = 1;
    }
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (!assigned[x]) throw PreconditionError("splice left point " + space.id(x) + " unassigned");
    }
    cert.output_map = VectorMap::total(std::move(out));

    cert.restriction_ok = true;
    for (std::size_t j = 0; j < input.size(); ++j) {
        auto got = cert.output_map.values[input.domain[j]];
        auto want = input.values[j];
        for (std::size_t c = 0; c < dim; ++c) {
            if (std::memcmp(&got[c], &want[c], sizeof(double)) != 0) cert.restriction_ok = false;
        }
    }
    cert.norm_preserving_ok = true;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (!approx_eq(euclidean_norm(cert.output_map.values[x]), space.norm(x))) {
            cert.norm_preserving_ok = false;
        }
    }
    cert.lip_out = lip_constant(space, cert.output_map);
    cert.fit_out = asymptotic_fit(space, cert.output_map);
    std::size_t fallbacks = 0;
    for (const auto& st : stages) fallbacks += st.fallbacks;
    if (fallbacks > 0) {
        cert.warnings.push_back("project strategy fell back to nearest in " +
                                std::to_string(fallbacks) + " extension(s)");
    }
    cert.constants["lambda"] = lip_in;
    cert.stages = std::move(stages);
    return cert;
}

RetractResult retract_extend(const PointedMetricSpace& space, const VectorMap& f,
                             const RadialGrowthBound& growth, double R) {
    if (!(R > 0.0)) throw PreconditionError("R must be positive");
    if (f.size() == 0) throw PreconditionError("cannot extend from an empty set");
    if (!satisfies_growth(space, f, growth)) throw PreconditionError("map violates its growth bound");
    std::vector<std::size_t> dom, src;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (f.position_of(x)) {
            dom.push_back(x);
            src.push_back(x);
            continue;
        }
        const auto a = nearest_in(space, x, f.domain);
        if (space.distance(x, *a) <= R) {
            dom.push_back(x);
            src.push_back(*a);
        }
    }
    Field vals(dom.size(), f.dim());
    for (std::size_t j = 0; j < dom.size(); ++j) vals.assign(j, f.values[*f.position_of(src[j])]);
    RetractResult out{VectorMap{dom, std::move(vals)}, src, dom.size() == f.size(), 0, 0, 0};

    const AsymptoticFit fit = asymptotic_fit(space, f);
    const std::size_t n = out.g.size();
    for (const auto& knee : fit.pareto) {
        if (!std::isfinite(knee.lambda)) continue;
        out.fit_checks += n * (n - 1) / 2;
        out.fit_violations += kernels::pair_count(n, [&](std::size_t a, std::size_t b) {
            const double d = space.distance(out.g.domain[a], out.g.domain[b]);
            const double bound = knee.lambda * d + 2.0 * knee.lambda * R + knee.M;
            return !approx_leq(euclidean_distance(out.g.values[a], out.g.values[b]), bound);
        });
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double lhs = growth.c * space.norm(out.g.domain[j]) - growth.c * R - growth.b;
        if (!approx_leq(lhs, euclidean_norm(out.g.values[j]))) ++out.growth_violations;
    }
    return out;
}

std::vector<ModulusRow> extension_modulus(std::span<const ModulusInstance> family,
                                          SphereStrategy strategy) {
    std::map<double, ModulusRow> buckets;
    for (const auto& inst : family) {
        if (!inst.space) throw PreconditionError("modulus instance has no space");
        const PointedMetricSpace& space = *inst.space;
        const double diam = space.diameter();
        const double lip_f = lip_constant(space, inst.f.map());
        const double s = inst.s.value_or(lip_f * diam);
        if (diam > 0.0 && !approx_leq(lip_f, s / diam)) {
            throw PreconditionError("instance has Lip(f) above s/diam");
        }
        const auto ext = extend_sphere_map(space, inst.f, all_indices(space.size()), strategy);
        double ratio = 1.0;
        if (lip_f > 0.0) {
            ratio = ext.lip_out / lip_f;
        } else if (ext.lip_out > 0.0) {
            ratio = s > 0.0 ? ext.lip_out * diam / s : kInf;
        }
        auto& row = buckets[s];
        row.s = s;
        ++row.instances;
        row.raw = std::max(row.raw, ratio);
    }
    std::vector<ModulusRow> rows;
    for (auto& [s, row] : buckets) rows.push_back(row);
    double running = 0.0;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        running = std::max(running, it->raw);
        it->regularized = running;
    }
    return rows;
}

}  // namespace coarse
