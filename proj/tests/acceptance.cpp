// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coarsekit/cover_shrink.hpp"
#include "coarsekit/extension.hpp"
#include "coarsekit/generate.hpp"
#include "coarsekit/maps.hpp"
#include "coarsekit/partitions.hpp"
#include "support.hpp"

using namespace coarse;
using namespace testing;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<void(Outcome&)> body;
};

std::vector<std::size_t> indices_where(const PointedMetricSpace& X, const std::function<bool(std::size_t)>& pred) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < X.size(); ++i)
        if (pred(i)) out.push_back(i);
    return out;
}

Field cone_values(const PointedMetricSpace& X, const Field& f) {
    Field out(f.size(), f.dim());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t c = 0; c < f.dim(); ++c) out[i][c] = X.norm(i) * f[i][c];
    return out;
}

// Directions in the plane whose angle is a Lipschitz function of the point.
SphereMap rotating(const PointedMetricSpace& X, double twist, double phase) {
    Field f(X.size(), 2);
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double a = phase + twist * std::log1p(X.norm(i));
        f[i][0] = std::cos(a);
        f[i][1] = std::sin(a);
    }
    return SphereMap::from(VectorMap::total(std::move(f)));
}

Cover ball_cover(Rng& rng, const PointedMetricSpace& X, double rad) {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<char> covered(X.size(), 0);
    for (std::size_t c = 0; c < X.size(); ++c) {
        if (covered[c] || !rng.coin(0.5)) continue;
        std::vector<std::size_t> s;
        for (std::size_t y = 0; y < X.size(); ++y)
            if (X.distance(c, y) <= rad) {
                s.push_back(y);
                covered[y] = 1;
            }
        sets.push_back(std::move(s));
    }
    for (std::size_t x = 0; x < X.size(); ++x)
        if (!covered[x]) sets.push_back({x});
    std::vector<std::string> names;
    for (std::size_t i = 0; i < sets.size(); ++i) names.push_back("U" + std::to_string(i));
    return make_cover(X, names, std::move(sets));
}

// Same formula as the library, evaluated from the oracle's complement distances.
oracle::Points oracle_phi(const oracle::Matrix& m, const Cover& cover) {
    oracle::Points phi(m.size(), std::vector<double>(cover.size()));
    for (std::size_t x = 0; x < m.size(); ++x) {
        double total = 0.0;
        for (std::size_t i = 0; i < cover.size(); ++i) total += phi[x][i] = oracle::complement_distance(m, cover.sets[i], x);
        for (auto& v : phi[x]) v /= total;
    }
    return phi;
}

// ---------------------------------------------------------------------------

void metric_and_nets(Outcome& o) {
    Rng rng(1001);
    std::size_t nets = 0;
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t n = 2 + rng.index(299);
        std::vector<std::string> ids = numbered_ids(n);
        std::vector<WeightedEdge> edges;
        for (std::size_t i = 1; i < n; ++i) edges.push_back({ids[i], ids[rng.index(i)], rng.uniform(0.1, 4.0)});
        const std::size_t extra = rng.index(2 * n);
        for (std::size_t e = 0; e < extra; ++e) {
            const auto a = rng.index(n), b = rng.index(n);
            if (a != b) edges.push_back({ids[a], ids[b], rng.uniform(0.1, 10.0)});
        }
        const auto X = metric_closure(ids, edges, ids[rng.index(n)]);
        const auto rep = validate_space(X);
        o.require(rep.metric_ok, "closure " + std::to_string(inst) + " is not a metric");

        for (int trial = 0; trial < 3; ++trial) {
            const double eps = rng.uniform(0.05, 1.5) * X.diameter() / 4.0;
            const auto net = greedy_net(X, eps);
            ++nets;
            const auto& N = net.indices;
            o.require(std::find(N.begin(), N.end(), X.basepoint()) != N.end(), "net misses basepoint");
            for (std::size_t x = 0; x < X.size(); ++x) {
                double best = oracle::inf;
                for (std::size_t y : N) best = std::min(best, X.distance(x, y));
                o.require(best < eps || best == 0.0, "point farther than eps from the net");
            }
            for (std::size_t a = 0; a < N.size(); ++a)
                for (std::size_t b = a + 1; b < N.size(); ++b)
                    o.require(X.distance(N[a], N[b]) >= eps, "net points closer than eps");
        }
    }
    o.detail << "200 closures, " << nets << " nets checked";
}

void profile_constants(Outcome& o) {
    Rng rng(1002);
    std::size_t rows_checked = 0, pairs = 0;
    double worst_ratio = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        auto X = random_cloud(rng, 40 + rng.index(80), 2, rng.uniform(10.0, 200.0));
        const auto f = rotating(X, rng.uniform(0.0, 3.0), rng.uniform(0.0, 6.3));
        const auto fp = induce(X, f).map();
        const double lam = lip_constant(X, fp);
        double rmin = oracle::inf;
        for (std::size_t i = 0; i < X.size(); ++i)
            if (X.norm(i) > 0.0) rmin = std::min(rmin, X.norm(i));
        const double r = rng.uniform(0.2, 1.0) * rmin;
        const double M = rng.uniform(1.2, 4.0);

        const auto prof = annulus_profile(X, f, r, M);
        const double cap = M * (lam + 1.0) / r;
        for (const auto& row : prof.rows) {
            if (row.k < 2) continue;
            ++rows_checked;
            worst_ratio = std::max(worst_ratio, row.scaled_y / cap);
            o.require(approx_leq(row.scaled_y, cap), "M^k Lip(f|Y_k) above M(lambda+1)/r");
        }

        const double C = prof.bound_y;
        const auto cert = certify_profile_bound(X, f, r, M, C);
        o.require(cert.violations == 0, "profile certificate reported violations");
        // Every non-basepoint norm is >= r here, so the bound covers all pairs.
        const double bound = std::max(r * M * C + 1.0, 2.0 / (M - 1.0) + 1.0);
        const auto m = matrix_of(X);
        const auto v = points_of(fp.values);
        for (std::size_t a = 0; a < X.size(); ++a)
            for (std::size_t b = a + 1; b < X.size(); ++b) {
                ++pairs;
                o.require(approx_leq(oracle::dist(v[a], v[b]), bound * m[a][b]), "pair above max(rMC+1, 2/(M-1)+1)");
            }
    }
    o.detail << rows_checked << " rows (worst ratio " << worst_ratio << "), " << pairs << " pairs";
}

void oscillating_reproduction(Outcome& o) {
    const auto inst = gen::oscillating_directions(4096);
    const auto prof = annulus_profile(inst.space, inst.f, 1.0, 2.0);
    for (const auto& row : prof.rows) {
        if (row.k < 4 || row.k > 10) continue;
        const double floor = 0.5 * std::pow(2.0, row.k / 2.0);
        o.require(row.scaled_x >= floor, "profile row " + std::to_string(row.k) + " below 0.5*2^(k/2)");
    }
    o.detail << "profile k=4..10:";
    for (const auto& row : prof.rows)
        if (row.k >= 4 && row.k <= 10) o.detail << ' ' << row.scaled_x;

    // s(t) = sqrt(t), exact at every integer norm.
    std::vector<PiecewiseLinearFunction::Breakpoint> bps;
    for (int t = 0; t <= 4096; ++t) bps.push_back({double(t), std::sqrt(double(t))});
    const PiecewiseLinearFunction s(std::move(bps), 0.0);
    const double d16 = sublinear_defect(inst.space, inst.f, s, 16);
    const double d4096 = sublinear_defect(inst.space, inst.f, s, 4096);
    o.require(d16 >= 4.0 * d4096, "defect did not decay by 4 from R=16 to R=4096");
    // Only the point 4096 has norm >= 4096, so also demand the decay at R=1024.
    const double d1024 = sublinear_defect(inst.space, inst.f, s, 1024);
    o.require(d1024 > 0.0 && d16 >= 4.0 * d1024, "defect did not decay by 4 from R=16 to R=1024");
    o.detail << "; defect R=16 " << d16;
    for (double R : {64.0, 256.0, 1024.0, 2048.0}) o.detail << ", R=" << R << ' ' << sublinear_defect(inst.space, inst.f, s, R);
    o.detail << ", R=4096 " << d4096;
}

void partition_bounds(Outcome& o) {
    Rng rng(1004);
    int accepted = 0, attempts = 0;
    double worst = 0.0, worst_cc = 0.0;
    while (accepted < 100 && attempts < 1000) {
        ++attempts;
        auto X = random_cloud(rng, 20 + rng.index(60), 2, 20.0);
        const auto cover = ball_cover(rng, X, rng.uniform(3.0, 15.0));
        if (!cover.proper || sublinearity_gap(X, cover) <= 0.0) continue;
        ++accepted;
        const auto m = matrix_of(X);
        const double eps = oracle::gap(m, X.basepoint(), cover.sets);
        const double k = static_cast<double>(cover.size());
        const double bound = 3.0 * k / eps + 1.0;
        const auto cert = certify_partition_lipschitz(X, cover);
        o.require(cert.violations == 0, "partition certificate reported violations");
        const auto phi = oracle_phi(m, cover);
        for (std::size_t i = 0; i < cover.size(); ++i)
            for (std::size_t a = 0; a < X.size(); ++a)
                for (std::size_t b = a + 1; b < X.size(); ++b) {
                    const double lhs = std::abs(m[a][0] * phi[a][i] - m[b][0] * phi[b][i]);
                    worst = std::max(worst, lhs / (bound * m[a][b]));
                    o.require(approx_leq(lhs, bound * m[a][b]), "per-coordinate bound (3k/eps+1) d(x,y) broken");
                }

        // gamma from a two-set split, f from the cover, g from the cover with shifted coordinates.
        const double cut = rng.uniform(-5.0, 5.0), w = rng.uniform(1.0, 6.0);
        const auto left = indices_where(X, [&](std::size_t x) { return X.norm(x) <= std::abs(cut) + w; });
        const auto right = indices_where(X, [&](std::size_t x) { return X.norm(x) >= std::abs(cut); });
        if (left.size() == X.size() || right.size() == X.size() || right.empty()) continue;
        const auto two = make_cover(X, {"L", "R"}, {left, right});
        const auto gamma = canonical_partition(X, two).phi;
        const auto f = canonical_partition(X, cover).phi;
        Field g(f.size(), f.dim());
        for (std::size_t x = 0; x < f.size(); ++x)
            for (std::size_t c = 0; c < f.dim(); ++c) g[x][c] = f[x][(c + 1) % f.dim()];
        const auto cc = convex_combine(X, gamma, f, g);
        const auto all = all_indices(X.size());
        const double lf = oracle::lip(m, all, points_of(cone_values(X, f)));
        const double lg = oracle::lip(m, all, points_of(cone_values(X, g)));
        const double lgam = oracle::lip(m, all, points_of(cone_values(X, gamma)));
        const double lh = oracle::lip(m, all, points_of(cone_values(X, cc.h)));
        const double cbound = lf + lg + 2.0 * lgam + 2.0;
        worst_cc = std::max(worst_cc, lh / cbound);
        o.require(cc.ok && approx_leq(lh, cbound), "convex combination bound broken");
    }
    o.require(accepted == 100, "could not draw 100 covers with positive gap");
    o.detail << accepted << " covers; worst measured/bound " << worst << ", convex combination " << worst_cc;
}

void extension_soundness(Outcome& o) {
    Rng rng(1005);
    double c_emp = 0.0;
    std::size_t fallbacks = 0;
    for (int inst = 0; inst < 50; ++inst) {
        const auto g = gen::restricted_cone_map(rng, 40 + rng.index(160), 2 + rng.index(2));
        const auto& X = g.space;
        const auto fp = induce(X, g.restricted);
        const auto strategy = inst % 2 ? SphereStrategy::Project : SphereStrategy::Nearest;
        const auto cert = splice_extend(X, fp, {std::nullopt, 2.0, strategy});
        for (const auto& st : cert.stages) fallbacks += st.fallbacks;
        bool exact = true;
        for (std::size_t j = 0; j < fp.map().size(); ++j) {
            const auto x = fp.map().domain[j];
            exact = exact && std::memcmp(cert.output_map.values[x].data(), fp.map().values[j].data(),
                                         sizeof(double) * fp.map().dim()) == 0;
        }
        o.require(exact && cert.restriction_ok, "splice output differs from the input on A");
        bool norms = cert.output_map.size() == X.size();
        for (std::size_t x = 0; x < X.size() && norms; ++x)
            norms = std::abs(euclidean_norm(cert.output_map.values[x]) - X.norm(x)) <= 1e-9 * std::max(1.0, X.norm(x));
        o.require(norms && cert.norm_preserving_ok, "splice output not norm-preserving");
        o.require(std::isfinite(cert.lip_out), "splice output has infinite Lipschitz constant");
        if (cert.lip_in > 0.0) c_emp = std::max(c_emp, cert.lip_out / cert.lip_in);

        const auto m = matrix_of(X);
        const double lam = lip_constant(X, fp.map());

        // Transfer: g'(x) = |x| f(a(x)) fits (lambda, 2 eps lambda + 2 eps).
        const double eps = rng.uniform(0.5, 4.0);
        const auto tr = nearest_point_transfer(X, g.restricted, all_indices(X.size()), eps);
        o.require(tr.violations == 0, "transfer certificate reported violations");
        const auto& dom = tr.g.map().domain;
        for (std::size_t a = 0; a < dom.size(); ++a)
            for (std::size_t b = a + 1; b < dom.size(); ++b) {
                std::vector<double> ga(tr.g.map().values[a].begin(), tr.g.map().values[a].end());
                std::vector<double> gb(tr.g.map().values[b].begin(), tr.g.map().values[b].end());
                for (auto& c : ga) c *= X.norm(dom[a]);
                for (auto& c : gb) c *= X.norm(dom[b]);
                o.require(approx_leq(oracle::dist(ga, gb), lam * m[dom[a]][dom[b]] + 2 * eps * lam + 2 * eps),
                          "transfer fit broken");
            }

        // Retraction of f' itself: fit (lambda, 2 lambda R) and growth |x| - R.
        const double R = rng.uniform(0.5, 6.0);
        const auto rt = retract_extend(X, fp.map(), {1.0, 0.0}, R);
        o.require(rt.fit_violations == 0 && rt.growth_violations == 0, "retract certificate reported violations");
        const auto& rd = rt.g.domain;
        const auto rv = points_of(rt.g.values);
        for (std::size_t a = 0; a < rd.size(); ++a) {
            o.require(approx_leq(X.norm(rd[a]) - R, euclidean_norm(rt.g.values[a])), "retract growth broken");
            for (std::size_t b = a + 1; b < rd.size(); ++b)
                o.require(approx_leq(oracle::dist(rv[a], rv[b]), lam * m[rd[a]][rd[b]] + 2 * lam * R), "retract fit broken");
        }
    }
    o.detail << "50 instances; c_emp max " << c_emp << ", projection fallbacks " << fallbacks;
}

void pasting(Outcome& o) {
    Rng rng(1006);
    double worst = 0.0;
    for (int inst = 0; inst < 500; ++inst) {
        auto X = random_cloud(rng, 10 + rng.index(40), 2, 10.0);
        const auto f = random_sphere_map(rng, all_indices(X.size()), 3);
        std::vector<std::size_t> X1, X2;
        if (inst % 2 == 0) {
            const double hi = rng.uniform(3.0, 12.0), lo = rng.uniform(0.0, hi);
            X1 = indices_where(X, [&](std::size_t i) { return X.norm(i) < hi; });
            X2 = indices_where(X, [&](std::size_t i) { return X.norm(i) >= lo; });
        } else {
            for (std::size_t i = 0; i < X.size(); ++i) {
                const int side = static_cast<int>(rng.index(3));
                if (side != 1) X1.push_back(i);
                if (side != 0) X2.push_back(i);
            }
        }
        if (X1.empty() || X2.empty()) continue;
        const auto m = matrix_of(X);
        double gap = oracle::inf;
        for (std::size_t x : X1)
            for (std::size_t y : X2)
                if (!oracle::member(X2, x) && !oracle::member(X1, y)) gap = std::min(gap, m[x][y]);
        const double mu = std::isinf(gap) ? 1.0 : gap * rng.uniform(0.5, 1.0);
        const auto res = paste(X, restrict_map(f.map(), X1), restrict_map(f.map(), X2), mu, 2.0);
        const double l1 = oracle::lip(m, X1, points_of(restrict_map(f.map(), X1).values));
        const double l2 = oracle::lip(m, X2, points_of(restrict_map(f.map(), X2).values));
        const double lu = oracle::lip(m, res.u.domain, points_of(res.u.values));
        const double bound = std::max({l1, l2, 2.0 / mu});
        worst = std::max(worst, lu / bound);
        o.require(res.ok && approx_leq(lu, bound), "paste bound broken");
    }
    o.detail << "500 instances; worst Lip(u)/bound " << worst;
}

void cover_shrinking(Outcome& o) {
    for (double r : {4.0, 16.0, 64.0}) {
        const auto inst = gen::colored_interval_cover(400, r);
        const auto& X = inst.space;
        const auto rep = shrink(X, inst.cover);
        const auto m = matrix_of(X);
        const std::size_t mult = oracle::multiplicity(X.size(), rep.shrunk_sets);
        const double leb = oracle::lebesgue(m, rep.shrunk_sets);
        const double bound = rep.t > 0.0 ? r / (rep.lambda * 3.0 * rep.t) : 0.0;
        const auto nerve = nerve_map(X, inst.cover);
        double diam = 0.0;
        for (double d : nerve.preimage_diameters) diam = std::max(diam, d);
        o.require(rep.m == 1, "interval cover is not 3-colored");
        o.require(mult <= 2 && rep.multiplicity == mult, "shrunk multiplicity above 2 at r=" + std::to_string(r));
        o.require(leb >= bound && rep.lebesgue == leb, "lebesgue below r/(3 lambda t) at r=" + std::to_string(r));
        o.require(diam <= 2.0 * inst.cover.C * r, "nerve preimage diameter above 2Cr");
        o.detail << "r=" << r << ": mult " << rep.original_multiplicity << "->" << mult << ", lebesgue " << leb
                 << " >= " << bound << " (lambda " << rep.lambda << ", t " << rep.t << "), diam " << diam
                 << " <= " << 2.0 * inst.cover.C * r << "; ";
    }
}

void rescale(Outcome& o) {
    Rng rng(1008);
    std::size_t checks = 0;
    for (int inst = 0; inst < 50; ++inst) {
        auto X = random_cloud(rng, 30 + rng.index(70), 2, rng.uniform(5.0, 100.0));
        const auto f = inst % 3 == 0 ? random_sphere_map(rng, all_indices(X.size()), 2)
                                     : rotating(X, rng.uniform(0.0, 2.0), rng.uniform(0.0, 6.3));
        const double c = rng.uniform(0.2, 4.0), b = rng.uniform(0.0, 10.0);
        const double wobble = inst % 2 ? rng.uniform(0.0, 3.0) : 0.0;
        Field s(X.size(), 1);
        for (std::size_t i = 0; i < X.size(); ++i) s[i][0] = c * X.norm(i) + b + wobble * rng.uniform();
        const auto cert = rescale_transfer(X, f, VectorMap::total(std::move(s)), {c, 0.0});
        checks += cert.forward_checks + cert.backward_checks;
        o.require(cert.forward_violations == 0, "forward transfer broken");
        o.require(cert.backward_violations == 0, "backward transfer broken");
    }
    o.detail << "50 instances, " << checks << " inequality checks";
}

void oracle_equivalence(Outcome& o) {
    Rng rng(1009);
    std::size_t gaps = 0;
    for (int inst = 0; inst < 1000; ++inst) {
        const std::size_t n = 2 + rng.index(11);
        auto X = inst % 2 ? random_cloud(rng, n, 2, 5.0) : line_space([&] {
            std::vector<double> xs{0.0};
            for (std::size_t i = 1; i < n; ++i) xs.push_back(xs.back() + 1.0 + static_cast<double>(rng.index(3)));
            return xs;
        }());
        const auto m = matrix_of(X);

        const auto dom = random_subset(rng, n, 0.6);
        const auto f = random_sphere_map(rng, dom, 2);
        o.require(lip_constant(X, f.map()) == oracle::lip(m, dom, points_of(f.map().values)), "lip_constant");

        std::vector<double> vals;
        for (std::size_t j = 0; j < dom.size(); ++j) vals.push_back(f.map().values[j][0]);
        Field vf(dom.size(), 1);
        for (std::size_t j = 0; j < dom.size(); ++j) vf[j][0] = vals[j];
        const double L = lip_constant(X, make_vector_map(dom, vf));
        o.require(mcshane_extend(X, dom, vals, L) == oracle::mcshane(m, dom, vals, L), "mcshane_extend");

        std::vector<std::vector<std::size_t>> sets;
        const std::size_t k = 1 + rng.index(4);
        for (std::size_t i = 0; i < k; ++i) sets.push_back(random_subset(rng, n, 0.5));
        std::vector<char> seen(n, 0);
        for (const auto& s : sets)
            for (auto x : s) seen[x] = 1;
        std::vector<std::size_t> rest;
        for (std::size_t x = 0; x < n; ++x)
            if (!seen[x]) rest.push_back(x);
        if (!rest.empty()) sets.push_back(rest);
        o.require(multiplicity(n, sets) == oracle::multiplicity(n, sets), "multiplicity");
        o.require(lebesgue_number(X, sets) == oracle::lebesgue(m, sets), "lebesgue_number");

        std::vector<std::string> names;
        for (std::size_t i = 0; i < sets.size(); ++i) names.push_back("U" + std::to_string(i));
        const auto cover = make_cover(X, names, sets);
        if (cover.proper) {
            ++gaps;
            o.require(sublinearity_gap(X, cover) == oracle::gap(m, X.basepoint(), cover.sets), "sublinearity_gap");
        }
    }
    o.detail << "1000 micro-instances, " << gaps << " proper covers";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "metric axioms and net laws", 10, metric_and_nets},
        {2, "annulus profile constants", 30, profile_constants},
        {3, "oscillating directions: profile growth and defect decay", 10, oscillating_reproduction},
        {4, "partition and convex combination bounds", 30, partition_bounds},
        {5, "extension engine soundness", 60, extension_soundness},
        {6, "pasting lemma", 5, pasting},
        {7, "cover shrinking", 60, cover_shrinking},
        {8, "rescaling transfer", 10, rescale},
        {9, "oracle equivalence", 30, oracle_equivalence},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = o.ok && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s [%d] %s (%.2f s, limit %.0f s%s) %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    c.limit_s, in_time ? "" : ", too slow", o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
