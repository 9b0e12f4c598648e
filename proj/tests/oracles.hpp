#pragma once

// Brute-force reference implementations. They work on plain matrices and
// vectors and share no code with the library beyond the data they read.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <functional>
#include <queue>
#include <tuple>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Points = std::vector<std::vector<double>>;
using Sets = std::vector<std::vector<std::size_t>>;

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// sup over ordered pairs of |v(x)-v(y)| / d(x,y) restricted to `dom`.
inline double lip(const Matrix& d, const std::vector<std::size_t>& dom, const Points& v) {
    double best = 0.0;
    for (std::size_t a = 0; a < dom.size(); ++a) {
        for (std::size_t b = 0; b < dom.size(); ++b) {
            if (a == b) continue;
            const double num = dist(v[a], v[b]);
            const double den = d[dom[a]][dom[b]];
            if (den == 0.0) {
                if (num > 0.0) return inf;
                continue;
            }
            best = std::max(best, num / den);
        }
    }
    return best;
}

inline bool member(const std::vector<std::size_t>& s, std::size_t x) {
    return std::find(s.begin(), s.end(), x) != s.end();
}

inline double complement_distance(const Matrix& d, const std::vector<std::size_t>& s, std::size_t x) {
    double best = inf;
    for (std::size_t y = 0; y < d.size(); ++y) {
        if (!member(s, y)) best = std::min(best, d[x][y]);
    }
    return best;
}

inline double lebesgue(const Matrix& d, const Sets& sets) {
    double value = inf;
    for (std::size_t x = 0; x < d.size(); ++x) {
        double best = 0.0;
        for (const auto& s : sets) {
            if (member(s, x)) best = std::max(best, complement_distance(d, s, x));
        }
        value = std::min(value, best);
    }
    return value;
}

inline std::size_t multiplicity(std::size_t n, const Sets& sets) {
    std::size_t best = 0;
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t c = 0;
        for (const auto& s : sets) c += member(s, x) ? 1 : 0;
        best = std::max(best, c);
    }
    return best;
}

// min over x != base with |x| > 0 of sum_i d(x, X\U_i) / |x|.
inline double gap(const Matrix& d, std::size_t base, const Sets& sets) {
    double eps = inf;
    for (std::size_t x = 0; x < d.size(); ++x) {
        if (x == base) continue;
        double total = 0.0;
        for (const auto& s : sets) total += complement_distance(d, s, x);
        if (total == 0.0) return 0.0;
        if (d[x][base] > 0.0) eps = std::min(eps, total / d[x][base]);
    }
    return eps;
}

inline std::vector<double> mcshane(const Matrix& d, const std::vector<std::size_t>& dom,
                                   const std::vector<double>& f, double L) {
    std::vector<double> g(d.size());
    for (std::size_t x = 0; x < d.size(); ++x) {
        const auto it = std::find(dom.begin(), dom.end(), x);
        if (it != dom.end()) {
            g[x] = f[static_cast<std::size_t>(it - dom.begin())];
            continue;
        }
        double best = inf;
        for (std::size_t a = 0; a < dom.size(); ++a) best = std::min(best, f[a] + L * d[x][dom[a]]);
        g[x] = best;
    }
    return g;
}

// Dijkstra from every source over an undirected weighted edge list.
inline Matrix shortest_paths(std::size_t n,
                             const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (const auto& [a, b, w] : edges) {
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    }
    Matrix out(n, std::vector<double>(n, inf));
    for (std::size_t s = 0; s < n; ++s) {
        auto& dist_s = out[s];
        dist_s[s] = 0.0;
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        pq.emplace(0.0, s);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > dist_s[u]) continue;
            for (auto [v, w] : adj[u]) {
                if (du + w < dist_s[v]) {
                    dist_s[v] = du + w;
                    pq.emplace(dist_s[v], v);
                }
            }
        }
    }
    return out;
}

inline double worst_triangle(const Matrix& d) {
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            for (std::size_t k = 0; k < d.size(); ++k) worst = std::max(worst, d[i][k] - d[i][j] - d[j][k]);
    return worst;
}

// M(lambda) = max over pairs of (|v(x)-v(y)| - lambda d(x,y))^+.
inline double excess(const Matrix& d, const std::vector<std::size_t>& dom, const Points& v,
                     double lambda) {
    double best = 0.0;
    for (std::size_t a = 0; a < dom.size(); ++a)
        for (std::size_t b = a + 1; b < dom.size(); ++b)
            best = std::max(best, dist(v[a], v[b]) - lambda * d[dom[a]][dom[b]]);
    return best;
}

// Closest point of `set` to x, lowest index on ties.
inline std::size_t nearest(const Matrix& d, std::size_t x, const std::vector<std::size_t>& set) {
    std::size_t best = set.front();
    for (std::size_t a : set) {
        if (d[x][a] < d[x][best] || (d[x][a] == d[x][best] && a < best)) best = a;
    }
    return best;
}

// Greedy net seeded at the basepoint, scanning in index order.
inline std::vector<std::size_t> greedy_net(const Matrix& d, std::size_t base, double eps) {
    std::vector<std::size_t> net{base};
    for (std::size_t x = 0; x < d.size(); ++x) {
        if (x == base) continue;
        bool far = true;
        for (std::size_t y : net) far = far && d[x][y] >= eps;
        if (far) net.push_back(x);
    }
    std::sort(net.begin(), net.end());
    return net;
}

// Lip of v over the points with lo <= |x| < hi.
inline double band_lip(const Matrix& d, std::size_t base, const Points& v, double lo, double hi) {
    std::vector<std::size_t> dom;
    Points vals;
    for (std::size_t x = 0; x < d.size(); ++x) {
        if (d[x][base] >= lo && d[x][base] < hi) {
            dom.push_back(x);
            vals.push_back(v[x]);
        }
    }
    return lip(d, dom, vals);
}

// max over pairs with min norm >= R and d <= s(|x|) or d <= s(|y|) of |v(x)-v(y)|.
template <class S>
double defect(const Matrix& d, std::size_t base, const Points& v, S&& s, double R) {
    double best = 0.0;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = 0; y < d.size(); ++y) {
            const double nx = d[x][base], ny = d[y][base];
            if (x == y || std::min(nx, ny) < R) continue;
            if (d[x][y] <= s(nx) || d[x][y] <= s(ny)) best = std::max(best, dist(v[x], v[y]));
        }
    return best;
}

inline bool connected_at(const Matrix& d, double M) {
    const std::size_t n = d.size();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (!seen[v] && d[u][v] <= M) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace oracle
