#include "coarsekit/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "coarsekit/errors.hpp"
#include "coarsekit/io.hpp"

namespace coarse::gen {

namespace {

std::string padded(const char* prefix, std::size_t i, std::size_t width) {
    std::string digits = std::to_string(i);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

}  // namespace

PointedMetricSpace integer_path(std::size_t N) {
    const std::size_t n = N + 1;
    std::vector<std::string> ids(n);
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = std::to_string(i);
        for (std::size_t j = 0; j < n; ++j) {
            d[i * n + j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
        }
    }
    return PointedMetricSpace(std::move(ids), std::move(d), 0);
}

PointedMetricSpace grid_2d(std::size_t N) {
    const std::size_t side = N + 1;
    const std::size_t n = side * side;
    std::vector<std::string> ids(n);
    std::vector<double> d(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        ids[a] = std::to_string(a / side) + "_" + std::to_string(a % side);
        for (std::size_t b = 0; b < n; ++b) {
            const double dx = std::abs(static_cast<double>(a / side) - static_cast<double>(b / side));
            const double dy = std::abs(static_cast<double>(a % side) - static_cast<double>(b % side));
            d[a * n + b] = dx + dy;
        }
    }
    return PointedMetricSpace(std::move(ids), std::move(d), 0);
}

namespace {

std::vector<std::vector<int>> lattice_points(Rng& rng, std::size_t count, std::size_t dim,
                                             int extent) {
    if (dim == 0) throw PreconditionError("dimension must be positive");
    if (extent < 1) throw PreconditionError("extent must be at least 1");
    const double cells = std::pow(2.0 * extent + 1.0, static_cast<double>(dim));
    if (static_cast<double>(count) + 1.0 > cells) throw PreconditionError("too many points for the box");
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> pts;
    std::vector<int> origin(dim, 0);
    seen.insert(origin);
    pts.push_back(origin);
    const auto span = static_cast<std::size_t>(2 * extent + 1);
    while (pts.size() < count + 1) {
        std::vector<int> p(dim);
        for (auto& c : p) c = static_cast<int>(rng.index(span)) - extent;
        if (seen.insert(p).second) pts.push_back(p);
    }
    return pts;
}

}  // namespace

PointedMetricSpace random_point_cloud(Rng& rng, std::size_t count, std::size_t dim, int extent) {
    const auto pts = lattice_points(rng, count, dim, extent);
    Field coords(pts.size(), dim);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ids.push_back(padded("p", i, 4));
        for (std::size_t c = 0; c < dim; ++c) coords[i][c] = pts[i][c];
    }
    return PointedMetricSpace::from_coordinates(std::move(ids), coords, 0);
}

OscillatingDirections oscillating_directions(std::size_t N) {
    PointedMetricSpace space = integer_path(N);
    Field vals(N + 1, 2);
    for (std::size_t x = 0; x <= N; ++x) {
        if (x % 2 == 1 || x == 0) {
            vals[x][0] = 1.0;
            continue;
        }
        const double chord = 1.0 / std::sqrt(static_cast<double>(x / 2));
        const double theta = 2.0 * std::asin(chord / 2.0);
        vals[x][0] = std::cos(theta);
        vals[x][1] = std::sin(theta);
    }
    SphereMap f = SphereMap::from(VectorMap::total(std::move(vals)));
    return {std::move(space), std::move(f)};
}

IntervalCover colored_interval_cover(std::size_t N, double r) {
    if (!(r > 0.0)) throw PreconditionError("r must be positive");
    PointedMetricSpace space = integer_path(N);
    const double step = 2.0 * r;
    const double half = 2.25 * r;
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> sets;
    std::vector<int> colors;
    const auto last = static_cast<std::size_t>(std::ceil(static_cast<double>(N) / step)) + 1;
    for (std::size_t j = 0; j <= last; ++j) {
        const double mid = step * static_cast<double>(j);
        std::vector<std::size_t> s;
        for (std::size_t x = 0; x <= N; ++x) {
            if (std::abs(static_cast<double>(x) - mid) <= half) s.push_back(x);
        }
        if (s.empty() || s.size() == N + 1) continue;
        names.push_back(padded("U", j, 4));
        sets.push_back(std::move(s));
        colors.push_back(static_cast<int>(j % 3) + 1);
    }
    Cover cover = make_cover(space, std::move(names), std::move(sets));
    ColoredCover cc = make_colored_cover(space, std::move(cover), std::move(colors), r, 4.5);
    return {std::move(space), std::move(cc)};
}

RestrictedConeMap restricted_cone_map(Rng& rng, std::size_t count, std::size_t dim, double keep) {
    if (dim < 2) throw PreconditionError("cone maps need dimension at least 2");
    const int extent = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))));
    const auto pts = lattice_points(rng, count, dim, extent * 2);
    Field coords(pts.size(), dim);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ids.push_back(padded("p", i, 4));
        for (std::size_t c = 0; c < dim; ++c) coords[i][c] = pts[i][c];
    }
    PointedMetricSpace space = PointedMetricSpace::from_coordinates(std::move(ids), coords, 0);
    const double twist = rng.uniform(0.0, 2.0);
    const double phase = rng.uniform(0.0, 2.0 * std::acos(-1.0));

    Field dirs(pts.size(), dim);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double nx = euclidean_norm(coords[i]);
        if (nx == 0.0) {
            dirs[i][0] = 1.0;
            continue;
        }
        const double a = phase + twist * std::log1p(nx);
        const double u = coords[i][0] / nx;
        const double v = coords[i][1] / nx;
        dirs[i][0] = std::cos(a) * u - std::sin(a) * v;
        dirs[i][1] = std::sin(a) * u + std::cos(a) * v;
        for (std::size_t c = 2; c < dim; ++c) dirs[i][c] = coords[i][c] / nx;
    }
    SphereMap global = SphereMap::from(VectorMap::total(dirs));
    std::vector<std::size_t> subset{space.basepoint()};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i != space.basepoint() && rng.coin(keep)) subset.push_back(i);
    }
    std::sort(subset.begin(), subset.end());
    SphereMap restricted = SphereMap::from(restrict_map(global.map(), subset));
    return {std::move(space), std::move(global), std::move(restricted), std::move(subset), twist};
}

const std::vector<std::string>& instance_kinds() {
    static const std::vector<std::string> kinds{"integer-path", "grid-2d", "random-point-cloud",
                                                "remark46", "colored-interval-cover",
                                                "restricted-cone-map"};
    return kinds;
}

std::vector<std::filesystem::path> generate_instance(const Params& p,
                                                     const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    using io::json;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParseError("cannot create " + dir.string());
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const json& j) {
        const fs::path path = dir / name;
        io::save_json(path, j);
        written.push_back(path);
    };
    Rng rng(p.seed);
    const json space_ref = "space.json";
    if (p.kind == "integer-path") {
        emit("space.json", io::space_to_json(integer_path(p.size)));
    } else if (p.kind == "grid-2d") {
        emit("space.json", io::space_to_json(grid_2d(p.size)));
    } else if (p.kind == "random-point-cloud") {
        const int extent = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p.size)))));
        emit("space.json", io::space_to_json(random_point_cloud(rng, p.size, p.dim, extent)));
    } else if (p.kind == "remark46") {
        const auto inst = oscillating_directions(p.size);
        emit("space.json", io::space_to_json(inst.space));
        emit("map.json", io::map_to_json(inst.space, inst.f.map(), space_ref));
    } else if (p.kind == "colored-interval-cover") {
        const auto inst = colored_interval_cover(p.size, p.r);
        emit("space.json", io::space_to_json(inst.space));
        emit("cover.json", io::colored_cover_to_json(inst.space, inst.cover, space_ref));
    } else if (p.kind == "restricted-cone-map") {
        const auto inst = restricted_cone_map(rng, p.size, p.dim);
        emit("space.json", io::space_to_json(inst.space));
        emit("map.json", io::map_to_json(inst.space, inst.restricted.map(), space_ref));
        emit("global.json", io::map_to_json(inst.space, inst.global.map(), space_ref));
    } else {
        throw PreconditionError("unknown instance kind: " + p.kind);
    }
    return written;
}

}  // namespace coarse::gen
