#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coarsekit/cover_shrink.hpp"
#include "coarsekit/maps.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/partitions.hpp"
#include "coarsekit/sublinear.hpp"

namespace coarse::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path);
json parse_json(const std::string& text, const std::string& origin);
json load_json(const fs::path& path);
// Pretty-printed with a trailing newline.
void save_json(const fs::path& path, const json& j);

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

// {"points", "basepoint", "matrix"} or {"points", "basepoint", "edges"}.
PointedMetricSpace space_from_json(const json& j);
json space_to_json(const PointedMetricSpace& space);
PointedMetricSpace load_space(const fs::path& path);

struct MapDocument {
    std::shared_ptr<const PointedMetricSpace> space;
    VectorMap map;
    std::optional<double> s;
    std::vector<fs::path> sources;  // every file read, including a referenced space
};

// "space" is a path (relative to the map file) or an inline space; `space_override`
// replaces it. Values are keyed by point id.
MapDocument load_map(const fs::path& path,
                     std::shared_ptr<const PointedMetricSpace> space_override = nullptr);
VectorMap map_from_json(const PointedMetricSpace& space, const json& j);
json map_to_json(const PointedMetricSpace& space, const VectorMap& f, const json& space_ref);

struct CoverDocument {
    std::shared_ptr<const PointedMetricSpace> space;
    Cover cover;
    json raw;
    std::vector<fs::path> sources;
};

CoverDocument load_cover(const fs::path& path);
Cover cover_from_json(const PointedMetricSpace& space, const json& j);
json cover_to_json(const PointedMetricSpace& space, const Cover& cover, const json& space_ref);

ColoredCover colored_cover_from_json(const PointedMetricSpace& space, const Cover& cover,
                                     const json& j);
json colored_cover_to_json(const PointedMetricSpace& space, const ColoredCover& cc,
                           const json& space_ref);

PiecewiseLinearFunction function_from_json(const json& j);
json function_to_json(const PiecewiseLinearFunction& s);

// {"samples": [[t, a], ...]}
std::vector<std::pair<double, double>> samples_from_json(const json& j);

json fit_to_json(const AsymptoticFit& fit);
json ids_json(const PointedMetricSpace& space, const std::vector<std::size_t>& indices);

// Finite doubles as numbers; infinities as the strings "inf" / "-inf".
json number(double v);

}  // namespace coarse::io
