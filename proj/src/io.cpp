#include "coarsekit/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "coarsekit/errors.hpp"

namespace coarse::io {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

json load_json(const fs::path& path) { return parse_json(read_file(path), path.string()); }

void save_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) {
        ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return ss.str();
}

json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad field \"") + key + "\": " + e.what());
    }
}

double as_double(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return kInf;
    }
    throw ParseError("expected a number, got " + v.dump());
}

}  // namespace

PointedMetricSpace space_from_json(const json& j) {
    auto ids = field<std::vector<std::string>>(j, "points");
    const auto base = field<std::string>(j, "basepoint");
    if (j.contains("edges")) {
        std::vector<WeightedEdge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [from, to, weight]");
            edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(), as_double(e[2])});
        }
        return metric_closure(std::move(ids), edges, base);
    }
    const auto& rows = j.contains("matrix") ? j.at("matrix") : throw ParseError("space needs matrix or edges");
    if (!rows.is_array() || rows.size() != ids.size()) throw ParseError("matrix must have one row per point");
    std::vector<double> flat;
    flat.reserve(ids.size() * ids.size());
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != ids.size()) throw ParseError("matrix must be square");
        for (const auto& v : row) flat.push_back(as_double(v));
    }
    std::size_t bi = ids.size();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == base) bi = i;
    }
    if (bi == ids.size()) throw PreconditionError("basepoint " + base + " is not a point");
    return PointedMetricSpace(std::move(ids), std::move(flat), bi);
}

json space_to_json(const PointedMetricSpace& space) {
    json rows = json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        json row = json::array();
        for (double d : space.row(i)) row.push_back(d);
        rows.push_back(std::move(row));
    }
    return {{"points", space.ids()}, {"basepoint", space.id(space.basepoint())}, {"matrix", rows}};
}

PointedMetricSpace load_space(const fs::path& path) { return space_from_json(load_json(path)); }

namespace {

std::shared_ptr<const PointedMetricSpace> resolve_space(const fs::path& owner, const json& j,
                                                        std::vector<fs::path>& sources) {
    if (!j.contains("space")) throw ParseError(owner.string() + ": missing field \"space\"");
    const json& ref = j.at("space");
    if (ref.is_string()) {
        fs::path p = ref.get<std::string>();
        if (p.is_relative()) p = owner.parent_path() / p;
        sources.push_back(p);
        return std::make_shared<const PointedMetricSpace>(load_space(p));
    }
    return std::make_shared<const PointedMetricSpace>(space_from_json(ref));
}

}  // namespace

VectorMap map_from_json(const PointedMetricSpace& space, const json& j) {
    const auto dim = field<std::size_t>(j, "target_dim");
    if (dim == 0) throw ParseError("target_dim must be positive");
    const json& vals = j.contains("values") ? j.at("values") : throw ParseError("missing field \"values\"");
    if (!vals.is_object()) throw ParseError("values must be an object keyed by point id");
    std::vector<std::size_t> dom;
    Field f(vals.size(), dim);
    std::size_t row = 0;
    for (const auto& [id, v] : vals.items()) {
        const auto idx = space.index_of(id);
        if (!idx) throw PreconditionError("map value for unknown point " + id);
        if (!v.is_array() || v.size() != dim) throw ParseError("value for " + id + " has wrong length");
        for (std::size_t c = 0; c < dim; ++c) f[row][c] = as_double(v[c]);
        dom.push_back(*idx);
        ++row;
    }
    return make_vector_map(std::move(dom), std::move(f));
}

json map_to_json(const PointedMetricSpace& space, const VectorMap& f, const json& space_ref) {
    json vals = json::object();
    for (std::size_t j = 0; j < f.size(); ++j) {
        json v = json::array();
        for (double c : f.values[j]) v.push_back(c);
        vals[space.id(f.domain[j])] = std::move(v);
    }
    return {{"space", space_ref}, {"target_dim", f.dim()}, {"values", vals}};
}

MapDocument load_map(const fs::path& path, std::shared_ptr<const PointedMetricSpace> space_override) {
    MapDocument doc;
    doc.sources.push_back(path);
    const json j = load_json(path);
    doc.space = space_override ? space_override : resolve_space(path, j, doc.sources);
    doc.map = map_from_json(*doc.space, j);
    if (j.contains("s")) doc.s = as_double(j.at("s"));
    return doc;
}

Cover cover_from_json(const PointedMetricSpace& space, const json& j) {
    const json& sets = j.contains("sets") ? j.at("sets") : throw ParseError("missing field \"sets\"");
    if (!sets.is_object()) throw ParseError("sets must be an object keyed by set name");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> members;
    for (const auto& [name, ids] : sets.items()) {
        names.push_back(name);
        std::vector<std::size_t> s;
        for (const auto& id : ids) s.push_back(space.require_index(id.get<std::string>()));
        members.push_back(std::move(s));
    }
    return make_cover(space, std::move(names), std::move(members));
}

json cover_to_json(const PointedMetricSpace& space, const Cover& cover, const json& space_ref) {
    json sets = json::object();
    for (std::size_t i = 0; i < cover.size(); ++i) sets[cover.names[i]] = ids_json(space, cover.sets[i]);
    return {{"space", space_ref}, {"sets", sets}};
}

CoverDocument load_cover(const fs::path& path) {
    CoverDocument doc;
    doc.sources.push_back(path);
    doc.raw = load_json(path);
    doc.space = resolve_space(path, doc.raw, doc.sources);
    doc.cover = cover_from_json(*doc.space, doc.raw);
    return doc;
}

ColoredCover colored_cover_from_json(const PointedMetricSpace& space, const Cover& cover,
                                     const json& j) {
    const auto colors = field<std::map<std::string, int>>(j, "colors");
    std::vector<int> color;
    for (const auto& name : cover.names) {
        const auto it = colors.find(name);
        if (it == colors.end()) throw ParseError("no color for set " + name);
        color.push_back(it->second);
    }
    return make_colored_cover(space, cover, std::move(color), as_double(j.at("r")),
                              as_double(j.at("C")));
}

json colored_cover_to_json(const PointedMetricSpace& space, const ColoredCover& cc,
                           const json& space_ref) {
    json j = cover_to_json(space, cc.cover, space_ref);
    json colors = json::object();
    for (std::size_t i = 0; i < cc.cover.size(); ++i) colors[cc.cover.names[i]] = cc.color[i];
    j["colors"] = colors;
    j["r"] = cc.r;
    j["C"] = cc.C;
    return j;
}

PiecewiseLinearFunction function_from_json(const json& j) {
    std::vector<PiecewiseLinearFunction::Breakpoint> bps;
    const json& arr = j.contains("breakpoints") ? j.at("breakpoints") : throw ParseError("missing field \"breakpoints\"");
    for (const auto& bp : arr) {
        if (!bp.is_array() || bp.size() != 2) throw ParseError("breakpoint must be [t, value]");
        bps.push_back({as_double(bp[0]), as_double(bp[1])});
    }
    const double tail = j.contains("tail_slope") ? as_double(j.at("tail_slope")) : 0.0;
    return PiecewiseLinearFunction(std::move(bps), tail);
}

json function_to_json(const PiecewiseLinearFunction& s) {
    json bps = json::array();
    for (const auto& bp : s.breakpoints()) bps.push_back({bp.t, bp.value});
    return {{"breakpoints", bps}, {"tail_slope", s.tail_slope()}};
}

std::vector<std::pair<double, double>> samples_from_json(const json& j) {
    std::vector<std::pair<double, double>> out;
    const json& arr = j.contains("samples") ? j.at("samples") : throw ParseError("missing field \"samples\"");
    for (const auto& s : arr) {
        if (!s.is_array() || s.size() != 2) throw ParseError("sample must be [t, a]");
        out.emplace_back(as_double(s[0]), as_double(s[1]));
    }
    return out;
}

json fit_to_json(const AsymptoticFit& fit) {
    json knees = json::array();
    for (const auto& k : fit.pareto) knees.push_back({number(k.lambda), number(k.M)});
    return {{"lambda", number(fit.lambda)}, {"M", number(fit.M)}, {"pareto", knees}};
}

json ids_json(const PointedMetricSpace& space, const std::vector<std::size_t>& indices) {
    json out = json::array();
    for (std::size_t i : indices) out.push_back(space.id(i));
    return out;
}

}  // namespace coarse::io
