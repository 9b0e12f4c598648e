#include "coarsekit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "coarsekit/cover_shrink.hpp"
#include "coarsekit/errors.hpp"
#include "coarsekit/extension.hpp"
#include "coarsekit/generate.hpp"
#include "coarsekit/io.hpp"
#include "coarsekit/maps.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/partitions.hpp"
#include "coarsekit/sublinear.hpp"

namespace coarse::cli {

namespace {

using io::json;
using io::number;
namespace fs = std::filesystem;

struct Bundle {
    json command;
    json inputs = json::object();
    json results = json::object();
    json certificates = json::object();
    json warnings = json::array();
    bool violated = false;

    void digest(const fs::path& p) { inputs[p.string()] = io::sha256_hex(io::read_file(p)); }
    void digest_all(const std::vector<fs::path>& ps) {
        for (const auto& p : ps) digest(p);
    }
    // Hard certificate: a theorem-backed inequality that must hold.
    void certify(const std::string& name, bool ok, json detail = json::object()) {
        detail["ok"] = ok;
        certificates[name] = std::move(detail);
        if (!ok) violated = true;
    }
    void warn(const std::string& w) { warnings.push_back(w); }

    json to_json() const {
        return {{"command", command},
                {"inputs", inputs},
                {"results", results},
                {"certificates", certificates},
                {"warnings", warnings}};
    }
};

json vec_json(std::span<const double> v) {
    json out = json::array();
    for (double c : v) out.push_back(number(c));
    return out;
}

json point_values(const PointedMetricSpace& space, const VectorMap& f) {
    json out = json::object();
    for (std::size_t j = 0; j < f.size(); ++j) out[space.id(f.domain[j])] = vec_json(f.values[j]);
    return out;
}

SphereMap load_sphere(const io::MapDocument& doc) { return SphereMap::from(doc.map); }

struct Options {
    std::string file;
    std::string space_file;
    std::string sublinear_file;
    std::string strategy = "nearest";
    std::string kind;
    std::string out_dir = ".";
    std::string output;
    double eps = 1.0;
    double r = 1.0;
    double s = 2.0;
    double M = 2.0;
    double R = 1.0;
    std::optional<double> splice_r;
    std::uint64_t seed = 0;
    std::size_t size = 16;
    std::size_t dim = 2;
};

void cmd_validate(const Options& o, Bundle& b) {
    b.digest(o.file);
    const json j = io::load_json(o.file);
    // Read the raw matrix so that non-metric inputs are reported, not rejected.
    const auto space = io::space_from_json(j);
    const auto rep = validate_space(space);
    b.results = {{"points", space.size()},
                 {"basepoint", space.id(space.basepoint())},
                 {"metric_ok", rep.metric_ok},
                 {"worst_triangle_violation", number(rep.worst_triangle_violation)},
                 {"min_positive_distance", number(rep.min_positive_distance)},
                 {"has_coincident_points", rep.has_coincident_points},
                 {"diameter", number(space.diameter())}};
    if (!rep.metric_ok) throw PreconditionError("triangle inequality fails");
}

void cmd_net(const Options& o, Bundle& b) {
    b.digest(o.file);
    const auto space = io::load_space(o.file);
    const Net net = greedy_net(space, o.eps);
    double cover_radius = 0.0;
    for (std::size_t x = 0; x < space.size(); ++x) {
        cover_radius = std::max(cover_radius, space.distance_to(x, net.indices));
    }
    const auto rep = validate_space(net.space);
    b.results = {{"eps", o.eps},
                 {"size", net.indices.size()},
                 {"net", io::ids_json(space, net.indices)},
                 {"covering_radius", number(cover_radius)},
                 {"min_separation", number(rep.min_positive_distance)}};
    b.certify("is_net", approx_leq(cover_radius, o.eps));
    b.certify("is_discrete", rep.is_epsilon_discrete(o.eps));
}

void cmd_annulus(const Options& o, Bundle& b) {
    b.digest(o.file);
    const auto space = io::load_space(o.file);
    const auto an = annulus(space, o.r, o.s);
    b.results = {{"lower", o.r}, {"upper", number(o.s)}, {"size", an.members.size()},
                 {"members", io::ids_json(space, an.members)}};
}

void cmd_lip(const Options& o, Bundle& b) {
    const auto doc = io::load_map(o.file);
    b.digest_all(doc.sources);
    b.results = {{"points", doc.map.size()}, {"lip", number(lip_constant(*doc.space, doc.map))}};
}

void cmd_fit(const Options& o, Bundle& b) {
    const auto doc = io::load_map(o.file);
    b.digest_all(doc.sources);
    b.results = io::fit_to_json(asymptotic_fit(*doc.space, doc.map));
}

void cmd_profile(const Options& o, Bundle& b) {
    const auto doc = io::load_map(o.file);
    b.digest_all(doc.sources);
    const auto& space = *doc.space;
    const SphereMap f = load_sphere(doc);
    const auto prof = annulus_profile(space, f, o.r, o.M);
    json rows = json::array();
    for (const auto& row : prof.rows) {
        rows.push_back({{"k", row.k},
                        {"lower", row.lower},
                        {"upper", row.upper},
                        {"x_size", row.x_size},
                        {"y_size", row.y_size},
                        {"lip_x", number(row.lip_x)},
                        {"lip_y", number(row.lip_y)},
                        {"scaled_x", number(row.scaled_x)},
                        {"scaled_y", number(row.scaled_y)}});
    }
    b.results = {{"r", o.r},
                 {"M", o.M},
                 {"rows", rows},
                 {"bound_x", number(prof.bound_x)},
                 {"bound_y", number(prof.bound_y)},
                 {"unbounded_trend", prof.unbounded_trend}};

    const double lam = lip_constant(space, induce(space, f).map());
    const double cap = o.M * (lam + 1.0) / o.r;
    std::size_t bad = 0;
    for (const auto& row : prof.rows) {
        if (row.k >= 2 && !approx_leq(row.scaled_y, cap)) ++bad;
    }
    b.certify("lipschitz_implies_profile",
              bad == 0, {{"lambda", number(lam)}, {"cap", number(cap)}, {"violations", bad}});
    if (prof.unbounded_trend) {
        b.warn("profile grows without bound; f' is not Lipschitz at this scale");
        return;
    }
    const auto cert = profile_implies_lipschitz(space, f, prof);
    b.certify("profile_implies_lipschitz", cert.violations == 0,
              {{"C", number(cert.C)},
               {"bound", number(cert.bound)},
               {"measured", number(cert.measured)},
               {"measured_all", number(cert.measured_all)},
               {"violations", cert.violations}});
}

void cmd_defect(const Options& o, Bundle& b) {
    const auto doc = io::load_map(o.file);
    b.digest_all(doc.sources);
    b.digest(o.sublinear_file);
    const auto& space = *doc.space;
    const SphereMap f = load_sphere(doc);
    const auto s = io::function_from_json(io::load_json(o.sublinear_file));
    const double defect = sublinear_defect(space, f, s, o.R);
    const auto fit = asymptotic_fit(space, induce(space, f).map());
    double bound = kInf;
    for (const auto& k : fit.pareto) {
        if (std::isfinite(k.lambda)) bound = std::min(bound, sublinear_defect_bound(k.lambda, k.M, s, o.R));
    }
    const auto verdict = is_asymptotically_sublinear(s);
    b.results = {{"R", o.R}, {"defect", number(defect)}, {"bound", number(bound)},
                 {"sublinear", verdict.verdict}};
    if (!verdict.verdict) b.warn("scale function is not asymptotically sublinear");
    if (o.R > 0.0) b.certify("defect_bound", approx_leq(defect, bound));
}

void cmd_partition(const Options& o, Bundle& b) {
    const auto doc = io::load_cover(o.file);
    b.digest_all(doc.sources);
    const auto& space = *doc.space;
    const auto p = canonical_partition(space, doc.cover);
    json phi = json::object();
    for (std::size_t x = 0; x < space.size(); ++x) phi[space.id(x)] = vec_json(p.phi[x]);
    const double eps = sublinearity_gap(space, p);
    b.results = {{"sets", doc.cover.names}, {"phi", phi}, {"epsilon", number(eps)}};
    if (!(eps > 0.0)) {
        b.warn("sublinearity gap is zero; the partition bound does not apply");
        return;
    }
    const auto cert = certify_partition_lipschitz(space, doc.cover);
    b.certify("partition_lipschitz", cert.violations == 0,
              {{"bound", number(cert.proved_bound)},
               {"measured", number(cert.measured)},
               {"violations", cert.violations}});
    b.results["cone_lip"] = number(cert.cone_lip);
    b.results["converse_violations"] = cert.converse_violations;
}

void cmd_gap(const Options& o, Bundle& b) {
    const auto doc = io::load_cover(o.file);
    b.digest_all(doc.sources);
    b.results = {{"epsilon", number(sublinearity_gap(*doc.space, doc.cover))},
                 {"proper", doc.cover.proper}};
}

json certificate_json(const PointedMetricSpace& space, const ExtensionCertificate& c) {
    json stages = json::array();
    for (const auto& st : c.stages) {
        stages.push_back({{"k", st.k},
                          {"mu", number(st.mu)},
                          {"band_size", st.band_size},
                          {"lip_pasted", number(st.lip_pasted)},
                          {"paste_bound", number(st.paste_bound)},
                          {"lip_h", number(st.lip_h)},
                          {"fallbacks", st.fallbacks}});
    }
    json constants = json::object();
    for (const auto& [k, v] : c.constants) constants[k] = number(v);
    return {{"input_map", point_values(space, c.input_map)},
            {"output_map", point_values(space, c.output_map)},
            {"restriction_ok", c.restriction_ok},
            {"norm_preserving_ok", c.norm_preserving_ok},
            {"lip_in", number(c.lip_in)},
            {"lip_out", number(c.lip_out)},
            {"fit_out", io::fit_to_json(c.fit_out)},
            {"constants", constants},
            {"stages", stages}};
}

void cmd_extend(const Options& o, Bundle& b) {
    std::shared_ptr<const PointedMetricSpace> override_space;
    if (!o.space_file.empty()) {
        b.digest(o.space_file);
        override_space = std::make_shared<const PointedMetricSpace>(io::load_space(o.space_file));
    }
    const auto doc = io::load_map(o.file, override_space);
    b.digest_all(doc.sources);
    const auto& space = *doc.space;
    const SphereMap f = load_sphere(doc);
    SpliceParams params;
    params.r = o.splice_r;
    params.ratio = o.M;
    params.strategy = parse_strategy(o.strategy);
    const auto cert = splice_extend(space, induce(space, f), params);
    b.results = certificate_json(space, cert);
    b.results["strategy"] = o.strategy;
    for (const auto& w : cert.warnings) b.warn(w);
    b.certify("restriction", cert.restriction_ok);
    b.certify("norm_preserving", cert.norm_preserving_ok);
    b.certify("lipschitz_output", std::isfinite(cert.lip_out), {{"lip_out", number(cert.lip_out)}});
}

void cmd_modulus(const Options& o, Bundle& b) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(o.file)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    // Spaces shared by several maps may live in the same directory.
    std::erase_if(files, [](const fs::path& p) { return !io::load_json(p).contains("values"); });
    std::vector<io::MapDocument> docs;
    for (const auto& p : files) {
        docs.push_back(io::load_map(p));
        b.digest_all(docs.back().sources);
    }
    std::vector<ModulusInstance> family;
    for (const auto& d : docs) family.push_back({d.space.get(), load_sphere(d), d.s});
    const auto rows = extension_modulus(family, parse_strategy(o.strategy));
    json table = json::array();
    for (const auto& row : rows) {
        table.push_back({{"s", number(row.s)},
                         {"instances", row.instances},
                         {"raw", number(row.raw)},
                         {"regularized", number(row.regularized)}});
    }
    b.results = {{"instances", files.size()}, {"strategy", o.strategy}, {"table", table}};
}

void cmd_shrink(const Options& o, Bundle& b) {
    const auto doc = io::load_cover(o.file);
    b.digest_all(doc.sources);
    const auto& space = *doc.space;
    const auto cc = io::colored_cover_from_json(space, doc.cover, doc.raw);
    const auto valid = validate_colored_cover(space, cc);
    for (const auto& v : valid.violations) b.warn(v);
    const auto rep = shrink(space, cc, parse_strategy(o.strategy));
    json shrunk = json::object();
    for (std::size_t i = 0; i < cc.cover.size(); ++i) {
        shrunk[cc.cover.names[i]] = io::ids_json(space, rep.shrunk_sets[i]);
    }
    json stages = json::array();
    for (const auto& st : rep.stages) {
        json verts = json::array();
        for (std::size_t v : st.vertices) verts.push_back(cc.cover.names[v]);
        stages.push_back({{"vertices", verts},
                          {"points", st.points},
                          {"seeds", st.seeds},
                          {"lip_phi", number(st.lip_phi)},
                          {"lip_psi", number(st.lip_psi)},
                          {"ratio", number(st.ratio)},
                          {"fallback", st.fallback},
                          {"radial", st.radial}});
    }
    b.results = {{"m", rep.m},
                 {"cover_valid", valid.ok},
                 {"shrunk_sets", shrunk},
                 {"A_r", io::ids_json(space, rep.A_r)},
                 {"lambda", number(rep.lambda)},
                 {"t", number(rep.t)},
                 {"original_multiplicity", rep.original_multiplicity},
                 {"multiplicity", rep.multiplicity},
                 {"lebesgue", number(rep.lebesgue)},
                 {"proved_lebesgue_bound", number(rep.proved_lebesgue_bound)},
                 {"closed_ball_failures", rep.closed_ball_failures},
                 {"max_preimage_diameter", number(rep.max_preimage_diameter)},
                 {"stages", stages}};
    for (const auto& w : rep.warnings) b.warn(w);
    b.certify("subset", rep.subset_ok);
    b.certify("multiplicity", rep.multiplicity_ok, {{"value", rep.multiplicity}, {"limit", rep.m + 1}});
    b.certify("lebesgue", rep.lebesgue_ok,
              {{"value", number(rep.lebesgue)}, {"bound", number(rep.proved_lebesgue_bound)}});
    b.certify("preimage_diameter", rep.preimage_ok,
              {{"value", number(rep.max_preimage_diameter)}, {"bound", number(rep.preimage_bound)}});
}

void cmd_sublinear_fit(const Options& o, Bundle& b) {
    b.digest(o.file);
    const auto samples = io::samples_from_json(io::load_json(o.file));
    const auto fit = fit_sublinear_through(samples);
    const auto verdict = is_asymptotically_sublinear(fit.function);
    b.results = {{"function", io::function_to_json(fit.function)},
                 {"selected", fit.selected},
                 {"selection", fit.selection},
                 {"slopes", verdict.slope_sequence},
                 {"sublinear", verdict.verdict}};
    bool exact = true;
    for (std::size_t k : fit.selected) {
        exact = exact && fit.function(samples[k].first) == samples[k].second * samples[k].first;
    }
    b.certify("interpolation_exact", exact);
    b.certify("sublinear", verdict.verdict);
}

void cmd_generate(const Options& o, Bundle& b) {
    gen::Params p{o.kind, o.seed, o.size, o.r, o.dim};
    const auto files = gen::generate_instance(p, o.out_dir);
    json written = json::array();
    for (const auto& f : files) written.push_back(f.filename().string());
    b.results = {{"kind", o.kind}, {"seed", o.seed}, {"size", o.size}, {"files", written}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (const char* tol = std::getenv("COARSEKIT_TOL")) {
        try {
            set_tolerance(std::stod(tol));
        } catch (const std::exception&) {
            err << "error: COARSEKIT_TOL is not a number\n";
            return kIoError;
        }
    }

    CLI::App app{"Finite-scale coarse geometry toolkit", "coarse-kit"};
    app.require_subcommand(1);
    Options o;
    app.add_option("-o,--output", o.output, "Write the report to this file");
    std::function<void(const Options&, Bundle&)> action;

    auto sub = [&](const char* name, const char* help, auto fn) {
        CLI::App* c = app.add_subcommand(name, help);
        c->callback([&action, fn] { action = fn; });
        return c;
    };

    auto* validate = sub("validate", "Check the metric axioms", cmd_validate);
    validate->add_option("file", o.file)->required();

    auto* net = sub("net", "Greedy eps-net", cmd_net);
    net->add_option("file", o.file)->required();
    net->add_option("--eps", o.eps)->required();

    auto* ann = sub("annulus", "Points with r <= |x| < s", cmd_annulus);
    ann->add_option("file", o.file)->required();
    ann->add_option("--r", o.r)->required();
    ann->add_option("--s", o.s)->required();

    auto* lip = sub("lip", "Lipschitz constant of a map", cmd_lip);
    lip->add_option("map", o.file)->required();

    auto* fit = sub("fit", "Asymptotic Lipschitz Pareto frontier", cmd_fit);
    fit->add_option("map", o.file)->required();

    auto* profile = sub("profile", "Annulus Lipschitz profile", cmd_profile);
    profile->add_option("map", o.file)->required();
    profile->add_option("--r", o.r);
    profile->add_option("--M", o.M);

    auto* defect = sub("defect", "Higson-sublinear defect", cmd_defect);
    defect->add_option("map", o.file)->required();
    defect->add_option("--sublinear", o.sublinear_file)->required();
    defect->add_option("--R", o.R)->required();

    auto* part = sub("partition", "Canonical partition of unity", cmd_partition);
    part->add_option("cover", o.file)->required();

    auto* gap = sub("gap", "Sublinearity gap of a cover", cmd_gap);
    gap->add_option("cover", o.file)->required();

    auto* ext = sub("extend", "Norm-preserving extension by annulus splicing", cmd_extend);
    ext->add_option("map", o.file)->required();
    ext->add_option("--space", o.space_file);
    ext->add_option("--strategy", o.strategy)->check(CLI::IsMember({"nearest", "project"}));
    ext->add_option("--r", o.splice_r);
    ext->add_option("--M", o.M);

    auto* mod = sub("modulus", "Empirical extension modulus table", cmd_modulus);
    mod->add_option("family-dir", o.file)->required()->check(CLI::ExistingDirectory);
    mod->add_option("--strategy", o.strategy)->check(CLI::IsMember({"nearest", "project"}));

    auto* shr = sub("shrink", "Shrink a colored cover", cmd_shrink);
    shr->add_option("colored-cover", o.file)->required();
    shr->add_option("--strategy", o.strategy)->check(CLI::IsMember({"nearest", "project"}));

    auto* sfit = sub("sublinear-fit", "Sublinear function through samples", cmd_sublinear_fit);
    sfit->add_option("samples", o.file)->required();

    auto* gen = sub("generate", "Write a seeded instance", cmd_generate);
    gen->add_option("kind", o.kind)->required()->check(CLI::IsMember(gen::instance_kinds()));
    gen->add_option("--seed", o.seed);
    gen->add_option("--size", o.size);
    gen->add_option("--r", o.r);
    gen->add_option("--dim", o.dim);
    gen->add_option("--out", o.out_dir);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kIoError;
    }

    Bundle bundle;
    bundle.command = args;
    int code = kOk;
    try {
        action(o, bundle);
        if (bundle.violated) code = kCertificateViolation;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << '\n';
        bundle.warn(std::string("precondition: ") + e.what());
        code = kPrecondition;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }

    const std::string text = bundle.to_json().dump(2) + "\n";
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << o.output << '\n';
            return kIoError;
        }
        f << text;
    }
    return code;
}

}  // namespace coarse::cli
