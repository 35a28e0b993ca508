#ifndef EMBED3_CLI_HPP
#define EMBED3_CLI_HPP

#include <chrono>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "closure.hpp"
#include "complex_fixtures.hpp"
#include "graphprod.hpp"
#include "io.hpp"
#include "manifold_fixtures.hpp"
#include "thickening.hpp"

namespace embed3::cli {

using io::Json;

enum Exit : int { Success = 0, Negative = 1, Invalid = 2 };

/// `z`, `q`, `z2` or `zp:P` with P prime.
inline CoefficientRing parse_coeff(const std::string& s)
{
    if (s == "z") return CoefficientRing::integers();
    if (s == "q") return CoefficientRing::rationals();
    if (s == "z2") return CoefficientRing::prime_field(2);
    if (s.rfind("zp:", 0) == 0) {
        const std::string p = s.substr(3);
        if (p.empty() || p.size() > 18 || p.find_first_not_of("0123456789") != std::string::npos)
            throw io::InputError("--coeff: '" + s + "' needs a decimal prime after zp:");
        try {
            return CoefficientRing::prime_field(std::stoull(p));
        } catch (const std::invalid_argument& e) {
            throw io::InputError(std::string("--coeff: ") + e.what());
        }
    }
    throw io::InputError("--coeff: expected z, q, z2 or zp:P, got '" + s + "'");
}

inline std::string coeff_name(const CoefficientRing& r)
{
    return r.is_field() ? r.name() : std::string("Z");
}

// ------------------------------------------------------------------------
// Inputs
// ------------------------------------------------------------------------

using Input = std::variant<SimplicialComplex2, ManifoldPresentation, Graph>;

inline const std::map<std::string, std::string>& complex_aliases()
{
    static const std::map<std::string, std::string> a{
        {"k33xS1", "k33-circle"}, {"k4xS1", "k4-circle"}, {"k5xS1", "k5-circle"},
        {"thetaxS1", "theta-circle"}, {"yxI", "y-interval"}, {"yxS1", "y-circle"}};
    return a;
}

/// `fixture:NAME` (manifold, then complex, then graph fixtures) or a JSON file.
inline Input load_input(const std::string& source)
{
    if (source.rfind("fixture:", 0) == 0) {
        const std::string name = source.substr(8);
        if (auto m = fixtures::manifold_fixture(name)) return *m;
        auto alias = complex_aliases().find(name);
        if (auto c = fixtures::complex_fixture(alias == complex_aliases().end() ? name : alias->second)) return *c;
        if (auto g = fixtures::graph_fixture(name)) return *g;
        throw io::InputError(source + ":0: unknown fixture (see 'fixtures list')");
    }
    const auto doc = io::Document::load(source);
    switch (io::kind_of(doc)) {
    case io::Kind::Manifold: {
        auto m = io::parse_manifold(doc);
        try {
            m.check_shape();
        } catch (const std::invalid_argument& e) {
            doc.fail("inclusion_matrix", e.what());
        }
        return m;
    }
    case io::Kind::Complex: return io::parse_complex(doc);
    case io::Kind::Graph: return io::parse_graph(doc);
    default: break;
    }
    throw io::InputError(source + ":1: cannot tell the input kind: expected 'inclusion_matrix', 'triangles' or 'adjacency'");
}

template <class T>
T expect(Input in, const std::string& source, const char* what)
{
    if (auto* p = std::get_if<T>(&in)) return std::move(*p);
    throw io::InputError(source + ":1: expected " + what);
}

// ------------------------------------------------------------------------
// Report pieces
// ------------------------------------------------------------------------

inline Json rotation_json(const Rotation& r)
{
    Json out = Json::array();
    for (const auto& cyc : r) out.push_back(cyc);
    return out;
}

inline Json collection_json(const ThickeningContext& ctx, const FaithfulCollection& col)
{
    Json out = Json::array();
    for (const auto& emb : col.embeddings) {
        const auto& lk = ctx.links.at(emb.center);
        Json pages = Json::array();
        for (auto x : lk.vertices) pages.push_back({{"neighbour", x}, {"pages", page_cycle(lk, emb, x)}});
        out.push_back({{"base_point", emb.center}, {"page_orders", pages}, {"rotation", rotation_json(emb.rotation)}});
    }
    return out;
}

inline Json boundary_json(const BoundarySurface& b)
{
    return {{"components", b.components}, {"euler_characteristic", b.euler_characteristic}, {"genera", b.genera},
            {"orientable", b.orientable}};
}

inline std::size_t total_genus(const BoundarySurface& b)
{
    std::size_t g = 0;
    for (auto x : b.genera) g += x;
    return g;
}

/// Per-class condition: H_1(M; G) has dimension (or is free of rank) g.
inline Json condition_json(const FGAbelianGroup& h1, std::size_t g, const CoefficientRing& ring)
{
    Json c = Json::object();
    c["g"] = g;
    c["h1"] = io::group_json(h1);
    if (ring.is_field()) {
        c["dim_h1"] = dim_over_field(h1, ring);
    } else {
        c["rank_h1"] = h1.free_rank();
        c["h1_free"] = h1.is_free();
    }
    c["satisfied"] = sphere_embeddable(h1, 2 * g, ring);
    return c;
}

inline ThickeningContext thickening_context(const SimplicialComplex2& k)
{
    return prepare_thickening(validate_complex(k));
}

// ------------------------------------------------------------------------
// Commands; each fills `report` and returns the exit code
// ------------------------------------------------------------------------

inline int cmd_thicken(const std::string& file, Json& report)
{
    auto ctx = thickening_context(expect<SimplicialComplex2>(load_input(file), file, "a 2-complex"));
    auto res = thicken_all(ctx);
    Json classes = Json::array();
    for (std::size_t i = 0; i < res.descriptors.size(); ++i) {
        const auto& d = res.descriptors[i];
        classes.push_back({{"boundary", boundary_json(d.boundary)}, {"class", i}, {"h1", io::group_json(d.h1)},
                           {"rotations", collection_json(ctx, d.se_class)}});
    }
    report["base_points"] = ctx.singular.base_points;
    report["classes"] = classes;
    report["h1"] = io::group_json(first_homology(ctx.complex.original));
    if (res.descriptors.empty()) {
        report["verdict"] = "no orientable thickening";
        report["reason"] = res.reason;
        return Negative;
    }
    report["verdict"] = "thickenable";
    return Success;
}

inline int cmd_embed_sphere(const std::string& file, const CoefficientRing& ring, Json& report)
{
    report["coefficients"] = coeff_name(ring);
    Input in = load_input(file);
    bool ok = false;
    if (auto* m = std::get_if<ManifoldPresentation>(&in)) {
        report["input"] = "manifold";
        auto c = condition_json(m->h1(), m->genus(), ring);
        ok = c["satisfied"].get<bool>();
        report["condition"] = c;
    } else if (auto* k = std::get_if<SimplicialComplex2>(&in)) {
        report["input"] = "complex";
        auto ctx = thickening_context(*k);
        auto res = thicken_all(ctx);
        Json classes = Json::array();
        std::optional<std::size_t> witness;
        for (std::size_t i = 0; i < res.descriptors.size(); ++i) {
            const auto& d = res.descriptors[i];
            auto c = condition_json(d.h1, total_genus(d.boundary), ring);
            if (c["satisfied"].get<bool>() && !witness) witness = i;
            c["class"] = i;
            c["boundary"] = boundary_json(d.boundary);
            classes.push_back(c);
        }
        report["classes"] = classes;
        if (res.descriptors.empty()) report["reason"] = res.reason;
        if (witness) {
            report["witness_class"] = *witness;
            report["witness_rotations"] = collection_json(ctx, res.descriptors[*witness].se_class);
        }
        ok = witness.has_value();
    } else {
        throw io::InputError(file + ":1: embed-sphere takes a 2-complex or a manifold presentation");
    }
    report["verdict"] = ok ? "embeddable" : "not embeddable";
    return ok ? Success : Negative;
}

inline Json closure_json(const Closure& c)
{
    return {{"h1_closure", io::group_json(c.h1q)}, {"lagrangian", io::matrix_json(c.lagrangian.generators())}};
}

inline int cmd_close(const std::string& file, const CoefficientRing& ring, bool integral, Json& report)
{
    auto m = expect<ManifoldPresentation>(load_input(file), file, "a manifold presentation");
    validate_hlhd(m);
    report["coefficients"] = coeff_name(ring);
    report["g"] = m.genus();
    report["h1"] = io::group_json(m.h1());
    report["ker_i"] = io::matrix_json(inclusion_kernel(m, ring).generators());
    if (ring.is_field()) {
        auto c = minimal_closure_field(m, ring);
        report["closure"] = closure_json(c);
        report["dim"] = dim_over_field(c.h1q, ring);
        report["lower_bound"] = lower_bound_field(m, ring);
    }
    if (integral || !ring.is_field()) {
        auto c = minimal_closure_integral(m);
        report["integral_closure"] = closure_json(c);
        report["c_of"] = io::group_json(c_of(m));
    }
    report["verdict"] = "closed";
    return Success;
}

inline int cmd_graph_genus(const std::string& file, Json& report)
{
    auto g = expect<Graph>(load_input(file), file, "a graph");
    auto r = graph_genus(g);
    report["edges"] = g.edges.size();
    report["faces"] = r.faces;
    report["genus"] = r.genus;
    report["rotation"] = rotation_json(r.rotation);
    report["vertices"] = g.vertices;
    return Success;
}

inline int cmd_graph_product(const std::string& file, const CoefficientRing& ring, Json& report)
{
    if (!ring.is_field()) throw io::InputError("--coeff: graph product needs a field (q, z2 or zp:P)");
    auto g = expect<Graph>(load_input(file), file, "a graph");
    auto r = min_closed_h1_dim(g, ring);
    report["coefficients"] = coeff_name(ring);
    report["dim"] = r.dim;
    report["genus"] = r.genus;
    if (r.surface) {
        const auto& s = *r.surface;
        report["surface"] = {{"boundary_components", s.boundary_components()},
                             {"euler_characteristic", s.euler_characteristic},
                             {"genus", s.genus},
                             {"orientable", s.orientable},
                             {"rotation", rotation_json(s.rotation)}};
    }
    return Success;
}

inline int cmd_fixtures(Json& report)
{
    Json complexes = Json::array();
    for (const auto& n : fixtures::complex_names()) complexes.push_back(n);
    for (const auto& [alias, name] : complex_aliases()) complexes.push_back(alias);
    report["complexes"] = complexes;
    report["graphs"] = fixtures::graph_names();
    report["manifolds"] = fixtures::manifold_names();
    return Success;
}

// ------------------------------------------------------------------------
// Human-readable rendering
// ------------------------------------------------------------------------

inline bool is_flat(const Json& j)
{
    if (!j.is_array()) return !j.is_object();
    for (const auto& x : j)
        if (x.is_object() || (x.is_array() && !is_flat(x))) return false;
    return true;
}

inline void render_human(const Json& j, std::ostream& out, int indent = 0)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string label = j.is_object() ? it.key() : "-";
        const Json& v = *it;
        if (is_flat(v)) {
            out << pad << label << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        } else {
            out << pad << label << ":\n";
            render_human(v, out, indent + 2);
        }
    }
}

// ------------------------------------------------------------------------
// Entry point
// ------------------------------------------------------------------------

/// Parses `args` (without the program name), runs the command, writes the report.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Embeddings of 2-polyhedra into homology 3-spheres and minimal closures of 3-manifolds", "embed3"};
    app.require_subcommand(1);
    app.fallthrough();
    bool human = false, timing = false, integral = false;
    std::string file, coeff;
    app.add_flag("--human", human, "Print an indented text report instead of JSON");
    app.add_flag("--timing", timing, "Add wall-clock time to the report");

    auto* thicken = app.add_subcommand("thicken", "Enumerate orientable 3-thickenings of a 2-complex");
    thicken->add_option("file", file, "Complex JSON file or fixture:NAME")->required();

    auto* embed = app.add_subcommand("embed-sphere", "Decide embeddability into a homology 3-sphere");
    embed->add_option("file", file, "Complex or manifold JSON file, or fixture:NAME")->required();
    embed->add_option("--coeff", coeff, "Coefficients: z, q, z2, zp:P")->required();

    auto* close = app.add_subcommand("close", "Minimal first homology of a closure of a 3-manifold");
    close->add_option("file", file, "Manifold JSON file or fixture:NAME")->required();
    close->add_option("--coeff", coeff, "Coefficients: z, q, z2, zp:P")->required();
    close->add_flag("--integral", integral, "Also build the integral closure");

    auto* graph = app.add_subcommand("graph", "Graph genus and graph x circle closures");
    graph->require_subcommand(1);
    auto* genus = graph->add_subcommand("genus", "Orientable genus of a graph");
    genus->add_option("file", file, "Graph JSON file or fixture:NAME")->required();
    auto* product = graph->add_subcommand("product", "Minimal dim H1 of a closed manifold containing graph x S^1");
    product->add_option("file", file, "Graph JSON file or fixture:NAME")->required();
    product->add_option("--coeff", coeff, "Coefficients: q, z2, zp:P")->required();

    auto* fixtures_cmd = app.add_subcommand("fixtures", "Built-in fixtures");
    fixtures_cmd->require_subcommand(1);
    auto* list = fixtures_cmd->add_subcommand("list", "List fixture names");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : Invalid;
    }

    Json report = Json::object();
    report["command"] = args;
    int code = Invalid;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (thicken->parsed()) {
            code = cmd_thicken(file, report);
        } else if (embed->parsed()) {
            code = cmd_embed_sphere(file, parse_coeff(coeff), report);
        } else if (close->parsed()) {
            code = cmd_close(file, parse_coeff(coeff), integral, report);
        } else if (genus->parsed()) {
            code = cmd_graph_genus(file, report);
        } else if (product->parsed()) {
            code = cmd_graph_product(file, parse_coeff(coeff), report);
        } else if (list->parsed()) {
            code = cmd_fixtures(report);
        }
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << '\n';
        return Invalid;
    } catch (const Rejection& e) {
        err << "rejected: " << e.what() << '\n';
        return Invalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << (file.empty() ? std::string() : file + ": ") << e.what() << '\n';
        return Invalid;
    }
    if (timing)
        report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report = io::sorted(report);
    if (human) {
        render_human(report, out);
    } else {
        out << report.dump(2) << '\n';
    }
    return code;
}

} // namespace embed3::cli

#endif
