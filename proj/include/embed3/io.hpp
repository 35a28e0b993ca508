#ifndef EMBED3_IO_HPP
#define EMBED3_IO_HPP

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "closure.hpp"
#include "graphprod.hpp"
#include "polyhedron.hpp"

namespace embed3::io {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the file, the line and the field.
class InputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A parsed JSON document that remembers its source text for diagnostics.
class Document
{
public:
    Document(std::string path, std::string text) : path_(std::move(path)), text_(std::move(text))
    {
        try {
            root_ = Json::parse(text_);
        } catch (const Json::parse_error& e) {
            throw InputError(path_ + ":" + std::to_string(line_at(e.byte == 0 ? 0 : e.byte - 1)) +
                             ": invalid JSON: " + strip_prefix(e.what()));
        }
        if (!root_.is_object()) throw InputError(path_ + ":1: top level must be a JSON object");
    }

    static Document load(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError(path + ":0: cannot open file");
        std::ostringstream ss;
        ss << in.rdbuf();
        return Document(path, ss.str());
    }

    const Json& root() const { return root_; }
    const std::string& path() const { return path_; }
    bool has(const std::string& key) const { return root_.contains(key); }

    /// Error located at the line where `field` is first written.
    [[noreturn]] void fail(const std::string& field, const std::string& message) const
    {
        throw InputError(path_ + ":" + std::to_string(line_of(field)) + ": field '" + field + "': " + message);
    }

    const Json& require(const std::string& field) const
    {
        if (!root_.contains(field)) throw InputError(path_ + ":1: missing required field '" + field + "'");
        return root_.at(field);
    }

    std::size_t line_of(const std::string& field) const
    {
        auto at = text_.find("\"" + field + "\"");
        return at == std::string::npos ? 1 : line_at(at);
    }

private:
    std::size_t line_at(std::size_t byte) const
    {
        byte = std::min(byte, text_.size());
        return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
    }

    static std::string strip_prefix(const std::string& what)
    {
        // "[json.exception.parse_error.101] parse error at line 1, column 2: ..." -> text after the last ": "
        auto at = what.rfind(": ");
        return at == std::string::npos ? what : what.substr(at + 2);
    }

    std::string path_, text_;
    Json root_;
};

// ------------------------------------------------------------------------
// Scalars
// ------------------------------------------------------------------------

/// An integer given as a JSON number or a decimal string (for values beyond 64 bits).
inline Integer parse_integer(const Document& doc, const std::string& field, const Json& v, const std::string& where)
{
    if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>()) : Integer(v.get<std::int64_t>());
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        const std::size_t digits = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() > digits && s.find_first_not_of("0123456789", digits) == std::string::npos) return Integer(s);
    }
    doc.fail(field, where + " must be an integer (number or decimal string)");
}

inline std::int64_t parse_id(const Document& doc, const std::string& field, const Json& v, const std::string& where)
{
    if (!v.is_number_integer()) doc.fail(field, where + " must be an integer id");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        doc.fail(field, where + " is out of range");
    return v.get<std::int64_t>();
}

inline const Json& require_array(const Document& doc, const std::string& field)
{
    const Json& a = doc.require(field);
    if (!a.is_array()) doc.fail(field, "must be an array");
    return a;
}

inline IntMatrix parse_matrix(const Document& doc, const std::string& field, std::size_t cols)
{
    const Json& a = require_array(doc, field);
    IntMatrix m(0, cols);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string where = "row " + std::to_string(i);
        if (!a[i].is_array()) doc.fail(field, where + " must be an array");
        if (a[i].size() != cols)
            doc.fail(field, where + " has " + std::to_string(a[i].size()) + " entries, expected " + std::to_string(cols));
        std::vector<Integer> row;
        for (std::size_t j = 0; j < cols; ++j)
            row.push_back(parse_integer(doc, field, a[i][j], where + " entry " + std::to_string(j)));
        m.append_row(row);
    }
    return m;
}

// ------------------------------------------------------------------------
// Input kinds
// ------------------------------------------------------------------------

enum class Kind { Complex, Manifold, Graph, Unknown };

inline Kind kind_of(const Document& doc)
{
    if (doc.has("inclusion_matrix")) return Kind::Manifold;
    if (doc.has("triangles")) return Kind::Complex;
    if (doc.has("adjacency")) return Kind::Graph;
    return Kind::Unknown;
}

/// {"vertices": [ids], "edges": [[a, b]], "triangles": [[a, b, c]]}
inline SimplicialComplex2 parse_complex(const Document& doc)
{
    SimplicialComplex2 k;
    for (const auto& v : require_array(doc, "vertices")) k.vertices.push_back(parse_id(doc, "vertices", v, "vertex id"));
    const Json& edges = require_array(doc, "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (!e.is_array() || e.size() != 2) doc.fail("edges", "edge " + std::to_string(i) + " must be a pair of ids");
        k.edges.push_back({parse_id(doc, "edges", e[0], "edge " + std::to_string(i)),
                           parse_id(doc, "edges", e[1], "edge " + std::to_string(i))});
    }
    const Json& tris = require_array(doc, "triangles");
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& t = tris[i];
        const std::string where = "triangle " + std::to_string(i);
        if (!t.is_array() || t.size() != 3) doc.fail("triangles", where + " must be a triple of ids");
        k.triangles.push_back({parse_id(doc, "triangles", t[0], where), parse_id(doc, "triangles", t[1], where),
                               parse_id(doc, "triangles", t[2], where)});
    }
    return k;
}

/**
 * {"h1_generators": [names] (optional), "h1_relations": [[...]], "boundary_genera": [...],
 *  "inclusion_matrix": [[...]] (one row per generator, 2g columns), "orientable": bool}
 */
inline ManifoldPresentation parse_manifold(const Document& doc)
{
    ManifoldPresentation m;
    const Json& genera = require_array(doc, "boundary_genera");
    for (const auto& g : genera) {
        if (!g.is_number_integer() || g.get<std::int64_t>() < 1)
            doc.fail("boundary_genera", "entries must be positive integers");
        m.boundary_genera.push_back(g.get<std::size_t>());
    }
    const Json& inc = require_array(doc, "inclusion_matrix");
    m.generators = inc.size();
    if (doc.has("h1_generators")) {
        const Json& names = require_array(doc, "h1_generators");
        for (const auto& n : names) {
            if (!n.is_string()) doc.fail("h1_generators", "entries must be strings");
            m.generator_names.push_back(n.get<std::string>());
        }
        if (m.generator_names.size() != m.generators)
            doc.fail("h1_generators", "names " + std::to_string(m.generator_names.size()) +
                                          " generators but inclusion_matrix has " + std::to_string(m.generators) + " rows");
    }
    m.inclusion = parse_matrix(doc, "inclusion_matrix", 2 * m.genus());
    m.relations = parse_matrix(doc, "h1_relations", m.generators);
    const Json& o = doc.require("orientable");
    if (!o.is_boolean()) doc.fail("orientable", "must be true or false");
    m.orientable = o.get<bool>();
    return m;
}

/// {"adjacency": [[neighbours of 0], [neighbours of 1], ...]}
inline Graph parse_graph(const Document& doc)
{
    const Json& a = require_array(doc, "adjacency");
    std::vector<std::vector<std::size_t>> adj;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (!a[v].is_array()) doc.fail("adjacency", "entry " + std::to_string(v) + " must be an array");
        std::vector<std::size_t> row;
        for (const auto& w : a[v]) {
            if (!w.is_number_integer() || w.get<std::int64_t>() < 0)
                doc.fail("adjacency", "entry " + std::to_string(v) + " must list vertex indices");
            row.push_back(w.get<std::size_t>());
        }
        adj.push_back(row);
    }
    try {
        return graph_from_adjacency(adj);
    } catch (const std::invalid_argument& e) {
        doc.fail("adjacency", e.what());
    }
}

// ------------------------------------------------------------------------
// Output
// ------------------------------------------------------------------------

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline Json integer_json(const Integer& x)
{
    if (x >= INT64_MIN && x <= INT64_MAX) return static_cast<std::int64_t>(x);
    return x.str();
}

inline Json matrix_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json group_json(const FGAbelianGroup& g)
{
    Json t = Json::array();
    for (const auto& d : g.invariant_factors()) t.push_back(integer_json(d));
    Json out = Json::object();
    out["free_rank"] = g.free_rank();
    out["group"] = g.to_string();
    out["torsion"] = t;
    return out;
}

/// Recursively sorted keys, so reports do not depend on insertion order.
inline Json sorted(const Json& j)
{
    if (j.is_object()) {
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
        std::sort(keys.begin(), keys.end());
        Json out = Json::object();
        for (const auto& k : keys) out[k] = sorted(j.at(k));
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& x : j) out.push_back(sorted(x));
        return out;
    }
    return j;
}

} // namespace embed3::io

#endif
