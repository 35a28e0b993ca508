#ifndef EMBED3_POLYHEDRON_HPP
#define EMBED3_POLYHEDRON_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "rejection.hpp"

namespace embed3 {

using Edge = std::array<std::size_t, 2>;
using Triangle = std::array<std::size_t, 3>;

/// Raw simplex lists as read from input; vertex ids are arbitrary integers.
struct SimplicialComplex2
{
    std::vector<std::int64_t> vertices;
    std::vector<std::array<std::int64_t, 2>> edges;
    std::vector<std::array<std::int64_t, 3>> triangles;
};

/**
 * Closed, pure, connected 2-complex on vertices 0..n-1 with sorted simplices.
 * Incidence tables are built once on construction.
 */
class Complex
{
public:
    Complex() = default;
    Complex(std::size_t n, std::vector<Edge> edges, std::vector<Triangle> triangles)
        : n_(n), edges_(std::move(edges)), triangles_(std::move(triangles))
    {
        for (auto& e : edges_) std::sort(e.begin(), e.end());
        for (auto& t : triangles_) std::sort(t.begin(), t.end());
        std::sort(edges_.begin(), edges_.end());
        std::sort(triangles_.begin(), triangles_.end());
        for (std::size_t i = 0; i < edges_.size(); ++i) edge_index_[edges_[i]] = i;
        edge_triangles_.assign(edges_.size(), {});
        vertex_triangles_.assign(n_, {});
        vertex_edges_.assign(n_, {});
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (auto v : edges_[i]) vertex_edges_[v].push_back(i);
        for (std::size_t t = 0; t < triangles_.size(); ++t) {
            const auto& tr = triangles_[t];
            for (auto v : tr) vertex_triangles_[v].push_back(t);
            for (auto e : faces(tr)) {
                auto it = edge_index_.find(e);
                if (it != edge_index_.end()) edge_triangles_[it->second].push_back(t);
            }
        }
    }

    std::size_t vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }

    std::optional<std::size_t> edge_id(std::size_t a, std::size_t b) const
    {
        auto it = edge_index_.find(a < b ? Edge{a, b} : Edge{b, a});
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }
    const std::vector<std::size_t>& triangles_of_edge(std::size_t e) const { return edge_triangles_[e]; }
    const std::vector<std::size_t>& triangles_of_vertex(std::size_t v) const { return vertex_triangles_[v]; }
    const std::vector<std::size_t>& edges_of_vertex(std::size_t v) const { return vertex_edges_[v]; }

    std::size_t other_end(std::size_t e, std::size_t v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }

    /// The vertex of triangle t not in {a, b}.
    std::size_t apex(std::size_t t, std::size_t a, std::size_t b) const
    {
        for (auto v : triangles_[t])
            if (v != a && v != b) return v;
        throw std::logic_error("apex: edge not in triangle");
    }

    static std::array<Edge, 3> faces(const Triangle& t)
    {
        return {Edge{t[0], t[1]}, Edge{t[0], t[2]}, Edge{t[1], t[2]}};
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    std::map<Edge, std::size_t> edge_index_;
    std::vector<std::vector<std::size_t>> edge_triangles_;
    std::vector<std::vector<std::size_t>> vertex_triangles_;
    std::vector<std::vector<std::size_t>> vertex_edges_;
};

inline std::int64_t euler_characteristic(const Complex& k)
{
    return static_cast<std::int64_t>(k.vertex_count()) - static_cast<std::int64_t>(k.edges().size()) +
           static_cast<std::int64_t>(k.triangles().size());
}

/// Barycentric subdivision. Ids: original vertices, then edge barycenters, then triangle barycenters.
inline Complex barycentric_subdivision(const Complex& k)
{
    const std::size_t n = k.vertex_count(), ne = k.edges().size();
    auto eb = [&](std::size_t e) { return n + e; };
    auto tb = [&](std::size_t t) { return n + ne + t; };
    std::vector<Edge> edges;
    std::vector<Triangle> tris;
    for (std::size_t e = 0; e < ne; ++e)
        for (auto v : k.edges()[e]) edges.push_back({v, eb(e)});
    for (std::size_t t = 0; t < k.triangles().size(); ++t) {
        const auto& tr = k.triangles()[t];
        for (auto v : tr) edges.push_back({v, tb(t)});
        for (const auto& f : Complex::faces(tr)) {
            std::size_t e = *k.edge_id(f[0], f[1]);
            edges.push_back({eb(e), tb(t)});
            for (auto v : f) tris.push_back({v, eb(e), tb(t)});
        }
    }
    return Complex(n + ne + k.triangles().size(), std::move(edges), std::move(tris));
}

struct CheckedComplex
{
    Complex original;
    Complex subdivided;
    std::vector<std::int64_t> labels;          // input id of each original vertex
    std::vector<std::size_t> wedge_vertices;   // subdivided ids with disconnected link
};

namespace detail {

inline bool connected(std::size_t n, const std::vector<Edge>& edges)
{
    if (n == 0) return true;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t comps = n;
    for (const auto& e : edges) {
        auto a = find(e[0]), b = find(e[1]);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    return comps == 1;
}

} // namespace detail

// ------------------------------------------------------------------------
// Links
// ------------------------------------------------------------------------

struct LinkEdge
{
    std::size_t a, b;       // local indices into LinkGraph::vertices
    std::size_t triangle;   // the page this edge comes from
};

/// Simplicial link of a vertex; vertices are neighbour ids in ascending order.
struct LinkGraph
{
    std::size_t center = 0;
    std::vector<std::size_t> vertices;
    std::vector<LinkEdge> edges;

    std::size_t local(std::size_t global) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), global);
        if (it == vertices.end() || *it != global) throw std::out_of_range("vertex not in link");
        return static_cast<std::size_t>(it - vertices.begin());
    }

    std::vector<std::size_t> degrees() const
    {
        std::vector<std::size_t> d(vertices.size(), 0);
        for (const auto& e : edges) ++d[e.a], ++d[e.b];
        return d;
    }

    /// Incident edge indices per local vertex, ascending.
    std::vector<std::vector<std::size_t>> incidence() const
    {
        std::vector<std::vector<std::size_t>> inc(vertices.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            inc[edges[i].a].push_back(i);
            inc[edges[i].b].push_back(i);
        }
        return inc;
    }

    bool is_connected() const
    {
        std::vector<Edge> es;
        for (const auto& e : edges) es.push_back({e.a, e.b});
        return detail::connected(vertices.size(), es);
    }
};

inline LinkGraph link_graph(const Complex& k, std::size_t v)
{
    LinkGraph g;
    g.center = v;
    for (auto e : k.edges_of_vertex(v)) g.vertices.push_back(k.other_end(e, v));
    std::sort(g.vertices.begin(), g.vertices.end());
    for (auto t : k.triangles_of_vertex(v)) {
        std::vector<std::size_t> rest;
        for (auto x : k.triangles()[t])
            if (x != v) rest.push_back(x);
        g.edges.push_back({g.local(rest[0]), g.local(rest[1]), t});
    }
    return g;
}

enum class LinkKind { Circle, Arc, Theta, Other };

struct LinkShape
{
    LinkKind kind = LinkKind::Other;
    bool connected = true;
    std::size_t pages = 0;               // n for Theta_n
    std::array<std::size_t, 2> poles{};  // global ids, for Theta
};

/**
 * Circle, arc, Theta_n (two poles of degree n >= 3 joined by n chains of
 * degree-2 vertices), or anything else.
 */
inline LinkShape classify_link(const LinkGraph& g)
{
    LinkShape s;
    s.connected = g.is_connected();
    if (!s.connected || g.vertices.empty()) return s;
    auto deg = g.degrees();
    std::size_t ones = 0, twos = 0;
    std::vector<std::size_t> high;
    for (std::size_t i = 0; i < deg.size(); ++i) {
        if (deg[i] == 1) ++ones;
        else if (deg[i] == 2) ++twos;
        else if (deg[i] >= 3) high.push_back(i);
    }
    if (high.empty() && ones == 0 && twos == deg.size()) {
        s.kind = LinkKind::Circle;
        return s;
    }
    if (high.empty() && ones == 2 && twos + 2 == deg.size()) {
        s.kind = LinkKind::Arc;
        return s;
    }
    if (high.size() != 2 || ones != 0 || deg[high[0]] != deg[high[1]]) return s;
    // Every chain leaving one pole must arrive at the other.
    auto inc = g.incidence();
    const std::size_t a = high[0], b = high[1];
    for (auto e0 : inc[a]) {
        std::size_t prev = a, edge = e0;
        std::size_t cur = g.edges[edge].a == a ? g.edges[edge].b : g.edges[edge].a;
        while (cur != a && cur != b) {
            std::size_t next_edge = inc[cur][0] == edge ? inc[cur][1] : inc[cur][0];
            prev = cur;
            edge = next_edge;
            cur = g.edges[edge].a == prev ? g.edges[edge].b : g.edges[edge].a;
        }
        if (cur != b) return s;
    }
    s.kind = LinkKind::Theta;
    s.pages = deg[a];
    s.poles = {g.vertices[a], g.vertices[b]};
    return s;
}

// ------------------------------------------------------------------------
// Validation
// ------------------------------------------------------------------------

/// Checks closure and connectivity, normalizes ids, and subdivides once.
inline CheckedComplex validate_complex(const SimplicialComplex2& raw)
{
    if (raw.vertices.empty()) throw std::invalid_argument("complex has no vertices");
    std::map<std::int64_t, std::size_t> id;
    for (auto v : raw.vertices) {
        if (id.count(v)) throw std::invalid_argument("duplicate vertex " + std::to_string(v));
        id.emplace(v, 0);
    }
    CheckedComplex out;
    for (auto& [label, index] : id) {
        index = out.labels.size();
        out.labels.push_back(label);
    }
    auto vid = [&](std::int64_t v, const std::string& where) {
        auto it = id.find(v);
        if (it == id.end()) throw std::invalid_argument("face closure violated: " + where + " uses unknown vertex " + std::to_string(v));
        return it->second;
    };
    std::set<Edge> edges;
    for (const auto& e : raw.edges) {
        Edge x{vid(e[0], "edge"), vid(e[1], "edge")};
        if (x[0] == x[1]) throw std::invalid_argument("degenerate edge on vertex " + std::to_string(e[0]));
        std::sort(x.begin(), x.end());
        if (!edges.insert(x).second)
            throw std::invalid_argument("duplicate edge (" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")");
    }
    std::set<Triangle> tris;
    for (const auto& t : raw.triangles) {
        Triangle x{vid(t[0], "triangle"), vid(t[1], "triangle"), vid(t[2], "triangle")};
        std::sort(x.begin(), x.end());
        const std::string name = "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
        if (x[0] == x[1] || x[1] == x[2]) throw std::invalid_argument("degenerate triangle " + name);
        if (!tris.insert(x).second) throw std::invalid_argument("duplicate triangle " + name);
        for (const auto& f : Complex::faces(x))
            if (!edges.count(f))
                throw std::invalid_argument("face closure violated: triangle " + name + " is missing edge (" +
                                            std::to_string(out.labels[f[0]]) + "," + std::to_string(out.labels[f[1]]) + ")");
    }
    std::vector<Edge> ev(edges.begin(), edges.end());
    if (!detail::connected(id.size(), ev)) throw std::invalid_argument("disconnected complex");
    out.original = Complex(id.size(), ev, std::vector<Triangle>(tris.begin(), tris.end()));
    for (std::size_t e = 0; e < ev.size(); ++e)
        if (out.original.triangles_of_edge(e).empty())
            throw std::invalid_argument("complex is not pure: edge (" + std::to_string(out.labels[ev[e][0]]) + "," +
                                        std::to_string(out.labels[ev[e][1]]) + ") lies in no triangle");
    out.subdivided = barycentric_subdivision(out.original);
    for (std::size_t v = 0; v < out.subdivided.vertex_count(); ++v)
        if (!link_graph(out.subdivided, v).is_connected()) out.wedge_vertices.push_back(v);
    return out;
}

// ------------------------------------------------------------------------
// Singular structure
// ------------------------------------------------------------------------

/// A component of P' minus P'' closed up, walked from one F point to another.
struct SingularArc
{
    std::size_t start = 0, end = 0;
    std::vector<std::size_t> path;  // vertices; path.front() == start, path.back() == end
    /// pages[k][j]: triangle of page j along edge (path[k], path[k+1]).
    std::vector<std::vector<std::size_t>> pages;

    std::size_t page_count() const { return pages.empty() ? 0 : pages.front().size(); }
    bool is_loop() const { return start == end; }
};

struct SingularStructure
{
    std::vector<std::size_t> singular_edges;    // P' edges
    std::vector<std::size_t> singular_vertices; // P' vertices
    std::vector<std::size_t> branch_points;     // P''
    std::vector<std::size_t> base_points;       // F
    std::vector<SingularArc> arcs;
    std::vector<LinkShape> shapes;               // per vertex
};

namespace detail {

// Page triangle at the far side of a Theta vertex v, entering from pole `from`.
inline std::size_t transport_page(const Complex& k, const LinkGraph& lk, std::size_t from, std::size_t to,
                                  std::size_t triangle)
{
    const auto inc = lk.incidence();
    const std::size_t a = lk.local(from), b = lk.local(to);
    std::size_t edge = lk.edges.size();
    for (auto e : inc[a])
        if (lk.edges[e].triangle == triangle) edge = e;
    if (edge == lk.edges.size()) throw std::logic_error("page not found in link");
    std::size_t prev = a, cur = lk.edges[edge].a == a ? lk.edges[edge].b : lk.edges[edge].a;
    while (cur != b) {
        if (cur == a || inc[cur].size() != 2) throw std::logic_error("malformed book link");
        edge = inc[cur][0] == edge ? inc[cur][1] : inc[cur][0];
        prev = cur;
        cur = lk.edges[edge].a == prev ? lk.edges[edge].b : lk.edges[edge].a;
    }
    (void)k;
    return lk.edges[edge].triangle;
}

} // namespace detail

inline SingularStructure singular_structure(const Complex& k)
{
    SingularStructure s;
    const std::size_t n = k.vertex_count();
    std::vector<bool> in_p1(n, false), in_p2(n, false), in_f(n, false);
    std::vector<std::vector<std::size_t>> sing_at(n);
    for (std::size_t e = 0; e < k.edges().size(); ++e)
        if (k.triangles_of_edge(e).size() >= 3) {
            s.singular_edges.push_back(e);
            for (auto v : k.edges()[e]) {
                in_p1[v] = true;
                sing_at[v].push_back(e);
            }
        }
    for (std::size_t v = 0; v < n; ++v) {
        s.shapes.push_back(classify_link(link_graph(k, v)));
        const auto kind = s.shapes.back().kind;
        if (kind == LinkKind::Other) in_p1[v] = true;
        if (in_p1[v] && kind != LinkKind::Theta) in_p2[v] = in_f[v] = true;
    }

    // One base point on every component of P' that avoids P''.
    std::vector<bool> seen(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (!in_p1[v] || seen[v]) continue;
        std::vector<std::size_t> comp{v}, stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto e : sing_at[x]) {
                auto y = k.other_end(e, x);
                if (!seen[y]) {
                    seen[y] = true;
                    comp.push_back(y);
                    stack.push_back(y);
                }
            }
        }
        if (std::none_of(comp.begin(), comp.end(), [&](std::size_t x) { return in_p2[x]; }))
            in_f[*std::min_element(comp.begin(), comp.end())] = true;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (in_p1[v]) s.singular_vertices.push_back(v);
        if (in_p2[v]) s.branch_points.push_back(v);
        if (in_f[v]) s.base_points.push_back(v);
    }

    std::vector<bool> used(k.edges().size(), false);
    for (auto a : s.base_points)
        for (auto e0 : sing_at[a]) {
            if (used[e0]) continue;
            SingularArc arc;
            arc.start = a;
            arc.path = {a};
            std::size_t prev = a, e = e0;
            std::vector<std::size_t> pages = k.triangles_of_edge(e0);
            while (true) {
                used[e] = true;
                std::size_t cur = k.other_end(e, prev);
                arc.path.push_back(cur);
                arc.pages.push_back(pages);
                if (in_f[cur]) break;
                const auto& sh = s.shapes[cur];
                std::size_t next = sh.poles[0] == prev ? sh.poles[1] : sh.poles[0];
                auto lk = link_graph(k, cur);
                for (auto& t : pages) t = detail::transport_page(k, lk, prev, next, t);
                prev = cur;
                e = *k.edge_id(cur, next);
                if (k.triangles_of_edge(e).size() != pages.size())
                    throw std::logic_error("page count changes along a singular arc");
            }
            arc.end = arc.path.back();
            s.arcs.push_back(std::move(arc));
        }
    return s;
}

/// H_1 of the complex with integer coefficients, from the simplicial chain complex.
inline FGAbelianGroup first_homology(const Complex& k)
{
    const std::size_t nv = k.vertex_count(), ne = k.edges().size(), nt = k.triangles().size();
    IntMatrix d1(ne, nv), d2(nt, ne);
    for (std::size_t e = 0; e < ne; ++e) {
        d1(e, k.edges()[e][0]) = -1;
        d1(e, k.edges()[e][1]) = 1;
    }
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tr = k.triangles()[t];
        d2(t, *k.edge_id(tr[1], tr[2])) += 1;
        d2(t, *k.edge_id(tr[0], tr[2])) -= 1;
        d2(t, *k.edge_id(tr[0], tr[1])) += 1;
    }
    const std::size_t r1 = rank_over_q(d1);
    auto inv = smith_invariants(d2);
    std::size_t r2 = 0;
    std::vector<Integer> torsion;
    for (const auto& d : inv)
        if (d != 0) {
            ++r2;
            if (d != 1) torsion.push_back(d);
        }
    return FGAbelianGroup::from_cyclic(ne - r1 - r2, torsion);
}

} // namespace embed3

#endif
