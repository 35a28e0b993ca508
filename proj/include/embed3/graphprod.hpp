#ifndef EMBED3_GRAPHPROD_HPP
#define EMBED3_GRAPHPROD_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "closure.hpp"
#include "rotation.hpp"

namespace embed3 {

/// Connected multigraph with loops; darts as in DartGraph.
using Graph = DartGraph;

/// One bit per edge: 1 = the band over that edge is twisted.
using TwistCochain = std::vector<std::uint8_t>;

inline void validate_graph(const Graph& g)
{
    if (g.vertices == 0) throw std::invalid_argument("graph has no vertices");
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e].first >= g.vertices || g.edges[e].second >= g.vertices)
            throw std::invalid_argument("edge " + std::to_string(e) + " uses an unknown vertex");
    if (!g.is_connected()) throw std::invalid_argument("graph is not connected");
}

/// Graph from an adjacency list: multi-edges by repetition, a loop listed twice at its vertex.
inline Graph graph_from_adjacency(const std::vector<std::vector<std::size_t>>& adj)
{
    Graph g;
    g.vertices = adj.size();
    for (std::size_t u = 0; u < adj.size(); ++u) {
        std::vector<std::size_t> count(adj.size(), 0);
        for (auto v : adj[u]) {
            if (v >= adj.size()) throw std::invalid_argument("adjacency of vertex " + std::to_string(u) + " names unknown vertex " + std::to_string(v));
            ++count[v];
        }
        if (count[u] % 2 != 0) throw std::invalid_argument("loop at vertex " + std::to_string(u) + " must be listed twice");
        for (std::size_t k = 0; k < count[u] / 2; ++k) g.edges.emplace_back(u, u);
        for (std::size_t v = u + 1; v < adj.size(); ++v) {
            const auto back = static_cast<std::size_t>(std::count(adj[v].begin(), adj[v].end(), u));
            if (back != count[v])
                throw std::invalid_argument("adjacency is not symmetric between vertices " + std::to_string(u) + " and " + std::to_string(v));
            for (std::size_t k = 0; k < count[v]; ++k) g.edges.emplace_back(u, v);
        }
    }
    validate_graph(g);
    return g;
}

inline void validate_rotation(const Graph& g, const Rotation& r)
{
    if (r.size() != g.vertices) throw std::invalid_argument("rotation needs one cyclic order per vertex");
    std::vector<int> seen(g.darts(), 0);
    for (std::size_t v = 0; v < r.size(); ++v)
        for (auto d : r[v]) {
            if (d >= g.darts() || g.tail(d) != v)
                throw std::invalid_argument("rotation at vertex " + std::to_string(v) + " lists a dart not leaving it");
            if (seen[d]++) throw std::invalid_argument("dart " + std::to_string(d) + " appears twice in the rotation");
        }
    for (std::size_t d = 0; d < g.darts(); ++d)
        if (!seen[d]) throw std::invalid_argument("dart " + std::to_string(d) + " missing from the rotation");
}

/// Number of faces of the orientable embedding given by `rot`.
inline std::size_t trace_faces(const Graph& g, const Rotation& rot)
{
    validate_graph(g);
    validate_rotation(g, rot);
    return count_faces(g, rot);
}

struct GenusResult
{
    std::size_t genus = 0;
    std::size_t faces = 0;
    Rotation rotation;  // a minimal-genus rotation system
};

/// Orientable genus: min over rotation systems of (2 - V + E - F) / 2.
inline GenusResult graph_genus(const Graph& g, std::uint64_t cap = search_cap())
{
    validate_graph(g);
    auto [faces, rot] = max_faces(g, cap);
    const auto excess = static_cast<std::int64_t>(2 + g.edges.size()) - static_cast<std::int64_t>(g.vertices + faces);
    if (excess < 0 || excess % 2 != 0) throw std::logic_error("Euler characteristic inconsistent with face count");
    return {static_cast<std::size_t>(excess / 2), faces, canonical_rotation(rot)};
}

/// Deterministic DFS spanning tree: is_tree[e], with parent darts.
struct SpanningTree
{
    std::vector<bool> is_tree;
    std::vector<std::size_t> parent_dart;  // dart from parent to v; none at the root
    std::vector<std::size_t> order;        // DFS preorder
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    std::vector<std::size_t> non_tree_edges() const
    {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < is_tree.size(); ++e)
            if (!is_tree[e]) out.push_back(e);
        return out;
    }
};

inline SpanningTree dfs_tree(const Graph& g)
{
    SpanningTree t;
    t.is_tree.assign(g.edges.size(), false);
    t.parent_dart.assign(g.vertices, SpanningTree::none);
    const auto out = g.out_darts();
    std::vector<bool> seen(g.vertices, false);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};  // vertex, next out-dart index
    seen[0] = true;
    t.order.push_back(0);
    while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i == out[v].size()) {
            stack.pop_back();
            continue;
        }
        const std::size_t d = out[v][i++];
        const std::size_t w = g.head(d);
        if (seen[w]) continue;
        seen[w] = true;
        t.is_tree[d / 2] = true;
        t.parent_dart[w] = d;
        t.order.push_back(w);
        stack.emplace_back(w, 0);
    }
    return t;
}

/// Fundamental cycle of each non-tree edge, as darts in walking order.
inline std::vector<std::vector<std::size_t>> fundamental_cycles(const Graph& g, const SpanningTree& t)
{
    auto path_to_root = [&](std::size_t v) {
        std::vector<std::size_t> up;  // darts from v towards the root
        while (t.parent_dart[v] != SpanningTree::none) {
            up.push_back(t.parent_dart[v] ^ 1);
            v = g.tail(t.parent_dart[v]);
        }
        return up;
    };
    std::vector<std::vector<std::size_t>> out;
    for (auto e : t.non_tree_edges()) {
        // edge u -> v, then v back to u through the tree
        const std::size_t d = 2 * e, u = g.tail(d), v = g.head(d);
        auto pv = path_to_root(v), pu = path_to_root(u);
        while (!pv.empty() && !pu.empty() && pv.back() == pu.back()) {
            pv.pop_back();
            pu.pop_back();
        }
        std::vector<std::size_t> cyc{d};
        cyc.insert(cyc.end(), pv.begin(), pv.end());
        for (auto it = pu.rbegin(); it != pu.rend(); ++it) cyc.push_back(*it ^ 1);
        out.push_back(cyc);
    }
    return out;
}

/// Sum of twists along a closed walk, mod 2: the w_1 pairing.
inline int twist_pairing(const TwistCochain& tw, const std::vector<std::size_t>& walk)
{
    int s = 0;
    for (auto d : walk) s ^= tw[d / 2] & 1;
    return s;
}

/// The disks-and-bands surface K around a graph.
struct SurfaceDescriptor
{
    Graph graph;
    Rotation rotation;  // after untwisting when K is orientable
    TwistCochain twists;
    bool orientable = true;
    std::size_t genus = 0;  // orientable genus, or number of crosscaps
    std::int64_t euler_characteristic = 0;
    std::vector<std::vector<std::size_t>> boundary;  // darts along each boundary curve

    std::size_t boundary_components() const { return boundary.size(); }
};

namespace detail {

struct TraceState
{
    std::size_t dart;
    int side;  // +1 or -1
    friend bool operator==(const TraceState&, const TraceState&) = default;
};

} // namespace detail

/**
 * One disk per vertex, one band per edge attached in the cyclic order of `rot`,
 * twisted where `twists` is 1. Orientable iff every fundamental cycle has even
 * twist; in that case the rotation is flipped at odd-potential vertices so the
 * boundary curves are traced with a consistent orientation.
 */
inline SurfaceDescriptor build_surface(const Graph& g, const Rotation& rot, TwistCochain twists)
{
    validate_graph(g);
    validate_rotation(g, rot);
    if (twists.empty()) twists.assign(g.edges.size(), 0);
    if (twists.size() != g.edges.size()) throw std::invalid_argument("twist cochain needs one bit per edge");
    for (auto& x : twists) x &= 1;

    SurfaceDescriptor k;
    k.graph = g;
    const auto tree = dfs_tree(g);
    std::vector<int> pot(g.vertices, 0);
    for (auto v : tree.order)
        if (tree.parent_dart[v] != SpanningTree::none) {
            const auto d = tree.parent_dart[v];
            pot[v] = pot[g.tail(d)] ^ twists[d / 2];
        }
    k.orientable = true;
    for (auto e : tree.non_tree_edges())
        if ((pot[g.edges[e].first] ^ pot[g.edges[e].second] ^ twists[e]) != 0) k.orientable = false;

    k.rotation = rot;
    k.twists = twists;
    if (k.orientable) {
        for (std::size_t v = 0; v < g.vertices; ++v)
            if (pot[v] && k.rotation[v].size() > 1) std::reverse(k.rotation[v].begin() + 1, k.rotation[v].end());
        std::fill(k.twists.begin(), k.twists.end(), 0);
    }

    std::vector<std::size_t> succ(g.darts()), pred(g.darts());
    for (const auto& cyc : k.rotation)
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            succ[cyc[i]] = cyc[(i + 1) % cyc.size()];
            pred[cyc[(i + 1) % cyc.size()]] = cyc[i];
        }
    auto step = [&](detail::TraceState s) {
        const int side = k.twists[s.dart / 2] ? -s.side : s.side;
        const std::size_t back = s.dart ^ 1;
        return detail::TraceState{side > 0 ? succ[back] : pred[back], side};
    };
    auto index = [](const detail::TraceState& s) { return 2 * s.dart + (s.side > 0 ? 0 : 1); };
    std::vector<bool> seen(2 * g.darts(), false);
    auto trace = [&](detail::TraceState start, bool record) {
        std::vector<std::size_t> walk;
        detail::TraceState s = start;
        do {
            seen[index(s)] = true;
            if (record) walk.push_back(s.dart);
            s = step(s);
        } while (!(s == start));
        return walk;
    };
    for (int side : {1, -1})
        for (std::size_t d = 0; d < g.darts(); ++d) {
            detail::TraceState s{d, side};
            if (seen[index(s)]) continue;
            auto walk = trace(s, true);
            // the same curve run backwards
            const int back_side = k.twists[d / 2] ? side : -side;
            detail::TraceState r{d ^ 1, back_side};
            if (!seen[index(r)]) trace(r, false);
            k.boundary.push_back(std::move(walk));
        }
    if (g.darts() == 0) k.boundary.emplace_back();  // a single disk
    k.euler_characteristic = static_cast<std::int64_t>(g.vertices) - static_cast<std::int64_t>(g.edges.size());
    const std::int64_t twice = 2 - k.euler_characteristic - static_cast<std::int64_t>(k.boundary.size());
    if (twice < 0 || (k.orientable && twice % 2 != 0)) throw std::logic_error("band surface has inconsistent Euler data");
    k.genus = static_cast<std::size_t>(k.orientable ? twice / 2 : twice);
    return k;
}

/**
 * K x S^1: generators are the non-tree edges of L (a basis of H_1(K)) and the
 * fibre t; boundary torus j has a_j = boundary curve j and b_j = t.
 */
inline ManifoldPresentation product_presentation(const SurfaceDescriptor& k)
{
    if (k.boundary.empty()) throw std::invalid_argument("K is closed; the product has no boundary");
    const auto tree = dfs_tree(k.graph);
    const auto cotree = tree.non_tree_edges();
    std::vector<std::size_t> slot(k.graph.edges.size(), SpanningTree::none);
    for (std::size_t i = 0; i < cotree.size(); ++i) slot[cotree[i]] = i;

    ManifoldPresentation m;
    m.generators = cotree.size() + 1;
    m.relations = IntMatrix(0, m.generators);
    m.boundary_genera.assign(k.boundary.size(), 1);
    m.inclusion = IntMatrix(m.generators, 2 * k.boundary.size());
    for (std::size_t j = 0; j < k.boundary.size(); ++j) {
        for (auto d : k.boundary[j])
            if (slot[d / 2] != SpanningTree::none) m.inclusion(slot[d / 2], 2 * j) += d % 2 == 0 ? 1 : -1;
        m.inclusion(cotree.size(), 2 * j + 1) = 1;
    }
    m.orientable = k.orientable;
    for (auto e : cotree) m.generator_names.push_back("e" + std::to_string(e));
    m.generator_names.push_back("t");
    return m;
}

struct ClosedDimResult
{
    std::size_t dim = 0;
    std::size_t genus = 0;
    std::optional<SurfaceDescriptor> surface;  // absent for graphs homeomorphic to S^1, I or a point
};

/// Minimal dim H_1(Q; F) over closed orientable Q containing L x S^1, with the product-side cross-check.
inline ClosedDimResult min_closed_h1_dim(const Graph& g, const CoefficientRing& f, std::uint64_t cap = search_cap())
{
    if (!f.is_field()) throw std::invalid_argument("min_closed_h1_dim needs a field");
    validate_graph(g);
    const auto out = g.out_darts();
    const bool branched = std::any_of(out.begin(), out.end(), [](const auto& d) { return d.size() >= 3; });
    if (!branched) return {0, 0, std::nullopt};
    auto gen = graph_genus(g, cap);
    auto k = build_surface(g, gen.rotation, {});
    const auto bound = lower_bound_field(product_presentation(k), f);
    if (bound != static_cast<std::int64_t>(2 * gen.genus))
        throw std::logic_error("product lower bound " + std::to_string(bound) + " differs from twice the genus");
    return {2 * gen.genus, gen.genus, std::move(k)};
}

// ------------------------------------------------------------------------
// Named graphs
// ------------------------------------------------------------------------

namespace fixtures {

inline Graph complete_graph_k(std::size_t n)
{
    Graph g;
    g.vertices = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    return g;
}

inline Graph k33()
{
    Graph g;
    g.vertices = 6;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 3; j < 6; ++j) g.edges.emplace_back(i, j);
    return g;
}

inline Graph petersen()
{
    Graph g;
    g.vertices = 10;
    for (std::size_t i = 0; i < 5; ++i) {
        g.edges.emplace_back(i, (i + 1) % 5);
        g.edges.emplace_back(i, i + 5);
        g.edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

/// k loops at one vertex.
inline Graph bouquet_graph(std::size_t k)
{
    Graph g;
    g.vertices = 1;
    for (std::size_t i = 0; i < k; ++i) g.edges.emplace_back(0, 0);
    return g;
}

inline std::vector<std::string> graph_names() { return {"k33", "k4", "k5", "petersen"}; }

inline std::optional<Graph> graph_fixture(const std::string& name)
{
    if (name == "k4") return complete_graph_k(4);
    if (name == "k5") return complete_graph_k(5);
    if (name == "k33") return k33();
    if (name == "petersen") return petersen();
    return std::nullopt;
}

/// Rotation x1+ y1+ x1- y1- ... z1+ z1- ... on a bouquet of 2g + h - 1 loops (loop i: darts 2i, 2i+1).
inline Rotation surface_rotation(std::size_t g, std::size_t h)
{
    Rotation r(1);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t d : {4 * i, 4 * i + 2, 4 * i + 1, 4 * i + 3}) r[0].push_back(d);
    for (std::size_t j = 0; j + 1 < h; ++j) {
        r[0].push_back(2 * (2 * g + j));
        r[0].push_back(2 * (2 * g + j) + 1);
    }
    return r;
}

/// Rotation c1+ c1- ... z+ z- with twisted c-loops: a surface with k crosscaps and h holes.
inline std::pair<Rotation, TwistCochain> crosscap_rotation(std::size_t k, std::size_t h)
{
    Rotation r(1);
    TwistCochain tw;
    for (std::size_t i = 0; i < k + h - 1; ++i) {
        r[0].push_back(2 * i);
        r[0].push_back(2 * i + 1);
        tw.push_back(i < k ? 1 : 0);
    }
    return {r, tw};
}

} // namespace fixtures

} // namespace embed3

#endif
