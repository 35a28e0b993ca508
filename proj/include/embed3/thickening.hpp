#ifndef EMBED3_THICKENING_HPP
#define EMBED3_THICKENING_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "polyhedron.hpp"
#include "rejection.hpp"
#include "rotation.hpp"

namespace embed3 {

/// Link edge i becomes dart pair (2i, 2i+1) on the link's local vertices.
inline DartGraph dart_graph(const LinkGraph& lk)
{
    DartGraph g;
    g.vertices = lk.vertices.size();
    for (const auto& e : lk.edges) g.edges.emplace_back(e.a, e.b);
    return g;
}

/// A genus-0 rotation system of the link of `center`.
struct RotationEmbedding
{
    std::size_t center = 0;
    Rotation rotation;

    friend bool operator==(const RotationEmbedding&, const RotationEmbedding&) = default;
    friend auto operator<=>(const RotationEmbedding&, const RotationEmbedding&) = default;
};

inline std::vector<RotationEmbedding> planar_rotations(const LinkGraph& lk, std::uint64_t cap = search_cap())
{
    std::vector<RotationEmbedding> out;
    for (auto& r : planar_rotation_systems(dart_graph(lk), cap)) out.push_back({lk.center, std::move(r)});
    return out;
}

/// Cyclic order of pages (triangle ids) around the edge center -> x, read off the rotation at x.
inline std::vector<std::size_t> page_cycle(const LinkGraph& lk, const RotationEmbedding& emb, std::size_t x)
{
    std::vector<std::size_t> out;
    for (auto d : emb.rotation[lk.local(x)]) out.push_back(lk.edges[d / 2].triangle);
    return out;
}

inline bool same_cycle(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    auto it = std::find(b.begin(), b.end(), a[0]);
    if (it == b.end()) return false;
    const std::size_t off = static_cast<std::size_t>(it - b.begin());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[(off + i) % b.size()]) return false;
    return true;
}

/// One planar embedding per base point, in base-point order.
struct FaithfulCollection
{
    std::vector<RotationEmbedding> embeddings;

    friend bool operator==(const FaithfulCollection&, const FaithfulCollection&) = default;
    friend auto operator<=>(const FaithfulCollection&, const FaithfulCollection&) = default;
};

/// Everything the thickening pipeline derives from the input complex once.
struct ThickeningContext
{
    CheckedComplex complex;
    SingularStructure singular;
    std::map<std::size_t, LinkGraph> links;  // per base point
};

inline ThickeningContext prepare_thickening(CheckedComplex c)
{
    if (!c.wedge_vertices.empty())
        throw Rejection("disconnected link", "vertex with disconnected link in the subdivided complex");
    ThickeningContext ctx{std::move(c), {}, {}};
    ctx.singular = singular_structure(ctx.complex.subdivided);
    for (auto a : ctx.singular.base_points) ctx.links.emplace(a, link_graph(ctx.complex.subdivided, a));
    return ctx;
}

/// Order of the arc's start pages carried to its last edge.
inline std::vector<std::size_t> transported(const SingularArc& arc, const std::vector<std::size_t>& start_cycle)
{
    std::vector<std::size_t> out;
    for (auto t : start_cycle) {
        auto j = static_cast<std::size_t>(std::find(arc.pages.front().begin(), arc.pages.front().end(), t) -
                                          arc.pages.front().begin());
        out.push_back(arc.pages.back()[j]);
    }
    return out;
}

/// Orientably faithful along the arc: the end order is the reverse of the transported start order.
inline bool arc_faithful(const ThickeningContext& ctx, const SingularArc& arc, const RotationEmbedding& at_start,
                         const RotationEmbedding& at_end)
{
    auto start = page_cycle(ctx.links.at(arc.start), at_start, arc.path[1]);
    auto end = page_cycle(ctx.links.at(arc.end), at_end, arc.path[arc.path.size() - 2]);
    auto carried = transported(arc, start);
    std::reverse(carried.begin(), carried.end());
    return same_cycle(end, carried);
}

struct SeResult
{
    std::vector<FaithfulCollection> collections;
    std::string reason;  // set when collections is empty
};

/// All orientably faithful collections, sorted by canonical rotation data.
inline SeResult enumerate_se(const ThickeningContext& ctx, std::uint64_t cap = search_cap())
{
    SeResult res;
    const auto& f = ctx.singular.base_points;
    if (f.empty()) {
        res.collections.push_back({});
        return res;
    }
    std::map<std::size_t, std::size_t> index;
    for (std::size_t i = 0; i < f.size(); ++i) index[f[i]] = i;
    std::vector<std::vector<RotationEmbedding>> options;
    for (auto a : f) {
        options.push_back(planar_rotations(ctx.links.at(a), cap));
        if (options.back().empty()) {
            res.reason = "no 3-thickening exists";
            return res;
        }
    }
    // arcs checked once both ends are chosen
    std::vector<std::vector<const SingularArc*>> due(f.size());
    for (const auto& arc : ctx.singular.arcs) due[std::max(index[arc.start], index[arc.end])].push_back(&arc);

    std::vector<std::size_t> pick(f.size());
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == f.size()) {
            FaithfulCollection c;
            for (std::size_t k = 0; k < f.size(); ++k) c.embeddings.push_back(options[k][pick[k]]);
            res.collections.push_back(std::move(c));
            return;
        }
        for (std::size_t o = 0; o < options[i].size(); ++o) {
            if (++nodes > cap) throw Rejection("search cap exceeded", "too many rotation assignments");
            pick[i] = o;
            bool ok = true;
            for (const auto* arc : due[i]) {
                const auto& s = options[index[arc->start]][pick[index[arc->start]]];
                const auto& e = options[index[arc->end]][pick[index[arc->end]]];
                if (!arc_faithful(ctx, *arc, s, e)) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, i + 1);
        }
    };
    rec(rec, 0);
    std::sort(res.collections.begin(), res.collections.end());
    if (res.collections.empty()) res.reason = "no orientably faithful collection";
    return res;
}

// ------------------------------------------------------------------------
// Boundary surface
// ------------------------------------------------------------------------

struct BoundarySurface
{
    std::size_t components = 0;
    std::vector<std::size_t> genera;  // ascending
    bool orientable = true;
    std::int64_t euler_characteristic = 0;
};

namespace detail {

struct UnionFind
{
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

// +1 if (x, y, z) is an even permutation of the sorted triangle, else -1.
inline int orientation(const Triangle& t, std::size_t x, std::size_t y)
{
    std::size_t ix = 0, iy = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (t[i] == x) ix = i;
        if (t[i] == y) iy = i;
    }
    return (iy + 3 - ix) % 3 == 1 ? 1 : -1;
}

} // namespace detail

/**
 * Boundary of the thickening as a cell complex. Each triangle t has two plates
 * (t, +1) and (t, -1), + being the side its sorted orientation points to. Around
 * an edge x -> y with cyclic page order t_0, t_1, ..., the plate of t_i facing
 * t_{i+1} is glued to the plate of t_{i+1} facing back. A free edge glues the two
 * plates of its triangle (the strip collapsed). Plate corners glued across edges
 * give the surface vertices.
 */
inline BoundarySurface boundary_surface(const ThickeningContext& ctx, const FaithfulCollection& col)
{
    const Complex& k = ctx.complex.subdivided;
    const std::size_t nt = k.triangles().size();
    auto plate = [](std::size_t t, int s) { return 2 * t + (s > 0 ? 0 : 1); };
    auto corner = [&](std::size_t t, int s, std::size_t v) {
        const auto& tr = k.triangles()[t];
        std::size_t i = tr[0] == v ? 0 : tr[1] == v ? 1 : 2;
        return 3 * plate(t, s) + i;
    };

    // page order around each edge, with the direction it is read in
    std::vector<std::vector<std::size_t>> order(k.edges().size());
    std::vector<std::size_t> from(k.edges().size());
    for (std::size_t e = 0; e < k.edges().size(); ++e) {
        order[e] = k.triangles_of_edge(e);
        from[e] = k.edges()[e][0];
    }
    std::map<std::size_t, const RotationEmbedding*> emb;
    for (const auto& r : col.embeddings) emb[r.center] = &r;
    for (const auto& arc : ctx.singular.arcs) {
        auto it = emb.find(arc.start);
        if (it == emb.end()) throw std::logic_error("collection misses base point " + std::to_string(arc.start));
        auto start = page_cycle(ctx.links.at(arc.start), *it->second, arc.path[1]);
        for (std::size_t i = 0; i + 1 < arc.path.size(); ++i) {
            std::size_t e = *k.edge_id(arc.path[i], arc.path[i + 1]);
            order[e].clear();
            for (auto t : start) {
                auto j = static_cast<std::size_t>(std::find(arc.pages[0].begin(), arc.pages[0].end(), t) - arc.pages[0].begin());
                order[e].push_back(arc.pages[i][j]);
            }
            from[e] = arc.path[i];
        }
    }

    detail::UnionFind corners(6 * nt), plates(2 * nt);
    struct Glue { std::size_t a, b, x, y; };  // plates a, b share edge x -> y
    std::vector<Glue> glues;
    for (std::size_t e = 0; e < k.edges().size(); ++e) {
        const std::size_t x = from[e], y = k.other_end(e, x);
        const auto& ts = order[e];
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const std::size_t t = ts[i], u = ts[(i + 1) % ts.size()];
            const int st = detail::orientation(k.triangles()[t], x, y);
            const int su = -detail::orientation(k.triangles()[u], x, y);
            for (auto v : {x, y}) corners.unite(corner(t, st, v), corner(u, su, v));
            plates.unite(plate(t, st), plate(u, su));
            glues.push_back({plate(t, st), plate(u, su), x, y});
        }
    }

    // orientation propagation: sigma(plate) relative to its triangle's sorted orientation
    auto edge_sign = [&](std::size_t p, std::size_t x, std::size_t y) {
        int s = p % 2 == 0 ? 1 : -1;
        return s * detail::orientation(k.triangles()[p / 2], x, y);
    };
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(2 * nt);
    for (const auto& g : glues) {
        // induced directions must be opposite: sigma_a * da = -sigma_b * db
        int rel = -edge_sign(g.a, g.x, g.y) * edge_sign(g.b, g.x, g.y);
        adj[g.a].push_back({g.b, rel});
        adj[g.b].push_back({g.a, rel});
    }
    BoundarySurface out;
    std::vector<int> sigma(2 * nt, 0);
    for (std::size_t p = 0; p < 2 * nt; ++p) {
        if (sigma[p]) continue;
        sigma[p] = 1;
        std::vector<std::size_t> stack{p};
        while (!stack.empty()) {
            auto q = stack.back();
            stack.pop_back();
            for (auto [r, rel] : adj[q]) {
                if (!sigma[r]) {
                    sigma[r] = sigma[q] * rel;
                    stack.push_back(r);
                } else if (sigma[r] != sigma[q] * rel) {
                    out.orientable = false;
                }
            }
        }
    }

    // per-component Euler characteristic: V - 3F/2 + F
    std::map<std::size_t, std::int64_t> faces, verts;
    std::map<std::size_t, bool> counted;
    for (std::size_t p = 0; p < 2 * nt; ++p) faces[plates.find(p)] += 1;
    for (std::size_t c = 0; c < 6 * nt; ++c) {
        auto root = corners.find(c);
        if (counted[root]) continue;
        counted[root] = true;
        verts[plates.find(c / 3)] += 1;
    }
    for (const auto& [comp, nf] : faces) {
        const std::int64_t chi = verts[comp] - nf / 2;
        out.euler_characteristic += chi;
        if (chi > 2 || chi % 2 != 0) throw std::logic_error("boundary assembly produced a non-closed surface");
        out.genera.push_back(static_cast<std::size_t>((2 - chi) / 2));
    }
    out.components = faces.size();
    std::sort(out.genera.begin(), out.genera.end());

    // corner classes at a base point must be the faces of its link embedding
    for (const auto& r : col.embeddings) {
        std::set<std::size_t> classes;
        for (auto t : k.triangles_of_vertex(r.center))
            for (int s : {1, -1}) classes.insert(corners.find(corner(t, s, r.center)));
        if (classes.size() != count_faces(dart_graph(ctx.links.at(r.center)), r.rotation))
            throw std::logic_error("boundary assembly disagrees with the link embedding at vertex " +
                                   std::to_string(r.center));
    }
    if (out.euler_characteristic != 2 * euler_characteristic(ctx.complex.original))
        throw std::logic_error("boundary Euler characteristic differs from 2 chi(P)");
    return out;
}

// ------------------------------------------------------------------------
// Descriptors
// ------------------------------------------------------------------------

struct ThickeningDescriptor
{
    FaithfulCollection se_class;
    FGAbelianGroup h1;
    BoundarySurface boundary;
};

struct ThickenResult
{
    std::vector<ThickeningDescriptor> descriptors;
    std::string reason;
};

inline ThickenResult thicken_all(const ThickeningContext& ctx, std::uint64_t cap = search_cap())
{
    ThickenResult out;
    auto se = enumerate_se(ctx, cap);
    out.reason = se.reason;
    const FGAbelianGroup h1 = first_homology(ctx.complex.original);
    for (auto& c : se.collections) {
        auto b = boundary_surface(ctx, c);
        out.descriptors.push_back({std::move(c), h1, std::move(b)});
    }
    return out;
}

} // namespace embed3

#endif
