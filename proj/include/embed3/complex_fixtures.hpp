#ifndef EMBED3_COMPLEX_FIXTURES_HPP
#define EMBED3_COMPLEX_FIXTURES_HPP

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polyhedron.hpp"

namespace embed3::fixtures {

/// Complex spanned by the given triangles (vertices and edges are their faces).
inline SimplicialComplex2 from_triangles(const std::vector<std::array<std::int64_t, 3>>& tris)
{
    std::set<std::int64_t> vs;
    std::set<std::array<std::int64_t, 2>> es;
    for (auto t : tris) {
        std::sort(t.begin(), t.end());
        vs.insert(t.begin(), t.end());
        es.insert({t[0], t[1]});
        es.insert({t[0], t[2]});
        es.insert({t[1], t[2]});
    }
    return {std::vector<std::int64_t>(vs.begin(), vs.end()),
            std::vector<std::array<std::int64_t, 2>>(es.begin(), es.end()), tris};
}

/// G x S^1 for a simple graph G, with each circle fibre a triangle.
inline SimplicialComplex2 graph_times_circle(const std::vector<std::array<std::int64_t, 2>>& edges)
{
    auto id = [](std::int64_t u, std::int64_t i) { return u * 3 + (i % 3); };
    std::vector<std::array<std::int64_t, 3>> tris;
    for (auto [u, v] : edges)
        for (std::int64_t i = 0; i < 3; ++i) {
            tris.push_back({id(u, i), id(u, i + 1), id(v, i + 1)});
            tris.push_back({id(u, i), id(v, i), id(v, i + 1)});
        }
    return from_triangles(tris);
}

/// Bouquet of k circles, each a triangle through vertex 0.
inline std::vector<std::array<std::int64_t, 2>> bouquet(std::size_t k)
{
    std::vector<std::array<std::int64_t, 2>> e;
    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t x = 1 + 2 * static_cast<std::int64_t>(i), y = x + 1;
        e.push_back({0, x});
        e.push_back({x, y});
        e.push_back({0, y});
    }
    return e;
}

inline std::vector<std::array<std::int64_t, 2>> complete_graph(std::size_t n)
{
    std::vector<std::array<std::int64_t, 2>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.push_back({std::int64_t(i), std::int64_t(j)});
    return e;
}

inline std::vector<std::string> complex_names()
{
    return {"annulus",  "disk",      "k33-circle", "k4-circle",        "k5-circle",   "mobius",
            "projective-plane", "solid-torus-spine", "theta-circle", "torus", "triangle", "wedge-disks",
            "xi-spine:G,H", "y-circle", "y-interval"};
}

/// Named triangulations; xi-spine:g,h is the spine (bouquet of 2g+h-1 circles) times S^1.
inline std::optional<SimplicialComplex2> complex_fixture(const std::string& name)
{
    using T = std::vector<std::array<std::int64_t, 3>>;
    if (name == "triangle") return from_triangles({{0, 1, 2}});
    if (name == "disk") return from_triangles({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 6}, {0, 6, 1}});
    if (name == "torus") {
        T t;
        for (std::int64_t i = 0; i < 7; ++i) {
            t.push_back({i, (i + 1) % 7, (i + 3) % 7});
            t.push_back({i, (i + 2) % 7, (i + 3) % 7});
        }
        return from_triangles(t);
    }
    if (name == "annulus") return from_triangles({{0, 1, 3}, {1, 3, 4}, {1, 2, 4}, {2, 4, 5}, {2, 0, 5}, {0, 5, 3}});
    if (name == "mobius" || name == "solid-torus-spine")
        return from_triangles({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}});
    if (name == "projective-plane")
        return from_triangles({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                               {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
    if (name == "y-interval") return from_triangles({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    if (name == "wedge-disks") return from_triangles({{0, 1, 2}, {0, 3, 4}});
    if (name == "y-circle") return graph_times_circle({{0, 1}, {0, 2}, {0, 3}});
    if (name == "theta-circle") return graph_times_circle({{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}});
    if (name == "k4-circle") return graph_times_circle(complete_graph(4));
    if (name == "k5-circle") return graph_times_circle(complete_graph(5));
    if (name == "k33-circle")
        return graph_times_circle({{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    if (name.rfind("xi-spine:", 0) == 0) {
        int g = -1, h = -1;
        if (std::sscanf(name.c_str() + 9, "%d,%d", &g, &h) != 2 || g < 0 || h < 1 || 2 * g + h - 1 < 1)
            return std::nullopt;
        const std::size_t k = static_cast<std::size_t>(2 * g + h - 1);
        return graph_times_circle(bouquet(k));
    }
    return std::nullopt;
}

} // namespace embed3::fixtures

#endif
