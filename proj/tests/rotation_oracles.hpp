// Exhaustive rotation-system references for graph genus and thickening enumeration.
#ifndef EMBED3_TESTS_ROTATION_ORACLES_HPP
#define EMBED3_TESTS_ROTATION_ORACLES_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "embed3/graphprod.hpp"
#include "embed3/thickening.hpp"

namespace oracle {

using namespace embed3;

// --- graphs: every rotation system, faces by direct tracing ---

inline std::vector<Rotation> every_rotation(const Graph& g)
{
    std::vector<Rotation> out{{}};
    for (const auto& darts : g.out_darts()) {
        std::vector<std::vector<std::size_t>> cycles;
        auto rest = darts;
        if (rest.size() <= 2) cycles.push_back(rest);
        else
            do cycles.push_back(rest);
            while (std::next_permutation(rest.begin() + 1, rest.end()));
        std::vector<Rotation> next;
        for (const auto& partial : out)
            for (const auto& c : cycles) {
                auto p = partial;
                p.push_back(c);
                next.push_back(p);
            }
        out = std::move(next);
    }
    return out;
}

inline std::size_t oracle_faces(const Graph& g, const Rotation& r)
{
    std::vector<std::size_t> next(g.darts());
    for (const auto& c : r)
        for (std::size_t i = 0; i < c.size(); ++i) next[c[i]] = c[(i + 1) % c.size()];
    std::vector<bool> mark(g.darts(), false);
    std::size_t faces = 0;
    for (std::size_t d = 0; d < g.darts(); ++d) {
        if (mark[d]) continue;
        ++faces;
        std::size_t x = d;
        do {
            mark[x] = true;
            x = next[x % 2 ? x - 1 : x + 1];
        } while (x != d);
    }
    return faces;
}

inline std::size_t oracle_genus(const Graph& g)
{
    std::size_t best = 0;
    for (const auto& r : every_rotation(g)) best = std::max(best, oracle_faces(g, r));
    return (2 + g.edges.size() - g.vertices - best) / 2;
}

// --- independent oracle: every rotation system, Euler-formula planarity ---

inline std::size_t oracle_faces(const LinkGraph& g, const std::vector<std::vector<std::size_t>>& rot)
{
    // dart (edge i, from a) = 2i, (edge i, from b) = 2i+1
    const std::size_t nd = 2 * g.edges.size();
    std::vector<std::size_t> next_at(nd);
    for (const auto& cyc : rot)
        for (std::size_t i = 0; i < cyc.size(); ++i) next_at[cyc[i]] = cyc[(i + 1) % cyc.size()];
    std::vector<int> mark(nd, 0);
    std::size_t faces = 0;
    for (std::size_t d = 0; d < nd; ++d) {
        if (mark[d]) continue;
        ++faces;
        std::size_t x = d;
        do {
            mark[x] = 1;
            std::size_t twin = x % 2 ? x - 1 : x + 1;
            x = next_at[twin];
        } while (x != d);
    }
    return faces;
}

inline std::vector<std::vector<std::vector<std::size_t>>> all_rotations(const LinkGraph& g)
{
    std::vector<std::vector<std::size_t>> at(g.vertices.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        at[g.edges[i].a].push_back(2 * i);
        at[g.edges[i].b].push_back(2 * i + 1);
    }
    std::vector<std::vector<std::vector<std::size_t>>> out{{}};
    for (const auto& darts : at) {
        std::vector<std::vector<std::size_t>> cycles;
        auto rest = darts;
        if (rest.size() <= 2) cycles.push_back(rest);
        else
            do cycles.push_back(rest);
            while (std::next_permutation(rest.begin() + 1, rest.end()));
        std::vector<std::vector<std::vector<std::size_t>>> next;
        for (const auto& partial : out)
            for (const auto& c : cycles) {
                auto p = partial;
                p.push_back(c);
                next.push_back(p);
            }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::vector<std::vector<std::size_t>>> oracle_planar(const LinkGraph& g)
{
    std::vector<std::vector<std::vector<std::size_t>>> out;
    for (const auto& r : all_rotations(g))
        if (g.vertices.size() + oracle_faces(g, r) == g.edges.size() + 2) out.push_back(r);
    return out;
}

inline std::vector<std::size_t> pages_around(const LinkGraph& g, const std::vector<std::vector<std::size_t>>& rot, std::size_t x)
{
    std::vector<std::size_t> out;
    for (auto d : rot[g.local(x)]) out.push_back(g.edges[d / 2].triangle);
    return out;
}

inline bool rotations_equal_as_cycles(std::vector<std::size_t> a, std::vector<std::size_t> b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t s = 0; s < b.size(); ++s) {
        if (a == b) return true;
        std::rotate(b.begin(), b.begin() + 1, b.end());
    }
    return false;
}

// Count of assignments over all base points that are planar and reverse-matched along every arc.
inline std::size_t oracle_se_count(const ThickeningContext& ctx)
{
    const auto& f = ctx.singular.base_points;
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> options;
    for (auto a : f) options.push_back(oracle_planar(ctx.links.at(a)));
    std::size_t total = 0;
    std::vector<std::size_t> pick(f.size(), 0);
    auto idx = [&](std::size_t v) { return static_cast<std::size_t>(std::find(f.begin(), f.end(), v) - f.begin()); };
    while (true) {
        bool ok = true;
        for (const auto& arc : ctx.singular.arcs) {
            const auto& rs = options[idx(arc.start)][pick[idx(arc.start)]];
            const auto& re = options[idx(arc.end)][pick[idx(arc.end)]];
            auto start = pages_around(ctx.links.at(arc.start), rs, arc.path[1]);
            auto end = pages_around(ctx.links.at(arc.end), re, arc.path[arc.path.size() - 2]);
            std::vector<std::size_t> carried;
            for (auto t : start) {
                std::size_t j = 0;
                while (arc.pages.front()[j] != t) ++j;
                carried.push_back(arc.pages.back()[j]);
            }
            std::reverse(carried.begin(), carried.end());
            if (!rotations_equal_as_cycles(end, carried)) ok = false;
        }
        if (ok) ++total;
        std::size_t i = 0;
        while (i < f.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == f.size()) break;
    }
    return total;
}

} // namespace oracle

#endif
