#ifndef EMBED3_ROTATION_HPP
#define EMBED3_ROTATION_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "rejection.hpp"

namespace embed3 {

/// Multigraph with loops. Edge e has darts 2e (first -> second) and 2e+1 (reverse).
struct DartGraph
{
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t darts() const { return 2 * edges.size(); }
    std::size_t tail(std::size_t d) const { return d % 2 == 0 ? edges[d / 2].first : edges[d / 2].second; }
    std::size_t head(std::size_t d) const { return tail(d ^ 1); }

    /// Darts leaving each vertex, ascending.
    std::vector<std::vector<std::size_t>> out_darts() const
    {
        std::vector<std::vector<std::size_t>> out(vertices);
        for (std::size_t d = 0; d < darts(); ++d) out[tail(d)].push_back(d);
        return out;
    }

    bool is_connected() const
    {
        if (vertices == 0) return true;
        std::vector<std::vector<std::size_t>> adj(vertices);
        for (const auto& [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<bool> seen(vertices, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == vertices;
    }
};

/// Cyclic order of outgoing darts at each vertex, each starting at its smallest dart.
using Rotation = std::vector<std::vector<std::size_t>>;

inline Rotation canonical_rotation(Rotation r)
{
    for (auto& cyc : r)
        if (!cyc.empty()) std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    return r;
}

/// Faces of the orientable embedding: orbits of d -> successor of reverse(d) at its tail.
inline std::size_t count_faces(const DartGraph& g, const Rotation& r)
{
    std::vector<std::size_t> succ(g.darts());
    for (const auto& cyc : r)
        for (std::size_t i = 0; i < cyc.size(); ++i) succ[cyc[i]] = cyc[(i + 1) % cyc.size()];
    std::vector<bool> seen(g.darts(), false);
    std::size_t faces = 0;
    for (std::size_t d = 0; d < g.darts(); ++d) {
        if (seen[d]) continue;
        ++faces;
        for (std::size_t x = d; !seen[x]; x = succ[x ^ 1]) seen[x] = true;
    }
    return faces;
}

/// EMBED3_SEARCH_CAP if set, else the given default.
inline std::uint64_t search_cap(std::uint64_t fallback = 10'000'000)
{
    if (const char* s = std::getenv("EMBED3_SEARCH_CAP")) {
        char* end = nullptr;
        auto v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

/**
 * Depth-first search over rotation systems, fixing one rotation successor at a
 * time. Faces closed by fixed successors are counted as they appear, and each
 * unfixed successor can close at most one more face, so branches that cannot
 * reach `need` faces are cut. `visit(rotation, faces)` returns the new `need`.
 */
class RotationSearch
{
public:
    RotationSearch(const DartGraph& g, std::uint64_t cap) : g_(g), cap_(cap), out_(g.out_darts())
    {
        const std::size_t n = g.darts();
        sigma_.assign(n, none);
        phi_.assign(n, none);
        unknown_ = n;
        for (std::size_t v = 0; v < g.vertices; ++v) {
            const auto& d = out_[v];
            if (d.size() == 1) fix(d[0], d[0]);
            else if (d.size() == 2) {
                fix(d[0], d[1]);
                fix(d[1], d[0]);
            } else if (d.size() >= 3) free_vertices_.push_back(v);
        }
    }

    template <class Visit>
    void run(std::size_t need, Visit&& visit)
    {
        need_ = need;
        vertex(0, visit);
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    // sigma(x) = y, i.e. phi(reverse x) = y; returns whether a face closed.
    bool fix(std::size_t x, std::size_t y)
    {
        sigma_[x] = y;
        phi_[x ^ 1] = y;
        --unknown_;
        std::size_t z = y;
        while (phi_[z] != none && z != (x ^ 1)) z = phi_[z];
        bool closed = z == (x ^ 1);
        if (closed) ++closed_;
        return closed;
    }

    void unfix(std::size_t x, bool closed)
    {
        sigma_[x] = none;
        phi_[x ^ 1] = none;
        ++unknown_;
        if (closed) --closed_;
    }

    bool hopeless() const { return closed_ + unknown_ < need_; }

    template <class Visit>
    void vertex(std::size_t i, Visit& visit)
    {
        if (i == free_vertices_.size()) {
            Rotation r(g_.vertices);
            for (std::size_t v = 0; v < g_.vertices; ++v) {
                if (out_[v].empty()) continue;
                std::size_t d = out_[v][0];
                do {
                    r[v].push_back(d);
                    d = sigma_[d];
                } while (d != out_[v][0]);
            }
            need_ = visit(static_cast<const Rotation&>(r), closed_);
            return;
        }
        const auto& darts = out_[free_vertices_[i]];
        std::vector<bool> used(darts.size(), false);
        used[0] = true;
        chain(i, darts, used, 0, 1, visit);
    }

    template <class Visit>
    void chain(std::size_t i, const std::vector<std::size_t>& darts, std::vector<bool>& used, std::size_t cur,
               std::size_t placed, Visit& visit)
    {
        if (++nodes_ > cap_)
            throw Rejection("search cap exceeded", "more than " + std::to_string(cap_) +
                                                       " rotation-search nodes; raise EMBED3_SEARCH_CAP");
        if (placed == darts.size()) {
            bool c = fix(darts[cur], darts[0]);
            if (!hopeless()) vertex(i + 1, visit);
            unfix(darts[cur], c);
            return;
        }
        for (std::size_t j = 1; j < darts.size(); ++j) {
            if (used[j]) continue;
            bool c = fix(darts[cur], darts[j]);
            if (!hopeless()) {
                used[j] = true;
                chain(i, darts, used, j, placed + 1, visit);
                used[j] = false;
            }
            unfix(darts[cur], c);
        }
    }

    const DartGraph& g_;
    std::uint64_t cap_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> free_vertices_;
    std::vector<std::size_t> sigma_, phi_;
    std::size_t unknown_ = 0;  // successors not yet fixed
    std::size_t closed_ = 0;
    std::size_t need_ = 0;
    std::uint64_t nodes_ = 0;
};

/// All genus-0 rotation systems of a connected graph, in lexicographic order.
inline std::vector<Rotation> planar_rotation_systems(const DartGraph& g, std::uint64_t cap = search_cap())
{
    if (!g.is_connected()) throw Rejection("disconnected link");
    const std::size_t need = g.edges.size() + 2 - g.vertices;
    std::vector<Rotation> out;
    RotationSearch search(g, cap);
    search.run(need, [&](const Rotation& r, std::size_t faces) {
        if (faces == need) out.push_back(r);
        return need;
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Maximum face count over all rotation systems, with one maximizing system.
inline std::pair<std::size_t, Rotation> max_faces(const DartGraph& g, std::uint64_t cap = search_cap())
{
    std::size_t best = 0;
    Rotation arg;
    RotationSearch search(g, cap);
    search.run(1, [&](const Rotation& r, std::size_t faces) {
        if (faces > best) {
            best = faces;
            arg = r;
        }
        return best + 1;
    });
    return {best, arg};
}

} // namespace embed3

#endif
