#ifndef EMBED3_MANIFOLD_FIXTURES_HPP
#define EMBED3_MANIFOLD_FIXTURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "closure.hpp"

namespace embed3::fixtures {

/// H_1 = Z<l> + Z_2<m>, i(a) = 2l, i(b) = m.
inline ManifoldPresentation lemma31()
{
    ManifoldPresentation m;
    m.generators = 2;
    m.generator_names = {"l", "m"};
    m.relations = IntMatrix{{0, 2}};
    m.boundary_genera = {1};
    m.inclusion = IntMatrix{{2, 0}, {0, 1}};
    return m;
}

/// Meridian a dies, longitude b generates.
inline ManifoldPresentation solid_torus()
{
    ManifoldPresentation m;
    m.generators = 1;
    m.generator_names = {"l"};
    m.relations = IntMatrix(0, 1);
    m.boundary_genera = {1};
    m.inclusion = IntMatrix{{0, 1}};
    return m;
}

/// T^2 x I: both ends include isomorphically, the second with reversed orientation.
inline ManifoldPresentation torus_interval()
{
    ManifoldPresentation m;
    m.generators = 2;
    m.generator_names = {"x", "y"};
    m.relations = IntMatrix(0, 2);
    m.boundary_genera = {1, 1};
    m.inclusion = IntMatrix{{1, 0, 1, 0}, {0, 1, 0, -1}};
    return m;
}

/**
 * S x S^1 for a surface S with h boundary circles. `cycles` is the number of
 * free generators of H_1(S); `last` is the class of the h-th boundary circle
 * (the first h-1 are the generators z_1, ..., z_{h-1}). The torus over circle j
 * has a_j = circle j and b_j = the fibre t.
 */
inline ManifoldPresentation surface_times_circle(std::size_t cycles, std::size_t h, const std::vector<Integer>& last,
                                                 bool orientable, std::vector<std::string> names)
{
    ManifoldPresentation m;
    m.generators = cycles + 1;
    m.relations = IntMatrix(0, m.generators);
    m.boundary_genera.assign(h, 1);
    m.inclusion = IntMatrix(m.generators, 2 * h);
    const std::size_t first_z = cycles - (h - 1);
    for (std::size_t j = 0; j + 1 < h; ++j) m.inclusion(first_z + j, 2 * j) = 1;
    for (std::size_t i = 0; i < cycles; ++i) m.inclusion(i, 2 * (h - 1)) = last[i];
    for (std::size_t j = 0; j < h; ++j) m.inclusion(cycles, 2 * j + 1) = 1;
    m.orientable = orientable;
    names.push_back("t");
    m.generator_names = std::move(names);
    return m;
}

/// Xi(g, h) x S^1: genus-g surface with h holes, times a circle.
inline ManifoldPresentation surface_product(std::size_t g, std::size_t h)
{
    if (h == 0) throw std::invalid_argument("surface-product needs h >= 1");
    const std::size_t cycles = 2 * g + h - 1;
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= g; ++i) {
        names.push_back("x" + std::to_string(i));
        names.push_back("y" + std::to_string(i));
    }
    for (std::size_t j = 1; j < h; ++j) names.push_back("z" + std::to_string(j));
    // product of commutators times z_1...z_h is trivial, so [z_h] = -sum [z_j]
    std::vector<Integer> last(cycles, 0);
    for (std::size_t j = 2 * g; j < cycles; ++j) last[j] = -1;
    return surface_times_circle(cycles, h, last, true, std::move(names));
}

/// N(k, h) x S^1: k crosscaps and h holes, times a circle.
inline ManifoldPresentation crosscap_product(std::size_t k, std::size_t h)
{
    if (k == 0 || h == 0) throw std::invalid_argument("crosscap-product needs k >= 1 and h >= 1");
    const std::size_t cycles = k + h - 1;
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) names.push_back("c" + std::to_string(i));
    for (std::size_t j = 1; j < h; ++j) names.push_back("z" + std::to_string(j));
    // c_1^2...c_k^2 z_1...z_h = 1
    std::vector<Integer> last(cycles, -1);
    for (std::size_t i = 0; i < k; ++i) last[i] = -2;
    return surface_times_circle(cycles, h, last, false, std::move(names));
}

inline std::vector<std::string> manifold_names()
{
    return {"crosscap-product:K,H", "lemma31", "solid-torus", "surface-product:G,H", "torus-interval"};
}

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>> two_params(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos) return std::nullopt;
    auto num = [](const std::string& t) -> std::optional<std::size_t> {
        if (t.empty() || t.size() > 4 || t.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        return static_cast<std::size_t>(std::stoul(t));
    };
    auto a = num(s.substr(0, comma)), b = num(s.substr(comma + 1));
    if (!a || !b) return std::nullopt;
    return std::pair{*a, *b};
}

} // namespace detail

inline std::optional<ManifoldPresentation> manifold_fixture(const std::string& name)
{
    if (name == "lemma31") return lemma31();
    if (name == "solid-torus") return solid_torus();
    if (name == "torus-interval") return torus_interval();
    for (const std::string prefix : {"surface-product:", "crosscap-product:"}) {
        if (name.rfind(prefix, 0) != 0) continue;
        auto p = detail::two_params(name.substr(prefix.size()));
        if (!p || p->second == 0) return std::nullopt;
        if (prefix[0] == 's') return surface_product(p->first, p->second);
        if (p->first == 0) return std::nullopt;
        return crosscap_product(p->first, p->second);
    }
    return std::nullopt;
}

} // namespace embed3::fixtures

#endif
