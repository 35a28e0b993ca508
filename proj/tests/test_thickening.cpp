#include <algorithm>
#include <numeric>

#include <catch_amalgamated.hpp>

#include "embed3/complex_fixtures.hpp"
#include "embed3/thickening.hpp"

#include "rotation_oracles.hpp"

using namespace embed3;
using namespace oracle;

namespace {

ThickeningContext context(const std::string& name)
{
    auto raw = fixtures::complex_fixture(name);
    REQUIRE(raw);
    return prepare_thickening(validate_complex(*raw));
}

// Theta_n with poles 0, 1 and chain midpoints 2..n+1.
LinkGraph theta(std::size_t n)
{
    LinkGraph g;
    for (std::size_t i = 0; i < n + 2; ++i) g.vertices.push_back(i);
    for (std::size_t i = 0; i < n; ++i) {
        g.edges.push_back({0, 2 + i, 2 * i});
        g.edges.push_back({2 + i, 1, 2 * i + 1});
    }
    return g;
}

LinkGraph cycle(std::size_t n)
{
    LinkGraph g;
    for (std::size_t i = 0; i < n; ++i) g.vertices.push_back(i);
    for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, i});
    return g;
}

} // namespace

TEST_CASE("planar rotations of small links")
{
    CHECK(planar_rotations(cycle(5)).size() == 1);
    CHECK(planar_rotations(theta(3)).size() == 2);
    CHECK(planar_rotations(theta(4)).size() == 6);
    for (std::size_t n = 3; n <= 5; ++n) CHECK(planar_rotations(theta(n)).size() == oracle_planar(theta(n)).size());
    LinkGraph apart = cycle(3);
    apart.vertices.push_back(7);
    CHECK_THROWS_AS(planar_rotations(apart), Rejection);
}

TEST_CASE("planar rotations agree with the oracle on fixture links")
{
    for (const std::string name : {"y-interval", "theta-circle", "k4-circle", "xi-spine:1,1"}) {
        auto ctx = context(name);
        for (const auto& [a, lk] : ctx.links) {
            INFO(name << " vertex " << a);
            auto got = planar_rotations(lk);
            auto want = oracle_planar(lk);
            CHECK(got.size() == want.size());
            for (const auto& r : got) CHECK(count_faces(dart_graph(lk), r.rotation) + lk.vertices.size() == lk.edges.size() + 2);
        }
    }
}

TEST_CASE("K5 link of a base point is not planar when no embedding exists")
{
    // cone over K5: the link of the apex is K5
    std::vector<std::array<std::int64_t, 3>> tris;
    for (std::int64_t i = 1; i <= 5; ++i)
        for (std::int64_t j = i + 1; j <= 5; ++j) tris.push_back({0, i, j});
    auto ctx = prepare_thickening(validate_complex(fixtures::from_triangles(tris)));
    auto se = enumerate_se(ctx);
    CHECK(se.collections.empty());
    CHECK(se.reason == "no 3-thickening exists");
    auto all = thicken_all(ctx);
    CHECK(all.descriptors.empty());
}

TEST_CASE("wedge of two disks is rejected")
{
    auto raw = fixtures::complex_fixture("wedge-disks");
    try {
        prepare_thickening(validate_complex(*raw));
        FAIL("expected rejection");
    } catch (const Rejection& r) {
        CHECK(r.reason() == "disconnected link");
    }
}

TEST_CASE("SE counts match the exhaustive oracle")
{
    const std::vector<std::pair<std::string, std::size_t>> expected{
        {"y-interval", 2}, {"theta-circle", 4}, {"y-circle", 2}, {"k4-circle", 16}, {"xi-spine:1,1", 6}};
    for (const auto& [name, count] : expected) {
        INFO(name);
        auto ctx = context(name);
        auto se = enumerate_se(ctx);
        CHECK(se.collections.size() == count);
        CHECK(oracle_se_count(ctx) == count);
        CHECK(std::is_sorted(se.collections.begin(), se.collections.end()));
        for (const auto& c : se.collections)
            for (const auto& e : c.embeddings) CHECK(canonical_rotation(e.rotation) == e.rotation);
    }
}

TEST_CASE("surfaces have exactly one descriptor")
{
    struct Case { const char* name; std::size_t components; std::vector<std::size_t> genera; };
    for (const auto& c : std::vector<Case>{{"triangle", 1, {0}},
                                           {"disk", 1, {0}},
                                           {"torus", 2, {1, 1}},
                                           {"annulus", 1, {1}},
                                           {"mobius", 1, {1}},
                                           {"projective-plane", 1, {0}}}) {
        INFO(c.name);
        auto res = thicken_all(context(c.name));
        REQUIRE(res.descriptors.size() == 1);
        const auto& d = res.descriptors[0];
        CHECK(d.se_class.embeddings.empty());
        CHECK(d.boundary.components == c.components);
        CHECK(d.boundary.genera == c.genera);
        CHECK(d.boundary.orientable);
    }
}

TEST_CASE("Y x S1 thickenings are solid tori")
{
    auto res = thicken_all(context("y-circle"));
    REQUIRE(res.descriptors.size() == 2);
    for (const auto& d : res.descriptors) {
        CHECK(d.h1 == FGAbelianGroup::free(1));
        CHECK(d.boundary.components == 1);
        CHECK(d.boundary.genera == std::vector<std::size_t>{1});
    }
}

TEST_CASE("theta x S1: matched rotations give three tori, mismatched give one")
{
    auto res = thicken_all(context("theta-circle"));
    REQUIRE(res.descriptors.size() == 4);
    std::vector<std::size_t> comps;
    for (const auto& d : res.descriptors) {
        comps.push_back(d.boundary.components);
        for (auto g : d.boundary.genera) CHECK(g == 1);
    }
    std::sort(comps.begin(), comps.end());
    CHECK(comps == std::vector<std::size_t>{1, 1, 3, 3});
}

TEST_CASE("Y x I thickenings are balls")
{
    auto res = thicken_all(context("y-interval"));
    REQUIRE(res.descriptors.size() == 2);
    for (const auto& d : res.descriptors) {
        CHECK(d.h1.is_trivial());
        CHECK(d.boundary.genera == std::vector<std::size_t>{0});
    }
}

TEST_CASE("boundary Euler characteristic is twice that of the polyhedron")
{
    for (const std::string name : {"y-interval", "theta-circle", "y-circle", "k4-circle", "k33-circle", "xi-spine:1,1",
                                   "xi-spine:0,3", "torus", "mobius"}) {
        INFO(name);
        auto ctx = context(name);
        auto res = thicken_all(ctx);
        REQUIRE_FALSE(res.descriptors.empty());
        const auto chi = euler_characteristic(ctx.complex.original);
        for (const auto& d : res.descriptors) {
            std::int64_t sum = 0;
            for (auto g : d.boundary.genera) sum += 2 - 2 * static_cast<std::int64_t>(g);
            CHECK(sum == 2 * chi);
            CHECK(d.boundary.euler_characteristic == 2 * chi);
            CHECK(d.boundary.orientable);
        }
    }
}

TEST_CASE("K5 x S1 has 6^5 classes with h1 of rank 7")
{
    auto res = thicken_all(context("k5-circle"));
    CHECK(res.descriptors.size() == 7776);
    for (const auto& d : res.descriptors) CHECK(d.h1 == FGAbelianGroup::free(7));
}

TEST_CASE("canonical rotation is idempotent")
{
    Rotation r{{3, 1, 2}, {5, 4}, {}};
    auto once = canonical_rotation(r);
    CHECK(once == Rotation{{1, 2, 3}, {4, 5}, {}});
    CHECK(canonical_rotation(once) == once);
}

TEST_CASE("search cap aborts large enumerations")
{
    CHECK_THROWS_AS(planar_rotations(theta(6), 10), Rejection);
}
