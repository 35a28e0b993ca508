// Acceptance run: one PASS/FAIL line per criterion with tolerance and wall time.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "embed3/cli.hpp"
#include "embed3/closure.hpp"
#include "embed3/complex_fixtures.hpp"
#include "embed3/graphprod.hpp"
#include "embed3/manifold_fixtures.hpp"
#include "embed3/symplectic.hpp"
#include "embed3/thickening.hpp"

#include "oracles.hpp"
#include "random_manifolds.hpp"
#include "rotation_oracles.hpp"

using namespace embed3;

namespace {

const auto ZZ = CoefficientRing::integers();
const auto QQ = CoefficientRing::rationals();
const auto F2 = CoefficientRing::prime_field(2);
const auto F3 = CoefficientRing::prime_field(3);
const auto F5 = CoefficientRing::prime_field(5);

/// Collects failed checks of one criterion.
struct Check
{
    std::size_t total = 0;
    std::vector<std::string> failures;

    void operator()(bool ok, const std::string& what)
    {
        ++total;
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok && failures.size() == 5) failures.back() = "...";
    }
};

int failed = 0;

void criterion(const std::string& id, const std::string& tolerance, double limit_s, const std::function<void(Check&)>& body)
{
    Check c;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
        body(c);
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && c.failures.empty() && secs < limit_s;
    failed += ok ? 0 : 1;
    std::ostringstream line;
    line << id << ' ' << (ok ? "PASS" : "FAIL") << "  checks=" << c.total << " tol=" << tolerance;
    char t[64];
    std::snprintf(t, sizeof t, " time=%.3fs limit=%.0fs", secs, limit_s);
    line << t;
    if (!error.empty()) line << "  exception: " << error;
    for (const auto& f : c.failures) line << "  failed: " << f;
    if (secs >= limit_s) line << "  over time limit";
    std::cout << line.str() << std::endl;
}

std::string str(const FGAbelianGroup& g) { return g.to_string(); }

// Product of random transvections mod p; they generate Sp(2g, Z/p).
IntMatrix random_symplectic_mod(std::mt19937& rng, std::size_t g, std::uint64_t p, int steps)
{
    std::vector<Transvection> ts;
    for (int s = 0; s < steps; ++s) {
        Transvection t;
        for (std::size_t i = 0; i < 2 * g; ++i) t.v.emplace_back(rng() % p);
        t.lambda = static_cast<std::int64_t>(1 + rng() % (p - 1));
        ts.push_back(t);
    }
    return transvection_product(ts, 2 * g, p);
}

ThickeningContext context(const std::string& name)
{
    auto raw = fixtures::complex_fixture(name);
    if (!raw) throw std::runtime_error("missing fixture " + name);
    return prepare_thickening(validate_complex(*raw));
}

int run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    return cli::run(args, out, err);
}

} // namespace

int main()
{
    std::cout << "acceptance: exact criteria, tolerance 0 unless stated" << std::endl;

    criterion("AC1", "exact", 10, [](Check& c) {
        const auto m = fixtures::lemma31();
        const auto z2 = FGAbelianGroup::from_cyclic(0, {2});
        c(c_of(m) == z2, "c_of = " + str(c_of(m)));
        const auto none = obstruction_scan(m, z2, 50);
        c(none.excluded && !none.witness, "target Z/2 not excluded");
        const auto k = obstruction_scan(m, FGAbelianGroup::from_cyclic(0, {2, 2}), 50);
        c(k.witness && k.witness->generators == IntMatrix{{1, 0}}, "target Z/2+Z/2 witness is not <a>");
        const auto z = obstruction_scan(m, FGAbelianGroup::free(1), 50);
        c(z.witness && z.witness->generators == IntMatrix{{0, 1}}, "target Z witness is not <b>");
        std::cout << "  AC1 scanned " << none.candidates << " kernels up to N=50" << std::endl;
    });

    criterion("AC2", "exact", 1, [](Check& c) {
        const auto m = fixtures::lemma31();
        const std::vector<std::pair<CoefficientRing, std::size_t>> want{{F2, 1}, {F3, 0}, {QQ, 0}};
        for (const auto& [f, d] : want) {
            const auto q = minimal_closure_field(m, f).h1q;
            const auto dim = dim_over_field(q, f);
            c(dim == d, f.name() + ": dim " + std::to_string(dim));
            c(static_cast<std::int64_t>(dim) == lower_bound_field(m, f), f.name() + ": bound mismatch");
        }
    });

    criterion("AC3", "exact", 5, [](Check& c) {
        for (std::size_t g = 0; g <= 3; ++g)
            for (std::size_t h = 1; h <= 3; ++h) {
                const auto m = fixtures::surface_product(g, h);
                validate_hlhd(m);
                for (const auto& f : {QQ, F2, F3}) {
                    const auto r = dim_over_field(minimal_closure_field(m, f).h1q, f);
                    c(r == 2 * g && lower_bound_field(m, f) == static_cast<std::int64_t>(2 * g),
                      "surface " + std::to_string(g) + "," + std::to_string(h) + " over " + f.name());
                }
            }
        for (std::size_t k = 1; k <= 4; ++k)
            for (std::size_t h = 1; h <= 3; ++h) {
                const auto m = fixtures::crosscap_product(k, h);
                validate_hlhd(m);
                const auto r = dim_over_field(minimal_closure_field(m, F2).h1q, F2);
                c(r == k && lower_bound_field(m, F2) == static_cast<std::int64_t>(k),
                  "crosscap " + std::to_string(k) + "," + std::to_string(h));
            }
    });

    criterion("AC4", "exact", 120, [](Check& c) {
        const std::vector<std::pair<std::string, std::size_t>> want{{"k4", 0}, {"k5", 2}, {"k33", 2}, {"petersen", 2}};
        for (const auto& [name, d] : want) {
            const auto g = *fixtures::graph_fixture(name);
            for (const auto& f : {QQ, F2}) {
                const auto r = min_closed_h1_dim(g, f);
                c(r.dim == d, name + " over " + f.name() + ": " + std::to_string(r.dim));
            }
        }
        const auto p = fixtures::petersen();
        const auto genus = graph_genus(p);
        c(genus.genus == 1, "petersen genus");
        c(oracle::oracle_genus(p) == genus.genus, "petersen face-count oracle");
        c(oracle::oracle_faces(p, genus.rotation) == genus.faces, "petersen witness rotation faces");
    });

    criterion("AC5", "exact", 30, [](Check& c) {
        for (std::uint64_t p : {2, 3, 5}) {
            const auto fp = CoefficientRing::prime_field(p);
            std::vector<Submodule> lines;
            for (std::uint64_t x = 0; x < p; ++x)
                for (std::uint64_t y = 0; y < p; ++y) {
                    if (x == 0 && y == 0) continue;
                    IntMatrix v(1, 2);
                    v(0, 0) = x;
                    v(0, 1) = y;
                    Submodule s(1, fp, v);
                    if (is_lagrangian(s) && std::find(lines.begin(), lines.end(), s) == lines.end()) lines.push_back(s);
                }
            c(lines.size() == p + 1, "line count mod " + std::to_string(p));
            for (const auto& a : lines) {
                const auto b = lift_lagrangian(a);
                c(is_lagrangian(b) && reduce_mod(b, p) == a, "line lift mod " + std::to_string(p));
            }
        }
        std::mt19937 rng(2024);
        for (int i = 0; i < 100; ++i) {
            const IntMatrix h = random_symplectic_mod(rng, 2, 3, 1 + static_cast<int>(rng() % 10));
            IntMatrix rows(2, 4);
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t t = 0; t < 4; ++t) rows(k, t) = h(t, 2 * k);
            const Submodule a(2, F3, rows);
            const auto b = lift_lagrangian(a);
            c(is_lagrangian(b) && reduce_mod(b, 3) == a, "random Lagrangian " + std::to_string(i));
        }
        for (int i = 0; i < 100; ++i) {
            const IntMatrix h = random_symplectic_mod(rng, 2, 3, 1 + static_cast<int>(rng() % 10));
            const auto lifted = lift_symplectic({F3, h}).matrix;
            const IntMatrix j = standard_form(2);
            c(lifted.transpose() * j * lifted == j, "H^T J H != J at " + std::to_string(i));
            c(lifted.mod(Integer(3)) == h, "H mod 3 != h at " + std::to_string(i));
        }
    });

    criterion("AC6", "exact", 300, [](Check& c) {
        for (std::string name : {"disk", "torus", "y-interval", "theta-circle", "k4-circle"}) {
            const auto ctx = context(name);
            const auto res = thicken_all(ctx);
            c(!res.descriptors.empty(), name + ": no descriptors");
            const std::int64_t chi2 = 2 * euler_characteristic(ctx.complex.original);
            for (const auto& d : res.descriptors) {
                std::int64_t sum = 0;
                for (auto g : d.boundary.genera) sum += 2 - 2 * static_cast<std::int64_t>(g);
                c(sum == chi2 && d.boundary.euler_characteristic == chi2, name + ": Euler characteristic");
                c(d.boundary.orientable, name + ": non-orientable boundary");
            }
            std::cout << "  AC6 " << name << ": " << res.descriptors.size() << " classes" << std::endl;
        }
        for (std::string name : {"y-interval", "theta-circle", "y-circle"}) {
            const auto ctx = context(name);
            c(enumerate_se(ctx).collections.size() == oracle::oracle_se_count(ctx), name + ": SE count vs oracle");
        }
    });

    criterion("AC7", "exact", 300, [](Check& c) {
        c(run_cli({"embed-sphere", "fixture:torus", "--coeff", "z"}) == 0, "torus over Z");
        c(run_cli({"embed-sphere", "fixture:annulus", "--coeff", "z"}) == 0, "annulus over Z");
        c(run_cli({"embed-sphere", "fixture:solid-torus-spine", "--coeff", "z"}) == 0, "solid torus spine over Z");
        for (std::string f : {"z", "z2", "zp:3", "zp:5"})
            c(run_cli({"embed-sphere", "fixture:k5xS1", "--coeff", f}) == 1, "K5 x S1 over " + f);
    });

    criterion("AC8", "exact, zero violations", 120, [](Check& c) {
        std::mt19937 rng(8);
        for (int trial = 0; trial < 200; ++trial) {
            const auto m = randgen::random_presentation(rng);
            validate_hlhd(m);
            const auto b = randgen::random_lagrangian(rng, m.boundary_genera);
            const auto q = glue_handlebodies(m, b);
            for (const auto& f : {QQ, F2, F3, F5})
                c(static_cast<std::int64_t>(dim_over_field(q, f)) >= lower_bound_field(m, f),
                  "bound, trial " + std::to_string(trial) + " over " + f.name());
            c(is_quotient_of(c_of(m), q), "quotient, trial " + std::to_string(trial));
        }
        std::vector<FGAbelianGroup> groups;
        for (std::uint64_t n = 1; n <= 64; ++n)
            for (const auto& g : oracle::groups_of_order(n)) groups.push_back(g);
        std::size_t pairs = 0;
        for (const auto& t : groups)
            for (const auto& s : groups) {
                c(is_quotient_of(t, s) == oracle::brute_force_quotient(t, s), str(t) + " from " + str(s));
                ++pairs;
            }
        std::cout << "  AC8 " << groups.size() << " groups, " << pairs << " pairs" << std::endl;
    });

    std::cout << (failed == 0 ? "acceptance: all criteria PASS" : "acceptance: " + std::to_string(failed) + " FAIL")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
