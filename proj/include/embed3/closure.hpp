#ifndef EMBED3_CLOSURE_HPP
#define EMBED3_CLOSURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "modp.hpp"
#include "rejection.hpp"
#include "rotation.hpp"
#include "symplectic.hpp"

namespace embed3 {

/**
 * H_1 of a compact 3-manifold M with orientable boundary, as seen from the boundary.
 *
 * H_1(M) = Z^generators / rows(relations). Boundary component j has genus
 * boundary_genera[j]; its basis a_1, b_1, ... occupies consecutive interleaved
 * columns of `inclusion`, whose column k holds i(basis_k) in generator coordinates.
 */
struct ManifoldPresentation
{
    std::size_t generators = 0;
    IntMatrix relations{0, 0};
    std::vector<std::size_t> boundary_genera;
    IntMatrix inclusion{0, 0};
    bool orientable = true;
    std::vector<std::string> generator_names;  // optional

    std::size_t genus() const { return std::accumulate(boundary_genera.begin(), boundary_genera.end(), std::size_t{0}); }
    FGAbelianGroup h1() const { return group_from_relations(generators, relations); }
    GroupPresentation presentation() const { return {generators, relations}; }

    /// First coordinate of each boundary component's block.
    std::vector<std::size_t> component_offsets() const
    {
        std::vector<std::size_t> off;
        std::size_t at = 0;
        for (auto g : boundary_genera) {
            off.push_back(at);
            at += 2 * g;
        }
        return off;
    }

    /// Shape checks only; see validate_hlhd for the homological conditions.
    void check_shape() const
    {
        const std::size_t n2 = 2 * genus();
        if (relations.rows() > 0 && relations.cols() != generators)
            throw std::invalid_argument("h1_relations rows must have " + std::to_string(generators) + " entries");
        if (inclusion.rows() != generators)
            throw std::invalid_argument("inclusion_matrix must have one row per H1 generator (" +
                                        std::to_string(generators) + "), got " + std::to_string(inclusion.rows()));
        if (inclusion.cols() != n2)
            throw std::invalid_argument("inclusion_matrix must have 2g = " + std::to_string(n2) + " columns, got " +
                                        std::to_string(inclusion.cols()));
        if (!generator_names.empty() && generator_names.size() != generators)
            throw std::invalid_argument("h1_generators must name every generator");
    }
};

/// A presentation that violates half-lives-half-dies over some field.
class HlhdFailure : public std::invalid_argument
{
public:
    HlhdFailure(const std::string& ring, const std::string& detail, IntMatrix witness)
        : std::invalid_argument("not realizable: half-lives-half-dies fails over F=" + ring + ": " + detail),
          ring_(ring), witness_(std::move(witness))
    {
    }
    const std::string& ring() const { return ring_; }
    const IntMatrix& witness() const { return witness_; }

private:
    std::string ring_;
    IntMatrix witness_;
};

namespace detail {

// [I | -R^T]: its kernel projected to the first 2g coordinates is ker i.
inline IntMatrix kernel_system(const ManifoldPresentation& m)
{
    const std::size_t n2 = m.inclusion.cols(), r = m.relations.rows();
    IntMatrix s(m.generators, n2 + r);
    for (std::size_t i = 0; i < m.generators; ++i) {
        for (std::size_t j = 0; j < n2; ++j) s(i, j) = m.inclusion(i, j);
        for (std::size_t k = 0; k < r; ++k) s(i, n2 + k) = -m.relations(k, i);
    }
    return s;
}

inline IntMatrix project(const IntMatrix& rows, std::size_t cols)
{
    IntMatrix out(rows.rows(), cols);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows(i, j);
    return out;
}

inline IntMatrix stack(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix out(0, std::max(a.cols(), b.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) out.append_row(a.row(i));
    for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
    return out;
}

inline std::size_t rank_over(const IntMatrix& m, const CoefficientRing& f)
{
    if (m.rows() == 0) return 0;
    if (f.kind() == CoefficientRing::Kind::PrimeField) {
        ModP mp(f.characteristic());
        return mp.rank(mp.from(m));
    }
    return rank_over_q(m);
}

inline std::string render_rows(const IntMatrix& m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

} // namespace detail

/// ker(i : H_1(dM; F) -> H_1(M; F)) as a submodule of the boundary module.
inline Submodule inclusion_kernel(const ManifoldPresentation& m, const CoefficientRing& ring)
{
    m.check_shape();
    const std::size_t g = m.genus(), n2 = 2 * g;
    IntMatrix sys = detail::kernel_system(m);
    IntMatrix rows(0, n2);
    if (ring.kind() == CoefficientRing::Kind::PrimeField) {
        ModP f(ring.characteristic());
        auto k = f.kernel(f.from(sys), sys.cols());
        rows = detail::project(ModP::to_int(k, sys.cols()), n2);
    } else {
        rows = detail::project(integer_kernel(sys), n2);
    }
    return Submodule(g, ring, rows);
}

/// {2} and the primes where mod-p ranks of the presentation data can drop.
inline std::vector<std::uint64_t> relevant_primes(const ManifoldPresentation& m)
{
    std::set<std::uint64_t> ps{2};
    auto add = [&](const std::vector<Integer>& inv) {
        for (const auto& d : inv)
            if (d > 1)
                for (auto p : prime_divisors(d)) ps.insert(p);
    };
    add(m.h1().invariant_factors());
    add(smith_invariants(m.inclusion));
    add(smith_invariants(detail::kernel_system(m)));
    return {ps.begin(), ps.end()};
}

/**
 * Checks that ker i has dimension g and is isotropic over Q and each relevant
 * Z/p; for non-orientable M only Z/2 is checked.
 */
inline void validate_hlhd(const ManifoldPresentation& m)
{
    m.check_shape();
    std::vector<CoefficientRing> rings;
    if (m.orientable) {
        rings.push_back(CoefficientRing::rationals());
        for (auto p : relevant_primes(m)) rings.push_back(CoefficientRing::prime_field(p));
    } else {
        rings.push_back(CoefficientRing::prime_field(2));
    }
    const std::size_t g = m.genus();
    for (const auto& f : rings) {
        Submodule k = inclusion_kernel(m, f);
        if (k.rank() != g)
            throw HlhdFailure(f.name(), "dim ker i = " + std::to_string(k.rank()) + ", expected g = " + std::to_string(g) +
                                            "; ker i spanned by " + detail::render_rows(k.generators()),
                              k.generators());
        const auto& gens = k.generators();
        for (std::size_t i = 0; i < gens.rows(); ++i)
            for (std::size_t j = i + 1; j < gens.rows(); ++j) {
                Integer w = omega(gens.row(i), gens.row(j));
                if (f.kind() == CoefficientRing::Kind::PrimeField) w = floor_mod(w, Integer(f.characteristic()));
                if (w != 0) {
                    IntMatrix pair(0, gens.cols());
                    pair.append_row(gens.row(i));
                    pair.append_row(gens.row(j));
                    throw HlhdFailure(f.name(), "intersection form is nonzero on ker i at " + detail::render_rows(pair),
                                      pair);
                }
            }
    }
}

/// Z^(rk H_1 - g) + Tors H_1.
inline FGAbelianGroup c_of(const ManifoldPresentation& m)
{
    auto h = m.h1();
    if (h.free_rank() < m.genus()) throw std::invalid_argument("presentation inconsistent: rank H1(M) < g");
    return direct_sum(h.torsion(), FGAbelianGroup::free(h.free_rank() - m.genus()));
}

/// B splits as a sum of rank-g_j Lagrangians, one per boundary component.
inline bool respects_components(const ManifoldPresentation& m, const Submodule& b)
{
    const auto off = m.component_offsets();
    const IntMatrix& rows = b.generators();
    const std::size_t base = rank_over_q(rows);
    for (std::size_t c = 0; c < off.size(); ++c) {
        const std::size_t lo = off[c], hi = lo + 2 * m.boundary_genera[c];
        IntMatrix part(rows.rows(), rows.cols());
        for (std::size_t i = 0; i < rows.rows(); ++i)
            for (std::size_t j = lo; j < hi; ++j) part(i, j) = rows(i, j);
        if (rank_over_q(part) != m.boundary_genera[c]) return false;
        for (std::size_t i = 0; i < part.rows(); ++i) {
            IntMatrix with = rows;
            with.append_row(part.row(i));
            if (rank_over_q(with) != base) return false;
        }
    }
    return true;
}

/// H_1 of M with handlebodies glued so that their meridians go to B: H_1(M) / i(B).
inline FGAbelianGroup glue_handlebodies(const ManifoldPresentation& m, const Submodule& b)
{
    m.check_shape();
    if (b.ring().kind() != CoefficientRing::Kind::Integers || b.genus() != m.genus())
        throw std::invalid_argument("glue_handlebodies needs an integral submodule of the boundary module");
    if (!is_lagrangian(b)) throw std::invalid_argument("B is not a Z-Lagrangian");
    if (!respects_components(m, b))
        throw std::invalid_argument("B does not split into Lagrangians of the boundary components");
    IntMatrix images(0, m.generators);
    for (std::size_t i = 0; i < b.rank(); ++i) {
        auto v = multiply(m.inclusion, b.generators().row(i));
        images.append_row(v);
    }
    return quotient_by_subgroup(m.presentation(), images);
}

/// dim H_1(M; F) - g.
inline std::int64_t lower_bound_field(const ManifoldPresentation& m, const CoefficientRing& f)
{
    if (!f.is_field()) throw std::invalid_argument("lower_bound_field needs a field");
    if (!m.orientable && f != CoefficientRing::prime_field(2))
        throw std::invalid_argument("non-orientable M: the bound holds only over Z/2");
    return static_cast<std::int64_t>(dim_over_field(m.h1(), f)) - static_cast<std::int64_t>(m.genus());
}

struct Closure
{
    Submodule lagrangian;
    FGAbelianGroup h1q;
};

namespace detail {

// Lagrangian spanned by a_j (bit j clear) or b_j (bit j set).
inline IntMatrix coordinate_lagrangian(std::size_t g, std::uint64_t mask)
{
    IntMatrix rows(g, 2 * g);
    for (std::size_t j = 0; j < g; ++j) rows(j, 2 * j + ((mask >> j) & 1)) = 1;
    return rows;
}

} // namespace detail

/// A Z-Lagrangian B with dim H_1(M)/i(B) over F equal to the lower bound.
inline Closure minimal_closure_field(const ManifoldPresentation& m, const CoefficientRing& f)
{
    const std::int64_t bound = lower_bound_field(m, f);
    const std::size_t g = m.genus();
    Submodule ker = inclusion_kernel(m, f);
    if (!is_lagrangian(ker))
        throw std::invalid_argument("ker i is not a Lagrangian over " + f.name() + "; run validate_hlhd first");
    std::optional<Submodule> b;
    if (m.boundary_genera.size() <= 1) {
        b = lift_lagrangian(lagrangian_complement(ker));
    } else {
        if (g >= 63) throw Rejection("search cap exceeded", "too many boundary handles");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g) && !b; ++mask) {
            IntMatrix l = detail::coordinate_lagrangian(g, mask);
            if (detail::rank_over(detail::stack(ker.generators(), l), f) == 2 * g)
                b = Submodule(g, CoefficientRing::integers(), l);
        }
        if (!b) throw std::logic_error("no coordinate Lagrangian is transverse to ker i");
    }
    FGAbelianGroup q = glue_handlebodies(m, *b);
    if (static_cast<std::int64_t>(dim_over_field(q, f)) != bound)
        throw std::logic_error("closure misses the lower bound over " + f.name());
    return {*b, q};
}

namespace detail {

inline std::pair<Integer, Integer> bezout(const Integer& a, const Integer& b)
{
    // x, y with a x + b y = gcd(a, b) >= 0
    Integer r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (r0 < 0) return {-x0, -y0};
    return {x0, y0};
}

// K ∩ (coordinates of one component), in that component's coordinates.
inline IntMatrix kernel_within(const IntMatrix& k, std::size_t lo, std::size_t hi)
{
    IntMatrix outside(k.cols() - (hi - lo), k.rows());
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0, t = 0; j < k.cols(); ++j)
            if (j < lo || j >= hi) outside(t++, i) = k(i, j);
    IntMatrix y = integer_kernel(outside);
    IntMatrix x = y.rows() ? y * k : IntMatrix(0, k.cols());
    return x.columns(lo, hi - lo);
}

// Lagrangians of one component in breadth-first order from the coordinate ones
// under transvections by small vectors, deduplicated.
inline std::vector<IntMatrix> component_lagrangians(std::size_t gc, std::size_t limit)
{
    const std::size_t n = 2 * gc;
    std::vector<std::vector<Integer>> vs;
    std::vector<Integer> v(n, -1);
    while (true) {
        if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; })) vs.push_back(v);
        std::size_t i = 0;
        while (i < n && v[i] == 1) v[i++] = -1;
        if (i == n) break;
        ++v[i];
    }
    std::set<std::string> seen;
    std::vector<IntMatrix> out;
    auto add = [&](const IntMatrix& rows) {
        IntMatrix h = hermite_rows(rows);
        if (out.size() < limit && seen.insert(render_rows(h)).second) out.push_back(h);
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gc); ++mask) add(coordinate_lagrangian(gc, mask));
    for (std::size_t at = 0; at < out.size() && out.size() < limit; ++at)
        for (const auto& w : vs)
            for (int lambda : {1, -1}) add(out[at] * transvection_matrix({w, lambda}).transpose());
    return out;
}

/**
 * Split B with det[K; B] = +-1. Exact when K itself splits. Otherwise candidates
 * for all components but one genus-1 component are enumerated in order of
 * growing index; det is linear in that component's vector, which is then solved
 * by a Bezout step.
 */
inline Submodule split_unimodular_complement(const ManifoldPresentation& m, const Submodule& ker, std::uint64_t cap)
{
    const std::size_t g = m.genus();
    const auto off = m.component_offsets();
    const std::size_t nc = off.size();
    auto assemble = [&](const std::vector<IntMatrix>& parts) {
        IntMatrix rows(0, 2 * g);
        for (std::size_t c = 0; c < nc; ++c)
            for (std::size_t i = 0; i < parts[c].rows(); ++i) {
                std::vector<Integer> v(2 * g);
                for (std::size_t j = 0; j < parts[c].cols(); ++j) v[off[c] + j] = parts[c](i, j);
                rows.append_row(v);
            }
        return rows;
    };
    auto det = [&](const std::vector<IntMatrix>& parts) { return determinant(stack(ker.generators(), assemble(parts))); };
    auto done = [&](const std::vector<IntMatrix>& parts) {
        return Submodule(g, CoefficientRing::integers(), assemble(parts));
    };

    {
        std::vector<IntMatrix> parts;
        for (std::size_t c = 0; c < nc; ++c) {
            const std::size_t gc = m.boundary_genera[c];
            Submodule kc(gc, CoefficientRing::integers(), kernel_within(ker.generators(), off[c], off[c] + 2 * gc));
            if (kc.rank() != gc) break;
            parts.push_back(integral_lagrangian_complement(kc).generators());
        }
        if (parts.size() == nc && abs(det(parts)) == 1) return done(parts);
    }

    std::size_t solved = nc;
    for (std::size_t c = 0; c < nc && solved == nc; ++c)
        if (m.boundary_genera[c] == 1) solved = c;
    const std::size_t free_count = nc - (solved < nc ? 1 : 0);
    const auto limit = static_cast<std::size_t>(
        std::clamp(std::pow(2.0e5, 1.0 / static_cast<double>(std::max<std::size_t>(free_count, 1))), 8.0, 5000.0));
    std::vector<std::vector<IntMatrix>> pools(nc);
    for (std::size_t c = 0; c < nc; ++c)
        if (c != solved) pools[c] = component_lagrangians(m.boundary_genera[c], limit);

    std::uint64_t tried = 0;
    std::vector<std::size_t> pick(nc, 0);
    std::vector<IntMatrix> parts(nc, IntMatrix(1, 2));
    std::optional<Submodule> found;
    // tuples whose largest index is exactly r
    std::function<void(std::size_t, std::size_t, bool)> walk = [&](std::size_t c, std::size_t r, bool hit) {
        if (found) return;
        if (c == nc) {
            if (!hit) return;
            if (++tried > cap) throw Rejection("search cap exceeded", "no split complementary Lagrangian found");
            for (std::size_t k = 0; k < nc; ++k)
                if (k != solved) parts[k] = pools[k][pick[k]];
            if (solved == nc) {
                if (abs(det(parts)) == 1) found = done(parts);
                return;
            }
            parts[solved] = IntMatrix{{1, 0}};
            Integer wa = det(parts);
            parts[solved] = IntMatrix{{0, 1}};
            Integer wb = det(parts);
            if (gcd(wa, wb) != 1) return;
            auto [x, y] = bezout(wa, wb);
            parts[solved] = IntMatrix(1, 2);
            parts[solved](0, 0) = x;
            parts[solved](0, 1) = y;
            found = done(parts);
            return;
        }
        if (c == solved) {
            walk(c + 1, r, hit);
            return;
        }
        for (std::size_t i = 0; i <= r && i < pools[c].size(); ++i) {
            pick[c] = i;
            walk(c + 1, r, hit || i == r);
        }
    };
    std::size_t longest = 1;
    for (const auto& p : pools) longest = std::max(longest, p.size());
    for (std::size_t r = 0; r < longest && !found; ++r) walk(0, r, free_count == 0);
    if (!found) throw Rejection("no split complementary Lagrangian found", "searched the bounded candidate pool");
    return *found;
}

} // namespace detail

/// For free H_1(M) and orientable M: a closure with H_1(Q) = C(M).
inline Closure minimal_closure_integral(const ManifoldPresentation& m, std::uint64_t cap = search_cap())
{
    if (!m.orientable) throw std::invalid_argument("integral closure needs orientable M");
    const auto h = m.h1();
    if (!h.is_free())
        throw std::invalid_argument("integral closure hypothesis violated: H1(M) = " + h.to_string() + " is not free");
    const std::size_t g = m.genus();
    Submodule ker = inclusion_kernel(m, CoefficientRing::integers());
    if (!is_lagrangian(ker)) throw std::invalid_argument("ker i is not a Z-Lagrangian; run validate_hlhd first");
    const FGAbelianGroup target = c_of(m);
    std::optional<Submodule> b;
    if (m.boundary_genera.size() <= 1) {
        b = integral_lagrangian_complement(ker);
    } else {
        b = detail::split_unimodular_complement(m, ker, cap);
    }
    FGAbelianGroup q = glue_handlebodies(m, *b);
    if (q != target) throw std::logic_error("integral closure gives " + q.to_string() + ", expected " + target.to_string());
    return {*b, q};
}

/// Embeds in a G-homology sphere iff H_1(M; G) + H_1(M; G) = H_1(dM; G).
inline bool sphere_embeddable(const FGAbelianGroup& h1m, std::size_t boundary_rank, const CoefficientRing& ring)
{
    const std::size_t g = boundary_rank / 2;
    if (ring.kind() == CoefficientRing::Kind::Integers) return h1m == FGAbelianGroup::free(g);
    return dim_over_field(h1m, ring) == g;
}

// ------------------------------------------------------------------------
// Bounded obstruction scan (torus boundary)
// ------------------------------------------------------------------------

struct ScanCandidate
{
    std::size_t rank = 0;
    IntMatrix generators{0, 2};  // rows in (a, b) coordinates
    FGAbelianGroup quotient;     // H_1(M) / i(candidate)
};

struct ScanResult
{
    bool excluded = true;
    std::optional<ScanCandidate> witness;
    std::uint64_t candidates = 0;
    std::uint64_t bound = 0;
};

/**
 * Looks for a kernel of the complement's inclusion (rank 0; rank 1 spanned by
 * primitive pa + qb; rank 2 of even index) whose quotient R embeds in `target`.
 * Candidates run in order: rank, max(|p|,|q|), then lexicographic.
 */
inline ScanResult obstruction_scan(const ManifoldPresentation& m, const FGAbelianGroup& target, std::uint64_t n)
{
    m.check_shape();
    if (m.genus() != 1) throw std::invalid_argument("obstruction_scan handles a single torus boundary (g = 1)");
    ScanResult res;
    res.bound = n;
    auto test = [&](std::size_t rank, const IntMatrix& gens) {
        ++res.candidates;
        IntMatrix images(0, m.generators);
        for (std::size_t i = 0; i < gens.rows(); ++i) images.append_row(multiply(m.inclusion, gens.row(i)));
        FGAbelianGroup r = quotient_by_subgroup(m.presentation(), images);
        if (is_subgroup_of(r, target)) {
            res.excluded = false;
            res.witness = ScanCandidate{rank, gens, r};
            return true;
        }
        return false;
    };
    if (test(0, IntMatrix(0, 2))) return res;
    const auto N = static_cast<std::int64_t>(n);
    for (std::int64_t k = 1; k <= N; ++k)
        for (std::int64_t p = 0; p <= k; ++p)
            for (std::int64_t q = -k; q <= k; ++q) {
                if (std::max(p, q < 0 ? -q : q) != k) continue;
                if (p == 0 && q <= 0) continue;
                if (gcd(Integer(p), Integer(q)) != 1) continue;
                if (test(1, IntMatrix{{p, q}})) return res;
            }
    for (std::int64_t a = 1; a <= N; ++a)
        for (std::int64_t d = 1; d <= N; ++d) {
            if ((a * d) % 2 != 0) continue;
            for (std::int64_t b = 0; b < d; ++b)
                if (test(2, IntMatrix{{a, b}, {0, d}})) return res;
        }
    return res;
}

} // namespace embed3

#endif
