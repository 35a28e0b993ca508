#ifndef EMBED3_SYMPLECTIC_HPP
#define EMBED3_SYMPLECTIC_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "abelian.hpp"
#include "modp.hpp"

namespace embed3 {

// Basis order throughout is interleaved: index 2i is e_i, index 2i+1 is f_i,
// with omega(e_i, f_j) = delta_ij. Boundary components then occupy contiguous blocks.

inline IntMatrix standard_form(std::size_t genus)
{
    IntMatrix j(2 * genus, 2 * genus);
    for (std::size_t i = 0; i < genus; ++i) {
        j(2 * i, 2 * i + 1) = 1;
        j(2 * i + 1, 2 * i) = -1;
    }
    return j;
}

inline Integer omega(std::span<const Integer> x, std::span<const Integer> y)
{
    if (x.size() != y.size() || x.size() % 2)
        throw std::invalid_argument("omega: vectors must share an even dimension");
    Integer s = 0;
    for (std::size_t i = 0; i < x.size(); i += 2) s += x[i] * y[i + 1] - x[i + 1] * y[i];
    return s;
}

inline std::int64_t omega_mod(const ModP& f, std::span<const std::int64_t> x, std::span<const std::int64_t> y)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); i += 2) s = f.add(s, f.sub(f.mul(x[i], y[i + 1]), f.mul(x[i + 1], y[i])));
    return s;
}

/// M^T J M == J, exactly over Z or modulo p when p != 0.
inline bool is_symplectic(const IntMatrix& m, std::uint64_t p = 0)
{
    if (m.rows() != m.cols() || m.rows() % 2) return false;
    const IntMatrix j = standard_form(m.rows() / 2);
    IntMatrix lhs = m.transpose() * j * m;
    if (p == 0) return lhs == j;
    return lhs.mod(Integer(p)) == j.mod(Integer(p));
}

/**
 * Submodule of the standard symplectic module of rank 2g over Z, Q or Z/p.
 *
 * Generators are stored canonically (HNF over Z, saturated HNF over Q, RREF
 * over Z/p), so equal submodules have equal generator matrices.
 */
class Submodule
{
public:
    Submodule(std::size_t genus, CoefficientRing ring, const IntMatrix& generators)
        : genus_(genus), ring_(ring), gens_(canonical(genus, ring, generators))
    {
    }

    std::size_t genus() const { return genus_; }
    const CoefficientRing& ring() const { return ring_; }
    const IntMatrix& generators() const { return gens_; }
    std::size_t rank() const { return gens_.rows(); }

    bool is_isotropic() const
    {
        for (std::size_t i = 0; i < gens_.rows(); ++i)
            for (std::size_t j = i + 1; j < gens_.rows(); ++j) {
                Integer w = omega(gens_.row(i), gens_.row(j));
                if (ring_.kind() == CoefficientRing::Kind::PrimeField) w = floor_mod(w, Integer(ring_.characteristic()));
                if (w != 0) return false;
            }
        return true;
    }

    friend bool operator==(const Submodule&, const Submodule&) = default;

private:
    static IntMatrix canonical(std::size_t genus, const CoefficientRing& ring, const IntMatrix& g)
    {
        if (g.rows() > 0 && g.cols() != 2 * genus)
            throw std::invalid_argument("submodule generators must have " + std::to_string(2 * genus) + " coordinates");
        IntMatrix m = g.rows() ? g : IntMatrix(0, 2 * genus);
        switch (ring.kind()) {
        case CoefficientRing::Kind::Integers: return hermite_rows(m);
        case CoefficientRing::Kind::Rationals: return saturate_rows(m);
        case CoefficientRing::Kind::PrimeField: {
            ModP f(ring.characteristic());
            auto a = f.from(m);
            f.rref(a);
            return ModP::to_int(a, 2 * genus);
        }
        }
        return m;
    }

    std::size_t genus_;
    CoefficientRing ring_;
    IntMatrix gens_;
};

/// Lagrangian: omega vanishes on B and the quotient is free of rank g.
inline bool is_lagrangian(const Submodule& b)
{
    if (!b.is_isotropic() || b.rank() != b.genus()) return false;
    if (b.ring().kind() != CoefficientRing::Kind::Integers) return true;
    for (const auto& d : smith_invariants(b.generators()))
        if (d != 1) return false;
    return true;
}

struct Transvection
{
    std::vector<Integer> v;
    Integer lambda;
};

/// Matrix of x -> x + lambda * omega(x, v) * v, i.e. I + lambda v (J v)^T.
inline IntMatrix transvection_matrix(const Transvection& t)
{
    const std::size_t n = t.v.size();
    IntMatrix m = IntMatrix::identity(n);
    std::vector<Integer> jv(n);
    for (std::size_t i = 0; i < n; i += 2) {
        jv[i] = t.v[i + 1];
        jv[i + 1] = -t.v[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += t.lambda * t.v[i] * jv[j];
    return m;
}

/// Left-to-right product T_1 T_2 ... T_k, optionally reduced mod p.
inline IntMatrix transvection_product(const std::vector<Transvection>& ts, std::size_t dim, std::uint64_t p = 0)
{
    IntMatrix m = IntMatrix::identity(dim);
    for (const auto& t : ts) {
        m = m * transvection_matrix(t);
        if (p) m = m.mod(Integer(p));
    }
    return m;
}

struct SymplecticMap
{
    CoefficientRing ring;
    IntMatrix matrix;

    std::size_t genus() const { return matrix.rows() / 2; }
};

namespace detail {

inline ModP::Vec unit(std::size_t n, std::size_t i)
{
    ModP::Vec e(n, 0);
    e[i] = 1;
    return e;
}

// Reduces h to the identity by left multiplication with transvections, one
// hyperbolic pair at a time; returns the applied transvections in order.
inline std::vector<std::pair<ModP::Vec, std::int64_t>> reduce_to_identity(const ModP& f, ModP::Mat h)
{
    const std::size_t n = h.size();
    std::vector<std::pair<ModP::Vec, std::int64_t>> applied;

    auto column = [&](std::size_t c) {
        ModP::Vec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = h[i][c];
        return x;
    };
    auto apply = [&](const ModP::Vec& v, std::int64_t lambda) {
        for (std::size_t c = 0; c < n; ++c) {
            ModP::Vec x = column(c);
            const std::int64_t s = f.mul(lambda, omega_mod(f, x, v));
            if (s == 0) continue;
            for (std::size_t i = 0; i < n; ++i) h[i][c] = f.add(h[i][c], f.mul(s, v[i]));
        }
        applied.emplace_back(v, lambda);
    };
    // One transvection taking x to y, valid when omega(x, y) != 0.
    auto step = [&](const ModP::Vec& x, const ModP::Vec& y) {
        ModP::Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = f.sub(y[i], x[i]);
        apply(v, f.inv(omega_mod(f, x, y)));
    };

    for (std::size_t pair = 0; 2 * pair < n; ++pair) {
        const std::size_t ei = 2 * pair, fi = 2 * pair + 1;
        const ModP::Vec e = unit(n, ei), ff = unit(n, fi);

        ModP::Vec x = column(ei);
        if (x != e) {
            if (omega_mod(f, x, e) != 0) {
                step(x, e);
            } else {
                // Route through z with omega(x, z) != 0 and omega(z, e) != 0, inside the
                // span of the remaining pairs so earlier pairs stay fixed.
                ModP::Vec u, z;
                for (std::size_t k = ei; k < n && u.empty(); ++k)
                    if (omega_mod(f, x, unit(n, k)) != 0) u = unit(n, k);
                if (u.empty()) throw std::logic_error("degenerate column in transvection reduction");
                const ModP::Vec& w = ff;
                if (omega_mod(f, u, e) != 0) z = u;
                else if (omega_mod(f, x, w) != 0) z = w;
                else {
                    z.resize(n);
                    for (std::size_t i = 0; i < n; ++i) z[i] = f.add(u[i], w[i]);
                }
                step(x, z);
                step(column(ei), e);
            }
        }

        ModP::Vec y = column(fi);
        if (y != ff) {
            if (omega_mod(f, y, ff) != 0) {
                step(y, ff);
            } else {
                ModP::Vec z(n, 0);
                z[ei] = 1;
                z[fi] = 1;
                step(y, z);
                step(column(fi), ff);
            }
        }
    }
    return applied;
}

} // namespace detail

/// Transvections T_1..T_k over Z/p with T_1 T_2 ... T_k = h.
inline std::vector<Transvection> transvection_factorization(const SymplecticMap& h)
{
    if (h.ring.kind() != CoefficientRing::Kind::PrimeField)
        throw std::invalid_argument("transvection_factorization works over Z/p");
    const std::uint64_t p = h.ring.characteristic();
    if (!is_symplectic(h.matrix, p))
        throw std::invalid_argument("input matrix is not symplectic mod " + std::to_string(p));
    ModP f(p);
    auto applied = detail::reduce_to_identity(f, f.from(h.matrix));
    // applied_k ... applied_1 h = I, so h = applied_1^-1 ... applied_k^-1.
    std::vector<Transvection> out;
    for (const auto& [v, lambda] : applied) {
        Transvection t;
        for (auto x : v) t.v.emplace_back(x);
        t.lambda = f.norm(-lambda);
        out.push_back(std::move(t));
    }
    return out;
}

/// An integral symplectic matrix reducing to h mod p.
inline SymplecticMap lift_symplectic(const SymplecticMap& h)
{
    if (h.ring.kind() != CoefficientRing::Kind::PrimeField)
        throw std::invalid_argument("lift_symplectic lifts from Z/p");
    const std::uint64_t p = h.ring.characteristic();
    if (!is_symplectic(h.matrix, p))
        throw std::invalid_argument("input matrix is not symplectic mod " + std::to_string(p));
    IntMatrix residues = h.matrix.mod(Integer(p));
    if (is_symplectic(residues))
        return {CoefficientRing::integers(), residues};
    auto factors = transvection_factorization(h);
    return {CoefficientRing::integers(), transvection_product(factors, h.matrix.rows())};
}

/// phi(B): reduction mod p of an integral submodule.
inline Submodule reduce_mod(const Submodule& b, std::uint64_t p)
{
    return Submodule(b.genus(), CoefficientRing::prime_field(p), b.generators());
}

namespace detail {

// Rows b_1..b_g with omega(k_i, b_j) = delta_ij and omega(b_i, b_j) = 0, given a
// saturated isotropic rank-g lattice k; the k's and b's together form a symplectic basis.
inline IntMatrix integral_dual(const IntMatrix& k)
{
    const std::size_t g = k.rows(), n = k.cols();
    IntMatrix m = k * standard_form(n / 2);
    SmithForm s = smith_normal_form(m);
    for (std::size_t i = 0; i < g; ++i)
        if (s.D(i, i) != 1)
            throw std::invalid_argument("isotropic lattice is not a direct summand");
    IntMatrix c(g, n);
    for (std::size_t j = 0; j < g; ++j) {
        // D y = U e_j, c = V y
        std::vector<Integer> y(n);
        for (std::size_t i = 0; i < g; ++i) y[i] = s.U(i, j);
        auto col = multiply(s.V, y);
        for (std::size_t i = 0; i < n; ++i) c(j, i) = col[i];
    }
    IntMatrix b = c;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j) {
            Integer alpha = -omega(c.row(i), c.row(j));
            for (std::size_t t = 0; t < n; ++t) b(i, t) += alpha * k(j, t);
        }
    return b;
}

inline ModP::Mat modp_dual(const ModP& f, const ModP::Mat& a)
{
    const std::size_t g = a.size(), n = g ? a[0].size() : 0;
    ModP::Mat m(g, ModP::Vec(n));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t t = 0; t < n; t += 2) {
            // row of c -> omega(a_i, c)
            m[i][t] = f.norm(-a[i][t + 1]);
            m[i][t + 1] = a[i][t];
        }
    ModP::Mat c;
    for (std::size_t j = 0; j < g; ++j) {
        auto sol = f.solve(m, unit(g, j), n);
        if (!sol) throw std::logic_error("dual basis system is inconsistent");
        c.push_back(*sol);
    }
    ModP::Mat b = c;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j) {
            std::int64_t alpha = f.norm(-omega_mod(f, c[i], c[j]));
            for (std::size_t t = 0; t < n; ++t) b[i][t] = f.add(b[i][t], f.mul(alpha, a[j][t]));
        }
    return b;
}

} // namespace detail

/// A Lagrangian A' with A and A' spanning the whole module (A over Q or Z/p).
inline Submodule lagrangian_complement(const Submodule& a)
{
    if (!a.ring().is_field())
        throw std::invalid_argument("lagrangian_complement needs field coefficients");
    if (!is_lagrangian(a))
        throw std::invalid_argument("lagrangian_complement: input is not Lagrangian");
    if (a.ring().kind() == CoefficientRing::Kind::Rationals)
        return Submodule(a.genus(), a.ring(), detail::integral_dual(a.generators()));
    ModP f(a.ring().characteristic());
    auto b = detail::modp_dual(f, f.from(a.generators()));
    return Submodule(a.genus(), a.ring(), ModP::to_int(b, 2 * a.genus()));
}

/// Integral Lagrangian complementary to a Z-Lagrangian over Z (direct sum is Z^2g).
inline Submodule integral_lagrangian_complement(const Submodule& k)
{
    if (k.ring().kind() != CoefficientRing::Kind::Integers || !is_lagrangian(k))
        throw std::invalid_argument("integral_lagrangian_complement needs a Z-Lagrangian");
    return Submodule(k.genus(), k.ring(), detail::integral_dual(k.generators()));
}

/// A Z-Lagrangian B whose reduction (Z/p) or rational span (Q) is A.
inline Submodule lift_lagrangian(const Submodule& a)
{
    if (!a.ring().is_field())
        throw std::invalid_argument("lift_lagrangian lifts from Q or Z/p");
    if (!is_lagrangian(a))
        throw std::invalid_argument("lift_lagrangian: input is not Lagrangian");
    const auto zz = CoefficientRing::integers();
    if (a.ring().kind() == CoefficientRing::Kind::Rationals)
        return Submodule(a.genus(), zz, a.generators());

    // Residue representatives that already form a Z-Lagrangian lift verbatim.
    Submodule direct(a.genus(), zz, a.generators());
    if (is_lagrangian(direct)) return direct;

    const std::uint64_t p = a.ring().characteristic();
    const std::size_t g = a.genus(), n = 2 * g;
    ModP f(p);
    auto arows = f.from(a.generators());
    auto brows = detail::modp_dual(f, arows);
    IntMatrix h(n, n);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t t = 0; t < n; ++t) {
            h(t, 2 * i) = arows[i][t];
            h(t, 2 * i + 1) = brows[i][t];
        }
    SymplecticMap lifted = lift_symplectic({a.ring(), h});
    IntMatrix rows(g, n);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t t = 0; t < n; ++t) rows(i, t) = lifted.matrix(t, 2 * i);
    return Submodule(g, zz, rows);
}

/// Integer generators for a rational submodule given with fractional entries.
inline IntMatrix clear_denominators(const std::vector<std::vector<boost::multiprecision::cpp_rational>>& rows,
                                    std::size_t cols)
{
    IntMatrix out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Integer l = 1;
        for (const auto& x : rows[i]) {
            Integer d = boost::multiprecision::denominator(x);
            l = l / gcd(l, d) * d;
        }
        for (std::size_t j = 0; j < cols; ++j)
            out(i, j) = boost::multiprecision::numerator(rows[i][j]) * (l / boost::multiprecision::denominator(rows[i][j]));
    }
    return out;
}

} // namespace embed3

#endif
