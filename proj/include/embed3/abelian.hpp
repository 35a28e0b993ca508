#ifndef EMBED3_ABELIAN_HPP
#define EMBED3_ABELIAN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "integer.hpp"

namespace embed3 {

// ------------------------------------------------------------------------
// Coefficient rings
// ------------------------------------------------------------------------

class CoefficientRing
{
public:
    enum class Kind { Integers, Rationals, PrimeField };

    static CoefficientRing integers() { return CoefficientRing(Kind::Integers, 0); }
    static CoefficientRing rationals() { return CoefficientRing(Kind::Rationals, 0); }
    static CoefficientRing prime_field(std::uint64_t p)
    {
        if (!is_prime(p))
            throw std::invalid_argument("coefficient modulus " + std::to_string(p) + " is not prime");
        return CoefficientRing(Kind::PrimeField, p);
    }

    Kind kind() const { return kind_; }
    bool is_field() const { return kind_ != Kind::Integers; }
    std::uint64_t characteristic() const { return p_; }

    std::string name() const
    {
        switch (kind_) {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        case Kind::PrimeField: return "Z/" + std::to_string(p_);
        }
        return "?";
    }

    friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

private:
    CoefficientRing(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
    Kind kind_;
    std::uint64_t p_;
};

// ------------------------------------------------------------------------
// Smith normal form
// ------------------------------------------------------------------------

struct SmithForm
{
    IntMatrix U, D, V;  // D = U * m * V

    std::vector<Integer> diagonal() const
    {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }

    std::size_t rank() const
    {
        std::size_t r = 0;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
            if (D(i, i) != 0) ++r;
        return r;
    }
};

namespace detail {

template <bool Track>
void smith_reduce(IntMatrix& d, IntMatrix* u, IntMatrix* v)
{
    const std::size_t rows = d.rows(), cols = d.cols();
    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // Pivot on the smallest nonzero magnitude to keep entries small.
            std::size_t pi = rows, pj = cols;
            Integer best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    const Integer& x = d(i, j);
                    if (x == 0) continue;
                    Integer ax = abs(x);
                    if (pi == rows || ax < best) {
                        best = ax;
                        pi = i;
                        pj = j;
                        if (best == 1) goto found;
                    }
                }
        found:
            if (pi == rows) return;
            d.swap_rows(t, pi);
            d.swap_cols(t, pj);
            if constexpr (Track) {
                u->swap_rows(t, pi);
                v->swap_cols(t, pj);
            }

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Integer q = d(i, t) / d(t, t);
                d.add_row(i, t, -q);
                if constexpr (Track) u->add_row(i, t, -q);
                if (d(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Integer q = d(t, j) / d(t, t);
                d.add_col(j, t, -q);
                if constexpr (Track) v->add_col(j, t, -q);
                if (d(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            d.add_row(t, bad, 1);
            if constexpr (Track) u->add_row(t, bad, 1);
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            if constexpr (Track) u->negate_row(t);
        }
    }
}

} // namespace detail

/// Smith normal form D = U m V with U, V unimodular and d_i | d_{i+1}.
inline SmithForm smith_normal_form(const IntMatrix& m)
{
    SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
    detail::smith_reduce<true>(s.D, &s.U, &s.V);
    return s;
}

/// Diagonal of the Smith form only; skips the transforms.
inline std::vector<Integer> smith_invariants(const IntMatrix& m)
{
    IntMatrix d = m;
    detail::smith_reduce<false>(d, nullptr, nullptr);
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
}

inline std::size_t rank_over_q(const IntMatrix& m)
{
    std::size_t r = 0;
    for (const auto& x : smith_invariants(m))
        if (x != 0) ++r;
    return r;
}

/// Basis (as rows) of the integer kernel {x : m x = 0}. The kernel is saturated.
inline IntMatrix integer_kernel(const IntMatrix& m)
{
    SmithForm s = smith_normal_form(m);
    const std::size_t r = s.rank();
    IntMatrix k(m.cols() - r, m.cols());
    for (std::size_t c = r; c < m.cols(); ++c)
        for (std::size_t i = 0; i < m.cols(); ++i) k(c - r, i) = s.V(i, c);
    return k;
}

/// Rows in Hermite normal form: positive pivots, entries above a pivot reduced to [0, pivot).
/// Zero rows are dropped, so the result is a canonical basis of the row lattice.
inline IntMatrix hermite_rows(const IntMatrix& m)
{
    IntMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        for (;;) {
            std::size_t pi = a.rows();
            for (std::size_t i = r; i < a.rows(); ++i)
                if (a(i, c) != 0 && (pi == a.rows() || abs(a(i, c)) < abs(a(pi, c)))) pi = i;
            if (pi == a.rows()) break;
            a.swap_rows(r, pi);
            bool done = true;
            for (std::size_t i = r + 1; i < a.rows(); ++i) {
                if (a(i, c) == 0) continue;
                a.add_row(i, r, -(a(i, c) / a(r, c)));
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r < a.rows() && a(r, c) != 0) {
            if (a(r, c) < 0) a.negate_row(r);
            for (std::size_t i = 0; i < r; ++i) {
                Integer q = (a(i, c) - floor_mod(a(i, c), a(r, c))) / a(r, c);
                a.add_row(i, r, -q);
            }
            ++r;
        }
    }
    IntMatrix out(0, a.cols());
    for (std::size_t i = 0; i < r; ++i) out.append_row(a.row(i));
    return out;
}

/// Saturation of the row lattice: the integer points of its rational span, as HNF rows.
inline IntMatrix saturate_rows(const IntMatrix& m)
{
    // (ker m)^perp over Z is exactly the saturated row lattice.
    return hermite_rows(integer_kernel(integer_kernel(m)));
}

// ------------------------------------------------------------------------
// Finitely generated abelian groups
// ------------------------------------------------------------------------

/// Z^r + Z/d1 + ... + Z/dt with d_i >= 2 and d_i | d_{i+1}.
class FGAbelianGroup
{
public:
    FGAbelianGroup() = default;

    /// Builds the canonical form from an arbitrary list of cyclic orders (0 means Z).
    static FGAbelianGroup from_cyclic(std::size_t free_rank, std::vector<Integer> orders)
    {
        IntMatrix rel(orders.size(), orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) rel(i, i) = orders[i];
        FGAbelianGroup g = from_smith(smith_invariants(rel), orders.size());
        g.free_rank_ += free_rank;
        return g;
    }

    static FGAbelianGroup free(std::size_t rank) { return from_cyclic(rank, {}); }

    /// Cokernel of a relation matrix given its Smith diagonal and the generator count.
    static FGAbelianGroup from_smith(const std::vector<Integer>& diag, std::size_t generators)
    {
        FGAbelianGroup g;
        std::size_t nonzero = 0;
        for (const auto& d : diag) {
            if (d == 0) continue;
            ++nonzero;
            if (d != 1) g.factors_.push_back(abs(d));
        }
        g.free_rank_ = generators - nonzero;
        return g;
    }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& invariant_factors() const { return factors_; }
    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
    bool is_free() const { return factors_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }

    FGAbelianGroup torsion() const
    {
        FGAbelianGroup t = *this;
        t.free_rank_ = 0;
        return t;
    }

    /// Order of the torsion subgroup.
    Integer torsion_order() const
    {
        Integer n = 1;
        for (const auto& d : factors_) n *= d;
        return n;
    }

    friend FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b)
    {
        std::vector<Integer> orders = a.factors_;
        orders.insert(orders.end(), b.factors_.begin(), b.factors_.end());
        return from_cyclic(a.free_rank_ + b.free_rank_, orders);
    }

    friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

    /// "Z^r + Z/d1 + ... + Z/dt"; the trivial group renders as "0".
    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        if (free_rank_ > 0) {
            os << "Z";
            if (free_rank_ > 1) os << '^' << free_rank_;
            first = false;
        }
        for (const auto& d : factors_) {
            os << (first ? "" : " + ") << "Z/" << d;
            first = false;
        }
        return first ? std::string("0") : os.str();
    }

    /// Exponents e with p^e exactly dividing the factors, for one prime, descending.
    std::vector<unsigned> primary_exponents(std::uint64_t p) const
    {
        std::vector<unsigned> e;
        for (const auto& d : factors_) {
            Integer x = d;
            unsigned k = 0;
            while (x % p == 0) {
                x /= p;
                ++k;
            }
            if (k) e.push_back(k);
        }
        std::sort(e.rbegin(), e.rend());
        return e;
    }

    std::vector<std::uint64_t> torsion_primes() const
    {
        return factors_.empty() ? std::vector<std::uint64_t>{} : prime_divisors(factors_.back());
    }

private:
    std::size_t free_rank_ = 0;
    std::vector<Integer> factors_;
};

/// A group given by generators and relation rows; the generators stay addressable.
struct GroupPresentation
{
    std::size_t generators = 0;
    IntMatrix relations;  // rows x generators

    FGAbelianGroup group() const;
};

/// Cokernel of the relation matrix, in canonical form.
inline FGAbelianGroup group_from_relations(std::size_t generators, const IntMatrix& relations)
{
    if (relations.rows() > 0 && relations.cols() != generators)
        throw std::invalid_argument("relation matrix has " + std::to_string(relations.cols()) +
                                    " columns but there are " + std::to_string(generators) +
                                    " generators");
    if (relations.rows() == 0) return FGAbelianGroup::free(generators);
    return FGAbelianGroup::from_smith(smith_invariants(relations), generators);
}

inline FGAbelianGroup GroupPresentation::group() const { return group_from_relations(generators, relations); }

/// Canonical presentation of a group on generators x_1.. (free ones last).
inline GroupPresentation presentation_of(const FGAbelianGroup& g)
{
    const auto& f = g.invariant_factors();
    GroupPresentation p{f.size() + g.free_rank(), IntMatrix(f.size(), f.size() + g.free_rank())};
    for (std::size_t i = 0; i < f.size(); ++i) p.relations(i, i) = f[i];
    return p;
}

/// G / <sub>, where sub rows are written in the presentation's generators.
inline FGAbelianGroup quotient_by_subgroup(const GroupPresentation& g, const IntMatrix& sub)
{
    if (sub.rows() > 0 && sub.cols() != g.generators)
        throw std::invalid_argument("subgroup vectors have " + std::to_string(sub.cols()) +
                                    " coordinates but the group has " + std::to_string(g.generators) +
                                    " generators");
    IntMatrix rel(0, g.generators);
    for (std::size_t i = 0; i < g.relations.rows(); ++i) rel.append_row(g.relations.row(i));
    for (std::size_t i = 0; i < sub.rows(); ++i) rel.append_row(sub.row(i));
    return group_from_relations(g.generators, rel);
}

/// dim_F (G tensor F) for a field F.
inline std::size_t dim_over_field(const FGAbelianGroup& g, const CoefficientRing& f)
{
    switch (f.kind()) {
    case CoefficientRing::Kind::Integers:
        throw std::invalid_argument("dim_over_field needs a field, got Z");
    case CoefficientRing::Kind::Rationals:
        return g.free_rank();
    case CoefficientRing::Kind::PrimeField: {
        std::size_t n = g.free_rank();
        for (const auto& d : g.invariant_factors())
            if (d % f.characteristic() == 0) ++n;
        return n;
    }
    }
    return 0;
}

namespace detail {

// Count of p-primary cyclic factors of order >= p^j, for every relevant (p, j).
inline bool dominated(const FGAbelianGroup& small, const FGAbelianGroup& big, std::size_t slack)
{
    for (std::uint64_t p : small.torsion_primes()) {
        auto es = small.primary_exponents(p);
        auto eb = big.primary_exponents(p);
        for (unsigned j = 1; j <= (es.empty() ? 0u : es.front()); ++j) {
            auto count = [j](const std::vector<unsigned>& e) {
                return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [j](unsigned x) { return x >= j; }));
            };
            if (count(es) > count(eb) + slack) return false;
        }
    }
    return true;
}

} // namespace detail

/// True iff there is an epimorphism source -> target.
inline bool is_quotient_of(const FGAbelianGroup& target, const FGAbelianGroup& source)
{
    if (target.free_rank() > source.free_rank()) return false;
    return detail::dominated(target, source, source.free_rank() - target.free_rank());
}

/// True iff sub is isomorphic to a subgroup of g.
inline bool is_subgroup_of(const FGAbelianGroup& sub, const FGAbelianGroup& g)
{
    if (sub.free_rank() > g.free_rank()) return false;
    return detail::dominated(sub, g, 0);
}

} // namespace embed3

#endif
