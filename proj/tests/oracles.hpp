// Brute-force reference computations used only by the test suites.
#ifndef EMBED3_TESTS_ORACLES_HPP
#define EMBED3_TESTS_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "embed3/abelian.hpp"

namespace oracle {

using embed3::FGAbelianGroup;
using embed3::Integer;
using embed3::IntMatrix;

/// gcd of all k x k minors, for k = 1..min(r, c). Products of Smith invariants.
inline std::vector<Integer> determinantal_divisors(const IntMatrix& m)
{
    const std::size_t r = m.rows(), c = m.cols(), n = std::min(r, c);
    std::vector<Integer> out;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer g = 0;
        std::vector<std::size_t> rs(k), cs(k);
        std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t,
                           const std::function<void()>&)>
            choose = [&](std::size_t start, std::size_t depth, std::vector<std::size_t>& sel, std::size_t limit,
                         const std::function<void()>& body) {
                if (depth == sel.size()) {
                    body();
                    return;
                }
                for (std::size_t i = start; i < limit; ++i) {
                    sel[depth] = i;
                    choose(i + 1, depth + 1, sel, limit, body);
                }
            };
        choose(0, 0, rs, r, [&] {
            choose(0, 0, cs, c, [&] {
                IntMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
                g = embed3::gcd(g, embed3::determinant(sub));
            });
        });
        out.push_back(g);
    }
    return out;
}

/// Smith invariants recovered from determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<Integer> smith_by_minors(const IntMatrix& m)
{
    auto dd = determinantal_divisors(m);
    std::vector<Integer> out;
    Integer prev = 1;
    for (const auto& d : dd) {
        if (d == 0) {
            out.push_back(0);
            continue;
        }
        out.push_back(d / prev);
        prev = d;
    }
    return out;
}

inline std::vector<std::vector<unsigned>> partitions(unsigned n, unsigned max_part)
{
    if (n == 0) return {{}};
    std::vector<std::vector<unsigned>> out;
    for (unsigned k = std::min(n, max_part); k >= 1; --k)
        for (auto rest : partitions(n - k, k)) {
            rest.insert(rest.begin(), k);
            out.push_back(rest);
        }
    return out;
}

/// Every finite abelian group of the given order, one per isomorphism class.
inline std::vector<FGAbelianGroup> groups_of_order(std::uint64_t n)
{
    std::vector<std::vector<Integer>> acc{{}};
    std::uint64_t m = n;
    for (std::uint64_t p = 2; m > 1; ++p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (!e) continue;
        std::vector<std::vector<Integer>> next;
        for (const auto& base : acc)
            for (const auto& part : partitions(e, e)) {
                auto orders = base;
                for (unsigned k : part) {
                    Integer q = 1;
                    for (unsigned i = 0; i < k; ++i) q *= p;
                    orders.push_back(q);
                }
                next.push_back(orders);
            }
        acc = std::move(next);
    }
    std::vector<FGAbelianGroup> out;
    for (const auto& o : acc) out.push_back(FGAbelianGroup::from_cyclic(0, o));
    return out;
}

/// Explicit finite group Z/n1 + ... + Z/nk with elements as mixed-radix indices.
class FiniteGroup
{
public:
    explicit FiniteGroup(const FGAbelianGroup& g)
    {
        for (const auto& d : g.invariant_factors()) moduli_.push_back(static_cast<unsigned>(d));
        order_ = 1;
        for (auto d : moduli_) order_ *= d;
        add_.assign(order_ * order_, 0);
        for (unsigned a = 0; a < order_; ++a)
            for (unsigned b = 0; b < order_; ++b) add_[a * order_ + b] = encode_sum(a, b);
    }

    unsigned order() const { return order_; }
    unsigned add(unsigned a, unsigned b) const { return add_[a * order_ + b]; }

    unsigned multiple(unsigned x, unsigned k) const
    {
        unsigned r = 0;
        for (unsigned i = 0; i < k; ++i) r = add(r, x);
        return r;
    }

    std::vector<bool> subgroup_join(const std::vector<bool>& s, unsigned x) const
    {
        std::vector<bool> out(order_, false);
        unsigned m = 0;
        do {
            for (unsigned y = 0; y < order_; ++y)
                if (s[y]) out[add(y, m)] = true;
            m = add(m, x);
        } while (m != 0);
        return out;
    }

private:
    unsigned encode_sum(unsigned a, unsigned b) const
    {
        unsigned r = 0, scale = 1;
        for (auto d : moduli_) {
            unsigned s = (a % d + b % d) % d;
            r += s * scale;
            scale *= d;
            a /= d;
            b /= d;
        }
        return r;
    }

    std::vector<unsigned> moduli_;
    unsigned order_ = 1;
    std::vector<unsigned> add_;
};

/**
 * Decides source ->> target by enumerating images of source generators.
 *
 * A free target part Z^b splits off (Z^b is projective), leaving the question
 * whether Z^(a-b) + Tors(source) maps onto Tors(target); that finite question is
 * answered by depth-first search over generator images, memoised on the
 * subgroup generated so far.
 */
inline bool brute_force_quotient(const FGAbelianGroup& target, const FGAbelianGroup& source)
{
    if (target.free_rank() > source.free_rank()) return false;
    FiniteGroup t(target.torsion());
    std::vector<unsigned> gen_orders;  // 0 = free
    for (std::size_t i = 0; i < source.free_rank() - target.free_rank(); ++i) gen_orders.push_back(0);
    for (const auto& d : source.invariant_factors()) gen_orders.push_back(static_cast<unsigned>(d));

    std::vector<std::vector<unsigned>> candidates;
    for (auto d : gen_orders) {
        std::vector<unsigned> c;
        for (unsigned x = 0; x < t.order(); ++x)
            if (d == 0 || t.multiple(x, d) == 0) c.push_back(x);
        candidates.push_back(std::move(c));
    }
    std::set<std::pair<std::size_t, std::vector<bool>>> dead;
    std::function<bool(std::size_t, const std::vector<bool>&)> dfs = [&](std::size_t i,
                                                                        const std::vector<bool>& s) {
        if (std::all_of(s.begin(), s.end(), [](bool b) { return b; })) return true;
        if (i == gen_orders.size()) return false;
        if (dead.count({i, s})) return false;
        for (unsigned x : candidates[i]) {
            if (s[x] && x != 0) continue;
            if (dfs(i + 1, t.subgroup_join(s, x))) return true;
        }
        dead.insert({i, s});
        return false;
    };
    std::vector<bool> zero(t.order(), false);
    zero[0] = true;
    return dfs(0, zero);
}

} // namespace oracle

#endif
