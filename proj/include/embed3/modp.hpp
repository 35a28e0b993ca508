#ifndef EMBED3_MODP_HPP
#define EMBED3_MODP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "integer.hpp"

namespace embed3 {

/// Dense linear algebra over Z/p for word-sized primes.
class ModP
{
public:
    using Vec = std::vector<std::int64_t>;
    using Mat = std::vector<Vec>;

    explicit ModP(std::uint64_t p) : p_(static_cast<std::int64_t>(p))
    {
        if (!is_prime(p) || p > (1ULL << 31))
            throw std::invalid_argument("ModP needs a prime below 2^31");
    }

    std::int64_t p() const { return p_; }

    std::int64_t norm(std::int64_t x) const
    {
        x %= p_;
        return x < 0 ? x + p_ : x;
    }
    std::int64_t norm(const Integer& x) const { return static_cast<std::int64_t>(floor_mod(x, Integer(p_))); }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return norm(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return norm(a - b); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return norm(a * b); }

    std::int64_t inv(std::int64_t a) const
    {
        a = norm(a);
        if (a == 0) throw std::domain_error("inverse of zero mod p");
        std::int64_t r = 1, e = p_ - 2, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    Mat from(const IntMatrix& m) const
    {
        Mat out(m.rows(), Vec(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = norm(m(i, j));
        return out;
    }

    static IntMatrix to_int(const Mat& m, std::size_t cols)
    {
        IntMatrix out(m.size(), cols);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) out(i, j) = m[i][j];
        return out;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref(Mat& a) const
    {
        std::vector<std::size_t> pivots;
        if (a.empty()) return pivots;
        const std::size_t cols = a[0].size();
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
            std::size_t pi = r;
            while (pi < a.size() && a[pi][c] == 0) ++pi;
            if (pi == a.size()) continue;
            std::swap(a[r], a[pi]);
            const std::int64_t s = inv(a[r][c]);
            for (auto& x : a[r]) x = mul(x, s);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i == r || a[i][c] == 0) continue;
                const std::int64_t f = a[i][c];
                for (std::size_t j = 0; j < cols; ++j) a[i][j] = sub(a[i][j], mul(f, a[r][j]));
            }
            pivots.push_back(c);
            ++r;
        }
        a.resize(r);
        return pivots;
    }

    std::size_t rank(Mat a) const { return rref(a).size(); }

    /// Row basis of {x : a x = 0}, one vector per free column, in column order.
    Mat kernel(Mat a, std::size_t cols) const
    {
        auto piv = rref(a);
        std::vector<bool> is_pivot(cols, false);
        for (auto c : piv) is_pivot[c] = true;
        Mat out;
        for (std::size_t f = 0; f < cols; ++f) {
            if (is_pivot[f]) continue;
            Vec x(cols, 0);
            x[f] = 1;
            for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = norm(-a[r][f]);
            out.push_back(std::move(x));
        }
        return out;
    }

    /// Some x with a x = b (free variables zero), or empty if inconsistent.
    std::optional<Vec> solve(const Mat& a, const Vec& b, std::size_t cols) const
    {
        Mat aug = a;
        for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(norm(b[i]));
        auto piv = rref(aug);
        if (!piv.empty() && piv.back() == cols) return std::nullopt;
        Vec x(cols, 0);
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
        return x;
    }

    Mat multiply(const Mat& a, const Mat& b) const
    {
        const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
        Mat c(n, Vec(m, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < k; ++l) {
                if (a[i][l] == 0) continue;
                for (std::size_t j = 0; j < m; ++j) c[i][j] = add(c[i][j], mul(a[i][l], b[l][j]));
            }
        return c;
    }

private:
    std::int64_t p_;
};

} // namespace embed3

#endif
