#ifndef EMBED3_INTEGER_HPP
#define EMBED3_INTEGER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace embed3 {

using Integer = boost::multiprecision::cpp_int;

/// Exact integer with floor semantics for the remainder: r has the sign of b.
inline Integer floor_mod(const Integer& a, const Integer& b)
{
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        r += b;
    return r;
}

inline Integer gcd(Integer a, Integer b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline bool is_prime(std::uint64_t p)
{
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Prime divisors of |n| by trial division, ascending.
inline std::vector<std::uint64_t> prime_divisors(Integer n)
{
    std::vector<std::uint64_t> out;
    if (n < 0) n = -n;
    if (n < 2) return out;
    for (std::uint64_t d = 2; Integer(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) {
        if (n > Integer(std::numeric_limits<std::uint64_t>::max()))
            throw std::domain_error("prime factor exceeds 64 bits");
        out.push_back(static_cast<std::uint64_t>(n));
    }
    return out;
}

/**
 * Dense row-major matrix of arbitrary-precision integers.
 *
 * Zero-row and zero-column shapes are legal and behave as the empty map.
 */
class IntMatrix
{
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged matrix literal");
            for (long long x : row) data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols)
    {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw std::invalid_argument("row length does not match column count");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<Integer> row_vector(std::size_t i) const
    {
        auto r = row(i);
        return {r.begin(), r.end()};
    }

    std::vector<Integer> column_vector(std::size_t j) const
    {
        std::vector<Integer> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void append_row(std::span<const Integer> r)
    {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_)
            throw std::invalid_argument("appended row has wrong length");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k)
    {
        if (k == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
    }

    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& k)
    {
        if (k == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    void negate_col(std::size_t j)
    {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Submatrix of selected columns.
    IntMatrix columns(std::size_t first, std::size_t count) const
    {
        IntMatrix m(rows_, count);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
        return m;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }

    /// Entries reduced into [0, p).
    IntMatrix mod(const Integer& p) const
    {
        IntMatrix m = *this;
        for (auto& x : m.data_) x = floor_mod(x, p);
        return m;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline std::vector<Integer> multiply(const IntMatrix& m, std::span<const Integer> x)
{
    if (x.size() != m.cols())
        throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<Integer> y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

} // namespace embed3

#endif
