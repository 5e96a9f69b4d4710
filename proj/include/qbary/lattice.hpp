#pragma once

// Integer linear algebra over M = Z^n: Hermite normal form, primitive
// vectors and affine lattice charts on rational hyperplanes.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qbary/error.hpp"
#include "qbary/exactnum.hpp"

namespace qbary {

using LatticeVector = std::vector<std::int64_t>;

inline std::string to_string(const LatticeVector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

/// Narrowing that refuses to lose information.
inline std::int64_t to_int64(const Integer& x)
{
    require(x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max(),
            ErrorKind::InvalidInput, "coordinate exceeds 64-bit range");
    return x.convert_to<std::int64_t>();
}

inline __int128 dot128(const LatticeVector& a, const LatticeVector& b)
{
    __int128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += static_cast<__int128>(a[i]) * b[i];
    return s;
}

inline std::int64_t dot(const LatticeVector& a, const LatticeVector& b)
{
    __int128 s = dot128(a, b);
    require(s >= std::numeric_limits<std::int64_t>::min() && s <= std::numeric_limits<std::int64_t>::max(),
            ErrorKind::InvalidInput, "inner product exceeds 64-bit range");
    return static_cast<std::int64_t>(s);
}

inline Rational dot(const RationalVector& a, const LatticeVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline RationalVector to_rational(const LatticeVector& v)
{
    RationalVector out;
    out.reserve(v.size());
    for (auto x : v)
        out.emplace_back(x);
    return out;
}

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b)
{
    LatticeVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

inline LatticeVector operator-(const LatticeVector& a, const LatticeVector& b)
{
    LatticeVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

inline LatticeVector operator*(std::int64_t s, const LatticeVector& a)
{
    LatticeVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = s * a[i];
    return out;
}

inline LatticeVector unit_vector(std::size_t dim, std::size_t i)
{
    LatticeVector e(dim, 0);
    e[i] = 1;
    return e;
}

/// v / gcd(v); rejects the zero vector.
inline LatticeVector primitive(const LatticeVector& v)
{
    std::int64_t g = 0;
    for (auto x : v)
        g = std::gcd(g, x);
    require(g != 0, ErrorKind::InvalidInput, "primitive() of the zero vector");
    LatticeVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] / g;
    return out;
}

inline bool is_primitive(const LatticeVector& v)
{
    std::int64_t g = 0;
    for (auto x : v)
        g = std::gcd(g, x);
    return g == 1;
}

// ---------------------------------------------------------------------------
// IntegerMatrix

class IntegerMatrix {
public:
    IntegerMatrix() = default;

    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            require(r.size() == cols_, ErrorKind::InvalidInput, "ragged matrix literal");
            for (long x : r)
                entries_.emplace_back(x);
        }
    }

    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntegerMatrix from_rows(const std::vector<LatticeVector>& rows)
    {
        IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    LatticeVector row(std::size_t r) const
    {
        LatticeVector out(cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            out[c] = to_int64((*this)(r, c));
        return out;
    }

    IntegerMatrix transposed() const
    {
        IntegerMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        require(a.cols_ == b.rows_, ErrorKind::InvalidInput, "matrix shape mismatch");
        IntegerMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += a(i, k) * b(k, j);
        return out;
    }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

    /// row[target] += factor * row[source]
    void add_row(std::size_t target, std::size_t source, const Integer& factor)
    {
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(target, c) += factor * (*this)(source, c);
    }

    void negate_row(std::size_t r)
    {
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(r, c) = -(*this)(r, c);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntegerMatrix m)
{
    require(m.rows() == m.cols(), ErrorKind::InvalidInput, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline Integer determinant(const std::vector<LatticeVector>& rows) { return determinant(IntegerMatrix::from_rows(rows)); }

/// Row Hermite normal form: returns (H, U) with U unimodular and H = U * A.
/// Pivots are positive and entries above a pivot are reduced into [0, pivot).
inline std::pair<IntegerMatrix, IntegerMatrix> hermite_normal_form(const IntegerMatrix& a)
{
    IntegerMatrix h = a;
    IntegerMatrix u = IntegerMatrix::identity(a.rows());
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
        // Euclid on the column below pivot_row until one nonzero entry remains.
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t r = pivot_row; r < h.rows(); ++r)
                if (h(r, col) != 0 && (best == h.rows() || abs(h(r, col)) < abs(h(best, col))))
                    best = r;
            if (best == h.rows())
                break;
            if (best != pivot_row) {
                h.swap_rows(best, pivot_row);
                u.swap_rows(best, pivot_row);
            }
            bool done = true;
            for (std::size_t r = pivot_row + 1; r < h.rows(); ++r) {
                if (h(r, col) == 0)
                    continue;
                Integer q = h(r, col) / h(pivot_row, col);
                h.add_row(r, pivot_row, -q);
                u.add_row(r, pivot_row, -q);
                if (h(r, col) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (h(pivot_row, col) == 0)
            continue;
        if (h(pivot_row, col) < 0) {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        const Integer& p = h(pivot_row, col);
        for (std::size_t r = 0; r < pivot_row; ++r) {
            Integer q = h(r, col) / p;
            if (h(r, col) - q * p < 0)
                q -= 1;
            if (q != 0) {
                h.add_row(r, pivot_row, -q);
                u.add_row(r, pivot_row, -q);
            }
        }
        ++pivot_row;
    }
    return {std::move(h), std::move(u)};
}

/// Exact inverse through Gauss-Jordan over Q; the matrix must be invertible.
inline std::vector<RationalVector> rational_inverse(const IntegerMatrix& m)
{
    const std::size_t n = m.rows();
    std::vector<RationalVector> a(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = Rational(m(i, j));
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        require(p < n, ErrorKind::InvalidInput, "singular matrix");
        std::swap(a[p], a[c]);
        Rational inv = Rational(1) / a[c][c];
        for (auto& x : a[c])
            x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            Rational f = a[r][c];
            for (std::size_t j = 0; j < 2 * n; ++j)
                a[r][j] -= f * a[c][j];
        }
    }
    std::vector<RationalVector> out(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i][j] = a[i][n + j];
    return out;
}

/// Solves x * rows = target for x (rows square and invertible), returning
/// std::nullopt-like empty vector when singular.
inline RationalVector solve_row_combination(const std::vector<LatticeVector>& rows, const RationalVector& target)
{
    const std::size_t n = rows.size();
    // Solve A^T x = target, A having `rows` as rows.
    std::vector<RationalVector> a(n, RationalVector(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = rows[j][i];
        a[i][n] = target[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return {};
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j <= n; ++j)
                a[r][j] -= f * a[c][j];
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n] / a[i][i];
    return x;
}

/// Rank over Q of a list of vectors.
inline std::size_t rank(const std::vector<RationalVector>& vectors)
{
    if (vectors.empty())
        return 0;
    auto a = vectors;
    const std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const std::vector<LatticeVector>& vectors)
{
    std::vector<RationalVector> q;
    for (const auto& v : vectors)
        q.push_back(to_rational(v));
    return rank(q);
}

// ---------------------------------------------------------------------------
// Hyperplane sublattices

namespace detail {

/// Unimodular U with U * v^T = e_1 for primitive v; row 0 pairs to 1 with v,
/// rows 1.. span the kernel sublattice.
inline IntegerMatrix completing_unimodular(const LatticeVector& v)
{
    require(!v.empty(), ErrorKind::InvalidInput, "empty vector");
    require(is_primitive(v), ErrorKind::InvalidInput, "vector " + to_string(v) + " is not primitive");
    IntegerMatrix column(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        column(i, 0) = v[i];
    return hermite_normal_form(column).second;
}

inline LatticeVector sign_normalized(LatticeVector b)
{
    for (auto x : b) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : b)
                y = -y;
        break;
    }
    return b;
}

} // namespace detail

/// Basis of {u in Z^n : <u, v> = 0} for primitive v (each basis vector has a
/// positive first nonzero entry).
inline std::vector<LatticeVector> hyperplane_basis(const LatticeVector& v)
{
    IntegerMatrix u = detail::completing_unimodular(v);
    std::vector<LatticeVector> basis;
    for (std::size_t r = 1; r < u.rows(); ++r)
        basis.push_back(detail::sign_normalized(u.row(r)));
    return basis;
}

/// Affine lattice coordinates on a hyperplane <u, v> = c.
///
/// Lattice points of the hyperplane correspond bijectively to Z^{n-1} via
/// origin + sum_j c_j basis_j. Euclidean measure in chart coordinates is the
/// lattice-normalized measure on the hyperplane.
class AffineLatticeChart {
public:
    AffineLatticeChart(LatticeVector origin, const LatticeVector& normal) : origin_(std::move(origin)), normal_(normal)
    {
        require(origin_.size() == normal.size(), ErrorKind::InvalidInput, "chart dimension mismatch");
        basis_ = hyperplane_basis(normal);
        std::vector<LatticeVector> rows{complement_of(normal)};
        rows.insert(rows.end(), basis_.begin(), basis_.end());
        complement_ = rows.front();
        inverse_ = rational_inverse(IntegerMatrix::from_rows(rows));
    }

    const LatticeVector& origin() const noexcept { return origin_; }
    const std::vector<LatticeVector>& basis() const noexcept { return basis_; }
    /// A lattice vector w with <w, normal> = 1.
    const LatticeVector& complement() const noexcept { return complement_; }

    bool contains(const LatticeVector& u) const { return dot(u - origin_, normal_) == 0; }

    /// Chart coordinates of a point on the hyperplane (integral for lattice points).
    RationalVector to_chart(const RationalVector& u) const
    {
        const std::size_t n = origin_.size();
        RationalVector diff = u - to_rational(origin_);
        RationalVector full(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                full[j] += diff[i] * inverse_[i][j];
        require(full[0] == 0, ErrorKind::InvalidInput, "point is not on the chart hyperplane");
        return RationalVector(full.begin() + 1, full.end());
    }

    LatticeVector to_chart(const LatticeVector& u) const
    {
        RationalVector c = to_chart(to_rational(u));
        LatticeVector out;
        for (const auto& x : c) {
            require(is_integral(x), ErrorKind::InternalInconsistency, "lattice point with fractional chart coordinate");
            out.push_back(to_int64(numerator_of(x)));
        }
        return out;
    }

    RationalVector from_chart(const RationalVector& c) const
    {
        RationalVector u = to_rational(origin_);
        for (std::size_t j = 0; j < basis_.size(); ++j)
            for (std::size_t i = 0; i < u.size(); ++i)
                u[i] += c[j] * basis_[j][i];
        return u;
    }

private:
    static LatticeVector complement_of(const LatticeVector& normal)
    {
        return detail::completing_unimodular(normal).row(0);
    }

    LatticeVector origin_;
    LatticeVector normal_;
    LatticeVector complement_;
    std::vector<LatticeVector> basis_;
    std::vector<RationalVector> inverse_;
};

} // namespace qbary
