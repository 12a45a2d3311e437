#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace operad {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

    static Matrix from_rows(const std::vector<Vector>& rs, std::size_t cols) {
        Matrix m(rs.size(), cols);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (rs[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rs[i][j];
        }
        return m;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vector row(std::size_t i) const {
        return Vector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    std::vector<Vector> row_list() const {
        std::vector<Vector> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vector apply(const Vector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix: dimension mismatch");
        Vector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix: dimension mismatch");
        Matrix z(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (sgn(x(i, k)) == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (sgn(y(k, j)) != 0) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

struct Rref {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

// first nonzero entry in column order is the pivot
inline Rref rref(Matrix m) {
    Rref out;
    std::size_t r = 0;
    const std::size_t R = m.rows(), C = m.cols();
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && sgn(m(p, c)) == 0) ++p;
        if (p == R) continue;
        if (p != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < C; ++j)
            if (sgn(m(r, j)) != 0) m(r, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < C; ++j)
                if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline std::vector<Vector> kernel_basis(const Matrix& m) {
    auto rr = rref(m);
    const std::size_t C = m.cols();
    std::vector<char> is_pivot(C, 0);
    for (auto p : rr.pivots) is_pivot[p] = 1;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        Vector v(C);
        v[f] = 1;
        for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incrementally maintained reduced row-echelon basis of a subspace.
class RowSpace {
public:
    explicit RowSpace(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size(); }
    const std::vector<Vector>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }

    Vector reduce(Vector v) const {
        check(v);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto p = piv_[i];
            if (sgn(v[p]) == 0) continue;
            Rational f = v[p];
            const auto& row = rows_[i];
            for (std::size_t j = p; j < dim_; ++j)
                if (sgn(row[j]) != 0) v[j] -= f * row[j];
        }
        return v;
    }

    bool contains(const Vector& v) const { return is_zero(reduce(v)); }

    // returns true if v enlarged the space
    bool add(const Vector& v0) {
        Vector v = reduce(v0);
        std::size_t p = 0;
        while (p < dim_ && sgn(v[p]) == 0) ++p;
        if (p == dim_) return false;
        Rational inv = 1 / v[p];
        for (std::size_t j = p; j < dim_; ++j)
            if (sgn(v[j]) != 0) v[j] *= inv;
        for (auto& row : rows_) {
            if (sgn(row[p]) == 0) continue;
            Rational f = row[p];
            for (std::size_t j = p; j < dim_; ++j)
                if (sgn(v[j]) != 0) row[j] -= f * v[j];
        }
        auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
        piv_.insert(piv_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

    std::size_t add_all(const std::vector<Vector>& vs) {
        std::size_t n = 0;
        for (const auto& v : vs) n += add(v) ? 1 : 0;
        return n;
    }

    bool operator==(const RowSpace& o) const { return dim_ == o.dim_ && rows_ == o.rows_; }

private:
    void check(const Vector& v) const {
        if (v.size() != dim_)
            throw std::invalid_argument("rowspace: vector of length " + std::to_string(v.size()) +
                                        " in dimension " + std::to_string(dim_));
    }

    std::size_t dim_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> piv_;
};

inline std::size_t common_dim(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    std::size_t d = a.empty() ? (b.empty() ? 0 : b[0].size()) : a[0].size();
    for (const auto& v : a)
        if (v.size() != d) throw std::invalid_argument("span: dimension mismatch");
    for (const auto& v : b)
        if (v.size() != d) throw std::invalid_argument("span: dimension mismatch");
    return d;
}

inline RowSpace span_of(const std::vector<Vector>& vs, std::size_t dim) {
    RowSpace s(dim);
    s.add_all(vs);
    return s;
}

inline bool span_equal(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    const auto d = common_dim(a, b);
    return span_of(a, d) == span_of(b, d);
}

// span(small) is a subspace of span(big)
inline bool span_contains(const std::vector<Vector>& big, const std::vector<Vector>& small) {
    const auto d = common_dim(big, small);
    auto s = span_of(big, d);
    for (const auto& v : small)
        if (!s.contains(v)) return false;
    return true;
}

// {w : v^T P w = 0 for all v in span}
inline std::vector<Vector> orthogonal_complement(const std::vector<Vector>& span, const Matrix& pairing) {
    if (pairing.rows() != pairing.cols()) throw std::invalid_argument("pairing must be square");
    const auto n = pairing.rows();
    for (const auto& v : span)
        if (v.size() != n) throw std::invalid_argument("orthogonal_complement: dimension mismatch");
    if (rank(pairing) != n) throw std::invalid_argument("orthogonal_complement: degenerate pairing");
    if (span.empty()) {
        std::vector<Vector> all;
        for (std::size_t i = 0; i < n; ++i) {
            Vector e(n);
            e[i] = 1;
            all.push_back(std::move(e));
        }
        return all;
    }
    Matrix vp = Matrix::from_rows(span, n) * pairing;
    return kernel_basis(vp);
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace operad
