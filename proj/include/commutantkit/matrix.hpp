#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "commutantkit/field.hpp"

namespace ck {

/// Dense matrix over an exact field K.  Every element carries enough context
/// (e.g. the modulus for Fp) so an exemplar entry is always available.
template <class K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const K& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix zero(std::size_t rows, std::size_t cols, const K& exemplar) {
        return Matrix(rows, cols, zero_like(exemplar));
    }
    static Matrix identity(std::size_t n, const K& exemplar) {
        Matrix m = zero(n, n, exemplar);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(exemplar);
        return m;
    }
    static Matrix from_rows(std::vector<std::vector<K>> rows) {
        if (rows.empty() || rows.front().empty())
            throw std::invalid_argument("Matrix: empty row data");
        Matrix m(rows.size(), rows.front().size(), rows.front().front());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    const K& exemplar() const {
        if (data_.empty()) throw std::logic_error("Matrix: no exemplar in empty matrix");
        return data_.front();
    }

    K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix r = zero(rows_, o.cols_, exemplar());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const K& a = (*this)(i, k);
                if (is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += a * o(k, j);
            }
        return r;
    }
    Matrix scaled(const K& c) const {
        Matrix r = *this;
        for (K& x : r.data_) x = x * c;
        return r;
    }
    Matrix operator-() const { return scaled(-one_like(exemplar())); }

    Matrix transpose() const {
        Matrix r(cols_, rows_, exemplar());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Matrix conjugate() const {
        Matrix r = *this;
        for (K& x : r.data_) x = ck::conj(x);
        return r;
    }

    Matrix pow(unsigned long e) const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: pow of non-square matrix");
        Matrix r = identity(rows_, exemplar());
        Matrix b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    K trace() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: trace of non-square matrix");
        K t = zero_like(exemplar());
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero_matrix() const {
        for (const K& x : data_)
            if (!ck::is_zero(x)) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        return *this == identity(rows_, exemplar());
    }

    std::vector<K> column(std::size_t j) const {
        std::vector<K> v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }
    std::vector<K> row(std::size_t i) const {
        std::vector<K> v;
        v.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v.push_back((*this)(i, j));
        return v;
    }

    /// Row-major flattening, the vectorization used throughout for spans of
    /// operators.
    std::vector<K> flatten() const { return data_; }
    static Matrix unflatten(const std::vector<K>& v, std::size_t rows, std::size_t cols) {
        if (v.size() != rows * cols) throw std::invalid_argument("Matrix: unflatten size mismatch");
        Matrix m(rows, cols, v.front());
        m.data_ = v;
        return m;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: apply size mismatch");
        std::vector<K> r(rows_, zero_like(exemplar()));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += scalar_str((*this)(i, j));
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }
    std::size_t rows_, cols_;
    std::vector<K> data_;
};

template <class K>
struct RrefResult {
    Matrix<K> R;                       // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column per nonzero row
    std::size_t rank = 0;
};

template <class K>
RrefResult<K> rref(const Matrix<K>& m) {
    RrefResult<K> out;
    out.R = m;
    Matrix<K>& R = out.R;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && is_zero(R(piv, c))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(R(piv, j), R(r, j));
        K inv = inverse_of(R(r, c));
        for (std::size_t j = 0; j < m.cols(); ++j) R(r, j) = R(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(R(i, c))) continue;
            K f = R(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) R(i, j) -= f * R(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

/// Basis of the right nullspace, one column vector per free column.
template <class K>
std::vector<std::vector<K>> nullspace(const Matrix<K>& m) {
    RrefResult<K> e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    K z = zero_like(m.exemplar());
    for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<K> v(m.cols(), z);
        v[free_c] = one_like(m.exemplar());
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.R(i, free_c);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of A x = b, or nullopt if inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& a, const std::vector<K>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
    Matrix<K> aug(a.rows(), a.cols() + 1, zero_like(a.exemplar()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RrefResult<K> e = rref(aug);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        if (e.pivots[i] == a.cols()) return std::nullopt;
    std::vector<K> x(a.cols(), zero_like(a.exemplar()));
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        x[e.pivots[i]] = e.R(i, a.cols());
    return x;
}

template <class K>
K det(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square matrix");
    Matrix<K> a = m;
    std::size_t n = m.rows();
    K d = one_like(m.exemplar());
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && is_zero(a(piv, c))) ++piv;
        if (piv == n) return zero_like(m.exemplar());
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            d = -d;
        }
        d = d * a(c, c);
        K inv = inverse_of(a(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(a(i, c))) continue;
            K f = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square matrix");
    std::size_t n = m.rows();
    Matrix<K> aug(n, 2 * n, zero_like(m.exemplar()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = one_like(m.exemplar());
    }
    RrefResult<K> e = rref(aug);
    if (e.rank < n || e.pivots[n - 1] >= n) return std::nullopt;
    Matrix<K> inv(n, n, zero_like(m.exemplar()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
    return inv;
}

/// Rank of the span of a list of vectors (as rows).
template <class K>
std::size_t span_rank(const std::vector<std::vector<K>>& vectors) {
    if (vectors.empty()) return 0;
    Matrix<K> m = Matrix<K>::from_rows(vectors);
    return rref(m).rank;
}

/// Canonical basis of a span: nonzero rows of the RREF.  Equal spans give
/// identical canonical bases, which is how algebra equality is decided.
template <class K>
std::vector<std::vector<K>> canonical_span_basis(const std::vector<std::vector<K>>& vectors) {
    if (vectors.empty()) return {};
    RrefResult<K> e = rref(Matrix<K>::from_rows(vectors));
    std::vector<std::vector<K>> basis;
    for (std::size_t i = 0; i < e.rank; ++i) basis.push_back(e.R.row(i));
    return basis;
}

/// Is v in the span of the (row) vectors?
template <class K>
bool in_span(const std::vector<std::vector<K>>& vectors, const std::vector<K>& v) {
    bool v_zero = true;
    for (const K& x : v) v_zero = v_zero && is_zero(x);
    if (v_zero) return true;
    if (vectors.empty()) return false;
    std::size_t r0 = span_rank(vectors);
    std::vector<std::vector<K>> ext = vectors;
    ext.push_back(v);
    return span_rank(ext) == r0;
}

}  // namespace ck
