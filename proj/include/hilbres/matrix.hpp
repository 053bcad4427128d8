/**
 * @file matrix.hpp
 * @brief Dense row-major matrices over Rational or FieldElement.
 */
#pragma once

#include "error.hpp"
#include "numberfield.hpp"
#include "rational.hpp"

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

namespace hilbres {

/// Per-scalar hooks: zero/one in the scalar's field, a total order and the
/// coordinates over Q (used to split field-valued linear constraints).
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational one_like(const Rational&) { return Rational(1); }
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static int compare(const Rational& a, const Rational& b) {
        int c = cmp(a, b);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    static std::size_t rational_dimension(const Rational&) { return 1; }
    static Rational rational_component(const Rational& a, std::size_t) { return a; }
    static std::size_t field_degree(const Rational&) { return 1; }
};

template <>
struct scalar_traits<FieldElement> {
    static FieldElement zero_like(const FieldElement& a) { return FieldElement::zero(a.field()); }
    static FieldElement one_like(const FieldElement& a) { return FieldElement::one(a.field()); }
    static bool is_zero(const FieldElement& a) { return a.is_zero(); }
    static int compare(const FieldElement& a, const FieldElement& b) { return hilbres::compare(a, b); }
    static std::size_t rational_dimension(const FieldElement& a) { return a.field().degree(); }
    static Rational rational_component(const FieldElement& a, std::size_t j) { return a.coefficients()[j]; }
    static std::size_t field_degree(const FieldElement& a) { return a.field().degree(); }
};

template <class T>
concept ExactScalar = requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { scalar_traits<T>::is_zero(a) } -> std::same_as<bool>;
    { scalar_traits<T>::zero_like(a) } -> std::convertible_to<T>;
};

template <ExactScalar T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;

    /// rows x cols zero matrix; `zero` fixes the scalar field of the entries.
    Matrix(std::size_t rows, std::size_t cols, const T& zero = T{})
        : rows_(rows), cols_(cols), zero_(scalar_traits<T>::zero_like(zero)), data_(rows * cols, zero_) {}

    /// From nested rows; all rows must have the same length.
    Matrix(const std::vector<std::vector<T>>& rows, const T& zero = T{})
        : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()),
          zero_(rows.empty() || rows.front().empty() ? scalar_traits<T>::zero_like(zero)
                                                     : scalar_traits<T>::zero_like(rows.front().front())) {
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error("ragged matrix rows");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n, const T& zero = T{}) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one_like(m.zero_);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const T& zero() const { return zero_; }
    T one() const { return scalar_traits<T>::one_like(zero_); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::vector<T> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
    const std::vector<T>& data() const { return data_; }

    void append_row(std::span<const T> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw Error("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Rows [first, first + count).
    Matrix row_block(std::size_t first, std::size_t count) const {
        Matrix m(count, cols_, zero_);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
        return m;
    }

    /// Matrix times column vector.
    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != cols_) throw Error("matrix/vector size mismatch");
        std::vector<T> out(rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!scalar_traits<T>::is_zero(v[j]) && !scalar_traits<T>::is_zero((*this)(i, j)))
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const T& x = (*this)(i, j);
                if (i == j ? !(x == one()) : !scalar_traits<T>::is_zero(x)) return false;
            }
        return true;
    }

    bool is_zero_matrix() const {
        for (const auto& x : data_)
            if (!scalar_traits<T>::is_zero(x)) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
        Matrix c(a.rows_, b.cols_, a.zero_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t t = 0; t < a.cols_; ++t) {
                const T& x = a(i, t);
                if (scalar_traits<T>::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!scalar_traits<T>::is_zero(b(t, j))) c(i, j) += x * b(t, j);
            }
        return c;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.check_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.check_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Shape first, then lexicographic on entries.
    friend bool operator<(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (int c = scalar_traits<T>::compare(a.data_[i], b.data_[i])) return c < 0;
        return false;
    }

private:
    void check_same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    T zero_{};
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using FMatrix = Matrix<FieldElement>;
using QVector = std::vector<Rational>;

/// Parses integer literals row by row, e.g. qmatrix({{1, -1}, {0, 2}}).
inline QMatrix qmatrix(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        r.emplace_back();
        for (long x : row) r.back().emplace_back(x);
    }
    return QMatrix(r);
}

/// Embeds a rational matrix into the field `f`.
inline FMatrix embed(const QMatrix& m, const NumberField& f) {
    FMatrix out(m.rows(), m.cols(), FieldElement::zero(f));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = FieldElement(f, m(i, j));
    return out;
}

/// Inverse of embed; throws when some entry is irrational.
inline QMatrix to_rational(const FMatrix& m) {
    QMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_rational()) throw Error("matrix entry is not rational");
            out(i, j) = m(i, j).coefficients()[0];
        }
    return out;
}

template <class T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols(), a.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

} // namespace hilbres
