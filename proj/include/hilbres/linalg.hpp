/**
 * @file linalg.hpp
 * @brief Exact linear algebra: row reduction, kernels, canonical subspaces,
 *        determinants and commutant / intertwiner solving.
 *
 * Subspaces are always held by their reduced row-echelon basis, so equality
 * of subspaces is equality of bases.
 */
#pragma once

#include "error.hpp"
#include "matrix.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace hilbres {

template <class T>
struct RrefResult {
    Matrix<T> reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Zero rows end up at the bottom, pivots are 1.
template <class T>
RrefResult<T> rref(Matrix<T> m) {
    using tr = scalar_traits<T>;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && tr::is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = m.one() / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!tr::is_zero(m(r, j))) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || tr::is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!tr::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
    return rref(m).rank;
}

template <class T>
class Subspace {
public:
    Subspace() = default;

    /// Row span of `rows`; the ambient space is Q^cols (or F^cols).
    static Subspace span(const Matrix<T>& rows) {
        auto red = rref(rows);
        Subspace s;
        s.ambient_ = rows.cols();
        s.basis_ = red.reduced.row_block(0, red.rank);
        s.pivots_ = std::move(red.pivots);
        return s;
    }

    static Subspace zero(std::size_t n, const T& zero = T{}) { return span(Matrix<T>(0, n, zero)); }
    static Subspace full(std::size_t n, const T& zero = T{}) { return span(Matrix<T>::identity(n, zero)); }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    std::size_t codim() const { return ambient_ - dim(); }
    const Matrix<T>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const T& scalar_zero() const { return basis_.zero(); }

    bool contains(std::span<const T> v) const {
        if (v.size() != ambient_) throw Error("vector does not live in the ambient space");
        std::vector<T> r(v.begin(), v.end());
        for (std::size_t i = 0; i < dim(); ++i) {
            T c = r[pivots_[i]];
            if (scalar_traits<T>::is_zero(c)) continue;
            for (std::size_t j = pivots_[i]; j < ambient_; ++j)
                if (!scalar_traits<T>::is_zero(basis_(i, j))) r[j] -= c * basis_(i, j);
        }
        for (const auto& x : r)
            if (!scalar_traits<T>::is_zero(x)) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        check_ambient(other);
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    /// Coordinates of v (assumed to lie in the subspace) in the canonical basis.
    std::vector<T> coordinates(std::span<const T> v) const {
        std::vector<T> c;
        c.reserve(dim());
        for (auto p : pivots_) c.push_back(v[p]);
        return c;
    }

    /// The vector with the given coordinates in the canonical basis.
    std::vector<T> combine(std::span<const T> coords) const {
        std::vector<T> v(ambient_, scalar_zero());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) v[j] += coords[i] * basis_(i, j);
        return v;
    }

    void check_ambient(const Subspace& other) const {
        if (ambient_ != other.ambient_) throw Error("ambient dimension mismatch");
        if (scalar_traits<T>::field_degree(scalar_zero()) != scalar_traits<T>::field_degree(other.scalar_zero()))
            throw Error("subspaces live over different fields");
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    Matrix<T> basis_;
    std::vector<std::size_t> pivots_;
};

using QSubspace = Subspace<Rational>;
using FSubspace = Subspace<FieldElement>;

/// {v : m v = 0}.
template <class T>
Subspace<T> kernel(const Matrix<T>& m) {
    auto red = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : red.pivots) is_pivot[p] = true;
    Matrix<T> rows(0, m.cols(), m.zero());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), m.zero());
        v[f] = m.one();
        for (std::size_t i = 0; i < red.rank; ++i) v[red.pivots[i]] = -red.reduced(i, f);
        rows.append_row(v);
    }
    return Subspace<T>::span(rows);
}

/// {w : <v, w> = 0 for all v in s} under the bilinear pairing sum v_i w_i.
template <class T>
Subspace<T> annihilator(const Subspace<T>& s) {
    if (s.dim() == 0) return Subspace<T>::full(s.ambient_dim(), s.scalar_zero());
    return kernel(s.basis());
}

template <class T>
bool subspace_equal(const Subspace<T>& a, const Subspace<T>& b) {
    a.check_ambient(b);
    return a == b;
}

template <class T>
Subspace<T> subspace_sum(const Subspace<T>& a, const Subspace<T>& b) {
    a.check_ambient(b);
    Matrix<T> stacked(0, a.ambient_dim(), a.scalar_zero());
    for (std::size_t i = 0; i < a.dim(); ++i) stacked.append_row(a.basis().row(i));
    for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.basis().row(i));
    return Subspace<T>::span(stacked);
}

template <class T>
Subspace<T> subspace_intersect(const Subspace<T>& a, const Subspace<T>& b) {
    a.check_ambient(b);
    auto na = annihilator(a), nb = annihilator(b);
    Matrix<T> constraints(0, a.ambient_dim(), a.scalar_zero());
    for (std::size_t i = 0; i < na.dim(); ++i) constraints.append_row(na.basis().row(i));
    for (std::size_t i = 0; i < nb.dim(); ++i) constraints.append_row(nb.basis().row(i));
    return kernel(constraints);
}

enum class SubspaceOp { equal, contains, intersect, sum };

template <class T>
std::variant<bool, Subspace<T>> subspace_ops(const Subspace<T>& a, const Subspace<T>& b, SubspaceOp op) {
    switch (op) {
    case SubspaceOp::equal: return subspace_equal(a, b);
    case SubspaceOp::contains: a.check_ambient(b); return a.contains(b);
    case SubspaceOp::intersect: return subspace_intersect(a, b);
    case SubspaceOp::sum: return subspace_sum(a, b);
    }
    throw Error("unknown subspace operation");
}

/// Fraction-free (Bareiss) determinant.
template <class T>
T det(Matrix<T> m) {
    if (!m.is_square()) throw Error("determinant of a non-square matrix");
    using tr = scalar_traits<T>;
    const std::size_t n = m.rows();
    T prev = m.one();
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && tr::is_zero(m(p, k))) ++p;
        if (p == n) return m.zero();
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = m.zero();
        }
        prev = m(k, k);
    }
    T d = n == 0 ? m.one() : m(n - 1, n - 1);
    return negate ? T(-d) : d;
}

namespace detail {

/// Row-reduces an accumulating equation system once it grows past `limit`
/// rows, keeping memory bounded by the number of unknowns.
inline void compact(QMatrix& eqs, std::size_t limit) {
    if (eqs.rows() <= limit) return;
    auto red = rref(eqs);
    eqs = red.reduced.row_block(0, red.rank);
}

} // namespace detail

/// Rational p x q matrices M with A M = M B for every pair (A, B).
/// Field-valued pairs are split over the power basis of the field, so the
/// unknowns stay rational. The result lives in Q^(p*q), entry (r, c) of M
/// at index r*q + c.
template <class T>
QSubspace solve_intertwiners(const std::vector<std::pair<Matrix<T>, Matrix<T>>>& pairs, std::size_t p,
                             std::size_t q) {
    using tr = scalar_traits<T>;
    const std::size_t unknowns = p * q;
    QMatrix eqs(0, unknowns);
    std::vector<Rational> row(unknowns);
    for (const auto& [a, b] : pairs) {
        if (a.rows() != p || a.cols() != p || b.rows() != q || b.cols() != q)
            throw Error("constraint size mismatch");
        std::size_t degree = tr::field_degree(a.zero());
        if (tr::field_degree(b.zero()) != degree) throw Error("constraints over different fields");
        for (std::size_t comp = 0; comp < degree; ++comp) {
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t c = 0; c < q; ++c) {
                    std::fill(row.begin(), row.end(), Rational(0));
                    bool nonzero = false;
                    for (std::size_t t = 0; t < p; ++t) {
                        Rational x = tr::rational_component(a(i, t), comp);
                        if (sgn(x) != 0) row[t * q + c] += x, nonzero = true;
                    }
                    for (std::size_t t = 0; t < q; ++t) {
                        Rational x = tr::rational_component(b(t, c), comp);
                        if (sgn(x) != 0) row[i * q + t] -= x, nonzero = true;
                    }
                    if (nonzero) eqs.append_row(row);
                }
            detail::compact(eqs, 4 * unknowns + 16);
        }
    }
    return kernel(eqs);
}

/// Rational d x d matrices commuting with every constraint.
template <class T>
QSubspace solve_commutant(const std::vector<Matrix<T>>& constraints) {
    if (constraints.empty()) throw Error("commutant needs at least one constraint");
    const std::size_t d = constraints.front().rows();
    std::vector<std::pair<Matrix<T>, Matrix<T>>> pairs;
    for (const auto& c : constraints) {
        if (!c.is_square() || c.rows() != d) throw Error("constraint size mismatch");
        pairs.emplace_back(c, c);
    }
    return solve_intertwiners(pairs, d, d);
}

/// Reassembles a vectorized p x q matrix.
inline QMatrix unvectorize(std::span<const Rational> v, std::size_t p, std::size_t q) {
    QMatrix m(p, q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) m(i, j) = v[i * q + j];
    return m;
}

/// Rank of the Gram matrix B B^T of the canonical basis B.
inline std::size_t gram_rank(const QSubspace& u) {
    return rank(u.basis() * u.basis().transpose());
}

inline std::size_t gram_rank(const FSubspace& u) {
    if (u.scalar_zero().field().degree() != 1) throw Error("gram_rank needs a rational subspace");
    return gram_rank(QSubspace::span(to_rational(u.basis())));
}

/// Coefficients x with sum_i x_i * rows_i = v, if v lies in the row span.
template <class T>
std::optional<std::vector<T>> solve_in_rows(const Matrix<T>& rows, std::span<const T> v) {
    if (v.size() != rows.cols()) throw Error("vector does not live in the ambient space");
    Matrix<T> aug(rows.cols(), rows.rows() + 1, rows.zero());
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) aug(j, i) = rows(i, j);
    for (std::size_t j = 0; j < rows.cols(); ++j) aug(j, rows.rows()) = v[j];
    auto red = rref(aug);
    if (!red.pivots.empty() && red.pivots.back() == rows.rows()) return std::nullopt;
    std::vector<T> x(rows.rows(), rows.zero());
    for (std::size_t i = 0; i < red.rank; ++i) x[red.pivots[i]] = red.reduced(i, rows.rows());
    return x;
}

} // namespace hilbres
