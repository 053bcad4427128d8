/**
 * @file reflect.hpp
 * @brief Pseudo-reflection detection, reflection subgroups, the
 *        Chevalley-Shephard-Todd smoothness verdict and equivariant maps.
 *
 * The nontrivial eigenvalue of a pseudo-reflection is read off as its
 * determinant, which is exact because the fixed space has codimension one.
 */
#pragma once

#include "error.hpp"
#include "linalg.hpp"
#include "permaction.hpp"

#include <optional>
#include <type_traits>
#include <vector>

namespace hilbres {

template <class T>
Subspace<T> fixed_space(const Matrix<T>& g) {
    if (!g.is_square()) throw Error("fixed space of a non-square matrix");
    return kernel(g - Matrix<T>::identity(g.rows(), g.zero()));
}

/// Smallest m <= max_order with g^m = 1.
template <class T>
std::size_t matrix_order(const Matrix<T>& g, std::size_t max_order) {
    Matrix<T> power = g;
    for (std::size_t m = 1; m <= max_order; ++m) {
        if (power.is_identity()) return m;
        power = power * g;
    }
    throw Error("not finite order within bound");
}

template <class T>
struct ReflectionRecord {
    Matrix<T> element;
    Subspace<T> fixed_space;
    std::size_t order = 0;
    T eigenvalue;  // det(element)
    bool is_real = false;
};

enum class ElementKind { identity, pseudo_reflection, other };

template <class T>
struct ElementClass {
    ElementKind kind = ElementKind::other;
    std::size_t order = 0;  // 0 when not computed
    std::optional<ReflectionRecord<T>> reflection;
};

namespace detail {

template <class T>
ElementClass<T> classify(const Matrix<T>& g, std::size_t max_order, bool order_of_others) {
    ElementClass<T> out;
    auto fs = fixed_space(g);
    if (fs.codim() == 0) {
        out.kind = ElementKind::identity;
        out.order = 1;
        return out;
    }
    if (fs.codim() != 1) {
        out.kind = ElementKind::other;
        if (order_of_others) out.order = matrix_order(g, max_order);
        return out;
    }
    out.kind = ElementKind::pseudo_reflection;
    out.order = matrix_order(g, max_order);
    T lambda = det(g);
    bool real = out.order == 2;
    out.reflection = ReflectionRecord<T>{g, std::move(fs), out.order, std::move(lambda), real};
    return out;
}

} // namespace detail

template <class T>
ElementClass<T> classify_element(const Matrix<T>& g, std::size_t max_order) {
    return detail::classify(g, max_order, true);
}

template <class T>
struct ReflectionSubgroup {
    std::vector<ReflectionRecord<T>> reflections;
    std::vector<std::size_t> reflection_indices;  // into the analysed group
    std::vector<std::size_t> generated_indices;   // ascending
    MatrixGroup<T> generated;
};

/// All pseudo-reflections of g and the subgroup they generate.
template <class T>
ReflectionSubgroup<T> reflection_subgroup(const MatrixGroup<T>& g) {
    ReflectionSubgroup<T> out;
    const std::size_t bound = std::max<std::size_t>(g.order(), 1);
    for (std::size_t i = 0; i < g.order(); ++i) {
        if constexpr (std::is_same_v<T, Rational>) {
            // a rational pseudo-reflection of finite order has eigenvalues 1 (d - 1 times) and -1
            const auto& e = g.element(i);
            Rational tr = 0;
            for (std::size_t j = 0; j < e.rows(); ++j) tr += e(j, j);
            if (tr + 2 != Rational(static_cast<long>(e.rows()))) continue;
        }
        auto cls = detail::classify(g.element(i), bound, false);
        if (cls.kind != ElementKind::pseudo_reflection) continue;
        out.reflections.push_back(std::move(*cls.reflection));
        out.reflection_indices.push_back(i);
    }
    out.generated_indices = g.order() == 0 ? std::vector<std::size_t>{} : g.generated_indices(out.reflection_indices);
    out.generated = g.subgroup(out.generated_indices);
    return out;
}

struct Smoothness {
    bool smooth = true;
    std::optional<std::size_t> witness;  // index of an element outside the reflection subgroup
};

template <class T>
Smoothness cst_smoothness(const MatrixGroup<T>& g, const ReflectionSubgroup<T>& refl) {
    Smoothness s;
    if (refl.generated.order() == g.order()) return s;
    s.smooth = false;
    std::vector<bool> inside(g.order(), false);
    for (auto i : refl.generated_indices) inside[i] = true;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (!inside[i]) {
            s.witness = i;
            break;
        }
    return s;
}

/// Quotient by g is smooth iff g is generated by pseudo-reflections.
template <class T>
Smoothness cst_smoothness(const MatrixGroup<T>& g) {
    return cst_smoothness(g, reflection_subgroup(g));
}

template <class T>
bool all_reflections_real(const ReflectionSubgroup<T>& refl) {
    for (const auto& r : refl.reflections)
        if (r.order != 2) return false;
    return true;
}

template <class T>
bool all_reflections_real(const MatrixGroup<T>& g) {
    return all_reflections_real(reflection_subgroup(g));
}

/// Matrix of g restricted to the invariant subspace s (coordinates in the
/// canonical basis, acting on columns); nullopt when s is not invariant.
template <class T>
std::optional<Matrix<T>> induced_matrix(const Matrix<T>& g, const Subspace<T>& s) {
    const std::size_t d = s.dim();
    Matrix<T> a(d, d, g.zero());
    for (std::size_t i = 0; i < d; ++i) {
        auto w = g.apply(s.basis().row(i));
        if (!s.contains(w)) return std::nullopt;
        auto c = s.coordinates(w);
        for (std::size_t j = 0; j < d; ++j) a(j, i) = c[j];
    }
    return a;
}

/// Space of maps a -> b commuting with every matrix in `gens`, as
/// vectorized dim(b) x dim(a) matrices. Generators of a group suffice.
template <class T>
QSubspace equivariant_maps(const std::vector<Matrix<T>>& gens, const Subspace<T>& a, const Subspace<T>& b) {
    std::vector<std::pair<Matrix<T>, Matrix<T>>> pairs;
    for (const auto& e : gens) {
        if (e.rows() != a.ambient_dim() || e.rows() != b.ambient_dim())
            throw Error("subspace does not live in the acted space");
        auto ga = induced_matrix(e, a);
        auto gb = induced_matrix(e, b);
        if (!ga || !gb) throw Error("invariance violated");
        pairs.emplace_back(std::move(*gb), std::move(*ga));
    }
    if (pairs.empty()) return QSubspace::full(a.dim() * b.dim());
    return solve_intertwiners(pairs, b.dim(), a.dim());
}

template <class T>
QSubspace equivariant_maps(const MatrixGroup<T>& g, const Subspace<T>& a, const Subspace<T>& b) {
    if (a.ambient_dim() != g.dim() || b.ambient_dim() != g.dim()) throw Error("subspace does not live in the acted space");
    return equivariant_maps(g.elements(), a, b);
}

template <class T>
std::size_t hom_g_dimension(const MatrixGroup<T>& g, const Subspace<T>& a, const Subspace<T>& b) {
    return equivariant_maps(g, a, b).dim();
}

/// The doubled module V = U + U, the rational model of W (x) U with the
/// group acting trivially on W.
template <class T>
struct TensorModel {
    std::size_t copy_dim = 0;
    Subspace<T> first_copy;   // first copy_dim coordinates of the doubled space
    Subspace<T> second_copy;  // last copy_dim coordinates
    Matrix<T> certificate;    // identity map first -> second
};

template <class T>
TensorModel<T> tensor_model(const Subspace<T>& u) {
    const std::size_t d = u.dim();
    const T& z = u.scalar_zero();
    Matrix<T> first(d, 2 * d, z), second(d, 2 * d, z);
    for (std::size_t i = 0; i < d; ++i) {
        first(i, i) = first.one();
        second(i, d + i) = second.one();
    }
    return {d, Subspace<T>::span(first), Subspace<T>::span(second), Matrix<T>::identity(d, z)};
}

/// Block-diagonal doubled action A -> diag(A, A).
template <class T>
MatrixGroup<T> doubled_action(const MatrixGroup<T>& g) {
    std::vector<Matrix<T>> els;
    els.reserve(g.order());
    for (const auto& e : g.elements()) els.push_back(block_diagonal(e, e));
    return MatrixGroup<T>(2 * g.dim(), g.scalar_zero(), std::move(els), g.labels(), g.perm_index());
}

/// m intertwines the actions on a and b: g|_b m = m g|_a for every g in gens.
template <class T>
bool is_intertwiner(const std::vector<Matrix<T>>& gens, const Subspace<T>& a, const Subspace<T>& b, const Matrix<T>& m) {
    for (const auto& e : gens) {
        auto ga = induced_matrix(e, a);
        auto gb = induced_matrix(e, b);
        if (!ga || !gb) return false;
        if (!(*gb * m == m * *ga)) return false;
    }
    return true;
}

template <class T>
bool is_intertwiner(const MatrixGroup<T>& g, const Subspace<T>& a, const Subspace<T>& b, const Matrix<T>& m) {
    return is_intertwiner(g.elements(), a, b, m);
}

} // namespace hilbres
