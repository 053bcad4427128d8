/**
 * @file permaction.hpp
 * @brief Linear actions of permutation groups: normalizers of subspaces,
 *        induced matrix groups, Young subgroups.
 *
 * A permutation s acts on Q^k by (s.v)[s(i)] = v[i], i.e. through the
 * matrix P_s with P_s e_i = e_{s(i)}; s -> P_s is a homomorphism.
 */
#pragma once

#include "caps.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "perm.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

namespace hilbres {

inline QMatrix permutation_matrix(const Perm& s) {
    QMatrix m(s.degree(), s.degree());
    for (std::size_t i = 0; i < s.degree(); ++i) m(s(static_cast<int>(i)), i) = 1;
    return m;
}

template <class T>
std::vector<T> permute_vector(const Perm& s, std::span<const T> v) {
    std::vector<T> out(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i) out[s(static_cast<int>(i))] = v[i];
    return out;
}

/// s maps u onto u. Rows are tested one at a time so a failure exits early.
template <class T>
bool preserves(const Perm& s, const Subspace<T>& u) {
    for (std::size_t i = 0; i < u.dim(); ++i)
        if (!u.contains(permute_vector<T>(s, u.basis().row(i)))) return false;
    return true;
}

/// Finite matrix group with every element listed. When the group is the
/// image of a permutation group, `labels[i]` is the first preimage of
/// element i and products are computed through the permutations.
template <class T>
class MatrixGroup {
public:
    MatrixGroup() = default;

    MatrixGroup(std::size_t dim, const T& zero, std::vector<Matrix<T>> elements, std::vector<Perm> labels = {},
                std::map<Perm, std::size_t> perm_index = {})
        : dim_(dim), zero_(scalar_traits<T>::zero_like(zero)),
          elements_(std::make_shared<const std::vector<Matrix<T>>>(std::move(elements))),
          labels_(std::make_shared<const std::vector<Perm>>(std::move(labels))),
          perm_index_(std::make_shared<const std::map<Perm, std::size_t>>(std::move(perm_index))) {
        for (const auto& e : *elements_)
            if (e.rows() != dim_ || e.cols() != dim_) throw Error("group element has wrong size");
        if (!labels_->empty() && labels_->size() != elements_->size()) throw Error("label count mismatch");
    }

    std::size_t dim() const { return dim_; }
    std::size_t order() const { return elements_->size(); }
    const T& scalar_zero() const { return zero_; }
    const std::vector<Matrix<T>>& elements() const { return *elements_; }
    const Matrix<T>& element(std::size_t i) const { return (*elements_)[i]; }
    bool has_labels() const { return !labels_->empty(); }
    const std::vector<Perm>& labels() const { return *labels_; }
    const std::map<Perm, std::size_t>& perm_index() const { return *perm_index_; }

    std::optional<std::size_t> index_of(const Matrix<T>& m) const {
        const auto& idx = index();
        auto it = idx.find(m);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Matrix<T>& m) const { return index_of(m).has_value(); }

    std::size_t identity_index() const {
        if (!perm_index().empty()) {
            auto it = perm_index().find(Perm::identity(labels().front().degree()));
            if (it != perm_index().end()) return it->second;
        }
        auto i = index_of(Matrix<T>::identity(dim_, zero_));
        if (!i) throw Error("matrix group lacks the identity");
        return *i;
    }

    /// Index of element(i) * element(j).
    std::size_t multiply_index(std::size_t i, std::size_t j) const {
        if (!perm_index().empty()) {
            auto it = perm_index().find(labels()[i] * labels()[j]);
            if (it != perm_index().end()) return it->second;
        }
        auto k = index_of(element(i) * element(j));
        if (!k) throw Error("matrix group is not closed under products");
        return *k;
    }

    /// Sub-list of elements (by ascending index), keeping labels and the permutation lookup.
    MatrixGroup subgroup(const std::vector<std::size_t>& indices) const {
        if (indices.size() == order()) return *this;
        std::vector<Matrix<T>> els;
        std::vector<Perm> labs;
        std::vector<std::size_t> remap(order(), order());
        els.reserve(indices.size());
        for (auto i : indices) {
            remap[i] = els.size();
            els.push_back(element(i));
            if (has_labels()) labs.push_back(labels()[i]);
        }
        std::map<Perm, std::size_t> pidx;
        for (const auto& [p, i] : perm_index())
            if (remap[i] != order()) pidx.emplace_hint(pidx.end(), p, remap[i]);
        return MatrixGroup(dim_, zero_, std::move(els), std::move(labs), std::move(pidx));
    }

    /// Indices of the subgroup generated by the given elements, ascending.
    std::vector<std::size_t> generated_indices(const std::vector<std::size_t>& gens) const {
        // Dimino-style: skip generators already inside the current closure
        std::vector<std::size_t> kept;
        std::set<std::size_t> seen;
        std::vector<std::size_t> order;
        auto id = identity_index();
        seen.insert(id);
        order.push_back(id);
        for (auto g : gens) {
            if (seen.count(g)) continue;
            kept.push_back(g);
            for (std::size_t head = 0; head < order.size(); ++head)
                for (auto h : kept) {
                    auto next = multiply_index(order[head], h);
                    if (seen.insert(next).second) order.push_back(next);
                }
        }
        return {seen.begin(), seen.end()};
    }

private:
    std::size_t dim_ = 0;
    T zero_{};
    // shared between copies; a group never changes after construction
    std::shared_ptr<const std::vector<Matrix<T>>> elements_ = std::make_shared<const std::vector<Matrix<T>>>();
    std::shared_ptr<const std::vector<Perm>> labels_ = std::make_shared<const std::vector<Perm>>();
    std::shared_ptr<const std::map<Perm, std::size_t>> perm_index_ =
        std::make_shared<const std::map<Perm, std::size_t>>();

    // matrix -> index, built on first lookup
    struct Index {
        std::once_flag once;
        std::map<Matrix<T>, std::size_t> map;
    };
    std::shared_ptr<Index> index_ = std::make_shared<Index>();

    const std::map<Matrix<T>, std::size_t>& index() const {
        std::call_once(index_->once, [this] {
            for (std::size_t i = 0; i < order(); ++i) index_->map.emplace(element(i), i);
        });
        return index_->map;
    }
};

using QMatrixGroup = MatrixGroup<Rational>;
using FMatrixGroup = MatrixGroup<FieldElement>;

/// Closure of explicit matrix generators (all of finite order).
template <class T>
MatrixGroup<T> close_matrix_group(const std::vector<Matrix<T>>& gens, std::size_t dim, const T& zero = T{},
                                  std::size_t cap = Caps{}.group_cap) {
    for (const auto& g : gens)
        if (g.rows() != dim || g.cols() != dim) throw Error("generator has wrong size");
    auto els = detail::close_under(Matrix<T>::identity(dim, zero), gens,
                                   [](const Matrix<T>& a, const Matrix<T>& b) { return a * b; }, cap);
    return MatrixGroup<T>(dim, zero, std::move(els));
}

/// Embeds a rational matrix group into the field `f`, keeping labels.
inline FMatrixGroup embed(const QMatrixGroup& g, const NumberField& f) {
    std::vector<FMatrix> els;
    for (const auto& e : g.elements()) els.push_back(embed(e, f));
    return FMatrixGroup(g.dim(), FieldElement::zero(f), std::move(els), g.labels(), g.perm_index());
}

/// Permutations (of S_k, or of `search` when given) whose matrix maps u onto u.
inline PermGroup normalizer_of_subspace(const QSubspace& u, const PermGroup* search = nullptr,
                                        const Caps& caps = Caps{}) {
    const std::size_t k = u.ambient_dim();
    std::vector<Perm> found;
    auto consider = [&](const Perm& s) {
        if (!preserves(s, u)) return;
        if (found.size() >= caps.group_cap) throw Error("group too large");
        found.push_back(s);
    };
    if (search) {
        if (search->degree() != k) throw Error("search group degree differs from the ambient dimension");
        for (const auto& s : search->elements()) consider(s);
    } else {
        if (k > caps.max_full_search_k) throw Error("k too large for full search");
        std::vector<int> images(k);
        std::iota(images.begin(), images.end(), 0);
        do {
            consider(Perm(images));
        } while (std::next_permutation(images.begin(), images.end()));
    }
    auto gens = reduced_generators(k, found);
    return PermGroup(k, std::move(gens), std::move(found));
}

struct RestrictedAction {
    QMatrixGroup group;  // action on u in canonical-basis coordinates
    PermGroup kernel;    // elements acting as the identity on u
};

/// s acts as the identity on u.
inline bool acts_trivially(const Perm& s, const QSubspace& u) {
    const auto& b = u.basis();
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.ambient_dim(); ++j)
            if (b(i, s(static_cast<int>(j))) != b(i, j)) return false;
    return true;
}

/// Induced action of g on u. Matrices act on coordinate columns: column i
/// holds the coordinates of s(b_i) for the canonical basis b of u.
/// Invariance is checked on the generators, which suffices for the group.
inline RestrictedAction restrict_action(const PermGroup& g, const QSubspace& u) {
    if (g.degree() != u.ambient_dim()) throw Error("group degree differs from the ambient dimension");
    for (const auto& s : g.generators())
        if (!preserves(s, u)) throw Error("element " + s.cycle_string() + " does not preserve the subspace");
    const std::size_t d = u.dim();
    const auto& basis = u.basis();
    const auto& pivots = u.pivots();
    // row j of the induced matrix is column s^-1(p_j) of the basis, so the
    // matrix is determined by the classes of equal basis columns it picks
    std::vector<int> column_class(u.ambient_dim());
    {
        std::map<std::vector<Rational>, int> classes;
        for (std::size_t c = 0; c < u.ambient_dim(); ++c) {
            std::vector<Rational> col;
            for (std::size_t i = 0; i < d; ++i) col.push_back(basis(i, c));
            column_class[c] = classes.emplace(std::move(col), static_cast<int>(classes.size())).first->second;
        }
    }
    std::vector<int> identity_key;
    for (auto p : pivots) identity_key.push_back(column_class[p]);

    std::vector<QMatrix> elements;
    std::vector<Perm> labels;
    std::map<std::vector<int>, std::size_t> seen;
    std::map<Perm, std::size_t> perm_index;
    std::vector<Perm> kernel;
    elements.reserve(g.order());
    labels.reserve(g.order());
    for (const auto& s : g.elements()) {
        auto inv = s.inverse();
        std::vector<int> key;
        key.reserve(d);
        for (auto p : pivots) key.push_back(column_class[inv(static_cast<int>(p))]);
        if (key == identity_key) kernel.push_back(s);
        auto [it, inserted] = seen.emplace(std::move(key), elements.size());
        if (inserted) {
            QMatrix a(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) a(j, i) = basis(i, inv(static_cast<int>(pivots[j])));
            elements.push_back(std::move(a));
            labels.push_back(s);
        }
        perm_index.emplace_hint(perm_index.end(), s, it->second);
    }
    auto kgens = reduced_generators(g.degree(), kernel);
    return {QMatrixGroup(d, Rational(0), std::move(elements), std::move(labels), std::move(perm_index)),
            PermGroup(g.degree(), std::move(kgens), std::move(kernel))};
}

/// S_{a_1} x ... x S_{a_l} acting on consecutive blocks of letters.
inline PermGroup young_subgroup(const Partition& delta, std::size_t k, std::size_t cap = Caps{}.group_cap) {
    if (delta.total() != static_cast<int>(k)) throw Error("partition does not sum to k");
    std::vector<Perm> gens;
    int start = 0;
    for (int a : delta.parts()) {
        for (int i = start; i + 1 < start + a; ++i) gens.push_back(Perm::from_cycles(k, {{i, i + 1}}));
        start += a;
    }
    return close_subgroup(gens, k, cap);
}

} // namespace hilbres
