/**
 * @file perm.hpp
 * @brief Permutations of {0, ..., k-1} and fully enumerated permutation groups.
 *
 * Letters are zero-based. Composition is right to left: (a * b)(i) = a(b(i)).
 */
#pragma once

#include "caps.hpp"
#include "error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace hilbres {

class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int x : images_) {
            if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[x])
                throw Error("image list is not a permutation");
            seen[x] = true;
        }
    }

    static Perm identity(std::size_t k) {
        std::vector<int> im(k);
        std::iota(im.begin(), im.end(), 0);
        return Perm(std::move(im));
    }

    /// Product of disjoint or overlapping cycles, applied right to left.
    static Perm from_cycles(std::size_t k, const std::vector<std::vector<int>>& cycles) {
        Perm result = identity(k);
        for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
            std::vector<int> im(k);
            std::iota(im.begin(), im.end(), 0);
            const auto& c = *it;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] < 0 || static_cast<std::size_t>(c[i]) >= k) throw Error("cycle letter out of range");
                im[c[i]] = c[(i + 1) % c.size()];
            }
            result = Perm(std::move(im)) * result;
        }
        return result;
    }

    std::size_t degree() const { return images_.size(); }
    const std::vector<int>& images() const { return images_; }
    int operator()(int i) const { return images_[i]; }

    bool is_identity() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != static_cast<int>(i)) return false;
        return true;
    }

    Perm inverse() const {
        std::vector<int> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
        Perm p;
        p.images_ = std::move(inv);
        return p;
    }

    /// +1 for even, -1 for odd permutations.
    int sign() const {
        int s = 1;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i]) continue;
            std::size_t len = 0;
            for (std::size_t j = i; !seen[j]; j = images_[j]) seen[j] = true, ++len;
            if (len % 2 == 0) s = -s;
        }
        return s;
    }

    std::size_t order() const {
        std::size_t o = 1;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i]) continue;
            std::size_t len = 0;
            for (std::size_t j = i; !seen[j]; j = images_[j]) seen[j] = true, ++len;
            o = std::lcm(o, len);
        }
        return o;
    }

    /// "(0 1)(2 3)", fixed points omitted, "()" for the identity.
    std::string cycle_string(int base = 0) const {
        std::string s;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i] || images_[i] == static_cast<int>(i)) continue;
            s += "(";
            for (std::size_t j = i; !seen[j]; j = images_[j]) {
                seen[j] = true;
                if (j != i) s += " ";
                s += std::to_string(static_cast<int>(j) + base);
            }
            s += ")";
        }
        return s.empty() ? "()" : s;
    }

    friend Perm operator*(const Perm& a, const Perm& b) {
        if (a.degree() != b.degree()) throw Error("permutations of different degrees");
        Perm p;
        p.images_.resize(a.degree());
        for (std::size_t i = 0; i < a.degree(); ++i) p.images_[i] = a.images_[b.images_[i]];
        return p;
    }

    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;

private:
    std::vector<int> images_;
};

namespace detail {

/// Elements generated by `gens` (closure under right multiplication by the
/// generators, which suffices for finite groups). Throws once more than
/// `cap` elements appear. Output is in discovery order, identity first.
template <class E, class Mul>
std::vector<E> close_under(const E& identity, const std::vector<E>& gens, Mul mul, std::size_t cap,
                           std::set<E>* seen_out = nullptr) {
    std::set<E> seen{identity};
    std::vector<E> order{identity};
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (const auto& g : gens) {
            E next = mul(order[head], g);
            if (seen.insert(next).second) {
                if (order.size() >= cap) throw Error("group too large");
                order.push_back(std::move(next));
            }
        }
    }
    if (seen_out) *seen_out = std::move(seen);
    return order;
}

} // namespace detail

class PermGroup {
public:
    PermGroup() = default;

    /// Takes an already closed element set (validated only for size).
    PermGroup(std::size_t k, std::vector<Perm> generators, std::vector<Perm> elements)
        : k_(k), generators_(std::move(generators)), elements_(std::move(elements)) {
        std::sort(elements_.begin(), elements_.end());
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    }

    std::size_t degree() const { return k_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<Perm>& elements() const { return elements_; }

    bool contains(const Perm& p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

    std::size_t index_of(const Perm& p) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
        if (it == elements_.end() || !(*it == p)) throw Error("permutation is not in the group");
        return static_cast<std::size_t>(it - elements_.begin());
    }

    /// Closed under products and inverses, contains the identity and its generators.
    bool satisfies_group_axioms() const {
        if (!contains(Perm::identity(k_))) return false;
        for (const auto& g : generators_)
            if (!contains(g)) return false;
        for (const auto& a : elements_) {
            if (!contains(a.inverse())) return false;
            for (const auto& b : elements_)
                if (!contains(a * b)) return false;
        }
        return true;
    }

private:
    std::size_t k_ = 0;
    std::vector<Perm> generators_;
    std::vector<Perm> elements_;
};

inline PermGroup close_subgroup(const std::vector<Perm>& gens, std::size_t k, std::size_t cap = Caps{}.group_cap) {
    if (cap < 1) throw Error("group cap must be positive");
    for (const auto& g : gens)
        if (g.degree() != k) throw Error("generator degree differs from k");
    auto elements = detail::close_under(Perm::identity(k), gens, [](const Perm& a, const Perm& b) { return a * b; }, cap);
    return PermGroup(k, gens, std::move(elements));
}

/// A generating subset of `elements` (assumed closed), chosen greedily in
/// the given order: an element is kept when it is outside the subgroup
/// generated by those kept before it.
inline std::vector<Perm> reduced_generators(std::size_t k, const std::vector<Perm>& elements) {
    std::vector<Perm> gens;
    std::set<Perm> generated{Perm::identity(k)};
    for (const auto& e : elements) {
        if (generated.count(e)) continue;
        gens.push_back(e);
        detail::close_under(Perm::identity(k), gens, [](const Perm& a, const Perm& b) { return a * b; },
                            elements.size() + 1, &generated);
    }
    return gens;
}

/// Subgroup of `g` made of the elements satisfying `pred`; the caller
/// guarantees that this set is a subgroup.
template <class Pred>
PermGroup filter_subgroup(const PermGroup& g, Pred pred) {
    std::vector<Perm> kept;
    for (const auto& e : g.elements())
        if (pred(e)) kept.push_back(e);
    auto gens = reduced_generators(g.degree(), kept);
    return PermGroup(g.degree(), std::move(gens), std::move(kept));
}

} // namespace hilbres
