/**
 * @file coxeter.hpp
 * @brief Root systems of rational real reflection groups and their Coxeter
 *        classification against the finite catalog.
 */
#pragma once

#include "error.hpp"
#include "linalg.hpp"
#include "reflect.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hilbres {

struct CoxeterComponent {
    std::vector<std::vector<Rational>> simple_roots;  // primitive integer vectors
    std::vector<std::vector<int>> coxeter_matrix;
    char family = 'A';  // A B D E F G H I
    std::size_t rank = 0;
    int dihedral_order = 0;  // m for I2(m), 0 otherwise
    std::string label;
    bool crystallographic = true;
    Integer group_order;  // catalog order of the Coxeter group
};

namespace coxeter_catalog {

inline Integer factorial(std::size_t n) {
    Integer f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
    return f;
}

/// Fills family/label/order from the Coxeter matrix; false when the graph
/// is not a finite-type diagram.
inline bool identify(CoxeterComponent& c) {
    const auto& m = c.coxeter_matrix;
    const std::size_t n = m.size();
    c.rank = n;
    auto set = [&](char fam, std::string label, Integer order) {
        c.family = fam;
        c.label = std::move(label);
        c.group_order = std::move(order);
        return true;
    };
    c.crystallographic = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int v = m[i][j];
            if (i != j && v != 2 && v != 3 && v != 4 && v != 6) c.crystallographic = false;
        }
    const std::string sn = std::to_string(n);
    if (n == 1) return set('A', "A_1", 2);
    if (n == 2) {
        int mm = m[0][1];
        switch (mm) {
        case 3: return set('A', "A_2", 6);
        case 4: return set('B', "B_2", 8);
        case 6: return set('G', "G_2", 12);
        default:
            if (mm < 3) return false;
            c.dihedral_order = mm;
            return set('I', "I_2(" + std::to_string(mm) + ")", 2 * mm);
        }
    }
    struct Edge {
        std::size_t a, b;
        int label;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j] >= 3) {
                edges.push_back({i, j, m[i][j]});
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    if (edges.size() != n - 1) return false;  // connected, so a tree iff n-1 edges
    std::size_t branch = n, deg3 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (adj[i].size() > 3) return false;
        if (adj[i].size() == 3) branch = i, ++deg3;
    }
    auto is_leaf_edge = [&](const Edge& e) { return adj[e.a].size() == 1 || adj[e.b].size() == 1; };
    std::vector<Edge> heavy;
    for (const auto& e : edges)
        if (e.label > 3) heavy.push_back(e);
    if (deg3 == 0) {
        if (heavy.empty()) return set('A', "A_" + sn, factorial(n + 1));
        if (heavy.size() != 1) return false;
        const Edge& e = heavy.front();
        if (e.label == 4 && is_leaf_edge(e))
            return set('B', "B_" + sn, factorial(n) << static_cast<unsigned>(n));
        if (e.label == 4 && n == 4) return set('F', "F_4", 1152);
        if (e.label == 5 && is_leaf_edge(e) && n == 3) return set('H', "H_3", 120);
        if (e.label == 5 && is_leaf_edge(e) && n == 4) return set('H', "H_4", 14400);
        return false;
    }
    if (deg3 != 1 || !heavy.empty()) return false;
    std::vector<std::size_t> arms;
    for (auto start : adj[branch]) {
        std::size_t len = 1, prev = branch, cur = start;
        while (adj[cur].size() == 2) {
            std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur, cur = next, ++len;
        }
        if (adj[cur].size() != 1) return false;
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return set('D', "D_" + sn, factorial(n) << static_cast<unsigned>(n - 1));
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return set('E', "E_6", 51840);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return set('E', "E_7", 2903040);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return set('E', "E_8", 696729600);
    return false;
}

} // namespace coxeter_catalog

/// True when every leading principal minor is positive.
inline bool is_positive_definite(const QMatrix& gram) {
    if (!gram.is_square()) return false;
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j)
            if (gram(i, j) != gram(j, i)) return false;
    for (std::size_t k = 1; k <= gram.rows(); ++k) {
        QMatrix lead(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead(i, j) = gram(i, j);
        if (sgn(det(lead)) <= 0) return false;
    }
    return true;
}

struct RootSystem {
    std::vector<std::vector<Rational>> positive_roots;  // one per reflection
    std::vector<std::size_t> reflection_of;             // index into ReflectionSubgroup::reflections
    std::vector<std::size_t> simple;                    // indices into positive_roots
};

namespace detail {

/// Positive-root functional with weights (1, B, B^2, ...) where B exceeds
/// twice every root entry, so it vanishes on no root.
class RootFunctional {
public:
    explicit RootFunctional(const std::vector<std::vector<Integer>>& roots) {
        Integer mx = 0;
        for (const auto& r : roots)
            for (const auto& x : r) mx = std::max<Integer>(mx, abs(x));
        base_ = 2 * mx + 1;
    }

    int sign(std::span<const Rational> v) const {
        Rational acc = 0;
        Integer w = 1;
        for (const auto& x : v) {
            acc += x * Rational(w);
            w *= base_;
        }
        if (int s = sgn(acc)) return s;
        for (auto it = v.rbegin(); it != v.rend(); ++it)  // lexicographic fallback
            if (int s = sgn(*it)) return s;
        return 0;
    }

private:
    Integer base_;
};

} // namespace detail

/// Positive and simple roots of a group generated by real reflections.
/// A positive root is simple iff its reflection sends no other positive
/// root to a negative one (reflection length one).
inline RootSystem extract_root_system(const ReflectionSubgroup<Rational>& refl) {
    RootSystem rs;
    std::vector<std::vector<Integer>> prim;
    for (const auto& r : refl.reflections) {
        auto line = kernel(r.element + QMatrix::identity(r.element.rows()));
        if (line.dim() != 1) throw Error("reflection has no single (-1)-eigenline");
        prim.push_back(primitive_integer(line.basis().row_vector(0)));
    }
    detail::RootFunctional f(prim);
    for (std::size_t i = 0; i < prim.size(); ++i) {
        std::vector<Rational> v(prim[i].begin(), prim[i].end());
        if (f.sign(v) < 0)
            for (auto& x : v) x = -x;
        rs.positive_roots.push_back(std::move(v));
        rs.reflection_of.push_back(i);
    }
    for (std::size_t a = 0; a < rs.positive_roots.size(); ++a) {
        const auto& s = refl.reflections[rs.reflection_of[a]].element;
        bool simple = true;
        for (std::size_t b = 0; b < rs.positive_roots.size() && simple; ++b) {
            if (b == a) continue;
            if (f.sign(s.apply(rs.positive_roots[b])) < 0) simple = false;
        }
        if (simple) rs.simple.push_back(a);
    }
    return rs;
}

/// Coxeter components of a finite rational group generated by real
/// reflections. `gram` is a G-invariant positive definite form on the
/// acted space. When absent, the identity is used if it is invariant and
/// the group average of g^T g otherwise.
inline std::vector<CoxeterComponent> coxeter_classify(const QMatrixGroup& g, const ReflectionSubgroup<Rational>& refl,
                                                      std::optional<QMatrix> gram = std::nullopt) {
    const std::size_t d = g.dim();
    QMatrix form = gram ? *gram : QMatrix::identity(d);
    if (!gram) {
        bool invariant = true;
        for (const auto& e : g.elements())
            if (!(e.transpose() * e).is_identity()) {
                invariant = false;
                break;
            }
        if (!invariant) {
            form = QMatrix(d, d);
            for (const auto& e : g.elements()) form = form + e.transpose() * e;
        }
    }
    if (form.rows() != d || form.cols() != d) throw Error("inner product has the wrong size");
    if (!is_positive_definite(form)) throw Error("inner product is not positive definite");
    if (!all_reflections_real(refl)) throw Error("non-real reflections present");
    if (refl.generated.order() != g.order()) throw Error("group not generated by reflections");
    for (const auto& r : refl.reflections)
        if (!(r.element.transpose() * form * r.element == form)) throw Error("inner product is not group invariant");

    auto rs = extract_root_system(refl);
    const std::size_t n = rs.simple.size();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& si = refl.reflections[rs.reflection_of[rs.simple[i]]].element;
            const auto& sj = refl.reflections[rs.reflection_of[rs.simple[j]]].element;
            int o = static_cast<int>(matrix_order(si * sj, std::max<std::size_t>(g.order(), 2)));
            m[i][j] = m[j][i] = o;
        }

    std::vector<bool> done(n, false);
    std::vector<CoxeterComponent> out;
    Integer product = 1;
    for (std::size_t start = 0; start < n; ++start) {
        if (done[start]) continue;
        std::vector<std::size_t> comp;
        std::vector<std::size_t> stack{start};
        done[start] = true;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::size_t w = 0; w < n; ++w)
                if (!done[w] && m[v][w] >= 3) done[w] = true, stack.push_back(w);
        }
        std::sort(comp.begin(), comp.end());
        // walk from the first leaf so chains come out in diagram order
        auto degree = [&](std::size_t v) {
            std::size_t c = 0;
            for (auto w : comp) c += (w != v && m[v][w] >= 3);
            return c;
        };
        std::size_t root = comp.front();
        for (auto v : comp)
            if (degree(v) <= 1) {
                root = v;
                break;
            }
        std::vector<std::size_t> ordered;
        std::vector<bool> seen(n, false);
        std::function<void(std::size_t)> visit = [&](std::size_t v) {
            seen[v] = true;
            ordered.push_back(v);
            for (auto w : comp)
                if (!seen[w] && m[v][w] >= 3) visit(w);
        };
        visit(root);

        CoxeterComponent c;
        for (auto v : ordered) c.simple_roots.push_back(rs.positive_roots[rs.simple[v]]);
        c.coxeter_matrix.assign(ordered.size(), std::vector<int>(ordered.size(), 1));
        for (std::size_t i = 0; i < ordered.size(); ++i)
            for (std::size_t j = 0; j < ordered.size(); ++j) c.coxeter_matrix[i][j] = m[ordered[i]][ordered[j]];
        if (!coxeter_catalog::identify(c)) throw Error("catalog mismatch");
        product *= c.group_order;
        out.push_back(std::move(c));
    }
    if (product != Integer(static_cast<unsigned long>(g.order())))
        throw Error("catalog mismatch: component orders do not multiply to the group order");
    return out;
}

inline std::vector<CoxeterComponent> coxeter_classify(const QMatrixGroup& g, std::optional<QMatrix> gram = std::nullopt) {
    return coxeter_classify(g, reflection_subgroup(g), std::move(gram));
}

} // namespace hilbres
