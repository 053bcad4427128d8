/**
 * @file pipeline.hpp
 * @brief End-to-end analysis of a rational subspace U of Q^k: normalizer,
 *        induced action, reflections, smoothness, Coxeter type, the doubled
 *        module certificate and the translation filtration.
 */
#pragma once

#include "caps.hpp"
#include "coxeter.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "permaction.hpp"
#include "reflect.hpp"
#include "toruslat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hilbres {

struct AnalysisRequest {
    std::size_t k = 0;
    QMatrix basis;                                   // rows span U
    std::optional<std::vector<Rational>> offset;     // affine offset c
    std::optional<std::vector<Perm>> search_group;   // generators; S_k when absent
    std::optional<std::size_t> field_hint;           // N for a Q(zeta_N) cross-check
    Caps caps;
};

struct FieldHintCheck {
    std::size_t n = 0;
    std::size_t reflection_count = 0;
    bool consistent = false;
};

struct TranslationEntry {
    Perm element;
    std::vector<Rational> vector;
    Integer order;
};

struct FiltrationSummary {
    std::vector<Rational> offset;
    std::size_t g_affine_order = 0;
    std::size_t g1_order = 0;
    std::size_t g0_order = 0;
    std::vector<TranslationEntry> translations;  // elements of G1, ascending
    IntegralLattice lattice;                     // U intersected with Z^k
    IntegralLattice enlarged;                    // lattice plus the G1 translations
    Integer isogeny_index = 1;
};

struct DoubledModule {
    std::size_t copy_dim = 0;
    std::size_t hom_dim = 0;          // dim Hom_G(U, U) between the two copies
    bool identity_intertwines = false;
};

struct AnalysisReport {
    std::size_t k = 0;
    QSubspace subspace;
    std::size_t group_order = 0;
    std::vector<Perm> group_generators;
    std::size_t kernel_order = 0;
    std::size_t induced_order = 0;
    std::size_t reflection_count = 0;
    std::size_t reflection_subgroup_order = 0;
    bool smooth = true;
    std::string smooth_verdict;
    std::optional<Perm> witness;
    bool all_real = true;
    bool classified = false;
    std::vector<CoxeterComponent> coxeter_components;
    bool weyl_product = false;
    DoubledModule doubled_module;
    FiltrationSummary filtration;
    std::size_t gram_rank = 0;
    bool gram_nondegenerate = false;
    bool meets_distinct_locus = false;
    std::optional<FieldHintCheck> field_hint;
};

inline std::string smoothness_wording(bool smooth) {
    return smooth ? "quotient smooth; Hilbert-type resolution smoothness necessary condition met"
                  : "quotient singular; Hilbert-type resolution smoothness necessary condition violated";
}

namespace detail {

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw e.stage().empty() ? e.with_stage(stage) : e;
    }
}

} // namespace detail

/// U avoids every pairwise diagonal {x_i = x_j}, i < j.
inline bool meets_distinct_locus(const QSubspace& u) {
    const std::size_t k = u.ambient_dim();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            bool separated = false;
            for (std::size_t r = 0; r < u.dim() && !separated; ++r)
                separated = u.basis()(r, i) != u.basis()(r, j);
            if (!separated) return false;
        }
    return true;
}

inline AnalysisReport analyze(const AnalysisRequest& req) {
    AnalysisReport rep;
    const std::size_t k = req.k;
    detail::staged("input", [&] {
        if (k == 0) throw Error("k must be positive");
        if (req.basis.cols() != k) throw Error("basis rows must have length k");
        if (req.offset && req.offset->size() != k) throw Error("offset length differs from k");
        return 0;
    });
    if (!req.search_group && k > req.caps.max_full_search_k) throw Error("k too large for full search", "normalizer");
    rep.k = k;
    rep.subspace = QSubspace::span(req.basis);
    const auto& u = rep.subspace;

    auto normalizer = detail::staged("normalizer", [&] {
        if (!req.search_group) return normalizer_of_subspace(u, nullptr, req.caps);
        auto search = close_subgroup(*req.search_group, k, req.caps.group_cap);
        return normalizer_of_subspace(u, &search, req.caps);
    });
    rep.group_order = normalizer.order();
    rep.group_generators = normalizer.generators();

    auto restricted = detail::staged("restrict_action", [&] { return restrict_action(normalizer, u); });
    const auto& g = restricted.group;
    rep.kernel_order = restricted.kernel.order();
    rep.induced_order = g.order();
    if (rep.kernel_order * rep.induced_order != rep.group_order)
        throw Error("kernel and image orders do not multiply to the group order", "restrict_action");

    auto refl = detail::staged("reflections", [&] { return reflection_subgroup(g); });
    rep.reflection_count = refl.reflections.size();
    rep.reflection_subgroup_order = refl.generated.order();

    auto smooth = detail::staged("smoothness", [&] { return cst_smoothness(g, refl); });
    rep.smooth = smooth.smooth;
    rep.smooth_verdict = smoothness_wording(smooth.smooth);
    if (smooth.witness) rep.witness = g.labels()[*smooth.witness];
    rep.all_real = all_reflections_real(refl);

    if (rep.smooth && rep.all_real) {
        rep.coxeter_components = detail::staged("coxeter", [&] {
            const QMatrix& b = u.basis();
            return coxeter_classify(g, refl, b * b.transpose());
        });
        rep.classified = true;
        rep.weyl_product = true;
        for (const auto& c : rep.coxeter_components) rep.weyl_product = rep.weyl_product && c.crystallographic;
    }
    if (rep.weyl_product && !(rep.smooth && rep.all_real))
        throw Error("Weyl product reported for a group not generated by real reflections", "coxeter");

    rep.doubled_module = detail::staged("doubled_module", [&] {
        auto model = tensor_model(QSubspace::full(u.dim()));
        std::vector<QMatrix> gens;
        for (const auto& s : normalizer.generators()) {
            const auto& a = g.element(g.perm_index().at(s));
            gens.push_back(block_diagonal(a, a));
        }
        DoubledModule d;
        d.copy_dim = model.copy_dim;
        d.hom_dim = equivariant_maps(gens, model.first_copy, model.second_copy).dim();
        d.identity_intertwines = is_intertwiner(gens, model.first_copy, model.second_copy, model.certificate);
        return d;
    });

    rep.filtration = detail::staged("filtration", [&] {
        FiltrationSummary f;
        auto torus = make_affine_subtorus(u, req.offset.value_or(std::vector<Rational>{}));
        auto tf = translation_filtration(torus, normalizer);
        f.offset = torus.offset;
        f.g_affine_order = tf.g_affine.order();
        f.g1_order = tf.g1.order();
        f.g0_order = tf.g0.order();
        f.lattice = torus.lattice;
        std::vector<std::vector<Rational>> vectors;
        for (const auto& s : tf.g1.elements()) {
            const auto& t = tf.translations.at(s);
            f.translations.push_back({s, t.vector, t.order});
            vectors.push_back(t.vector);
        }
        auto q = isogeny_quotient(torus, vectors);
        f.enlarged = q.lattice;
        f.isogeny_index = q.index;
        return f;
    });

    rep.gram_rank = detail::staged("gram", [&] { return gram_rank(u); });
    rep.gram_nondegenerate = rep.gram_rank == u.dim();
    rep.meets_distinct_locus = meets_distinct_locus(u);

    if (req.field_hint) {
        rep.field_hint = detail::staged("field_hint", [&] {
            FieldHintCheck c;
            c.n = *req.field_hint;
            auto field = cyclotomic_field(c.n, req.caps.cyclotomic_cap);
            auto lifted = reflection_subgroup(embed(g, field));
            c.reflection_count = lifted.reflections.size();
            c.consistent = c.reflection_count == rep.reflection_count &&
                           lifted.generated.order() == rep.reflection_subgroup_order;
            return c;
        });
    }
    return rep;
}

/// Rows e_i - e_{i+1}, spanning the sum-zero hyperplane of Q^k.
inline QMatrix sum_zero_basis(std::size_t k) {
    QMatrix b(0, k);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        std::vector<Rational> row(k, Rational(0));
        row[i] = 1;
        row[i + 1] = -1;
        b.append_row(row);
    }
    return b;
}

/// Standard realization of a Weyl group of type A or B as a normalizer
/// action: A_n on the sum-zero hyperplane of Q^{n+1}, B_n on
/// span(e_0 - e_1, e_2 - e_3, ...) in Q^{2n}.
inline AnalysisRequest ginzburg_example(char type, int rank) {
    AnalysisRequest req;
    if (type == 'A') {
        if (rank < 1 || rank > 5) throw Error("type A rank must be between 1 and 5");
        req.k = static_cast<std::size_t>(rank) + 1;
        req.basis = sum_zero_basis(req.k);
        return req;
    }
    if (type == 'B') {
        if (rank < 1 || rank > 4) throw Error("type B rank must be between 1 and 4");
        req.k = 2 * static_cast<std::size_t>(rank);
        req.basis = QMatrix(0, req.k);
        for (std::size_t i = 0; i < req.k; i += 2) {
            std::vector<Rational> row(req.k, Rational(0));
            row[i] = 1;
            row[i + 1] = -1;
            req.basis.append_row(row);
        }
        return req;
    }
    throw Error(std::string("unsupported type '") + type + "'");
}

} // namespace hilbres
