/**
 * @file hilbstrata.hpp
 * @brief Combinatorics of Hilbert schemes of points on a surface:
 *        partitions, staircase monomial ideals, the diagonal stratification
 *        and its subdivision order.
 */
#pragma once

#include "caps.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace hilbres {

/// All partitions of k, reverse-lexicographic ({k} first, {1,...,1} last).
inline std::vector<Partition> partitions(int k, std::size_t cap = Caps{}.partition_cap) {
    if (k < 1) throw Error("partitions need a positive integer");
    if (static_cast<std::size_t>(k) > cap) throw Error("partition cap exceeded");
    std::vector<Partition> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int remaining, int largest) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int first = std::min(remaining, largest); first >= 1; --first) {
            current.push_back(first);
            self(self, remaining - first, first);
            current.pop_back();
        }
    };
    rec(rec, k, k);
    return out;
}

/// Monomial ideal <x^{n_0}, x^{n_1} y, ..., x^{n_{r-1}} y^{r-1}, y^r> with
/// n_0 >= n_1 >= ... >= n_{r-1} >= 1.
class StaircaseIdeal {
public:
    explicit StaircaseIdeal(std::vector<int> steps) : steps_(std::move(steps)) {
        if (steps_.empty()) throw Error("staircase needs at least one step");
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            if (steps_[i] <= 0) throw Error("staircase steps must be positive");
            if (i > 0 && steps_[i] > steps_[i - 1]) throw Error("not an ideal: steps must be non-increasing");
        }
    }

    static StaircaseIdeal from_partition(const Partition& p) { return StaircaseIdeal(p.parts()); }

    const std::vector<int>& steps() const { return steps_; }
    Partition to_partition() const { return Partition(steps_); }

    /// Minimal monomial generators, rendered as "x^2", "x y", "y^3", ...
    std::vector<std::string> generators() const {
        auto mono = [](int a, int b) {
            std::string s;
            auto term = [](const char* v, int e) { return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e); };
            if (a > 0) s += term("x", a);
            if (b > 0) s += (s.empty() ? "" : " ") + term("y", b);
            return s.empty() ? std::string("1") : s;
        };
        std::vector<std::string> g;
        for (std::size_t i = 0; i < steps_.size(); ++i)
            if (i == 0 || steps_[i] < steps_[i - 1]) g.push_back(mono(steps_[i], static_cast<int>(i)));
        g.push_back(mono(0, static_cast<int>(steps_.size())));
        return g;
    }

    friend bool operator==(const StaircaseIdeal&, const StaircaseIdeal&) = default;

private:
    std::vector<int> steps_;
};

/// Number of monomials x^a y^b outside the ideal (b < r, a < n_b).
inline int colength(const std::vector<int>& steps) {
    StaircaseIdeal checked(steps);
    int count = 0;
    for (std::size_t b = 0; b < steps.size(); ++b)
        for (int a = 0; a < steps[b]; ++a) ++count;
    return count;
}

inline int colength(const StaircaseIdeal& ideal) { return colength(ideal.steps()); }

/// Torus-fixed punctual subschemes of length k: one staircase per partition.
inline std::vector<StaircaseIdeal> torus_fixed_points(int k, std::size_t cap = Caps{}.partition_cap) {
    std::vector<StaircaseIdeal> out;
    for (const auto& p : partitions(k, cap)) out.push_back(StaircaseIdeal::from_partition(p));
    return out;
}

/// One grouping of fine's parts: blocks[i] lists the fine parts summing to coarse part i.
using Grouping = std::vector<std::vector<int>>;

/// Whether fine's parts can be grouped into blocks summing to coarse's parts.
inline std::optional<Grouping> is_subdivision(const Partition& fine, const Partition& coarse) {
    if (fine.total() != coarse.total()) throw Error("partitions of different integers");
    const auto& f = fine.parts();
    const auto& c = coarse.parts();
    if (f.size() < c.size()) return std::nullopt;
    std::vector<int> remaining = c;
    std::vector<std::size_t> slot(f.size());
    std::map<std::pair<std::size_t, std::vector<int>>, bool> failed;
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == f.size()) return true;
        std::vector<int> key = remaining;
        std::sort(key.begin(), key.end());
        if (failed.count({i, key})) return false;
        for (std::size_t s = 0; s < remaining.size(); ++s) {
            if (remaining[s] < f[i]) continue;
            bool dup = false;  // equal remaining capacities are interchangeable
            for (std::size_t t = 0; t < s; ++t)
                if (remaining[t] == remaining[s]) dup = true;
            if (dup) continue;
            remaining[s] -= f[i];
            slot[i] = s;
            if (self(self, i + 1)) return true;
            remaining[s] += f[i];
        }
        failed[{i, key}] = true;
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    Grouping g(c.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[slot[i]].push_back(f[i]);
    return g;
}

/// Strata of the k-th Hilbert scheme by diagonal type. refines[i][j] holds
/// when elements[i] is a subdivision of elements[j], i.e. stratum j lies in
/// the closure of stratum i.
struct StrataPoset {
    int k = 0;
    std::vector<Partition> elements;
    std::vector<std::vector<bool>> refines;

    std::size_t index_of(const Partition& p) const {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == p) return i;
        throw Error("partition not in the poset");
    }

    std::size_t relation_count() const {
        std::size_t n = 0;
        for (const auto& row : refines)
            for (bool b : row) n += b;
        return n;
    }

    /// Pairs (i, j) with i refining j strictly and nothing strictly in between.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        const std::size_t n = elements.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || !refines[i][j]) continue;
                bool direct = true;
                for (std::size_t t = 0; t < n && direct; ++t)
                    if (t != i && t != j && refines[i][t] && refines[t][j]) direct = false;
                if (direct) out.emplace_back(i, j);
            }
        return out;
    }
};

inline StrataPoset strata_poset(int k, std::size_t cap = Caps{}.poset_cap) {
    if (k < 1) throw Error("strata need a positive integer");
    if (static_cast<std::size_t>(k) > cap) throw Error("poset cap exceeded");
    StrataPoset p;
    p.k = k;
    p.elements = partitions(k);
    const std::size_t n = p.elements.size();
    p.refines.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p.refines[i][j] = is_subdivision(p.elements[i], p.elements[j]).has_value();
    return p;
}

/// Dimension of the punctual Hilbert scheme of length-a subschemes of a
/// smooth surface supported at one point (classical value a - 1).
constexpr int punctual_fiber_dimension(int a) { return a - 1; }

struct StratumInfo {
    Partition delta;
    int l = 0;
    int dim_symmetric = 0;
    int dim_fiber = 0;
    int dim_hilbert_stratum = 0;
    Integer sigma_order;  // product of multiplicity! over distinct part values
};

inline StratumInfo stratum_info(const Partition& delta) {
    StratumInfo s;
    s.delta = delta;
    s.l = static_cast<int>(delta.length());
    s.dim_symmetric = 2 * s.l;
    for (int a : delta.parts()) s.dim_fiber += punctual_fiber_dimension(a);
    s.dim_hilbert_stratum = s.dim_symmetric + s.dim_fiber;
    s.sigma_order = 1;
    for (const auto& [value, mult] : delta.multiplicities())
        for (int i = 2; i <= mult; ++i) s.sigma_order *= i;
    return s;
}

} // namespace hilbres
