/**
 * @file toruslat.hpp
 * @brief Lattices in Q^k, saturation, genericity of a complex structure,
 *        the translation filtration of an affine subtorus, isogeny quotients
 *        and fixed strata of the Kummer involution.
 *
 * Lattices are stored as (1/denominator) * H with H an integer matrix in
 * Hermite normal form: echelon rows, positive pivots, entries above each
 * pivot reduced into [0, pivot).
 */
#pragma once

#include "caps.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "permaction.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hilbres {

using IntRow = std::vector<Integer>;

struct IntegerEchelon {
    std::vector<IntRow> echelon;    // T * A, first `rank` rows nonzero
    std::vector<IntRow> transform;  // unimodular T
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Hermite normal form of the rows of A by unimodular row operations,
/// tracking the transform.
inline IntegerEchelon integer_echelon(std::vector<IntRow> a, std::size_t cols) {
    const std::size_t m = a.size();
    std::vector<IntRow> t(m, IntRow(m, 0));
    for (std::size_t i = 0; i < m; ++i) t[i][i] = 1;
    auto axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
        for (std::size_t j = 0; j < m; ++j) t[dst][j] -= q * t[src][j];
    };
    auto negate = [&](std::size_t i) {
        for (auto& x : a[i]) x = -x;
        for (auto& x : t[i]) x = -x;
    };
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && row < m; ++c) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t i = row; i < m; ++i)
                if (a[i][c] != 0 && (!best || abs(a[i][c]) < abs(a[*best][c]))) best = i;
            if (!best) break;
            std::swap(a[row], a[*best]);
            std::swap(t[row], t[*best]);
            bool cleared = true;
            for (std::size_t i = row + 1; i < m; ++i) {
                if (a[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[row][c].get_mpz_t());
                axpy(i, row, q);
                if (a[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (a[row][c] == 0) continue;
        if (a[row][c] < 0) negate(row);
        for (std::size_t i = 0; i < row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[row][c].get_mpz_t());
            if (q != 0) axpy(i, row, q);
        }
        pivots.push_back(c);
        ++row;
    }
    return {std::move(a), std::move(t), row, std::move(pivots)};
}

class IntegralLattice {
public:
    IntegralLattice() = default;

    /// Lattice generated by rational vectors of length `ambient`.
    static IntegralLattice generated_by(const std::vector<std::vector<Rational>>& gens, std::size_t ambient) {
        Integer den = 1;
        for (const auto& g : gens) {
            if (g.size() != ambient) throw Error("lattice generator has the wrong length");
            Integer l = lcm_of_denominators(g);
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
        }
        std::vector<IntRow> rows;
        for (const auto& g : gens) {
            IntRow r;
            for (const auto& x : g) r.push_back(Rational(x * Rational(den)).get_num());
            rows.push_back(std::move(r));
        }
        return from_integer_rows(std::move(rows), ambient, den);
    }

    /// Lattice (1/den) * span_Z(rows).
    static IntegralLattice from_integer_rows(std::vector<IntRow> rows, std::size_t ambient, Integer den = 1) {
        auto ech = integer_echelon(std::move(rows), ambient);
        IntegralLattice l;
        l.ambient_ = ambient;
        l.hnf_.assign(ech.echelon.begin(), ech.echelon.begin() + static_cast<std::ptrdiff_t>(ech.rank));
        l.pivots_ = std::move(ech.pivots);
        Integer g = den;
        for (const auto& r : l.hnf_)
            for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        l.den_ = den / g;
        for (auto& r : l.hnf_)
            for (auto& x : r) x /= g;
        return l;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return hnf_.size(); }
    const Integer& denominator() const { return den_; }
    const std::vector<IntRow>& hnf() const { return hnf_; }

    std::vector<std::vector<Rational>> basis() const {
        std::vector<std::vector<Rational>> b;
        for (const auto& r : hnf_) {
            b.emplace_back();
            for (const auto& x : r) b.back().push_back(Rational(x, den_));
        }
        return b;
    }

    QMatrix basis_matrix() const {
        QMatrix m(0, ambient_);
        for (const auto& r : basis()) m.append_row(r);
        return m;
    }

    bool contains(std::span<const Rational> v) const {
        if (v.size() != ambient_) throw Error("vector does not live in the ambient space");
        IntRow w;
        for (const auto& x : v) {
            Rational s = x * Rational(den_);
            if (!is_integer(s)) return false;
            w.push_back(s.get_num());
        }
        for (std::size_t i = 0; i < hnf_.size(); ++i) {
            const auto p = pivots_[i];
            for (std::size_t j = 0; j < p; ++j)
                if (w[j] != 0) return false;
            if (!mpz_divisible_p(w[p].get_mpz_t(), hnf_[i][p].get_mpz_t())) return false;
            Integer q = w[p] / hnf_[i][p];
            for (std::size_t j = p; j < ambient_; ++j) w[j] -= q * hnf_[i][j];
        }
        for (const auto& x : w)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const IntegralLattice& a, const IntegralLattice& b) {
        return a.ambient_ == b.ambient_ && a.den_ == b.den_ && a.hnf_ == b.hnf_;
    }

private:
    std::size_t ambient_ = 0;
    Integer den_ = 1;
    std::vector<IntRow> hnf_;
    std::vector<std::size_t> pivots_;
};

/// [outer : inner] for lattices of equal rank with inner inside outer,
/// from the Gram determinants (their ratio is the squared index).
inline Integer sublattice_index(const IntegralLattice& outer, const IntegralLattice& inner) {
    if (outer.rank() != inner.rank()) throw Error("index of lattices of different ranks");
    for (const auto& b : inner.basis())
        if (!outer.contains(b)) throw Error("inner lattice is not contained in the outer one");
    if (inner.rank() == 0) return 1;
    auto bo = outer.basis_matrix(), bi = inner.basis_matrix();
    Rational sq = det(bi * bi.transpose()) / det(bo * bo.transpose());
    if (!is_integer(sq)) throw Error("lattice index is not an integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), sq.get_num().get_mpz_t());
    if (r * r != sq.get_num()) throw Error("lattice index is not an integer");
    return r;
}

/// Integer rows spanning the rational constraints of u (u = {v : C v = 0}).
inline std::vector<IntRow> integer_constraints(const QSubspace& u) {
    std::vector<IntRow> c;
    if (u.codim() == 0) return c;
    auto ann = annihilator(u);
    for (std::size_t i = 0; i < ann.dim(); ++i) c.push_back(primitive_integer(ann.basis().row_vector(i)));
    return c;
}

/// U intersected with Z^k.
inline IntegralLattice saturate(const QSubspace& u) {
    const std::size_t k = u.ambient_dim();
    auto c = integer_constraints(u);
    // integer kernel of C: rows of T beyond the rank of C^T
    std::vector<IntRow> ct(k, IntRow(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < k; ++j) ct[j][i] = c[i][j];
    auto ech = integer_echelon(std::move(ct), c.size());
    std::vector<IntRow> kernel_rows(ech.transform.begin() + static_cast<std::ptrdiff_t>(ech.rank), ech.transform.end());
    auto l = IntegralLattice::from_integer_rows(std::move(kernel_rows), k);
    if (l.rank() != u.dim()) throw Error("saturation lost rank");
    return l;
}

/// Integer echelon of C^T, reusable across right-hand sides.
inline IntegerEchelon transposed_echelon(const std::vector<IntRow>& c, std::size_t cols) {
    std::vector<IntRow> ct(cols, IntRow(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) ct[j][i] = c[i][j];
    return integer_echelon(std::move(ct), c.size());
}

/// Integer z with C z = rhs, if any; `ech` is transposed_echelon(c, cols).
inline std::optional<IntRow> integer_solution(const std::vector<IntRow>& c, const IntegerEchelon& ech,
                                              std::span<const Rational> rhs, std::size_t cols) {
    if (c.empty()) return IntRow(cols, 0);
    // C = (T^-1 E)^T, so C z = rhs becomes E^T y = rhs with z = T^T y
    std::vector<Integer> y(cols, 0);
    for (std::size_t i = 0; i < ech.rank; ++i) {
        auto p = ech.pivots[i];
        Rational acc = rhs[p];
        for (std::size_t t = 0; t < i; ++t) acc -= Rational(ech.echelon[t][p] * y[t]);
        acc /= Rational(ech.echelon[i][p]);
        if (!is_integer(acc)) return std::nullopt;
        y[i] = acc.get_num();
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
        Rational acc = 0;
        for (std::size_t i = 0; i < ech.rank; ++i) acc += Rational(ech.echelon[i][j] * y[i]);
        if (acc != rhs[j]) return std::nullopt;
    }
    IntRow z(cols, 0);
    for (std::size_t i = 0; i < ech.rank; ++i)
        for (std::size_t col = 0; col < cols; ++col) z[col] += ech.transform[i][col] * y[i];
    return z;
}

inline std::optional<IntRow> integer_solution(const std::vector<IntRow>& c, std::span<const Rational> rhs,
                                              std::size_t cols) {
    return integer_solution(c, transposed_echelon(c, cols), rhs, cols);
}

// ---------------------------------------------------------------------------
// Genericity

class ComplexStructureMatrix {
public:
    explicit ComplexStructureMatrix(FMatrix j) : j_(std::move(j)) {
        if (!j_.is_square() || j_.rows() % 2 != 0 || j_.rows() == 0)
            throw Error("complex structure must be a 2d x 2d matrix");
        auto sq = j_ * j_;
        if (!(sq == -FMatrix::identity(j_.rows(), j_.zero()))) throw Error("J^2 != -I");
    }

    const FMatrix& matrix() const { return j_; }

private:
    FMatrix j_;
};

struct GenericityResult {
    bool generic = false;
    std::size_t endo_dim = 0;
    std::vector<QMatrix> endomorphisms;  // basis of the rational commutant
};

/// Rational endomorphisms of the standard lattice compatible with J; generic
/// when only the rational scalars remain.
inline GenericityResult genericity_check(const ComplexStructureMatrix& j) {
    const std::size_t d = j.matrix().rows();
    auto sol = solve_commutant(std::vector<FMatrix>{j.matrix()});
    GenericityResult r;
    r.endo_dim = sol.dim();
    r.generic = r.endo_dim == 1;
    for (std::size_t i = 0; i < sol.dim(); ++i) r.endomorphisms.push_back(unvectorize(sol.basis().row(i), d, d));
    return r;
}

// ---------------------------------------------------------------------------
// Affine subtori and the translation filtration

struct AffineSubtorus {
    QSubspace direction;
    std::vector<Rational> offset;  // entries in [0, 1)
    IntegralLattice lattice;       // direction intersected with Z^k
};

inline AffineSubtorus make_affine_subtorus(const QSubspace& direction, std::vector<Rational> offset = {}) {
    const std::size_t k = direction.ambient_dim();
    if (offset.empty()) offset.assign(k, Rational(0));
    if (offset.size() != k) throw Error("offset length differs from k");
    for (auto& x : offset) x = frac(x);
    return {direction, std::move(offset), saturate(direction)};
}

struct Translation {
    std::vector<Rational> vector;          // canonical representative in U
    std::vector<Rational> lattice_coords;  // coordinates in the lattice basis, in [0, 1)
    Integer order = 1;

    bool is_zero() const { return order == 1; }
};

/// Reduces u (in U) modulo the lattice to its canonical representative.
inline Translation reduce_translation(const AffineSubtorus& t, const std::vector<Rational>& u) {
    Translation tr;
    const std::size_t k = t.direction.ambient_dim();
    if (t.lattice.rank() == 0) {
        tr.vector.assign(k, Rational(0));
        return tr;
    }
    auto coords = solve_in_rows<Rational>(t.lattice.basis_matrix(), u);
    if (!coords) throw Error("translation outside U");
    tr.vector.assign(k, Rational(0));
    auto basis = t.lattice.basis();
    for (std::size_t i = 0; i < coords->size(); ++i) {
        Rational f = frac((*coords)[i]);
        tr.lattice_coords.push_back(f);
        for (std::size_t j = 0; j < k; ++j) tr.vector[j] += f * basis[i][j];
    }
    tr.order = lcm_of_denominators(tr.lattice_coords);
    return tr;
}

struct TranslationFiltration {
    PermGroup g_affine;  // preserve the affine subtorus
    PermGroup g1;        // ... and act trivially on the direction
    PermGroup g0;        // ... and translate by zero
    std::map<Perm, Translation> translations;  // keyed by elements of g_affine
};

inline TranslationFiltration translation_filtration(const AffineSubtorus& t, const PermGroup& g) {
    const auto& u = t.direction;
    const std::size_t k = u.ambient_dim();
    if (g.degree() != k) throw Error("group degree differs from the ambient dimension");
    auto constraints = integer_constraints(u);
    auto ech = transposed_echelon(constraints, k);
    for (const auto& s : g.generators())
        if (!preserves(s, u)) throw Error("direction not preserved by " + s.cycle_string());
    TranslationFiltration f;
    for (const auto& s : g.elements()) {
        auto image = permute_vector<Rational>(s, t.offset);
        std::vector<Rational> w(k);
        bool zero = true;
        for (std::size_t i = 0; i < k; ++i) {
            w[i] = image[i] - t.offset[i];
            zero = zero && w[i] == 0;
        }
        if (zero) {
            f.translations.emplace(
                s, Translation{std::vector<Rational>(k, Rational(0)), std::vector<Rational>(t.lattice.rank()), 1});
            continue;
        }
        std::vector<Rational> rhs;
        for (const auto& row : constraints) {
            Rational acc = 0;
            for (std::size_t i = 0; i < k; ++i) acc += Rational(row[i]) * w[i];
            rhs.push_back(acc);
        }
        auto z = integer_solution(constraints, ech, rhs, k);
        if (!z) continue;
        for (std::size_t i = 0; i < k; ++i) w[i] -= Rational((*z)[i]);
        f.translations.emplace(s, reduce_translation(t, w));
    }
    auto in_affine = [&](const Perm& s) { return f.translations.count(s) > 0; };
    auto trivial_on_u = [&](const Perm& s) { return acts_trivially(s, u); };
    f.g_affine = filter_subgroup(g, in_affine);
    f.g1 = filter_subgroup(f.g_affine, trivial_on_u);
    f.g0 = filter_subgroup(f.g1, [&](const Perm& s) { return f.translations.at(s).is_zero(); });
    return f;
}

struct IsogenyQuotient {
    IntegralLattice lattice;  // L' enlarged by the translations
    Integer index = 1;        // [L'' : L'], the isogeny degree
};

inline IsogenyQuotient isogeny_quotient(const AffineSubtorus& t, const std::vector<std::vector<Rational>>& translations) {
    auto gens = t.lattice.basis();
    for (const auto& v : translations) {
        if (v.size() != t.direction.ambient_dim() || !t.direction.contains(v)) throw Error("translation outside U");
        gens.push_back(v);
    }
    IsogenyQuotient q;
    q.lattice = IntegralLattice::generated_by(gens, t.direction.ambient_dim());
    q.index = sublattice_index(q.lattice, t.lattice);
    return q;
}

// ---------------------------------------------------------------------------
// Kummer involution

/// Label of a two-torsion point of a 2-dimensional torus: 4 bits, binary counting.
inline std::string torsion_label(std::size_t index) {
    std::string s(4, '0');
    for (int b = 0; b < 4; ++b)
        if (index & (std::size_t{1} << (3 - b))) s[b] = '1';
    return s;
}

struct KummerStratum {
    std::array<std::uint8_t, 16> multiplicities{};  // points sitting at each torsion point
    int pairs = 0;                                  // pairs {x, -x} away from the torsion points
    int dimension = 0;                              // 2 * pairs

    int torsion_count() const {
        int s = 0;
        for (auto m : multiplicities) s += m;
        return s;
    }

    /// XOR of the torsion labels with multiplicity; zero for every stratum.
    std::size_t torsion_sum() const {
        std::size_t acc = 0;
        for (std::size_t i = 0; i < 16; ++i)
            if (multiplicities[i] % 2) acc ^= i;
        return acc;
    }
};

struct KummerStrata {
    int n = 0;
    std::vector<KummerStratum> strata;  // dimension descending
    bool involution_trivial = false;    // n + 1 == 2: the whole fiber is fixed
};

/// Combinatorial types of iota-fixed points of K^[n] in T^(n+1): torsion
/// multiplicities and pairs with sum-zero torsion part.
inline KummerStrata kummer_fixed_strata(int n, std::size_t cap = Caps{}.kummer_cap) {
    if (n < 1) throw Error("kummer needs n >= 1");
    const int points = n + 1;
    if (static_cast<std::size_t>(points) > cap) throw Error("kummer enumeration cap exceeded");
    KummerStrata out;
    out.n = n;
    out.involution_trivial = points == 2;
    KummerStratum cur;
    auto rec = [&](auto&& self, std::size_t label, int left, std::size_t acc) -> void {
        if (label == 15) {
            cur.multiplicities[15] = static_cast<std::uint8_t>(left);
            if ((acc ^ (left % 2 ? 15 : 0)) == 0) out.strata.push_back(cur);
            cur.multiplicities[15] = 0;
            return;
        }
        for (int m = left; m >= 0; --m) {
            cur.multiplicities[label] = static_cast<std::uint8_t>(m);
            self(self, label + 1, left - m, m % 2 ? acc ^ label : acc);
        }
        cur.multiplicities[label] = 0;
    };
    for (int p = points / 2; p >= 0; --p) {
        cur.pairs = p;
        cur.dimension = 2 * p;
        rec(rec, 0, points - 2 * p, 0);
    }
    return out;
}

} // namespace hilbres
