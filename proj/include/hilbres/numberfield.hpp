/**
 * @file numberfield.hpp
 * @brief Exact arithmetic in number fields Q[x]/(p(x)), cyclotomic fields
 *        included.
 *
 * A NumberField is a shared, immutable presentation by a monic modulus.
 * Elements are residues stored as `degree` rational coefficients, lowest
 * power first. Irreducibility of the modulus is never checked; division by
 * an element that shares a factor with the modulus reports a configuration
 * error instead.
 */
#pragma once

#include "caps.hpp"
#include "error.hpp"
#include "rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hilbres {

/// Dense univariate polynomials over Q, lowest power first, no trailing zeros.
namespace poly {

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

/// Euclidean division a = q*b + r with deg r < deg b. b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    if (b.empty()) throw Error("polynomial division by zero");
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    const Rational& lead = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational c = a.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

} // namespace poly

class NumberField {
public:
    /// The rational field, presented by the modulus x.
    NumberField() : data_(rationals_data()) {}

    /// Field presented by `modulus` (lowest power first, must be monic).
    explicit NumberField(std::vector<Rational> modulus, std::string label = {},
                         std::size_t degree_cap = Caps{}.degree_cap) {
        poly::trim(modulus);
        if (modulus.size() < 2) throw Error("field modulus must have degree >= 1");
        if (modulus.back() != 1) throw Error("field modulus must be monic");
        if (modulus.size() - 1 > degree_cap) throw Error("field degree cap exceeded");
        data_ = std::make_shared<const Data>(Data{std::move(modulus), std::move(label)});
    }

    std::size_t degree() const { return data_->modulus.size() - 1; }
    const std::vector<Rational>& modulus() const { return data_->modulus; }
    const std::string& label() const { return data_->label; }
    bool is_rational() const { return degree() == 1; }

    /// Degree one presentations all describe Q and compare equal.
    friend bool operator==(const NumberField& a, const NumberField& b) {
        if (a.data_ == b.data_) return true;
        if (a.is_rational() && b.is_rational()) return true;
        return a.data_->modulus == b.data_->modulus;
    }

private:
    struct Data {
        std::vector<Rational> modulus;
        std::string label;
    };

    static std::shared_ptr<const Data> rationals_data() {
        static const auto q = std::make_shared<const Data>(Data{{Rational(0), Rational(1)}, "Q"});
        return q;
    }

    std::shared_ptr<const Data> data_;
};

class FieldElement {
public:
    /// Zero of Q.
    FieldElement() : coeffs_(1) {}

    FieldElement(NumberField field, const Rational& value)
        : field_(std::move(field)), coeffs_(field_.degree()) {
        coeffs_[0] = value;
    }

    /// Residue of an arbitrary polynomial (lowest power first).
    FieldElement(NumberField field, std::vector<Rational> coeffs) : field_(std::move(field)) {
        auto [q, r] = poly::divmod(std::move(coeffs), field_.modulus());
        (void)q;
        r.resize(field_.degree());
        coeffs_ = std::move(r);
    }

    static FieldElement zero(const NumberField& f) { return FieldElement(f, Rational(0)); }
    static FieldElement one(const NumberField& f) { return FieldElement(f, Rational(1)); }

    /// The class of x, a primitive element of the presentation.
    static FieldElement generator(const NumberField& f) {
        std::vector<Rational> c(2);
        c[1] = 1;
        return FieldElement(f, std::move(c));
    }

    const NumberField& field() const { return field_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (sgn(c) != 0) return false;
        return true;
    }

    bool is_one() const {
        if (coeffs_[0] != 1) return false;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (sgn(coeffs_[i]) != 0) return false;
        return true;
    }

    /// True when the element lies in the prime field Q.
    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (sgn(coeffs_[i]) != 0) return false;
        return true;
    }

    FieldElement operator-() const {
        FieldElement r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    FieldElement& operator+=(const FieldElement& b) {
        check_same_field(b);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
        return *this;
    }

    FieldElement& operator-=(const FieldElement& b) {
        check_same_field(b);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
        return *this;
    }

    FieldElement& operator*=(const FieldElement& b) {
        check_same_field(b);
        if (coeffs_.size() == 1) {
            coeffs_[0] *= b.coeffs_[0];
            return *this;
        }
        *this = FieldElement(field_, poly::mul(coeffs_, b.coeffs_));
        return *this;
    }

    FieldElement& operator/=(const FieldElement& b) { return *this *= b.inverse(); }

    /// Inverse through the extended Euclidean algorithm against the modulus.
    FieldElement inverse() const {
        if (is_zero()) throw Error("division by zero in number field");
        if (coeffs_.size() == 1) return FieldElement(field_, Rational(1) / coeffs_[0]);
        // invariant: s_i * a == r_i (mod modulus)
        poly::Poly r0 = field_.modulus(), r1 = coeffs_;
        poly::trim(r1);
        poly::Poly s0, s1{Rational(1)};
        while (poly::degree(r1) > 0) {
            auto [q, r] = poly::divmod(r0, r1);
            poly::Poly s = poly::sub(s0, poly::mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r1.empty())
            throw Error("element is not invertible: field modulus is not irreducible");
        Rational c = Rational(1) / r1[0];
        for (auto& x : s1) x *= c;
        return FieldElement(field_, std::move(s1));
    }

    FieldElement pow(unsigned long e) const {
        FieldElement result = one(field_), base = *this;
        while (e > 0) {
            if (e & 1UL) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check_same_field(const FieldElement& b) const {
        if (!(field_ == b.field_)) throw Error("field mismatch");
    }

    NumberField field_;
    std::vector<Rational> coeffs_;
};

/// Lexicographic on coefficients; only meaningful within one field.
inline int compare(const FieldElement& a, const FieldElement& b) {
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (int c = cmp(x[i], y[i])) return c < 0 ? -1 : 1;
    return x.size() < y.size() ? -1 : (x.size() > y.size() ? 1 : 0);
}

enum class FieldOp { add, sub, mul, div };

inline FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
    switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
    }
    throw Error("unknown field operation");
}

/// Phi_N with integer coefficients, lowest power first, computed by exact
/// division of x^N - 1 by Phi_d for every proper divisor d of N.
inline std::vector<Rational> cyclotomic_polynomial(std::size_t n) {
    if (n == 0) throw Error("cyclotomic index must be positive");
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<Rational>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    poly::Poly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        auto [q, r] = poly::divmod(p, cyclotomic_polynomial(d));
        if (!r.empty()) throw Error("cyclotomic division left a remainder");
        p = std::move(q);
    }
    std::lock_guard lock(mutex);
    cache.emplace(n, p);
    return p;
}

inline NumberField cyclotomic_field(std::size_t n, std::size_t cap = Caps{}.cyclotomic_cap) {
    if (n == 0) throw Error("cyclotomic index must be positive");
    if (n > cap) throw Error("cyclotomic degree cap");
    return NumberField(cyclotomic_polynomial(n), "cyclotomic N=" + std::to_string(n),
                       std::max<std::size_t>(cap, n));
}

/// Smallest m <= max_order with a^m = 1, if any.
inline std::optional<std::size_t> root_of_unity_order(const FieldElement& a, std::size_t max_order) {
    if (a.is_zero()) throw Error("zero is not a root of unity");
    FieldElement power = a;
    for (std::size_t m = 1; m <= max_order; ++m) {
        if (power.is_one()) return m;
        power *= a;
    }
    return std::nullopt;
}

inline std::optional<std::size_t> root_of_unity_order(const Rational& a, std::size_t max_order) {
    return root_of_unity_order(FieldElement(NumberField(), a), max_order);
}

} // namespace hilbres
