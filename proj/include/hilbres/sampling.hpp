/**
 * @file sampling.hpp
 * @brief Seeded random inputs: small-integer subspaces and affine offsets.
 *
 * Draws use raw mt19937_64 output reduced by modulo so that a seed gives
 * the same inputs with every standard library.
 */
#pragma once

#include "matrix.hpp"
#include "rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hilbres {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform in [lo, hi].
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// dim x k matrix with entries in {-1, 0, 1}, rows not all zero;
    /// dim drawn from [1, k - 1] when not given.
    QMatrix subspace_basis(std::size_t k, std::size_t dim = 0) {
        if (dim == 0) dim = static_cast<std::size_t>(uniform(1, static_cast<long>(k > 1 ? k - 1 : 1)));
        QMatrix m(0, k);
        while (m.rows() < dim) {
            std::vector<Rational> row(k);
            bool nonzero = false;
            for (auto& x : row) {
                x = uniform(-1, 1);
                nonzero = nonzero || x != 0;
            }
            if (nonzero) m.append_row(row);
        }
        return m;
    }

    /// Offset with entries a/d, d in {1, 2, 3, 4}, 0 <= a < d.
    std::vector<Rational> offset(std::size_t k) {
        std::vector<Rational> c(k);
        for (auto& x : c) {
            long d = uniform(1, 4);
            x = Rational(uniform(0, d - 1), d);
            x.canonicalize();
        }
        return c;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace hilbres
