#pragma once

#include <cstdint>

#include "csamp/statespace.hpp"

namespace csamp::testing {

// splitmix64: tiny, seedable, identical across platforms. The std
// distributions are implementation-defined, so tests avoid them.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0,1)
    double sym() { return 2.0 * uniform() - 1.0; }                              // [-1,1)
};

inline ComplexMatrix random_real_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(rng.sym(), 0.0);
    return m;
}

inline ComplexMatrix random_complex_matrix(Rng& rng, Eigen::Index rows,
                                           Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(rng.sym(), rng.sym());
    return m;
}

/// Random Hurwitz matrix: scale a raw draw, then shift every eigenvalue left
/// of -margin. Frobenius norm stays bounded by raw_norm + (raw_norm + margin) sqrt(n).
inline ComplexMatrix random_hurwitz_matrix(Rng& rng, Eigen::Index n, double raw_norm,
                                           double margin) {
    ComplexMatrix a = random_real_matrix(rng, n, n);
    a *= raw_norm / std::max(raw_norm, a.norm());
    const double shift = max_real_eigenvalue(a) + margin;
    a -= shift * ComplexMatrix::Identity(n, n);
    return a;
}

/// SISO Hurwitz plant with unit-norm b and c, rejecting draws whose |c b|
/// falls below min_cb (keeps ||CB|| comparable to ||C|| ||B|| so that
/// relative tail bounds stay meaningful).
inline ContinuousStateSpace random_hurwitz_siso(Rng& rng, Eigen::Index n, double raw_norm,
                                                double margin, double min_cb) {
    const ComplexMatrix a = random_hurwitz_matrix(rng, n, raw_norm, margin);
    for (int attempt = 0; attempt < 256; ++attempt) {
        ComplexMatrix b = random_real_matrix(rng, n, 1);
        ComplexMatrix c = random_real_matrix(rng, 1, n);
        if (b.norm() < 1e-3 || c.norm() < 1e-3) continue;
        b /= b.norm();
        c /= c.norm();
        if (std::abs((c * b)(0, 0)) < min_cb) continue;
        return make_plant(a, b, c, ComplexMatrix::Zero(1, 1));
    }
    throw std::runtime_error("random_hurwitz_siso: rejection sampling exhausted");
}

}  // namespace csamp::testing
