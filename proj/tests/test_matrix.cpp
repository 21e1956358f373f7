#include <doctest.h>

#include <cmath>

#include "csamp/matrix.hpp"
#include "test_support.hpp"

using namespace csamp;
using csamp::testing::Rng;

namespace {

// Independent oracle: term-wise Taylor summation. With ||At|| <= 2 the
// 40-term remainder is below 1e-30, far under the comparison tolerances.
ComplexMatrix expm_taylor(const ComplexMatrix& a, double t, int terms = 40) {
    const Eigen::Index n = a.rows();
    ComplexMatrix sum = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k <= terms; ++k) {
        term = term * a * (t / k);
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("make_matrix validates shape, count and finiteness") {
    CHECK_THROWS_AS(make_matrix(0, 1, {}), ValidationError);
    CHECK_THROWS_AS(make_matrix(2, 2, {Complex(1, 0)}), ValidationError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(make_matrix(1, 1, {Complex(inf, 0)}), ValidationError);
    const ComplexMatrix m = make_matrix(2, 2, {Complex(1, 0), Complex(2, 0),
                                               Complex(3, 0), Complex(4, 0)});
    CHECK(m(1, 0) == Complex(3, 0));
}

TEST_CASE("expm of the zero matrix is exactly the identity") {
    const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    const ComplexMatrix e = expm(z, 1.0);
    CHECK(e(0, 0) == Complex(1, 0));
    CHECK(e(0, 1) == Complex(0, 0));
    CHECK(e(1, 0) == Complex(0, 0));
    CHECK(e(1, 1) == Complex(1, 0));
    // t = 0 takes the same branch regardless of A.
    Rng rng(7);
    const ComplexMatrix a = csamp::testing::random_real_matrix(rng, 3, 3);
    const ComplexMatrix e0 = expm(a, 0.0);
    CHECK(max_abs(e0 - ComplexMatrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("expm matches the rotation-damping closed form") {
    const double sigma = 1.0, omega = 3.0, ts = 0.5;
    ComplexMatrix a(2, 2);
    a << Complex(-sigma, 0), Complex(-omega, 0), Complex(omega, 0), Complex(-sigma, 0);
    const ComplexMatrix e = expm(a, ts);
    const double alpha = std::exp(-sigma * ts);
    const double c = std::cos(omega * ts), s = std::sin(omega * ts);
    CHECK(std::abs(e(0, 0) - Complex(alpha * c, 0)) < 1e-14);
    CHECK(std::abs(e(0, 1) - Complex(-alpha * s, 0)) < 1e-14);
    CHECK(std::abs(e(1, 0) - Complex(alpha * s, 0)) < 1e-14);
    CHECK(std::abs(e(1, 1) - Complex(alpha * c, 0)) < 1e-14);
}

TEST_CASE("expm agrees with the Taylor oracle on random 4x4 matrices") {
    Rng rng(20240101);
    for (int i = 0; i < 20; ++i) {
        ComplexMatrix a = csamp::testing::random_complex_matrix(rng, 4, 4);
        a *= 2.0 / std::max(2.0, a.norm());
        const ComplexMatrix got = expm(a, 0.7);
        const ComplexMatrix want = expm_taylor(a, 0.7);
        CHECK((got - want).norm() / want.norm() < 1e-12);
    }
}

TEST_CASE("expm semigroup property") {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 4);
        ComplexMatrix a = csamp::testing::random_complex_matrix(rng, n, n);
        a *= 3.0 / std::max(3.0, a.norm());
        const double t1 = 0.3 + rng.uniform();
        const double t2 = 0.2 + rng.uniform();
        const ComplexMatrix lhs = expm(a, t1) * expm(a, t2);
        const ComplexMatrix rhs = expm(a, t1 + t2);
        CHECK((lhs - rhs).norm() < 1e-10 * std::max(1.0, rhs.norm()));
    }
}

TEST_CASE("expm rejects non-square and nonfinite input") {
    CHECK_THROWS_AS(expm(ComplexMatrix::Zero(2, 3), 1.0), DimensionError);
    CHECK_THROWS_AS(expm(ComplexMatrix::Zero(2, 2), std::nan("")), ValidationError);
}

TEST_CASE("resolvent on scalars and diagonals") {
    ComplexMatrix a(1, 1);
    a(0, 0) = Complex(-1, 0);
    CHECK(std::abs(resolvent(a, Complex(0, 0))(0, 0) - Complex(1, 0)) < 1e-14);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(-1, 0);
    d(1, 1) = Complex(-2, 0);
    const Complex j(0, 1);
    const ComplexMatrix r = resolvent(d, j);
    CHECK(std::abs(r(0, 0) - 1.0 / (j + 1.0)) < 1e-14);
    CHECK(std::abs(r(1, 1) - 1.0 / (j + 2.0)) < 1e-14);
    CHECK(std::abs(r(0, 1)) == 0.0);
}

TEST_CASE("resolvent residual stays below the tolerance on the Bromwich line") {
    Rng rng(42);
    for (int i = 0; i < 10; ++i) {
        const ComplexMatrix a = csamp::testing::random_complex_matrix(rng, 5, 5);
        const double c = max_real_eigenvalue(a) + 1.0;
        const Complex s(c, 50.0 * rng.sym());
        const ComplexMatrix x = resolvent(a, s);
        const ComplexMatrix id = ComplexMatrix::Identity(5, 5);
        const double residual = ((s * id - a) * x - id).norm();
        CHECK(residual < 1e-10 * std::max(1.0, (s * id - a).norm() * x.norm()));
    }
}

TEST_CASE("resolvent at the spectrum throws and carries the point") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(-1, 0);
    d(1, 1) = Complex(-2, 0);
    try {
        (void)resolvent(d, Complex(-1, 0));
        FAIL("expected ResolventAtSpectrumError");
    } catch (const ResolventAtSpectrumError& e) {
        CHECK(e.point == Complex(-1, 0));
    }
}

TEST_CASE("spectral_radius on simple matrices") {
    CHECK(spectral_radius(ComplexMatrix::Identity(3, 3)) == doctest::Approx(1.0));
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(0.5, 0);
    d(1, 1) = Complex(-0.9, 0);
    CHECK(spectral_radius(d) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(spectral_radius(ComplexMatrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("spectral_radius agrees with the eigAfter fallback on rotations") {
    // Equal-modulus complex pair: power iteration must hand over cleanly.
    ComplexMatrix rot(2, 2);
    rot << Complex(0, 0), Complex(-0.8, 0), Complex(0.8, 0), Complex(0, 0);
    CHECK(spectral_radius(rot) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("pairwise_sum preserves plain sums") {
    std::vector<Complex> xs;
    Complex direct(0, 0);
    Rng rng(5);
    for (int i = 0; i < 1001; ++i) {
        const Complex v(rng.sym(), rng.sym());
        xs.push_back(v);
        direct += v;
    }
    CHECK(std::abs(pairwise_sum(xs) - direct) < 1e-12);
}
