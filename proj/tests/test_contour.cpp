#include <doctest.h>

#include <cmath>

#include "csamp/contour.hpp"
#include "test_support.hpp"

using namespace csamp;
using csamp::testing::Rng;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix rmcf_a(double sigma, double omega) {
    ComplexMatrix a(2, 2);
    a << Complex(-sigma, 0), Complex(-omega, 0), Complex(omega, 0), Complex(-sigma, 0);
    return a;
}

}  // namespace

TEST_CASE("bromwich t0 on a scalar matches the arctangent closed form") {
    ComplexMatrix a(1, 1);
    a(0, 0) = Complex(-1, 0);
    const double c = 1.0, omega = 1e4;
    const ComplexMatrix v = bromwich_resolvent_t0(a, BromwichLine{c, omega, 1400});
    // (1/2 pi j) log((c + jW + 1)/(c - jW + 1)) = arctan(W/(c+1))/pi
    const double closed = std::atan(omega / (c + 1.0)) / kPi;
    CHECK(std::abs(v(0, 0) - Complex(closed, 0)) < 1e-8);
    CHECK(std::abs(v(0, 0) - Complex(0.5, 0)) < 2e-4);
}

TEST_CASE("bromwich t0 deviation from I/2 halves when Omega doubles") {
    const ComplexMatrix a = rmcf_a(1.0, 3.0);
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    double prev = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double omega = 1e3 * std::pow(2.0, i);
        const double dev =
            max_abs(bromwich_resolvent_t0(a, BromwichLine{0.5, omega, 1400}) - half);
        if (i > 0) {
            const double ratio = prev / dev;
            CHECK(ratio > 1.8);
            CHECK(ratio < 2.2);
        }
        prev = dev;
    }
}

TEST_CASE("bromwich abscissa at or below the spectrum is rejected") {
    const ComplexMatrix a = rmcf_a(1.0, 3.0);  // spectrum at -1 +/- 3j
    CHECK_THROWS_AS(bromwich_resolvent_t0(a, BromwichLine{-1.0, 1e3, 640}),
                    ContourPlacementError);
    CHECK_THROWS_AS(bromwich_resolvent_t0(a, BromwichLine{-2.0, 1e3, 640}),
                    ContourPlacementError);
}

TEST_CASE("the t = 0 dichotomy is explicit in the API") {
    const ComplexMatrix a = rmcf_a(1.0, 3.0);
    CHECK_THROWS_AS(bromwich_resolvent_t(a, 0.0, BromwichLine{0.5, 1e3, 640}),
                    DomainError);
    CHECK_THROWS_AS(bromwich_resolvent_t(a, -0.5, BromwichLine{0.5, 1e3, 640}),
                    DomainError);
    // The weighted line integrand with t = 0 is the t0 operation.
    const BromwichLine line{0.5, 1e3, 800};
    const ComplexMatrix via_core = detail::bromwich_line_quadrature(a, 0.0, line);
    CHECK(max_abs(via_core - bromwich_resolvent_t0(a, line)) == 0.0);
}

TEST_CASE("bromwich t>0 recovers the matrix exponential") {
    ComplexMatrix a(1, 1);
    a(0, 0) = Complex(-1, 0);
    const ComplexMatrix v = bromwich_resolvent_t(a, 1.0, BromwichLine{0.5, 1e3, 8000});
    CHECK(std::abs(v(0, 0) - Complex(std::exp(-1.0), 0)) < 1e-6);

    const ComplexMatrix b = rmcf_a(1.0, 3.0);
    const double ts = 0.5;
    const ComplexMatrix w = bromwich_resolvent_t(b, ts, BromwichLine{0.5, 1e3, 8000});
    CHECK(max_abs(w - expm(b, ts)) < 1e-6);
}

TEST_CASE("bromwich t>0 of 1/p gives the unit step") {
    ComplexMatrix zero(1, 1);
    zero(0, 0) = Complex(0, 0);
    const ComplexMatrix v = bromwich_resolvent_t(zero, 1.0, BromwichLine{1.0, 1e3, 8000});
    CHECK(std::abs(v(0, 0) - Complex(1.0, 0)) < 1e-8);
}

TEST_CASE("bromwich t>0 tightens along the refinement ladder") {
    const ComplexMatrix a = rmcf_a(1.0, 3.0);
    const double t = 0.7;
    const ComplexMatrix target = expm(a, t);
    double prev = 1e9;
    const double omegas[] = {1e2, 1e3, 1e4};
    const int orders[] = {2, 4, 8};
    for (int i = 0; i < 3; ++i) {
        const int panels = static_cast<int>(omegas[i] * 4.0 * t / kPi) + 40;
        const BromwichLine line{0.5, omegas[i], 2 * panels * orders[i]};
        const double err = max_abs(bromwich_resolvent_t(a, t, line) - target);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("bromwich t>0 requires the caps to clear the spectrum") {
    const ComplexMatrix a = rmcf_a(1.0, 50.0);  // imaginary parts at +/- 50
    CHECK_THROWS_AS(bromwich_resolvent_t(a, 1.0, BromwichLine{0.5, 10.0, 640}),
                    ContourPlacementError);
}

TEST_CASE("riesz projection singles out a diagonal eigenvalue") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(-1, 0);
    d(1, 1) = Complex(-2, 0);
    const ComplexMatrix p = riesz_projection(d, CircleContour{Complex(-1, 0), 0.4, 64});
    CHECK(std::abs(p(0, 0) - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(p(1, 1)) < 1e-12);

    // Enclosing the whole spectrum gives the identity.
    const ComplexMatrix all =
        riesz_projection(d, CircleContour{Complex(-1.5, 0), 2.0, 64});
    CHECK(max_abs(all - ComplexMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("riesz projection of a whole Jordan block is the identity") {
    ComplexMatrix j(2, 2);
    j << Complex(-1, 0), Complex(1, 0), Complex(0, 0), Complex(-1, 0);
    const ComplexMatrix p = riesz_projection(j, CircleContour{Complex(-1, 0), 0.5, 64});
    CHECK(max_abs(p - ComplexMatrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("riesz projections are idempotent and commute with A") {
    Rng rng(314);
    for (int trial = 0; trial < 8; ++trial) {
        const ComplexMatrix a = csamp::testing::random_hurwitz_matrix(rng, 4, 1.5, 0.3);
        const ComplexVector eigs = a.eigenvalues();
        const Complex center = eigs(0);
        double nearest = 1e300;
        for (Eigen::Index i = 1; i < eigs.size(); ++i)
            nearest = std::min(nearest, std::abs(eigs(i) - center));
        if (nearest < 0.2) continue;  // keep the contour comfortably separated
        const ComplexMatrix p =
            riesz_projection(a, CircleContour{center, nearest / 3.0, 64});
        CHECK((p * p - p).norm() < 1e-8);
        CHECK((p * a - a * p).norm() < 1e-8);
    }
}

TEST_CASE("riesz projection rejects eigenvalues in the ambiguity band") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(-1, 0);
    d(1, 1) = Complex(-2, 0);
    CHECK_THROWS_AS(riesz_projection(d, CircleContour{Complex(-1, 0), 1.0, 64}),
                    ContourPlacementError);
    CHECK_THROWS_AS(riesz_projection(d, CircleContour{Complex(-1, 0), 0.4, 4}),
                    ValidationError);
}

TEST_CASE("big arc quadrature is exact for 1/z") {
    ComplexMatrix k(1, 1);
    k(0, 0) = Complex(1, 0);
    auto f = [](Complex z) {
        ComplexMatrix m(1, 1);
        m(0, 0) = 1.0 / z;
        return m;
    };
    for (const auto& [radius, dev] :
         big_arc_check(f, k, kPi / 2.0, 3.0 * kPi / 2.0, {1.0, 1e2, 1e4, 1e6}))
        CHECK(dev < 1e-12);
}

TEST_CASE("big arc deviation for 1/z^2 falls like 1/R toward K = 0") {
    ComplexMatrix k = ComplexMatrix::Zero(1, 1);
    auto f = [](Complex z) {
        ComplexMatrix m(1, 1);
        m(0, 0) = 1.0 / (z * z);
        return m;
    };
    const auto rows = big_arc_check(f, k, kPi / 2.0, 3.0 * kPi / 2.0, {1e1, 1e2, 1e3});
    CHECK(rows[0].second / rows[1].second == doctest::Approx(10.0).epsilon(0.05));
    CHECK(rows[1].second / rows[2].second == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("big arc deviation for the resolvent halves per radius doubling") {
    const ComplexMatrix a = rmcf_a(1.0, 3.0);
    const ComplexMatrix k = ComplexMatrix::Identity(2, 2);
    auto f = [&a](Complex z) { return resolvent(a, z); };
    const auto rows =
        big_arc_check(f, k, kPi / 2.0, 3.0 * kPi / 2.0, {1e2, 2e2, 4e2, 8e2});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double ratio = rows[i].second / rows[i - 1].second;
        CHECK(ratio > 0.45);
        CHECK(ratio < 0.55);
    }
}
