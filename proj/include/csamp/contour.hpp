#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "csamp/matrix.hpp"

namespace csamp {

/// Vertical integration line Re(p) = abscissa, truncated symmetrically at
/// +/- half_height. node_count is the total node budget on the line; nodes
/// are always placed symmetrically about the real axis.
struct BromwichLine {
    double abscissa = 1.0;
    double half_height = 1e4;
    int node_count = 640;
};

/// Positively oriented circle for Riesz projections. No eigenvalue of the
/// target may lie inside the annulus radius/(1+band) ... radius*(1+band).
struct CircleContour {
    Complex center{0.0, 0.0};
    double radius = 1.0;
    int node_count = 64;
    double band = 0.02;
};

/// (1/2 pi j) Int_{c-jW}^{c+jW} (pI - A)^{-1} dp with symmetric (principal
/// value) truncation. Converges to I/2 as W -> infinity with O(1/W) error.
/// Throws ContourPlacementError when the abscissa is at or below the spectrum.
ComplexMatrix bromwich_resolvent_t0(const ComplexMatrix& a, const BromwichLine& line);

/// (1/2 pi j) Int e^{pt} (pI - A)^{-1} dp for t > 0. The truncated line tails
/// are completed by exact contour deformation onto horizontal rays at
/// +/- j half_height, where e^{pt} decays; the result converges to e^{At}.
/// Throws DomainError for t <= 0 (t = 0 is served by bromwich_resolvent_t0).
ComplexMatrix bromwich_resolvent_t(const ComplexMatrix& a, double t,
                                   const BromwichLine& line);

/// (1/2 pi j) Oint (pI - A)^{-1} dp over the circle, trapezoidal rule.
/// Throws ContourPlacementError when an eigenvalue sits in the ambiguity band.
ComplexMatrix riesz_projection(const ComplexMatrix& a, const CircleContour& contour);

/// For each radius R: quadrature of Int_{C(R)} f minus i(theta2-theta1) K,
/// where C(R) is the counterclockwise arc of radius R spanning the sector.
/// Diagnostic: deviations should fall toward 0 when z f(z) -> K in the sector.
std::vector<std::pair<double, double>> big_arc_check(
    const std::function<ComplexMatrix(Complex)>& f, const ComplexMatrix& k,
    double theta1, double theta2, const std::vector<double>& radii,
    int nodes_per_arc = 512);

namespace detail {

/// Shared line quadrature: symmetric composite Gauss-Legendre panels on
/// [c - jW, c + jW] of the integrand e^{pt} (pI - A)^{-1} (t = 0 allowed),
/// accumulated in ascending-imaginary-part pairwise order. No tail caps.
ComplexMatrix bromwich_line_quadrature(const ComplexMatrix& a, double t,
                                       const BromwichLine& line);

}  // namespace detail

}  // namespace csamp
