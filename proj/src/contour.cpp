#include "csamp/contour.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csamp {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule by Newton iteration on the Legendre recurrence.
GaussRule gauss_legendre(int k) {
    GaussRule rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    for (int i = 0; i < k; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

void require_square(const ComplexMatrix& a, const char* op) {
    if (a.rows() != a.cols())
        throw DimensionError(std::string(op) + ": matrix must be square");
}

// Panel breakpoints on [0, W]: lengths grow with distance from the real axis
// (the resolvent varies on the scale of |p|), capped by the oscillation
// wavelength when t > 0.
std::vector<double> panel_breaks(double w, double t, double h0) {
    std::vector<double> breaks{0.0};
    double y = 0.0;
    while (y < w) {
        double len = std::max(h0, 0.5 * y);
        if (t > 0.0) len = std::min(len, kPi / (4.0 * t));
        y = std::min(w, y + len);
        breaks.push_back(y);
    }
    return breaks;
}

ComplexMatrix integrate_panel_vertical(const ComplexMatrix& a, double c, double t,
                                       double y0, double y1, int sign,
                                       const GaussRule& rule) {
    const Eigen::Index n = a.rows();
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    const double mid = 0.5 * (y0 + y1);
    const double half = 0.5 * (y1 - y0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = sign * (mid + half * rule.nodes[i]);
        const Complex p(c, y);
        Complex weight = Complex(0.0, rule.weights[i] * half);  // dp = j dy
        if (t > 0.0) weight *= std::exp(p * t);
        acc += weight * resolvent(a, p);
    }
    return acc;
}

}  // namespace

namespace detail {

ComplexMatrix bromwich_line_quadrature(const ComplexMatrix& a, double t,
                                       const BromwichLine& line) {
    require_square(a, "bromwich quadrature");
    const double bound = max_real_eigenvalue(a);
    if (!(line.abscissa > bound))
        throw ContourPlacementError("bromwich: abscissa " + std::to_string(line.abscissa) +
                                    " is at or below the spectrum bound " +
                                    std::to_string(bound));
    if (!(line.half_height > 0.0))
        throw ValidationError("bromwich: half_height must be positive");

    const double h0 = 0.5 * std::min(1.0, line.abscissa - bound);
    const std::vector<double> breaks = panel_breaks(line.half_height, t, h0);
    const int panels = static_cast<int>(breaks.size()) - 1;
    const int order = std::clamp(line.node_count / std::max(1, 2 * panels), 2, 24);
    const GaussRule rule = gauss_legendre(order);

    // Ascending imaginary part: mirrored panels from -W up to 0, then 0 to W.
    std::vector<ComplexMatrix> terms;
    terms.reserve(2 * panels);
    for (int i = panels - 1; i >= 0; --i)
        terms.push_back(
            integrate_panel_vertical(a, line.abscissa, t, breaks[i], breaks[i + 1], -1, rule));
    for (int i = 0; i < panels; ++i)
        terms.push_back(
            integrate_panel_vertical(a, line.abscissa, t, breaks[i], breaks[i + 1], +1, rule));
    ComplexMatrix total = pairwise_sum(terms);
    return total / Complex(0.0, 2.0 * kPi);
}

}  // namespace detail

ComplexMatrix bromwich_resolvent_t0(const ComplexMatrix& a, const BromwichLine& line) {
    return detail::bromwich_line_quadrature(a, 0.0, line);
}

ComplexMatrix bromwich_resolvent_t(const ComplexMatrix& a, double t,
                                   const BromwichLine& line) {
    if (!(t > 0.0))
        throw DomainError("bromwich_resolvent_t: t must be > 0 (t = 0 is served by "
                          "bromwich_resolvent_t0)");
    require_square(a, "bromwich_resolvent_t");
    const Eigen::Index n = a.rows();
    const double im_extent = a.eigenvalues().imag().cwiseAbs().maxCoeff();
    if (!(line.half_height > im_extent + 1.0))
        throw ContourPlacementError(
            "bromwich_resolvent_t: half_height must clear the spectrum's imaginary extent");

    const ComplexMatrix vertical = detail::bromwich_line_quadrature(a, t, line);

    // The truncated tails |Im p| > W are deformed onto horizontal rays at
    // +/- jW where e^{pt} decays; truncate once the factor is below 1e-20.
    const double c = line.abscissa;
    const double w = line.half_height;
    const double x_min = c - 46.0 / t;
    const double panel_len = 1.2 / t;
    const GaussRule rule = gauss_legendre(12);
    ComplexMatrix caps = ComplexMatrix::Zero(n, n);
    double x1 = c;
    while (x1 > x_min) {
        const double x0 = std::max(x_min, x1 - panel_len);
        const double mid = 0.5 * (x0 + x1);
        const double half = 0.5 * (x1 - x0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = mid + half * rule.nodes[i];
            const double wt = rule.weights[i] * half;
            const Complex p_lo(x, -w);
            const Complex p_hi(x, +w);
            caps += wt * std::exp(p_lo * t) * resolvent(a, p_lo);
            caps -= wt * std::exp(p_hi * t) * resolvent(a, p_hi);
        }
        x1 = x0;
    }
    return vertical + caps / Complex(0.0, 2.0 * kPi);
}

ComplexMatrix riesz_projection(const ComplexMatrix& a, const CircleContour& contour) {
    require_square(a, "riesz_projection");
    if (!(contour.radius > 0.0))
        throw ValidationError("riesz_projection: radius must be positive");
    if (contour.node_count < 8)
        throw ValidationError("riesz_projection: node count must be at least 8");

    const ComplexVector eigs = a.eigenvalues();
    const double lo = contour.radius / (1.0 + contour.band);
    const double hi = contour.radius * (1.0 + contour.band);
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const double d = std::abs(eigs(i) - contour.center);
        if (d >= lo && d <= hi)
            throw ContourPlacementError(
                "riesz_projection: eigenvalue inside the contour ambiguity band");
    }

    // Trapezoidal rule on the circle; spectrally accurate for the resolvent.
    const int m = contour.node_count;
    std::vector<ComplexMatrix> terms;
    terms.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * kPi * k / m;
        const Complex dir = std::polar(1.0, theta);
        const Complex p = contour.center + contour.radius * dir;
        terms.push_back((contour.radius / m) * dir * resolvent(a, p));
    }
    return pairwise_sum(terms);
}

std::vector<std::pair<double, double>> big_arc_check(
    const std::function<ComplexMatrix(Complex)>& f, const ComplexMatrix& k,
    double theta1, double theta2, const std::vector<double>& radii,
    int nodes_per_arc) {
    if (!(theta2 > theta1)) throw ValidationError("big_arc_check: need theta2 > theta1");
    const ComplexMatrix target = Complex(0.0, theta2 - theta1) * k;
    const int panels =
        std::max(1, static_cast<int>(std::ceil((theta2 - theta1) / (kPi / 8.0))));
    const int order = std::clamp(nodes_per_arc / panels, 4, 24);
    const GaussRule rule = gauss_legendre(order);

    std::vector<std::pair<double, double>> out;
    out.reserve(radii.size());
    for (double r : radii) {
        ComplexMatrix acc = ComplexMatrix::Zero(k.rows(), k.cols());
        for (int p = 0; p < panels; ++p) {
            const double a0 = theta1 + (theta2 - theta1) * p / panels;
            const double a1 = theta1 + (theta2 - theta1) * (p + 1) / panels;
            const double mid = 0.5 * (a0 + a1);
            const double half = 0.5 * (a1 - a0);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double theta = mid + half * rule.nodes[i];
                const Complex z = std::polar(r, theta);
                acc += (rule.weights[i] * half) * f(z) * Complex(0.0, 1.0) * z;
            }
        }
        out.emplace_back(r, max_abs(acc - target));
    }
    return out;
}

}  // namespace csamp
