#include "csamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace csamp {

namespace {

struct Cluster {
    std::vector<Complex> members;
    Complex mean() const {
        Complex acc(0.0, 0.0);
        for (const Complex& m : members) acc += m;
        return acc / static_cast<double>(members.size());
    }
    double spread() const {
        const Complex c = mean();
        double s = 0.0;
        for (const Complex& m : members) s = std::max(s, std::abs(m - c));
        return s;
    }
};

// Single-linkage clustering of the eigenvalues at distance tau.
std::vector<Cluster> cluster_eigenvalues(const ComplexVector& eigs, double tau) {
    std::vector<Complex> sorted(eigs.data(), eigs.data() + eigs.size());
    std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<Cluster> clusters;
    std::vector<bool> used(sorted.size(), false);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (used[i]) continue;
        Cluster c;
        c.members.push_back(sorted[i]);
        used[i] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = 0; j < sorted.size(); ++j) {
                if (used[j]) continue;
                for (const Complex& m : c.members) {
                    if (std::abs(sorted[j] - m) <= tau) {
                        c.members.push_back(sorted[j]);
                        used[j] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        clusters.push_back(std::move(c));
    }
    return clusters;
}

}  // namespace

SpectralDecomposition spectral_decomposition(const ComplexMatrix& a, const Tolerances& tol,
                                             int circle_nodes) {
    if (a.rows() != a.cols())
        throw DimensionError("spectral_decomposition: matrix must be square");
    const double scale = std::max(1.0, a.norm());
    const double tau = tol.cluster_rel * scale;
    const ComplexVector eigs = a.eigenvalues();
    std::vector<Cluster> clusters = cluster_eigenvalues(eigs, tau);

    SpectralDecomposition out;
    out.clusters.reserve(clusters.size());
    for (std::size_t j = 0; j < clusters.size(); ++j) {
        const Complex center = clusters[j].mean();
        double separation = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            if (k == j) continue;
            for (const Complex& m : clusters[k].members)
                separation = std::min(separation, std::abs(m - center));
        }
        const double spread = clusters[j].spread();
        double radius;
        if (std::isfinite(separation)) {
            radius = separation / 3.0;
            // The circle must enclose its own cluster with clearance and keep
            // every foreign eigenvalue outside twice the radius.
            if (radius <= 2.0 * spread + 8.0 * tau)
                throw UnseparableSpectrumError(
                    "spectral_decomposition: eigenvalue clusters too close to separate "
                    "with disjoint circles");
        } else {
            radius = std::max(2.0 * spread + 8.0 * tau, 0.1 * scale);
        }
        CircleContour contour;
        contour.center = center;
        contour.radius = radius;
        contour.node_count = circle_nodes;
        SpectralCluster sc;
        sc.eigenvalue = center;
        sc.multiplicity = static_cast<int>(clusters[j].members.size());
        sc.projection = riesz_projection(a, contour);
        out.clusters.push_back(std::move(sc));
    }
    return out;
}

SpectralDecomposition spectral_decomposition(const ContinuousStateSpace& plant,
                                             const Tolerances& tol, int circle_nodes) {
    SpectralDecomposition out = spectral_decomposition(plant.a, tol, circle_nodes);
    const Eigen::Index n = plant.states();
    out.residues.reserve(out.clusters.size());
    for (const SpectralCluster& sc : out.clusters) {
        std::vector<ComplexMatrix> rs;
        rs.reserve(sc.multiplicity);
        ComplexMatrix shifted_power = sc.projection;  // (A - lambda I)^{r-1} P_j
        const ComplexMatrix shift =
            plant.a - sc.eigenvalue * ComplexMatrix::Identity(n, n);
        for (int r = 1; r <= sc.multiplicity; ++r) {
            rs.push_back(plant.c * shifted_power * plant.b);
            shifted_power = shift * shifted_power;
        }
        out.residues.push_back(std::move(rs));
    }
    return out;
}

}  // namespace csamp
