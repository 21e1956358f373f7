#pragma once

#include <vector>

#include "csamp/contour.hpp"
#include "csamp/statespace.hpp"

namespace csamp {

struct SpectralCluster {
    Complex eigenvalue;        // cluster representative (mean of members)
    int multiplicity = 1;      // algebraic multiplicity (cluster cardinality)
    ComplexMatrix projection;  // Riesz projector onto the generalized eigenspace
};

/// Resolvent partial-fraction data for a matrix A (and, when built from a
/// plant, the residues R_{j,r} = C (A - lambda_j I)^{r-1} P_j B, r = 1..m_j).
struct SpectralDecomposition {
    std::vector<SpectralCluster> clusters;
    std::vector<std::vector<ComplexMatrix>> residues;  // empty unless plant-built
};

/// Cluster the spectrum of A at tolerance tau_cluster = tol.cluster_rel*||A||
/// and compute each projector by circular-contour quadrature. Near-defective
/// matrices may cluster either way; the tolerance is the caller's knob.
/// Throws UnseparableSpectrumError when disjoint circles cannot be placed.
SpectralDecomposition spectral_decomposition(const ComplexMatrix& a,
                                             const Tolerances& tol = {},
                                             int circle_nodes = 64);

/// As above, with residues taken against the plant's B and C.
SpectralDecomposition spectral_decomposition(const ContinuousStateSpace& plant,
                                             const Tolerances& tol = {},
                                             int circle_nodes = 64);

}  // namespace csamp
