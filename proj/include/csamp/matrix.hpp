#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "csamp/errors.hpp"

namespace csamp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Numeric thresholds shared across the kernels. One record, stated defaults;
/// pass a modified copy where a knob matters.
struct Tolerances {
    double proj = 1e-8;                 // projector identities (tau_proj)
    double cluster_rel = 1e-7;          // eigenvalue clustering, relative to ||A|| (tau_cluster)
    double resolvent_residual = 1e-10;  // relative residual accepted from a linear solve
    double pole_collision_rel = 1e-9;   // grid-point-to-pole rejection distance
    double real_truncation = 1e-12;     // imaginary residue treated as exactly zero
};

/// Build a validated matrix from row-major entries.
/// Throws ValidationError on empty shape, count mismatch, or nonfinite entries.
ComplexMatrix make_matrix(Eigen::Index rows, Eigen::Index cols,
                          const std::vector<Complex>& row_major);

/// Throws ValidationError when any entry is NaN or infinite.
void ensure_finite(const ComplexMatrix& m, const char* what);

/// Largest absolute entry; the deviation metric used by the contour tables.
double max_abs(const ComplexMatrix& m);

/// e^{At} by scaling-and-squaring with diagonal Pade approximants.
/// The ||At|| = 0 branch returns the identity exactly.
ComplexMatrix expm(const ComplexMatrix& a, double t);

/// (sI - A)^{-1} by LU solve against identity columns.
/// Throws ResolventAtSpectrumError when the solve residual rejects s.
ComplexMatrix resolvent(const ComplexMatrix& a, Complex s, const Tolerances& tol = {});

/// max |eigenvalue|: power iteration with Rayleigh refinement, falling back
/// to a full eigen-solve when the iteration stagnates.
double spectral_radius(const ComplexMatrix& m);

/// max Re(eigenvalue); spectrum bound used to validate Bromwich abscissas.
double max_real_eigenvalue(const ComplexMatrix& a);

/// Deterministic pairwise reduction in index order. Used wherever the spec
/// fixes the accumulation order of quadrature nodes or series terms.
Complex pairwise_sum(std::vector<Complex>& terms);
ComplexMatrix pairwise_sum(std::vector<ComplexMatrix>& terms);

}  // namespace csamp
