#pragma once

#include "csamp/statespace.hpp"

namespace csamp {

/// Truncated evaluation of S(s) = (1/T_s) sum_n G(s + j n w_s).
/// value = symmetric partial sum (pairs (n, -n) combined, ascending n,
/// pairwise accumulation) plus the analytic completion of the leading
/// CB/(s + j n w_s) tail; tail_bound is a rigorous upper bound on
/// ||exact - value||_F derived from the O(1/n^2) decay of the paired
/// strictly-proper remainder.
struct AliasingEvaluation {
    Complex s{0.0, 0.0};
    long long n_terms = 0;  // truncation index N
    ComplexMatrix value;
    double tail_bound = 0.0;
    double omega_s = 0.0;  // 2 pi / T_s
};

/// Throws PoleCollisionError (naming n) when a grid point s + j n w_s falls
/// within tol.pole_collision_rel of a plant pole, and ValidationError for
/// D != 0 or nonpositive T_s. tail_bound is +infinity when N is too small
/// for the asymptotic regime (N <= (|s| + ||A||)/w_s + 2).
AliasingEvaluation aliasing_sum(const ContinuousStateSpace& plant, Complex s, double ts,
                                long long n, const Tolerances& tol = {});

struct KernelCheck {
    Complex lhs{0.0, 0.0};  // 1/(e^{sigma T_s} - 1)
    Complex rhs{0.0, 0.0};  // symmetric partial sum minus 1/2
    double gap = 0.0;
};

/// Kernel expansion: 1/(e^{sigma T_s}-1) vs (1/T_s) sum 1/(sigma+j n w_s) - 1/2.
/// Symmetric partial sums leave an O(1/N) tail (each pair is O(1/n^2)).
/// Throws DomainError when sigma sits on the -j w_s Z lattice.
KernelCheck kernel_expansion_check(Complex sigma, double ts, long long n);

/// Right side of the higher-order partial-fraction lemma:
/// r = 1: 1/2 + sum_{m<=M} e^{-m T_s x};
/// r >= 2: sum_{m<=M} (m T_s)^{r-1}/(r-1)! e^{-m T_s x} (derivative kills the 1/2).
/// Throws DivergentSeriesError when Re(x) <= 0.
Complex higher_order_term(int r, Complex x, double ts, long long m_terms);

/// |symmetric partial sum of 1/(x+n) - pi cot(pi x)|; O(1/N) tail.
/// Throws DomainError for integer x.
double cotangent_check(double x, long long n);

struct HalfPartCheck {
    double paper_gap = 0.0;      // vs coth(sT/2), the identity as printed
    double corrected_gap = 0.0;  // vs (1/2) coth(sT/2)
};

/// Evaluates 1/(1-e^{-sT}) - 1/2 against both candidate closed forms so the
/// report can document which identity holds numerically.
/// Throws DomainError on the 2 pi j Z lattice. n is accepted for ladder
/// uniformity; both sides are closed-form.
HalfPartCheck half_part_check(Complex s_times_t, long long n);

/// Test family for the zero-phase Poisson check: f(t) = e^{-a t^2} with
/// F(w) = sqrt(pi/a) e^{-w^2/(4a)}.
struct GaussianFamily {
    double a = 1.0;
};

/// | sum_{|n|<=K} f(n) - sum_{|k|<=K} F(2 pi k) |; superpolynomial decay.
double poisson_zero_phase_check(const GaussianFamily& f, long long k);

/// || (zI - e^{A T_s})^{-1} - sum_{m=1..M} e^{A(m-1)T_s} z^{-m} ||_maxabs.
/// Throws DivergentSeriesError when |z| is inside the convergence radius.
double neumann_expansion_check(const ComplexMatrix& a, double ts, Complex z,
                               long long m_terms);

namespace detail {

/// Reference evaluation of the symmetric partial sum via per-term LU solves,
/// no eigendecomposition fast path and no tail completion. Used to pin the
/// production path against an independent route.
ComplexMatrix aliasing_partial_direct(const ContinuousStateSpace& plant, Complex s,
                                      double ts, long long n);

}  // namespace detail

}  // namespace csamp
