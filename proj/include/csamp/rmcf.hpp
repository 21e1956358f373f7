#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csamp/statespace.hpp"

namespace csamp {

/// Second-order benchmark plant G(s) = g(s+z)/((s+sigma)^2 + omega^2) in real
/// modal canonical form. All four parameters strictly positive.
struct RmcfPlant {
    double sigma = 1.0;  // 1/time
    double omega = 1.0;  // rad/time
    double zero = 1.0;   // plant zero z
    double gain = 1.0;   // g
};

RmcfPlant make_rmcf_plant(double sigma, double omega, double zero, double gain);

/// Derived sampling quantities: kappa = (sigma - z)/omega, alpha = e^{-sigma Ts},
/// theta = omega Ts, c = cos(theta), s = sin(theta).
struct RmcfDerived {
    double kappa = 0.0;
    double alpha = 0.0;
    double theta = 0.0;
    double c = 0.0;
    double s = 0.0;
};

RmcfDerived rmcf_derived(const RmcfPlant& p, double ts);

/// A = [[-sigma, -omega], [omega, -sigma]], B = [0; 1], C = [g kappa, g], D = 0.
ContinuousStateSpace build_rmcf(const RmcfPlant& p);

/// A_cl = A_d - B_d K_eff C_d with the closed-form C_d = alpha [g(kappa c + s), g(c - kappa s)].
ComplexMatrix closed_loop_matrix(const RmcfPlant& p, double ts, double k_eff);

struct JuryMargins {
    double p_at_1 = 0.0;       // p(1)  = 1 - tr + det
    double p_at_minus1 = 0.0;  // p(-1) = 1 + tr + det
    double det_margin = 0.0;   // 1 - det
    bool stable() const { return p_at_1 > 0.0 && p_at_minus1 > 0.0 && det_margin > 0.0; }
};

/// Order-2 Jury conditions on p(lambda) = lambda^2 - tr lambda + det.
JuryMargins jury_margins(const RmcfPlant& p, double ts, double k_eff);

/// Closed-form critical effective gain
/// K_eff* = (1 + 2 alpha c + alpha^2) / (g (alpha^2 + alpha (c - kappa s))).
/// Throws DomainError when the denominator is not positive.
double critical_gain_eff(const RmcfPlant& p, double ts);

/// True in the regime c - kappa s >= alpha where p(1) > 0 is guaranteed and
/// the boundary is reached at p(-1) = 0.
bool rmcf_in_regime(const RmcfPlant& p, double ts);

/// K_eff = K / (1 + eta g K).
double gain_map(double k, Eta eta, double g);

/// Inverse on the finite branch: K = K_eff / (1 - eta g K_eff).
/// Returns nullopt (UNBOUNDED) when eta g K_eff >= 1.
std::optional<double> gain_unmap(double k_eff, Eta eta, double g);

/// Oracle: smallest K_eff > 0 with spectral_radius(A_cl) = 1, found by coarse
/// sweep plus bisection on the spectral radius, independent of the closed form.
double critical_gain_eff_bisect(const RmcfPlant& p, double ts, int iterations = 200);

enum class GapClass { dramatic, ordinary };

struct GainAnalysis {
    Eta eta = Eta::corrected;
    double k_eff_star = 0.0;
    std::optional<double> k_max;  // nullopt = UNBOUNDED
    bool regime_ok = false;
    GapClass gap_class = GapClass::ordinary;
};

struct StabilityGapReport {
    RmcfPlant plant;
    double ts = 1.0;
    RmcfDerived derived;
    GainAnalysis corrected;    // eta = 1/2
    GainAnalysis right_limit;  // eta = 1
    double k_eff_star_bisect = 0.0;    // oracle column
    double boundary_radius_err = 0.0;  // |rho(A_cl(K_eff*)) - 1|
    // Spectral-radius probes just inside/outside each finite K_max.
    std::vector<std::string> crosscheck_notes;
};

/// Both analyses plus oracle cross-checks. Throws DomainError outside the
/// closed-form regime (callers wanting a report anyway should check
/// rmcf_in_regime first; the CLI does).
StabilityGapReport stability_gap_report(const RmcfPlant& p, double ts);

/// Grid search over (sigma Ts, omega Ts, kappa) in [0.05,2]x[0.1,3]x[-2,2]
/// with g = 1, Ts = 1, returning the first in-regime instance whose critical
/// gain satisfies 1/g <= K_eff* < 2/g.
std::optional<RmcfPlant> search_dramatic_gap(double ts = 1.0);

struct Trajectory {
    std::vector<Eigen::Vector2d> states;
    std::vector<double> outputs;
};

/// Regulation run (r = 0): x[k+1] = A_cl x[k], y[k] = C_d x[k] + D_d u[k]
/// with u[k] = -K_eff C_d x[k].
Trajectory closed_loop_simulate(const RmcfPlant& p, double ts, double k, Eta eta,
                                long long steps, const Eigen::Vector2d& x0);

std::string report_to_json(const StabilityGapReport& report);

}  // namespace csamp
