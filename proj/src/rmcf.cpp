#include "csamp/rmcf.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace csamp {

namespace {

using nlohmann::json;

ComplexMatrix real2x2(double a11, double a12, double a21, double a22) {
    ComplexMatrix m(2, 2);
    m << Complex(a11, 0), Complex(a12, 0), Complex(a21, 0), Complex(a22, 0);
    return m;
}

double closed_loop_trace(const RmcfDerived& d, double g, double k_eff) {
    return 2.0 * d.alpha * d.c - d.alpha * g * k_eff * (d.c - d.kappa * d.s);
}

double closed_loop_det(const RmcfDerived& d, double g, double k_eff) {
    return d.alpha * d.alpha * (1.0 - g * k_eff);
}

GapClass classify_gap(double g, double k_eff_star) {
    return (k_eff_star >= 1.0 / g && k_eff_star < 2.0 / g) ? GapClass::dramatic
                                                           : GapClass::ordinary;
}

GainAnalysis analyze(const RmcfPlant& p, double ts, Eta eta, double k_eff_star) {
    GainAnalysis out;
    out.eta = eta;
    out.k_eff_star = k_eff_star;
    out.regime_ok = rmcf_in_regime(p, ts);
    out.gap_class = classify_gap(p.gain, k_eff_star);
    out.k_max = gain_unmap(k_eff_star, eta, p.gain);
    return out;
}

}  // namespace

RmcfPlant make_rmcf_plant(double sigma, double omega, double zero, double gain) {
    if (!(sigma > 0.0) || !(omega > 0.0) || !(zero > 0.0) || !(gain > 0.0))
        throw ValidationError("rmcf plant: sigma, omega, z, g must all be positive");
    if (!std::isfinite(sigma) || !std::isfinite(omega) || !std::isfinite(zero) ||
        !std::isfinite(gain))
        throw ValidationError("rmcf plant: parameters must be finite");
    return RmcfPlant{sigma, omega, zero, gain};
}

RmcfDerived rmcf_derived(const RmcfPlant& p, double ts) {
    if (!(ts > 0.0)) throw ValidationError("rmcf: sampling period must be positive");
    RmcfDerived d;
    d.kappa = (p.sigma - p.zero) / p.omega;
    d.alpha = std::exp(-p.sigma * ts);
    d.theta = p.omega * ts;
    d.c = std::cos(d.theta);
    d.s = std::sin(d.theta);
    return d;
}

ContinuousStateSpace build_rmcf(const RmcfPlant& p) {
    const double kappa = (p.sigma - p.zero) / p.omega;
    ComplexMatrix a = real2x2(-p.sigma, -p.omega, p.omega, -p.sigma);
    ComplexMatrix b(2, 1);
    b << Complex(0, 0), Complex(1, 0);
    ComplexMatrix c(1, 2);
    c << Complex(p.gain * kappa, 0), Complex(p.gain, 0);
    ComplexMatrix d = ComplexMatrix::Zero(1, 1);
    return make_plant(std::move(a), std::move(b), std::move(c), std::move(d));
}

ComplexMatrix closed_loop_matrix(const RmcfPlant& p, double ts, double k_eff) {
    if (!std::isfinite(k_eff)) throw ValidationError("closed_loop_matrix: K_eff not finite");
    const RmcfDerived d = rmcf_derived(p, ts);
    const double g = p.gain;
    // C_d = alpha [g(kappa c + s), g(c - kappa s)]; B_d = [0; 1].
    const double cd1 = d.alpha * g * (d.kappa * d.c + d.s);
    const double cd2 = d.alpha * g * (d.c - d.kappa * d.s);
    return real2x2(d.alpha * d.c, -d.alpha * d.s, d.alpha * d.s - k_eff * cd1,
                   d.alpha * d.c - k_eff * cd2);
}

JuryMargins jury_margins(const RmcfPlant& p, double ts, double k_eff) {
    const RmcfDerived d = rmcf_derived(p, ts);
    const double tr = closed_loop_trace(d, p.gain, k_eff);
    const double det = closed_loop_det(d, p.gain, k_eff);
    JuryMargins m;
    m.p_at_1 = 1.0 - tr + det;
    m.p_at_minus1 = 1.0 + tr + det;
    m.det_margin = 1.0 - det;
    return m;
}

bool rmcf_in_regime(const RmcfPlant& p, double ts) {
    const RmcfDerived d = rmcf_derived(p, ts);
    return d.c - d.kappa * d.s >= d.alpha;
}

double critical_gain_eff(const RmcfPlant& p, double ts) {
    const RmcfDerived d = rmcf_derived(p, ts);
    const double denom =
        p.gain * (d.alpha * d.alpha + d.alpha * (d.c - d.kappa * d.s));
    if (!(denom > 0.0))
        throw DomainError("critical_gain_eff: denominator alpha^2 + alpha(c - kappa s) "
                          "not positive (outside the closed-form regime)");
    return (1.0 + 2.0 * d.alpha * d.c + d.alpha * d.alpha) / denom;
}

double gain_map(double k, Eta eta, double g) {
    if (!(g > 0.0)) throw ValidationError("gain_map: g must be positive");
    return k / (1.0 + eta_value(eta) * g * k);
}

std::optional<double> gain_unmap(double k_eff, Eta eta, double g) {
    if (!(g > 0.0)) throw ValidationError("gain_unmap: g must be positive");
    const double denom = 1.0 - eta_value(eta) * g * k_eff;
    if (denom <= 0.0) return std::nullopt;  // UNBOUNDED branch
    return k_eff / denom;
}

double critical_gain_eff_bisect(const RmcfPlant& p, double ts, int iterations) {
    // Coarse sweep: double an upper bound until the loop goes unstable.
    double hi = 1.0 / p.gain;
    double lo = 0.0;
    bool found = false;
    for (int i = 0; i < 80; ++i) {
        if (spectral_radius(closed_loop_matrix(p, ts, hi)) >= 1.0) {
            found = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if (!found)
        throw DomainError("critical_gain_eff_bisect: no instability crossing found");
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (spectral_radius(closed_loop_matrix(p, ts, mid)) >= 1.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

StabilityGapReport stability_gap_report(const RmcfPlant& p, double ts) {
    StabilityGapReport report;
    report.plant = p;
    report.ts = ts;
    report.derived = rmcf_derived(p, ts);
    const double k_star = critical_gain_eff(p, ts);
    report.corrected = analyze(p, ts, Eta::corrected, k_star);
    report.right_limit = analyze(p, ts, Eta::right_limit, k_star);
    report.k_eff_star_bisect = critical_gain_eff_bisect(p, ts);
    report.boundary_radius_err =
        std::abs(spectral_radius(closed_loop_matrix(p, ts, k_star)) - 1.0);

    for (const GainAnalysis* ga : {&report.corrected, &report.right_limit}) {
        if (!ga->k_max) {
            report.crosscheck_notes.push_back(eta_name(ga->eta) + ": K_max unbounded");
            continue;
        }
        const double km = *ga->k_max;
        const double rho_in = spectral_radius(
            closed_loop_matrix(p, ts, gain_map(0.99 * km, ga->eta, p.gain)));
        const double rho_out = spectral_radius(
            closed_loop_matrix(p, ts, gain_map(1.01 * km, ga->eta, p.gain)));
        report.crosscheck_notes.push_back(
            eta_name(ga->eta) + ": rho(0.99 K_max) = " + std::to_string(rho_in) +
            ", rho(1.01 K_max) = " + std::to_string(rho_out));
        if (!(rho_in < 1.0 && rho_out > 1.0))
            report.crosscheck_notes.push_back(eta_name(ga->eta) +
                                              ": WARNING boundary probe inconsistent");
    }
    return report;
}

std::optional<RmcfPlant> search_dramatic_gap(double ts) {
    // Paper gives the condition but no instance; scan the stated box.
    const double g = 1.0;
    for (int i = 0; i <= 20; ++i) {
        const double sigma_ts = 0.05 + (2.0 - 0.05) * i / 20.0;
        for (int jj = 0; jj <= 20; ++jj) {
            const double omega_ts = 0.1 + (3.0 - 0.1) * jj / 20.0;
            for (int k = 0; k <= 20; ++k) {
                const double kappa = -2.0 + 4.0 * k / 20.0;
                const double sigma = sigma_ts / ts;
                const double omega = omega_ts / ts;
                const double zero = sigma - kappa * omega;
                if (!(zero > 0.0)) continue;
                const RmcfPlant p{sigma, omega, zero, g};
                if (!rmcf_in_regime(p, ts)) continue;
                double k_star = 0.0;
                try {
                    k_star = critical_gain_eff(p, ts);
                } catch (const DomainError&) {
                    continue;
                }
                if (k_star >= 1.0 / g && k_star < 2.0 / g) return p;
            }
        }
    }
    return std::nullopt;
}

Trajectory closed_loop_simulate(const RmcfPlant& p, double ts, double k, Eta eta,
                                long long steps, const Eigen::Vector2d& x0) {
    if (steps < 1) throw ValidationError("closed_loop_simulate: steps must be >= 1");
    const RmcfDerived d = rmcf_derived(p, ts);
    const double k_eff = gain_map(k, eta, p.gain);
    const double g = p.gain;
    const double cd1 = d.alpha * g * (d.kappa * d.c + d.s);
    const double cd2 = d.alpha * g * (d.c - d.kappa * d.s);
    const double dd = eta_value(eta) * g;
    Eigen::Matrix2d a_cl;
    a_cl << d.alpha * d.c, -d.alpha * d.s, d.alpha * d.s - k_eff * cd1,
        d.alpha * d.c - k_eff * cd2;

    Trajectory tr;
    tr.states.reserve(static_cast<std::size_t>(steps) + 1);
    tr.outputs.reserve(static_cast<std::size_t>(steps) + 1);
    Eigen::Vector2d x = x0;
    for (long long i = 0; i <= steps; ++i) {
        const double cx = cd1 * x(0) + cd2 * x(1);
        const double u = -k_eff * cx;
        tr.states.push_back(x);
        tr.outputs.push_back(cx + dd * u);
        x = a_cl * x;
    }
    return tr;
}

std::string report_to_json(const StabilityGapReport& report) {
    json j;
    j["plant"] = {{"sigma", report.plant.sigma},
                  {"omega", report.plant.omega},
                  {"zero", report.plant.zero},
                  {"gain", report.plant.gain}};
    j["Ts"] = report.ts;
    j["derived"] = {{"kappa", report.derived.kappa},
                    {"alpha", report.derived.alpha},
                    {"theta", report.derived.theta},
                    {"c", report.derived.c},
                    {"s", report.derived.s}};
    for (const GainAnalysis* ga : {&report.corrected, &report.right_limit}) {
        json ja;
        ja["eta"] = eta_value(ga->eta);
        ja["K_eff_star"] = ga->k_eff_star;
        if (ga->k_max)
            ja["K_max"] = *ga->k_max;
        else
            ja["K_max"] = "unbounded";
        ja["regime_ok"] = ga->regime_ok;
        ja["gap_class"] = ga->gap_class == GapClass::dramatic ? "dramatic" : "ordinary";
        j[ga->eta == Eta::corrected ? "corrected" : "right_limit"] = ja;
    }
    j["K_eff_star_bisect"] = report.k_eff_star_bisect;
    j["boundary_radius_err"] = report.boundary_radius_err;
    j["crosschecks"] = report.crosscheck_notes;
    return j.dump(2);
}

}  // namespace csamp
