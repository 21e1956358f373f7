#include "csamp/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "csamp/aliasing.hpp"
#include "csamp/contour.hpp"
#include "csamp/rmcf.hpp"
#include "csamp/spectral.hpp"

namespace csamp {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kFloorEps = 1e-13;  // rungs below this count as "at the floor"

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6e", x);
    return buf;
}

ComplexMatrix rmcf_test_matrix() {
    ComplexMatrix a(2, 2);
    a << Complex(-1, 0), Complex(-3, 0), Complex(3, 0), Complex(-1, 0);
    return a;
}

ComplexMatrix neumann_test_matrix() {
    ComplexMatrix a(3, 3);
    a << Complex(-1.0, 0), Complex(0.3, 0), Complex(0.0, 0),
         Complex(-0.2, 0), Complex(-1.5, 0), Complex(0.1, 0),
         Complex(0.0, 0), Complex(0.2, 0), Complex(-0.8, 0);
    return a;
}

// One real eigenvalue, a complex pair, and a Jordan block: exercises every
// branch of the partial-fraction machinery.
ComplexMatrix mixed_spectrum_matrix() {
    ComplexMatrix a = ComplexMatrix::Zero(5, 5);
    a(0, 0) = Complex(-1, 0);
    a(1, 1) = Complex(-2, 0);
    a(1, 2) = Complex(-1, 0);
    a(2, 1) = Complex(1, 0);
    a(2, 2) = Complex(-2, 0);
    a(3, 3) = Complex(-4, 0);
    a(3, 4) = Complex(1, 0);
    a(4, 4) = Complex(-4, 0);
    return a;
}

// (1/T_s) * symmetric partial sum of 1/(x + j n w_s)^r, pairs combined.
Complex scalar_power_partial(Complex x, double ts, int r, long long n) {
    const double omega_s = 2.0 * kPi / ts;
    std::vector<Complex> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    terms.push_back(std::pow(x, -r));
    for (long long i = 1; i <= n; ++i) {
        const Complex shift(0.0, static_cast<double>(i) * omega_s);
        terms.push_back(std::pow(x + shift, -r) + std::pow(x - shift, -r));
    }
    return pairwise_sum(terms) / ts;
}

std::optional<double> fit_slope(const std::vector<LadderPoint>& ladder) {
    std::vector<std::pair<double, double>> pts;
    for (const LadderPoint& p : ladder)
        if (p.gap > kFloorEps) pts.emplace_back(std::log10(p.n), std::log10(p.gap));
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = pts.size() * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (pts.size() * sxy - sx * sy) / denom;
}

void finish_report(LemmaReport& rep) {
    rep.final_gap = rep.ladder.empty() ? 0.0 : rep.ladder.back().gap;
    rep.fitted_slope = fit_slope(rep.ladder);
    const bool gap_ok = rep.final_gap < rep.tolerance;
    bool rate_ok = false;
    const bool floored = !rep.fitted_slope.has_value();
    switch (rep.rate_kind) {
        case RateKind::floor_only:
            rate_ok = std::all_of(rep.ladder.begin(), rep.ladder.end(),
                                  [&](const LadderPoint& p) { return p.gap < rep.tolerance; });
            break;
        case RateKind::algebraic:
            rate_ok = floored ? gap_ok
                              : std::abs(*rep.fitted_slope - rep.predicted_slope) <=
                                    rep.slope_window;
            break;
        case RateKind::at_least:
            rate_ok = floored ? gap_ok
                              : *rep.fitted_slope <= rep.predicted_slope + rep.slope_window;
            break;
    }
    rep.verdict = (gap_ok && rate_ok) ? Verdict::verified : Verdict::failed;
}

double pick_tol(const RunConfig& config, double default_tol) {
    return config.lemma_tol_override > 0.0 ? config.lemma_tol_override : default_tol;
}

LemmaReport cotangent_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "cotangent";
    const double x = 0.25;
    rep.parameters = "x=" + fmt(x);
    rep.rate_kind = RateKind::algebraic;
    rep.predicted_slope = -1.0;
    rep.tolerance = pick_tol(config, 1e-4);
    for (long long n : config.n_ladder)
        rep.ladder.push_back({static_cast<double>(n), cotangent_check(x, n)});
    finish_report(rep);
    return rep;
}

LemmaReport half_part_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "half-part";
    const Complex st(2.0, 0.0);
    rep.parameters = "sT=" + fmt(st.real());
    rep.rate_kind = RateKind::floor_only;
    rep.tolerance = pick_tol(config, 1e-10);
    const HalfPartCheck check = half_part_check(st, config.n_ladder.back());
    // Ladder carries the corrected gap; the printed form's gap goes in the note.
    for (long long n : config.n_ladder)
        rep.ladder.push_back({static_cast<double>(n), check.corrected_gap});
    rep.final_gap = check.corrected_gap;
    const bool corrected_holds = check.corrected_gap < rep.tolerance;
    const bool printed_holds = check.paper_gap < rep.tolerance;
    rep.note = "printed coth form off by " + fmt(check.paper_gap) +
               "; (1/2)coth gap " + fmt(check.corrected_gap);
    if (corrected_holds && !printed_holds)
        rep.verdict = Verdict::verified_with_correction;
    else if (corrected_holds && printed_holds)
        rep.verdict = Verdict::verified;
    else
        rep.verdict = Verdict::failed;
    return rep;
}

LemmaReport kernel_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "kernel-expansion";
    const Complex sigma(1.0, 0.0);
    const double ts = 1.0;
    rep.parameters = "sigma=" + fmt(sigma.real()) + " Ts=" + fmt(ts);
    rep.rate_kind = RateKind::algebraic;
    rep.predicted_slope = -1.0;
    rep.tolerance = pick_tol(config, 1e-5);
    for (long long n : config.n_ladder)
        rep.ladder.push_back(
            {static_cast<double>(n), kernel_expansion_check(sigma, ts, n).gap});
    finish_report(rep);
    return rep;
}

LemmaReport higher_order_report(const RunConfig& config, int r) {
    LemmaReport rep;
    rep.id = "higher-order-r" + std::to_string(r);
    const Complex x(1.0, 0.0);
    const double ts = 1.0;
    rep.parameters = "r=" + std::to_string(r) + " x=" + fmt(x.real()) + " Ts=" + fmt(ts);
    rep.rate_kind = RateKind::algebraic;
    // Pairs cancel to O(1/n^{r+1}) for odd r >= 3; even and r = 1 leave O(1/n^2)
    // per pair, so the symmetric tail is O(1/N) for r = 1, 2 and O(1/N^3) for r = 3.
    rep.predicted_slope = (r == 3) ? -3.0 : -1.0;
    rep.tolerance = pick_tol(config, r == 3 ? 1e-9 : 1e-5);
    const long long m_terms = 60;  // geometric side converged far below the floor
    const Complex rhs = higher_order_term(r, x, ts, m_terms);
    std::vector<long long> ladder =
        (r == 3) ? std::vector<long long>{100, 200, 400} : config.n_ladder;
    for (long long n : ladder)
        rep.ladder.push_back({static_cast<double>(n),
                              std::abs(scalar_power_partial(x, ts, r, n) - rhs)});
    finish_report(rep);
    return rep;
}

LemmaReport poisson_report(const RunConfig& config, const std::string& id, double a,
                           std::vector<long long> ladder, double tol) {
    LemmaReport rep;
    rep.id = id;
    rep.parameters = "a=" + fmt(a);
    rep.rate_kind = RateKind::at_least;
    rep.predicted_slope = -2.0;
    rep.tolerance = pick_tol(config, tol);
    for (long long k : ladder)
        rep.ladder.push_back(
            {static_cast<double>(k), poisson_zero_phase_check(GaussianFamily{a}, k)});
    finish_report(rep);
    return rep;
}

LemmaReport neumann_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "neumann-expansion";
    const double ts = 0.5;
    const Complex z = std::exp(Complex(1.0, 1.0) * ts);
    rep.parameters = "Ts=" + fmt(ts) + " z=e^{(1+j)Ts}";
    rep.rate_kind = RateKind::at_least;
    rep.predicted_slope = -2.0;
    rep.tolerance = pick_tol(config, 1e-10);
    const ComplexMatrix a = neumann_test_matrix();
    for (long long m : {10LL, 20LL, 40LL})
        rep.ladder.push_back(
            {static_cast<double>(m), neumann_expansion_check(a, ts, z, m)});
    finish_report(rep);
    return rep;
}

LemmaReport big_arc_inverse_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "big-arc-1/z";
    rep.parameters = "sector=(pi/2,3pi/2)";
    rep.rate_kind = RateKind::floor_only;
    rep.tolerance = pick_tol(config, 1e-12);
    ComplexMatrix k(1, 1);
    k(0, 0) = Complex(1.0, 0.0);
    auto f = [](Complex z) {
        ComplexMatrix m(1, 1);
        m(0, 0) = 1.0 / z;
        return m;
    };
    const auto rows = big_arc_check(f, k, kPi / 2.0, 3.0 * kPi / 2.0, {1e2, 1e3, 1e4});
    for (const auto& [radius, dev] : rows) rep.ladder.push_back({radius, dev});
    finish_report(rep);
    return rep;
}

LemmaReport big_arc_resolvent_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "big-arc-resolvent";
    rep.parameters = "A=rmcf(sigma=1,omega=3)";
    rep.rate_kind = RateKind::algebraic;
    rep.predicted_slope = -1.0;
    rep.tolerance = pick_tol(config, 1e-3);
    const ComplexMatrix a = rmcf_test_matrix();
    const ComplexMatrix k = ComplexMatrix::Identity(2, 2);
    auto f = [&a](Complex z) { return resolvent(a, z); };
    const auto rows =
        big_arc_check(f, k, kPi / 2.0, 3.0 * kPi / 2.0, {1e2, 1e3, 1e4, 1e5});
    for (const auto& [radius, dev] : rows) rep.ladder.push_back({radius, dev});
    finish_report(rep);
    return rep;
}

LemmaReport riesz_sum_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "riesz-sum-identity";
    rep.parameters = "A=mixed-spectrum-5x5";
    rep.rate_kind = RateKind::at_least;
    rep.predicted_slope = -2.0;
    rep.tolerance = pick_tol(config, config.tol.proj);
    const ComplexMatrix a = mixed_spectrum_matrix();
    for (int nodes : {16, 32, 64}) {
        const SpectralDecomposition sd = spectral_decomposition(a, config.tol, nodes);
        ComplexMatrix sum = ComplexMatrix::Zero(a.rows(), a.cols());
        for (const SpectralCluster& c : sd.clusters) sum += c.projection;
        rep.ladder.push_back(
            {static_cast<double>(nodes),
             max_abs(sum - ComplexMatrix::Identity(a.rows(), a.cols()))});
    }
    finish_report(rep);
    return rep;
}

LemmaReport resolvent_expansion_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "resolvent-expansion";
    rep.parameters = "A=mixed-spectrum-5x5 s={1+2j,0.5,3j}";
    rep.rate_kind = RateKind::at_least;
    rep.predicted_slope = -2.0;
    rep.tolerance = pick_tol(config, config.tol.proj);
    const ComplexMatrix a = mixed_spectrum_matrix();
    const Eigen::Index n = a.rows();
    const std::vector<Complex> points{{1.0, 2.0}, {0.5, 0.0}, {0.0, 3.0}};
    for (int nodes : {16, 32, 64}) {
        const SpectralDecomposition sd = spectral_decomposition(a, config.tol, nodes);
        double worst = 0.0;
        for (const Complex& s : points) {
            ComplexMatrix approx = ComplexMatrix::Zero(n, n);
            for (const SpectralCluster& c : sd.clusters) {
                ComplexMatrix term = c.projection;  // (A - lambda I)^{r-1} P_j
                Complex denom = s - c.eigenvalue;
                const ComplexMatrix shift =
                    a - c.eigenvalue * ComplexMatrix::Identity(n, n);
                for (int r = 1; r <= c.multiplicity; ++r) {
                    approx += term / denom;
                    term = shift * term;
                    denom *= (s - c.eigenvalue);
                }
            }
            worst = std::max(worst, max_abs(resolvent(a, s) - approx));
        }
        rep.ladder.push_back({static_cast<double>(nodes), worst});
    }
    finish_report(rep);
    return rep;
}

LemmaReport bromwich_t0_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "bromwich-t0";
    rep.parameters = "A=rmcf(sigma=1,omega=3) c=0.5";
    rep.rate_kind = RateKind::algebraic;
    rep.predicted_slope = -1.0;
    rep.tolerance = pick_tol(config, 2e-4);
    const ComplexMatrix a = rmcf_test_matrix();
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    for (double omega : config.omega_ladder) {
        BromwichLine line{0.5, omega, 1400};
        rep.ladder.push_back({omega, max_abs(bromwich_resolvent_t0(a, line) - half)});
    }
    finish_report(rep);
    return rep;
}

LemmaReport bromwich_t_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "bromwich-t";
    const double t = 0.7;
    rep.parameters = "A=rmcf(sigma=1,omega=3) t=" + fmt(t) + " c=0.5";
    rep.rate_kind = RateKind::at_least;
    rep.predicted_slope = -2.0;
    rep.tolerance = pick_tol(config, 1e-6);
    const ComplexMatrix a = rmcf_test_matrix();
    const ComplexMatrix target = expm(a, t);
    const std::vector<int> orders{2, 4, 8};
    for (std::size_t i = 0; i < config.omega_ladder.size(); ++i) {
        const double omega = config.omega_ladder[i];
        const int order = orders[std::min(i, orders.size() - 1)];
        const int panels = static_cast<int>(omega * 4.0 * t / kPi) + 40;
        BromwichLine line{0.5, omega, 2 * panels * order};
        rep.ladder.push_back(
            {static_cast<double>(2 * panels * order),
             max_abs(bromwich_resolvent_t(a, t, line) - target)});
    }
    finish_report(rep);
    return rep;
}

LemmaReport forward_shift_report(const RunConfig& config) {
    LemmaReport rep;
    rep.id = "forward-shift";
    rep.parameters = "scalar(a=0.6,b=1.2,c=-0.8) z=2";
    rep.rate_kind = RateKind::floor_only;
    rep.tolerance = pick_tol(config, 1e-11);
    DiscreteStateSpace dss;
    dss.a = ComplexMatrix::Constant(1, 1, Complex(0.6, 0));
    dss.b = ComplexMatrix::Constant(1, 1, Complex(1.2, 0));
    dss.c = ComplexMatrix::Constant(1, 1, Complex(-0.8, 0));
    dss.d = ComplexMatrix::Zero(1, 1);
    dss.ts = 1.0;
    const DiscreteStateSpace fwd = forward_shift_realization(dss);
    const std::vector<Complex> points{{2.0, 0.0}, {1.5, 1.0}, {-3.0, 0.25}};
    double worst = 0.0;
    for (const Complex& z : points)
        worst = std::max(worst,
                         std::abs(z * transfer_eval_d(dss, z)(0, 0) -
                                  transfer_eval_d(fwd, z)(0, 0)));
    rep.ladder.push_back({1.0, worst});
    finish_report(rep);
    return rep;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::verified_with_correction: return "verified-with-correction";
        default: return "failed";
    }
}

std::vector<LemmaReport> run_all(const RunConfig& config) {
    validate(config);
    std::vector<LemmaReport> out;
    out.push_back(cotangent_report(config));
    out.push_back(half_part_report(config));
    out.push_back(kernel_report(config));
    out.push_back(higher_order_report(config, 1));
    out.push_back(higher_order_report(config, 2));
    out.push_back(higher_order_report(config, 3));
    out.push_back(poisson_report(config, "poisson-selfdual", kPi, {4, 6, 8}, 1e-13));
    out.push_back(poisson_report(config, "poisson-unit", 1.0, {4, 6, 8}, 1e-12));
    out.push_back(poisson_report(config, "poisson-wide", 1.0 / 9.0, {12, 16, 20}, 1e-12));
    out.push_back(neumann_report(config));
    out.push_back(big_arc_inverse_report(config));
    out.push_back(big_arc_resolvent_report(config));
    out.push_back(riesz_sum_report(config));
    out.push_back(resolvent_expansion_report(config));
    out.push_back(bromwich_t0_report(config));
    out.push_back(bromwich_t_report(config));
    out.push_back(forward_shift_report(config));
    return out;
}

bool all_verified(const std::vector<LemmaReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const LemmaReport& r) {
        return r.verdict != Verdict::failed;
    });
}

std::string lemma_reports_to_json(const std::vector<LemmaReport>& reports) {
    json arr = json::array();
    for (const LemmaReport& r : reports) {
        json j;
        j["id"] = r.id;
        j["parameters"] = r.parameters;
        json ladder = json::array();
        for (const LadderPoint& p : r.ladder) ladder.push_back({p.n, p.gap});
        j["ladder"] = ladder;
        j["rate_kind"] = r.rate_kind == RateKind::algebraic
                             ? "algebraic"
                             : (r.rate_kind == RateKind::at_least ? "at_least" : "floor");
        j["predicted_slope"] = r.predicted_slope;
        j["slope_window"] = r.slope_window;
        if (r.fitted_slope)
            j["fitted_slope"] = *r.fitted_slope;
        else
            j["fitted_slope"] = nullptr;
        j["tolerance"] = r.tolerance;
        j["final_gap"] = r.final_gap;
        j["verdict"] = verdict_name(r.verdict);
        j["note"] = r.note;
        arr.push_back(j);
    }
    return arr.dump(2);
}

std::vector<LemmaReport> lemma_reports_from_json(const std::string& text) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("lemma report parse error: ") + e.what());
    }
    std::vector<LemmaReport> out;
    for (const json& j : arr) {
        LemmaReport r;
        r.id = j.at("id").get<std::string>();
        r.parameters = j.at("parameters").get<std::string>();
        for (const json& p : j.at("ladder"))
            r.ladder.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        const std::string rk = j.at("rate_kind").get<std::string>();
        r.rate_kind = rk == "algebraic"
                          ? RateKind::algebraic
                          : (rk == "at_least" ? RateKind::at_least : RateKind::floor_only);
        r.predicted_slope = j.at("predicted_slope").get<double>();
        r.slope_window = j.at("slope_window").get<double>();
        if (!j.at("fitted_slope").is_null())
            r.fitted_slope = j.at("fitted_slope").get<double>();
        r.tolerance = j.at("tolerance").get<double>();
        r.final_gap = j.at("final_gap").get<double>();
        const std::string v = j.at("verdict").get<std::string>();
        r.verdict = v == "verified"
                        ? Verdict::verified
                        : (v == "verified-with-correction" ? Verdict::verified_with_correction
                                                           : Verdict::failed);
        r.note = j.at("note").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

std::string lemma_reports_table(const std::vector<LemmaReport>& reports) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof(line), "%-22s %-13s %-13s %-16s %s\n", "lemma", "final gap",
                  "tolerance", "slope (pred)", "verdict");
    os << line;
    os << std::string(86, '-') << "\n";
    for (const LemmaReport& r : reports) {
        std::string slope = "floor";
        if (r.fitted_slope) {
            char sb[48];
            std::snprintf(sb, sizeof(sb), "%.3f (%.1f)", *r.fitted_slope,
                          r.predicted_slope);
            slope = sb;
        }
        std::snprintf(line, sizeof(line), "%-22s %-13s %-13s %-16s %s\n", r.id.c_str(),
                      fmt(r.final_gap).c_str(), fmt(r.tolerance).c_str(), slope.c_str(),
                      verdict_name(r.verdict).c_str());
        os << line;
        if (!r.note.empty()) os << "    note: " << r.note << "\n";
    }
    return os.str();
}

}  // namespace csamp
