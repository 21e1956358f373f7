#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csamp/aliasing.hpp"
#include "csamp/config.hpp"
#include "csamp/contour.hpp"
#include "csamp/lemmas.hpp"
#include "csamp/rmcf.hpp"
#include "csamp/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw csamp::ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw csamp::ValidationError("cannot write '" + path + "'");
    out << text;
}

std::vector<double> parse_ladder(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw csamp::ValidationError("empty ladder '" + text + "'");
    return out;
}

struct GridSpec {
    double re = 0.0;
    double im_max = 0.0;
    int count = 1;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &g.re, &g.im_max, &g.count) != 3 ||
        g.count < 1)
        throw csamp::ValidationError("grid spec must be 're:im:count', got '" + text + "'");
    return g;
}

int cmd_discretize(const std::string& input, double ts, const std::string& eta_flag,
                   const std::string& output) {
    const csamp::ContinuousStateSpace plant = csamp::plant_from_json(slurp(input));
    const csamp::Eta eta = csamp::eta_from_name(eta_flag);
    const csamp::DiscreteStateSpace model =
        eta == csamp::Eta::corrected ? csamp::discretize_corrected(plant, ts)
                                     : csamp::discretize_right_limit(plant, ts);
    if (!output.empty()) spit(output, csamp::model_to_json(model));
    std::printf("eta = %s\n", csamp::eta_name(model.eta).c_str());
    for (Eigen::Index i = 0; i < model.d.rows(); ++i)
        for (Eigen::Index j = 0; j < model.d.cols(); ++j)
            std::printf("D_z(%lld,%lld) = %.12g%+.12gj\n", static_cast<long long>(i),
                        static_cast<long long>(j), model.d(i, j).real(),
                        model.d(i, j).imag());
    return kExitOk;
}

int cmd_alias_check(const std::string& input, double ts, const std::string& grid_text,
                    long long n, const std::string& output) {
    const csamp::ContinuousStateSpace plant = csamp::plant_from_json(slurp(input));
    const GridSpec grid = parse_grid(grid_text);
    const csamp::DiscreteStateSpace corrected = csamp::discretize_corrected(plant, ts);
    const csamp::DiscreteStateSpace right = csamp::discretize_right_limit(plant, ts);

    std::ostringstream csv;
    csv << "eta,s_re,s_im,N,sum_re,sum_im,tail_bound,model_value_re,model_value_im,gap\n";
    bool all_certified = true;
    for (int k = 0; k < grid.count; ++k) {
        const double omega = grid.count == 1
                                 ? grid.im_max
                                 : grid.im_max * static_cast<double>(k) / (grid.count - 1);
        const csamp::Complex s(grid.re, omega);
        csamp::AliasingEvaluation eval;
        try {
            eval = csamp::aliasing_sum(plant, s, ts, n);
        } catch (const csamp::PoleCollisionError& e) {
            std::fprintf(stderr, "pole collision at s = %.9g%+.9gj (n = %lld): %s\n",
                         s.real(), s.imag(), e.n, e.what());
            return kExitVerificationFailure;
        }
        const csamp::Complex z = std::exp(s * ts);
        for (const csamp::DiscreteStateSpace* model : {&corrected, &right}) {
            const csamp::ComplexMatrix g = csamp::transfer_eval_d(*model, z);
            const double gap = (eval.value - g).norm();
            csv << csamp::eta_name(model->eta) << ',' << s.real() << ',' << s.imag() << ','
                << n << ',' << eval.value(0, 0).real() << ',' << eval.value(0, 0).imag()
                << ',' << eval.tail_bound << ',' << g(0, 0).real() << ',' << g(0, 0).imag()
                << ',' << gap << '\n';
            if (model->eta == csamp::Eta::corrected &&
                !(std::isfinite(eval.tail_bound) && gap <= eval.tail_bound))
                all_certified = false;
        }
    }
    if (output.empty())
        std::cout << csv.str();
    else
        spit(output, csv.str());
    if (!all_certified) {
        std::fprintf(stderr, "alias-check: corrected-model gap exceeded tail_bound "
                             "(or bound not certifiable at this N)\n");
        return kExitVerificationFailure;
    }
    return kExitOk;
}

int cmd_bromwich(const std::string& input, double t, const std::string& ladder_text) {
    const csamp::ComplexMatrix a = csamp::matrix_from_json(slurp(input));
    if (t < 0.0) throw csamp::ValidationError("bromwich: t must be >= 0");
    const std::vector<double> ladder = parse_ladder(ladder_text);
    const double c = csamp::max_real_eigenvalue(a) + 1.0;
    csamp::ComplexMatrix target;
    if (t == 0.0)
        target = 0.5 * csamp::ComplexMatrix::Identity(a.rows(), a.cols());
    else
        target = csamp::expm(a, t);

    std::printf("omega,deviation\n");
    std::vector<double> devs;
    for (double omega : ladder) {
        csamp::BromwichLine line{c, omega, 1400};
        const csamp::ComplexMatrix value =
            t == 0.0 ? csamp::bromwich_resolvent_t0(a, line)
                     : csamp::bromwich_resolvent_t(a, t, line);
        const double dev = csamp::max_abs(value - target);
        devs.push_back(dev);
        std::printf("%.6g,%.9e\n", omega, dev);
    }
    if (devs.size() >= 2) {
        const double rate = std::log(devs.front() / devs.back()) /
                            std::log(ladder.back() / ladder.front());
        std::printf("# decay rate ~ Omega^-%.2f\n", rate);
    }
    return kExitOk;
}

int cmd_rmcf(double sigma, double omega, double zero, double gain, double ts,
             bool search_dramatic, const std::string& report_path,
             const std::string& sweep_path) {
    csamp::RmcfPlant plant;
    if (search_dramatic) {
        const auto found = csamp::search_dramatic_gap(ts);
        if (!found) {
            std::fprintf(stderr, "rmcf: no dramatic-gap instance found in the search box\n");
            return kExitVerificationFailure;
        }
        plant = *found;
    } else {
        plant = csamp::make_rmcf_plant(sigma, omega, zero, gain);
    }

    std::string report_json;
    if (csamp::rmcf_in_regime(plant, ts)) {
        report_json = csamp::report_to_json(csamp::stability_gap_report(plant, ts));
    } else {
        // Outside the closed-form regime: flag it and report only oracle data.
        const csamp::RmcfDerived d = csamp::rmcf_derived(plant, ts);
        std::ostringstream os;
        os << "{\n  \"regime_ok\": false,\n"
           << "  \"plant\": {\"sigma\": " << plant.sigma << ", \"omega\": " << plant.omega
           << ", \"zero\": " << plant.zero << ", \"gain\": " << plant.gain << "},\n"
           << "  \"Ts\": " << ts << ",\n"
           << "  \"derived\": {\"kappa\": " << d.kappa << ", \"alpha\": " << d.alpha
           << ", \"theta\": " << d.theta << "}\n}\n";
        report_json = os.str();
    }
    if (report_path.empty())
        std::cout << report_json << "\n";
    else
        spit(report_path, report_json);

    std::ostringstream csv;
    csv << "K,eta,spectral_radius,stable\n";
    for (const csamp::Eta eta : {csamp::Eta::corrected, csamp::Eta::right_limit}) {
        for (int i = 0; i <= 120; ++i) {
            const double k = std::pow(10.0, -2.0 + 8.0 * i / 120.0) / plant.gain;
            const double k_eff = csamp::gain_map(k, eta, plant.gain);
            const double rho =
                csamp::spectral_radius(csamp::closed_loop_matrix(plant, ts, k_eff));
            csv << k << ',' << csamp::eta_name(eta) << ',' << rho << ','
                << (rho < 1.0 ? 1 : 0) << '\n';
        }
    }
    if (sweep_path.empty())
        std::cout << csv.str();
    else
        spit(sweep_path, csv.str());
    return kExitOk;
}

int cmd_verify(const std::string& config_path, bool as_json) {
    const csamp::RunConfig config = csamp::load_config(config_path);
    const std::vector<csamp::LemmaReport> reports = csamp::run_all(config);
    if (as_json)
        std::cout << csamp::lemma_reports_to_json(reports) << "\n";
    else
        std::cout << csamp::lemma_reports_table(reports);
    return csamp::all_verified(reports) ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corrected impulse-invariance sampling toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned long long seed = 20240101;
    app.add_option("--config", config_path, "RunConfig JSON path");
    app.add_option("--seed", seed, "Seed for randomized suites");

    auto* discretize = app.add_subcommand("discretize", "Plant -> discrete model file");
    std::string d_input, d_output, d_eta = "corrected";
    double d_ts = 1.0;
    discretize->add_option("--input", d_input, "Plant JSON")->required();
    discretize->add_option("--Ts", d_ts, "Sampling period")->required();
    discretize->add_option("--eta", d_eta, "corrected | right-limit");
    discretize->add_option("--output", d_output, "Model JSON output path");

    auto* alias = app.add_subcommand("alias-check",
                                     "Compare the aliasing series with both models");
    std::string a_input, a_grid = "0:10:10", a_output;
    double a_ts = 1.0;
    long long a_n = 10000;
    alias->add_option("--input", a_input, "Plant JSON")->required();
    alias->add_option("--Ts", a_ts, "Sampling period")->required();
    alias->add_option("--grid", a_grid, "re:im:count grid spec");
    alias->add_option("--N", a_n, "Truncation index");
    alias->add_option("--output", a_output, "CSV output path (default stdout)");

    auto* bromwich = app.add_subcommand("bromwich", "Bromwich line quadrature table");
    std::string b_input, b_ladder = "1e2,1e3,1e4";
    double b_t = 0.0;
    bromwich->add_option("--input", b_input, "Matrix JSON")->required();
    bromwich->add_option("--t", b_t, "Time (0 targets I/2, >0 targets e^{At})");
    bromwich->add_option("--omega-ladder", b_ladder, "Comma-separated Omega values");

    auto* rmcf = app.add_subcommand("rmcf", "Stability-gap benchmark report");
    double r_sigma = 1.0, r_omega = 3.0, r_zero = 2.0, r_gain = 1.0, r_ts = 0.5;
    bool r_search = false;
    std::string r_report, r_sweep;
    rmcf->add_option("--sigma", r_sigma, "Plant sigma > 0");
    rmcf->add_option("--omega", r_omega, "Plant omega > 0");
    rmcf->add_option("--zero", r_zero, "Plant zero z > 0");
    rmcf->add_option("--gain", r_gain, "Plant gain g > 0");
    rmcf->add_option("--Ts", r_ts, "Sampling period");
    rmcf->add_flag("--search-dramatic", r_search, "Find a dramatic-gap instance");
    rmcf->add_option("--report", r_report, "Report JSON output path (default stdout)");
    rmcf->add_option("--sweep", r_sweep, "Sweep CSV output path (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run the lemma suite");
    bool v_json = false;
    std::string v_config;
    verify->add_flag("--json", v_json, "Machine-readable report");
    verify->add_option("--config", v_config, "RunConfig JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (discretize->parsed()) return cmd_discretize(d_input, d_ts, d_eta, d_output);
        if (alias->parsed()) return cmd_alias_check(a_input, a_ts, a_grid, a_n, a_output);
        if (bromwich->parsed()) return cmd_bromwich(b_input, b_t, b_ladder);
        if (rmcf->parsed())
            return cmd_rmcf(r_sigma, r_omega, r_zero, r_gain, r_ts, r_search, r_report,
                            r_sweep);
        if (verify->parsed())
            return cmd_verify(!v_config.empty() ? v_config : config_path, v_json);
    } catch (const csamp::ValidationError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitVerificationFailure;
    }
    return kExitInputError;
}
