#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csamp/config.hpp"

namespace csamp {

enum class Verdict { verified, verified_with_correction, failed };

std::string verdict_name(Verdict v);

/// How the convergence-rate column is judged against the prediction.
enum class RateKind {
    algebraic,   // fitted log-log slope within +/- window of the prediction
    at_least,    // slope at most prediction + window (super-algebraic decay)
    floor_only,  // closed-form identity: every rung must sit below tolerance
};

struct LadderPoint {
    double n = 0.0;    // ladder variable (N, M, Omega, radius or node budget)
    double gap = 0.0;  // measured deviation at that rung
};

struct LemmaReport {
    std::string id;
    std::string parameters;
    std::vector<LadderPoint> ladder;
    RateKind rate_kind = RateKind::algebraic;
    double predicted_slope = 0.0;
    double slope_window = 0.3;
    std::optional<double> fitted_slope;  // absent when every rung is at the floor
    double tolerance = 0.0;
    double final_gap = 0.0;
    Verdict verdict = Verdict::failed;
    std::string note;
};

/// One report per lemma, fixed id order, no randomness: byte-identical output
/// for identical configs.
std::vector<LemmaReport> run_all(const RunConfig& config);

bool all_verified(const std::vector<LemmaReport>& reports);

std::string lemma_reports_to_json(const std::vector<LemmaReport>& reports);
std::vector<LemmaReport> lemma_reports_from_json(const std::string& text);
std::string lemma_reports_table(const std::vector<LemmaReport>& reports);

}  // namespace csamp
