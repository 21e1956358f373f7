#include "csamp/statespace.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

namespace csamp {

namespace {

using nlohmann::json;

// Real plants must produce real discrete models: an imaginary residue at or
// below the truncation tolerance is replaced by exact real storage.
bool is_real(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

void truncate_imag(ComplexMatrix& m, double tol) {
    if (m.imag().cwiseAbs().maxCoeff() <= tol) m.imag().setZero();
}

json matrix_to_json_obj(const ComplexMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j;
}

ComplexMatrix matrix_from_json_obj(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im"))
        throw ValidationError("matrix JSON must carry rows, cols, re, im");
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size())
        throw ValidationError("matrix JSON: re and im lengths differ");
    std::vector<Complex> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) entries[i] = Complex(re[i], im[i]);
    return make_matrix(rows, cols, entries);
}

DiscreteStateSpace discretize_impl(const ContinuousStateSpace& plant, double ts, Eta eta) {
    if (!(ts > 0.0) || !std::isfinite(ts))
        throw ValidationError("discretize: sampling period must be positive");
    if (max_abs(plant.d) != 0.0)
        throw UnsupportedFeedthroughError(
            "discretize: the corrected impulse-invariance model is defined for D = 0 plants");
    DiscreteStateSpace dss;
    dss.a = expm(plant.a, ts);
    dss.b = plant.b;
    dss.c = plant.c * dss.a;
    dss.d = eta_value(eta) * (plant.c * plant.b);
    dss.ts = ts;
    dss.eta = eta;
    if (is_real(plant.a) && is_real(plant.b) && is_real(plant.c)) {
        Tolerances tol;
        truncate_imag(dss.a, tol.real_truncation);
        truncate_imag(dss.c, tol.real_truncation);
    }
    return dss;
}

}  // namespace

ContinuousStateSpace make_plant(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c,
                                ComplexMatrix d) {
    if (a.rows() != a.cols()) throw DimensionError("plant: A must be square");
    if (b.rows() != a.rows()) throw DimensionError("plant: B row count must match A");
    if (c.cols() != a.rows()) throw DimensionError("plant: C column count must match A");
    if (d.rows() != c.rows() || d.cols() != b.cols())
        throw DimensionError("plant: D must be outputs x inputs");
    ensure_finite(a, "plant A");
    ensure_finite(b, "plant B");
    ensure_finite(c, "plant C");
    ensure_finite(d, "plant D");
    return ContinuousStateSpace{std::move(a), std::move(b), std::move(c), std::move(d)};
}

bool is_hurwitz(const ContinuousStateSpace& plant, double margin) {
    return max_real_eigenvalue(plant.a) < -margin;
}

double eta_value(Eta eta) { return eta == Eta::corrected ? 0.5 : 1.0; }

std::string eta_name(Eta eta) {
    return eta == Eta::corrected ? "corrected" : "right-limit";
}

Eta eta_from_name(const std::string& s) {
    if (s == "corrected") return Eta::corrected;
    if (s == "right-limit" || s == "right_limit") return Eta::right_limit;
    throw ValidationError("eta must be 'corrected' or 'right-limit', got '" + s + "'");
}

HeavisideConvention make_heaviside(double value_at_zero) {
    if (value_at_zero != 0.0 && value_at_zero != 0.5 && value_at_zero != 1.0)
        throw ValidationError("Heaviside convention must assign 0, 1/2 or 1 at t = 0");
    return HeavisideConvention{value_at_zero};
}

DiscreteStateSpace discretize_corrected(const ContinuousStateSpace& plant, double ts) {
    return discretize_impl(plant, ts, Eta::corrected);
}

DiscreteStateSpace discretize_right_limit(const ContinuousStateSpace& plant, double ts) {
    return discretize_impl(plant, ts, Eta::right_limit);
}

DiscreteStateSpace forward_shift_realization(const DiscreteStateSpace& dss) {
    if (max_abs(dss.d) != 0.0)
        throw ValidationError("forward_shift_realization requires D_z = 0");
    DiscreteStateSpace out;
    out.a = dss.a;
    out.b = dss.b;
    out.c = dss.c * dss.a;
    out.d = dss.c * dss.b;
    out.ts = dss.ts;
    out.eta = dss.eta;
    return out;
}

ComplexMatrix transfer_eval_d(const DiscreteStateSpace& dss, Complex z,
                              const Tolerances& tol) {
    return dss.c * resolvent(dss.a, z, tol) * dss.b + dss.d;
}

ComplexMatrix transfer_eval_c(const ContinuousStateSpace& plant, Complex s,
                              const Tolerances& tol) {
    return plant.c * resolvent(plant.a, s, tol) * plant.b + plant.d;
}

ComplexMatrix sampled_value(const ContinuousStateSpace& plant, double t,
                            const HeavisideConvention& convention) {
    const Eigen::Index p = plant.outputs();
    const Eigen::Index m = plant.inputs();
    if (t < 0.0) return ComplexMatrix::Zero(p, m);
    if (t == 0.0) return convention.value_at_zero * (plant.c * plant.b);
    return plant.c * expm(plant.a, t) * plant.b;
}

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_to_json_obj(m).dump(2); }

ComplexMatrix matrix_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("matrix JSON parse error: ") + e.what());
    }
    return matrix_from_json_obj(j);
}

std::string plant_to_json(const ContinuousStateSpace& plant) {
    json j;
    j["kind"] = "continuous";
    j["A"] = matrix_to_json_obj(plant.a);
    j["B"] = matrix_to_json_obj(plant.b);
    j["C"] = matrix_to_json_obj(plant.c);
    j["D"] = matrix_to_json_obj(plant.d);
    return j.dump(2);
}

ContinuousStateSpace plant_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("plant JSON parse error: ") + e.what());
    }
    if (j.value("kind", "") != "continuous")
        throw ValidationError("plant JSON: kind must be 'continuous'");
    return make_plant(matrix_from_json_obj(j.at("A")), matrix_from_json_obj(j.at("B")),
                      matrix_from_json_obj(j.at("C")), matrix_from_json_obj(j.at("D")));
}

std::string model_to_json(const DiscreteStateSpace& dss) {
    json j;
    j["kind"] = "discrete";
    j["A"] = matrix_to_json_obj(dss.a);
    j["B"] = matrix_to_json_obj(dss.b);
    j["C"] = matrix_to_json_obj(dss.c);
    j["D"] = matrix_to_json_obj(dss.d);
    j["Ts"] = dss.ts;
    j["eta"] = eta_value(dss.eta);
    return j.dump(2);
}

DiscreteStateSpace model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("model JSON parse error: ") + e.what());
    }
    if (j.value("kind", "") != "discrete")
        throw ValidationError("model JSON: kind must be 'discrete'");
    DiscreteStateSpace dss;
    dss.a = matrix_from_json_obj(j.at("A"));
    dss.b = matrix_from_json_obj(j.at("B"));
    dss.c = matrix_from_json_obj(j.at("C"));
    dss.d = matrix_from_json_obj(j.at("D"));
    dss.ts = j.at("Ts").get<double>();
    if (!(dss.ts > 0.0)) throw ValidationError("model JSON: Ts must be positive");
    const double eta = j.at("eta").get<double>();
    if (eta == 0.5)
        dss.eta = Eta::corrected;
    else if (eta == 1.0)
        dss.eta = Eta::right_limit;
    else
        throw ValidationError("model JSON: eta must be 0.5 or 1");
    return dss;
}

}  // namespace csamp
