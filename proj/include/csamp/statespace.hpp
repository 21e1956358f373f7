#pragma once

#include <string>

#include "csamp/matrix.hpp"

namespace csamp {

/// Continuous-time plant (A, B, C, D). dx/dt = Ax + Bu, y = Cx + Du.
struct ContinuousStateSpace {
    ComplexMatrix a;  // n x n
    ComplexMatrix b;  // n x m
    ComplexMatrix c;  // p x n
    ComplexMatrix d;  // p x m

    Eigen::Index states() const { return a.rows(); }
    Eigen::Index inputs() const { return b.cols(); }
    Eigen::Index outputs() const { return c.rows(); }
};

/// Validates shapes and finiteness. Throws ValidationError / DimensionError.
ContinuousStateSpace make_plant(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c,
                                ComplexMatrix d);

/// True when every eigenvalue of A has strictly negative real part.
bool is_hurwitz(const ContinuousStateSpace& plant, double margin = 0.0);

/// Feedthrough convention at the sampling instant t = 0.
enum class Eta {
    corrected,    // u(0) = 1/2, D_z = CB/2
    right_limit,  // u(0) = 1,   D_z = CB
};

double eta_value(Eta eta);                 // 0.5 or 1.0
std::string eta_name(Eta eta);             // "corrected" / "right-limit"
Eta eta_from_name(const std::string& s);   // throws ValidationError on anything else

/// Value assigned to the unit step at t = 0. Exactly one of {0, 1/2, 1}.
struct HeavisideConvention {
    double value_at_zero = 0.5;
};

HeavisideConvention make_heaviside(double value_at_zero);
inline HeavisideConvention heaviside(Eta eta) {
    return HeavisideConvention{eta == Eta::corrected ? 0.5 : 1.0};
}

/// Discrete-time model (A_z, B_z, C_z, D_z) with sampling period T_s and the
/// feedthrough convention it was built under.
struct DiscreteStateSpace {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix c;
    ComplexMatrix d;
    double ts = 1.0;
    Eta eta = Eta::corrected;
};

/// Impulse-invariance discretization with the mean-value sampling convention:
/// A_z = e^{A T_s}, B_z = B, C_z = C e^{A T_s}, D_z = CB/2.
/// Requires D = 0; throws UnsupportedFeedthroughError otherwise.
DiscreteStateSpace discretize_corrected(const ContinuousStateSpace& plant, double ts);

/// Identical to discretize_corrected except D_z = CB (right-limit convention).
DiscreteStateSpace discretize_right_limit(const ContinuousStateSpace& plant, double ts);

/// Realization of z * G(z) for a model with D_z = 0:
/// (A_d, B_d, C_d A_d, C_d B_d). Throws ValidationError when D_z != 0.
DiscreteStateSpace forward_shift_realization(const DiscreteStateSpace& dss);

/// G_d(z) = C_z (zI - A_z)^{-1} B_z + D_z.
ComplexMatrix transfer_eval_d(const DiscreteStateSpace& dss, Complex z,
                              const Tolerances& tol = {});

/// G(s) = C (sI - A)^{-1} B + D.
ComplexMatrix transfer_eval_c(const ContinuousStateSpace& plant, Complex s,
                              const Tolerances& tol = {});

/// C e^{At} B u(t) with the step value at t = 0 taken from the convention.
ComplexMatrix sampled_value(const ContinuousStateSpace& plant, double t,
                            const HeavisideConvention& convention);

/// JSON round trip. Matrices use {"rows","cols","re","im"}; plants/models use
/// {"kind","A","B","C","D"} plus {"Ts","eta"} on the discrete side.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);
std::string plant_to_json(const ContinuousStateSpace& plant);
ContinuousStateSpace plant_from_json(const std::string& text);
std::string model_to_json(const DiscreteStateSpace& dss);
DiscreteStateSpace model_from_json(const std::string& text);

}  // namespace csamp
