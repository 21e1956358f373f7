#include "csamp/aliasing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace csamp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Rational-function view of G(s) = sum_i O_i / (s - lambda_i), built from one
// eigendecomposition. Falls back to per-point LU solves when the
// decomposition does not reconstruct A accurately (near-defective input).
struct TransferEvaluator {
    const ContinuousStateSpace& plant;
    bool diagonal_path = false;
    ComplexVector poles;
    std::vector<ComplexMatrix> outer;  // O_i = (C v_i) (row_i(V^{-1}) B)

    explicit TransferEvaluator(const ContinuousStateSpace& p) : plant(p) {
        Eigen::ComplexEigenSolver<ComplexMatrix> ces(p.a);
        if (ces.info() != Eigen::Success) return;
        const ComplexMatrix& v = ces.eigenvectors();
        const ComplexVector& lam = ces.eigenvalues();
        Eigen::PartialPivLU<ComplexMatrix> lu(v);
        const ComplexMatrix vinv = lu.solve(ComplexMatrix::Identity(v.rows(), v.cols()));
        const double recon =
            (v * lam.asDiagonal() * vinv - p.a).norm() / std::max(1.0, p.a.norm());
        if (recon > 1e-11) return;
        poles = lam;
        const ComplexMatrix left = p.c * v;     // p x n
        const ComplexMatrix right = vinv * p.b;  // n x m
        outer.reserve(static_cast<std::size_t>(lam.size()));
        for (Eigen::Index i = 0; i < lam.size(); ++i)
            outer.push_back(left.col(i) * right.row(i));
        diagonal_path = true;
    }

    ComplexMatrix eval(Complex s) const {
        if (!diagonal_path) return plant.c * resolvent(plant.a, s) * plant.b;
        ComplexMatrix acc = ComplexMatrix::Zero(plant.outputs(), plant.inputs());
        for (std::size_t i = 0; i < outer.size(); ++i)
            acc += outer[i] / (s - poles[static_cast<Eigen::Index>(i)]);
        return acc;
    }
};

void check_pole_collisions(const ContinuousStateSpace& plant, Complex s, double omega_s,
                           long long n, const Tolerances& tol) {
    const ComplexVector eigs = plant.a.eigenvalues();
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const Complex lam = eigs(i);
        const double reject = tol.pole_collision_rel * std::max(1.0, std::abs(lam));
        // The nearest grid index to this pole; only its neighbourhood can hit.
        const long long near =
            std::llround((lam.imag() - s.imag()) / omega_s);
        for (long long cand = near - 1; cand <= near + 1; ++cand) {
            if (cand < -n || cand > n) continue;
            const Complex grid = s + Complex(0.0, static_cast<double>(cand) * omega_s);
            if (std::abs(grid - lam) < reject)
                throw PoleCollisionError(
                    cand, "aliasing grid point n = " + std::to_string(cand) +
                              " collides with a plant pole");
        }
    }
}

// Euler-Maclaurin tails of sum_{m>M} m^{-p}, u = M+1.
double zeta_tail_2(double u) {
    return 1.0 / u + 1.0 / (2.0 * u * u) + 1.0 / (6.0 * u * u * u) -
           1.0 / (30.0 * std::pow(u, 5)) + 1.0 / (42.0 * std::pow(u, 7));
}
double zeta_tail_4(double u) {
    return 1.0 / (3.0 * std::pow(u, 3)) + 1.0 / (2.0 * std::pow(u, 4)) +
           1.0 / (3.0 * std::pow(u, 5)) - 1.0 / (6.0 * std::pow(u, 7));
}
double zeta_tail_6(double u) {
    return 1.0 / (5.0 * std::pow(u, 5)) + 1.0 / (2.0 * std::pow(u, 6)) +
           1.0 / (2.0 * std::pow(u, 7));
}
double zeta_tail_8(double u) {
    return 1.0 / (7.0 * std::pow(u, 7)) + 1.0 / (2.0 * std::pow(u, 8));
}

// sum_{m>M} 1/(m^2 + beta2) for |beta2| < 1, exact to ~1e-25 for M >= 50.
Complex quadratic_lattice_tail(long long m_start, Complex beta2) {
    Complex acc(0.0, 0.0);
    long long m = m_start;
    if (m < 50) {
        for (long long i = m + 1; i <= 200; ++i)
            acc += 1.0 / (static_cast<double>(i) * static_cast<double>(i) + beta2);
        m = 200;
    }
    const double u = static_cast<double>(m) + 1.0;
    acc += zeta_tail_2(u) - beta2 * zeta_tail_4(u) + beta2 * beta2 * zeta_tail_6(u) -
           beta2 * beta2 * beta2 * zeta_tail_8(u);
    return acc;
}

}  // namespace

AliasingEvaluation aliasing_sum(const ContinuousStateSpace& plant, Complex s, double ts,
                                long long n, const Tolerances& tol) {
    if (!(ts > 0.0)) throw ValidationError("aliasing_sum: T_s must be positive");
    if (n < 1) throw ValidationError("aliasing_sum: N must be at least 1");
    if (max_abs(plant.d) != 0.0)
        throw ValidationError("aliasing_sum: plant must have D = 0");

    const double omega_s = 2.0 * kPi / ts;
    check_pole_collisions(plant, s, omega_s, n, tol);

    const TransferEvaluator g(plant);

    // Symmetric pairing: term(0), then (n, -n) combined, ascending n.
    std::vector<ComplexMatrix> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    terms.push_back(g.eval(s));
    for (long long i = 1; i <= n; ++i) {
        const Complex shift(0.0, static_cast<double>(i) * omega_s);
        terms.push_back(g.eval(s + shift) + g.eval(s - shift));
    }
    ComplexMatrix value = pairwise_sum(terms) / ts;

    const double norm_a = plant.a.norm();
    const double norm_b = plant.b.norm();
    const double norm_c = plant.c.norm();
    const double abs_s = std::abs(s);
    const ComplexMatrix cb = plant.c * plant.b;

    AliasingEvaluation out;
    out.s = s;
    out.n_terms = n;
    out.omega_s = omega_s;

    // Validity threshold for every bound below: beyond N the grid points must
    // clear both |s| and the spectrum, i.e. n w_s - |s| - ||A|| > 0.
    const double q_resid = (abs_s + norm_a) / omega_s;
    if (static_cast<double>(n) <= q_resid + 2.0) {
        out.value = std::move(value);
        out.tail_bound = std::numeric_limits<double>::infinity();
        return out;
    }

    // Remainder after peeling the leading CB/s' term of G(s'):
    // G(s') - CB/s' = C A (s'I - A)^{-1} B / s', of size ||C|| ||A|| ||B|| / |s'|^2.
    const double resid_bound = (2.0 * norm_c * norm_a * norm_b / (ts * omega_s * omega_s)) /
                               (static_cast<double>(n) - q_resid);

    // Analytic completion of the leading scalar tail
    // (1/T_s) sum_{|m|>N} 1/(s + j m w_s), recentred at the nearest lattice
    // point so the paired series stays well-conditioned near lattice points.
    const long long k = std::llround(s.imag() / omega_s);
    const Complex w = s - Complex(0.0, static_cast<double>(k) * omega_s);
    const Complex beta = w / omega_s;

    if (std::abs(beta) <= 0.8) {
        const long long m_top = n + std::llabs(k);
        Complex scalar_tail =
            (2.0 * w / (omega_s * omega_s)) * quadratic_lattice_tail(m_top, beta * beta);
        // Leftover single-sided terms between N-|k| and N+|k|.
        if (k > 0) {
            for (long long m = n - k + 1; m <= m_top; ++m)
                scalar_tail += 1.0 / (w - Complex(0.0, static_cast<double>(m) * omega_s));
        } else if (k < 0) {
            for (long long m = n + k + 1; m <= m_top; ++m)
                scalar_tail += 1.0 / (w + Complex(0.0, static_cast<double>(m) * omega_s));
        }
        scalar_tail /= ts;
        value += cb * scalar_tail;

        const double beta_abs = std::abs(beta);
        const double completion_trunc =
            (2.0 * std::abs(w) / (ts * omega_s * omega_s)) *
                (std::pow(beta_abs, 8.0) /
                 (9.0 * std::pow(static_cast<double>(m_top), 9.0))) +
            1e-30 * std::max(1.0, cb.norm());
        out.tail_bound = resid_bound + completion_trunc;
    } else {
        // No completion far off the lattice strip; account for the CB term too.
        const double q_lead = abs_s / omega_s;
        const double lead_bound = (2.0 * abs_s * cb.norm() / (ts * omega_s * omega_s)) /
                                  (static_cast<double>(n) - q_lead);
        out.tail_bound = resid_bound + lead_bound;
    }

    out.value = std::move(value);
    return out;
}

KernelCheck kernel_expansion_check(Complex sigma, double ts, long long n) {
    if (!(ts > 0.0)) throw ValidationError("kernel_expansion_check: T_s must be positive");
    if (n < 1) throw ValidationError("kernel_expansion_check: N must be at least 1");
    const double omega_s = 2.0 * kPi / ts;
    const long long near = std::llround(-sigma.imag() / omega_s);
    if (std::abs(sigma + Complex(0.0, static_cast<double>(near) * omega_s)) <
        1e-12 * std::max(1.0, omega_s))
        throw DomainError("kernel_expansion_check: sigma on the -j w_s Z lattice");

    KernelCheck out;
    out.lhs = 1.0 / (std::exp(sigma * ts) - 1.0);
    std::vector<Complex> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    terms.push_back(1.0 / sigma);
    for (long long i = 1; i <= n; ++i) {
        const double im = static_cast<double>(i) * omega_s;
        terms.push_back(2.0 * sigma / (sigma * sigma + im * im));
    }
    out.rhs = pairwise_sum(terms) / ts - 0.5;
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

Complex higher_order_term(int r, Complex x, double ts, long long m_terms) {
    if (r < 1) throw ValidationError("higher_order_term: order r must be >= 1");
    if (m_terms < 1) throw ValidationError("higher_order_term: M must be >= 1");
    if (!(x.real() > 0.0))
        throw DivergentSeriesError("higher_order_term: requires Re(x) > 0");
    double factorial = 1.0;
    for (int i = 2; i <= r - 1; ++i) factorial *= i;
    std::vector<Complex> terms;
    terms.reserve(static_cast<std::size_t>(m_terms));
    for (long long m = 1; m <= m_terms; ++m) {
        const double mt = static_cast<double>(m) * ts;
        const Complex e = std::exp(-mt * x);
        terms.push_back(r == 1 ? e : std::pow(mt, r - 1) / factorial * e);
    }
    Complex sum = pairwise_sum(terms);
    return r == 1 ? sum + 0.5 : sum;
}

double cotangent_check(double x, long long n) {
    if (n < 1) throw ValidationError("cotangent_check: N must be >= 1");
    if (x == std::floor(x)) throw DomainError("cotangent_check: x must not be an integer");
    std::vector<Complex> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    terms.push_back(Complex(1.0 / x, 0.0));
    for (long long i = 1; i <= n; ++i) {
        const double di = static_cast<double>(i);
        terms.push_back(Complex(2.0 * x / (x * x - di * di), 0.0));
    }
    const Complex sum = pairwise_sum(terms);
    return std::abs(sum.real() - kPi / std::tan(kPi * x));
}

HalfPartCheck half_part_check(Complex s_times_t, long long /*n*/) {
    const long long near = std::llround(s_times_t.imag() / (2.0 * kPi));
    if (std::abs(s_times_t - Complex(0.0, 2.0 * kPi * static_cast<double>(near))) < 1e-12)
        throw DomainError("half_part_check: sT on the 2 pi j Z lattice");
    const Complex lhs = 1.0 / (1.0 - std::exp(-s_times_t)) - 0.5;
    const Complex coth =
        std::cosh(s_times_t / 2.0) / std::sinh(s_times_t / 2.0);
    HalfPartCheck out;
    out.paper_gap = std::abs(lhs - coth);
    out.corrected_gap = std::abs(lhs - 0.5 * coth);
    return out;
}

double poisson_zero_phase_check(const GaussianFamily& f, long long k) {
    if (!(f.a > 0.0)) throw ValidationError("poisson check: Gaussian needs a > 0");
    if (k < 1) throw ValidationError("poisson check: K must be >= 1");
    double time_side = 1.0;  // n = 0 term
    for (long long i = 1; i <= k; ++i) {
        const double t = static_cast<double>(i);
        time_side += 2.0 * std::exp(-f.a * t * t);
    }
    const double amp = std::sqrt(kPi / f.a);
    double freq_side = amp;  // k = 0 term
    for (long long i = 1; i <= k; ++i) {
        const double w = 2.0 * kPi * static_cast<double>(i);
        freq_side += 2.0 * amp * std::exp(-w * w / (4.0 * f.a));
    }
    return std::abs(time_side - freq_side);
}

double neumann_expansion_check(const ComplexMatrix& a, double ts, Complex z,
                               long long m_terms) {
    if (!(ts > 0.0)) throw ValidationError("neumann check: T_s must be positive");
    if (m_terms < 1) throw ValidationError("neumann check: M must be >= 1");
    const ComplexMatrix ad = expm(a, ts);
    const double rho = spectral_radius(ad);
    if (std::abs(z) <= rho * (1.0 + 1e-12))
        throw DivergentSeriesError(
            "neumann check: |z| inside the series convergence radius");
    const Eigen::Index n = a.rows();
    ComplexMatrix partial = ComplexMatrix::Zero(n, n);
    ComplexMatrix power = ComplexMatrix::Identity(n, n);  // e^{A (m-1) T_s}
    Complex zinv = 1.0 / z;
    Complex zpow = zinv;
    for (long long m = 1; m <= m_terms; ++m) {
        partial += power * zpow;
        power = power * ad;
        zpow *= zinv;
    }
    return max_abs(resolvent(ad, z) - partial);
}

namespace detail {

ComplexMatrix aliasing_partial_direct(const ContinuousStateSpace& plant, Complex s,
                                      double ts, long long n) {
    const double omega_s = 2.0 * kPi / ts;
    std::vector<ComplexMatrix> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    terms.push_back(plant.c * resolvent(plant.a, s) * plant.b);
    for (long long i = 1; i <= n; ++i) {
        const Complex shift(0.0, static_cast<double>(i) * omega_s);
        terms.push_back(plant.c * resolvent(plant.a, s + shift) * plant.b +
                        plant.c * resolvent(plant.a, s - shift) * plant.b);
    }
    return pairwise_sum(terms) / ts;
}

}  // namespace detail

}  // namespace csamp
