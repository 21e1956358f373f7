#include "csamp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csamp {

ComplexMatrix make_matrix(Eigen::Index rows, Eigen::Index cols,
                          const std::vector<Complex>& row_major) {
    if (rows < 1 || cols < 1)
        throw ValidationError("matrix shape must be at least 1x1, got " +
                              std::to_string(rows) + "x" + std::to_string(cols));
    if (static_cast<Eigen::Index>(row_major.size()) != rows * cols)
        throw ValidationError("entry count " + std::to_string(row_major.size()) +
                              " does not match shape " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = row_major[i * cols + j];
    ensure_finite(m, "matrix entries");
    return m;
}

void ensure_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) throw ValidationError(std::string(what) + ": nonfinite entry");
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

void require_square(const ComplexMatrix& a, const char* op) {
    if (a.rows() != a.cols())
        throw DimensionError(std::string(op) + ": matrix must be square, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

double l1_norm(const ComplexMatrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator split: U odd powers, V even powers.
void pade_uv(const ComplexMatrix& at, const double* b, int m, ComplexMatrix& u,
             ComplexMatrix& v) {
    const Eigen::Index n = at.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = at * at;
    if (m == 3) {
        u = at * (b[3] * a2 + b[1] * id);
        v = b[2] * a2 + b[0] * id;
        return;
    }
    const ComplexMatrix a4 = a2 * a2;
    if (m == 5) {
        u = at * (b[5] * a4 + b[3] * a2 + b[1] * id);
        v = b[4] * a4 + b[2] * a2 + b[0] * id;
        return;
    }
    const ComplexMatrix a6 = a4 * a2;
    if (m == 7) {
        u = at * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
        v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
        return;
    }
    const ComplexMatrix a8 = a6 * a2;
    u = at * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

ComplexMatrix pade13(const ComplexMatrix& at) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const Eigen::Index n = at.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix a2 = at * at;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const ComplexMatrix u =
        at * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
              b[3] * a2 + b[1] * id);
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                            b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a, double t) {
    require_square(a, "expm");
    if (!std::isfinite(t)) throw ValidationError("expm: t must be finite");
    ensure_finite(a, "expm input");
    const Eigen::Index n = a.rows();
    ComplexMatrix at = a * Complex(t, 0.0);
    const double nrm = l1_norm(at);
    if (nrm == 0.0) return ComplexMatrix::Identity(n, n);

    // Order/scaling thresholds from the standard backward-error analysis.
    static const double theta3 = 1.495585217958292e-2;
    static const double theta5 = 2.539398330063230e-1;
    static const double theta7 = 9.504178996162932e-1;
    static const double theta9 = 2.097847961257068e0;
    static const double theta13 = 5.371920351148152e0;
    static const double b3[] = {120.0, 60.0, 12.0, 1.0};
    static const double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static const double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                25200.0,    1512.0,    56.0,      1.0};
    static const double b9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                30270240.0,    2162160.0,    110880.0,     3960.0,
                                90.0,          1.0};

    ComplexMatrix u, v;
    if (nrm <= theta3) {
        pade_uv(at, b3, 3, u, v);
    } else if (nrm <= theta5) {
        pade_uv(at, b5, 5, u, v);
    } else if (nrm <= theta7) {
        pade_uv(at, b7, 7, u, v);
    } else if (nrm <= theta9) {
        pade_uv(at, b9, 9, u, v);
    } else {
        const int squarings =
            std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta13))));
        at /= std::pow(2.0, squarings);
        ComplexMatrix f = pade13(at);
        for (int i = 0; i < squarings; ++i) f = f * f;
        ensure_finite(f, "expm result");
        return f;
    }
    ComplexMatrix f = (v - u).partialPivLu().solve(v + u);
    ensure_finite(f, "expm result");
    return f;
}

ComplexMatrix resolvent(const ComplexMatrix& a, Complex s, const Tolerances& tol) {
    require_square(a, "resolvent");
    const Eigen::Index n = a.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix m = s * id - a;
    const ComplexMatrix x = m.partialPivLu().solve(id);
    if (!x.allFinite())
        throw ResolventAtSpectrumError(s, "resolvent: sI - A singular");
    const double residual = (m * x - id).norm();
    const double scale = std::max(1.0, m.norm() * x.norm());
    if (residual > tol.resolvent_residual * scale)
        throw ResolventAtSpectrumError(
            s, "resolvent: solve residual " + std::to_string(residual) +
                   " rejects s (too close to the spectrum)");
    return x;
}

double spectral_radius(const ComplexMatrix& m) {
    require_square(m, "spectral_radius");
    const Eigen::Index n = m.rows();
    if (l1_norm(m) == 0.0) return 0.0;
    if (n == 1) return std::abs(m(0, 0));

    // Deterministic start vector with incommensurate phases so it is not
    // orthogonal to the dominant eigenspace for the matrices we meet.
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = Complex(std::cos(0.7 * static_cast<double>(i) + 0.3),
                       std::sin(1.3 * static_cast<double>(i) + 0.1));
    v.normalize();

    double prev = 0.0;
    int stable = 0;
    for (int it = 0; it < 200; ++it) {
        ComplexVector w = m * v;
        const double nw = w.norm();
        if (nw == 0.0) break;  // v in the kernel: defer to the full solve
        v = w / nw;
        const Complex rayleigh = v.dot(m * v);
        const double est = std::abs(rayleigh);
        if (std::abs(est - prev) <= 1e-13 * std::max(1.0, est))
            ++stable;
        else
            stable = 0;
        prev = est;
        if (stable >= 3) {
            const double residual = (m * v - rayleigh * v).norm();
            if (residual <= 1e-10 * std::max(1.0, est)) return est;
        }
    }
    return m.eigenvalues().cwiseAbs().maxCoeff();
}

double max_real_eigenvalue(const ComplexMatrix& a) {
    require_square(a, "max_real_eigenvalue");
    return a.eigenvalues().real().maxCoeff();
}

namespace {

template <typename T>
T pairwise_sum_impl(std::vector<T>& terms, T zero) {
    if (terms.empty()) return zero;
    // In-place pairwise reduction; preserves the caller's index order.
    std::size_t count = terms.size();
    while (count > 1) {
        std::size_t half = count / 2;
        for (std::size_t i = 0; i < half; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
        if (count % 2 == 1) {
            terms[half] = terms[count - 1];
            count = half + 1;
        } else {
            count = half;
        }
    }
    return terms[0];
}

}  // namespace

Complex pairwise_sum(std::vector<Complex>& terms) {
    return pairwise_sum_impl(terms, Complex(0.0, 0.0));
}

ComplexMatrix pairwise_sum(std::vector<ComplexMatrix>& terms) {
    if (terms.empty()) return ComplexMatrix();
    ComplexMatrix zero = ComplexMatrix::Zero(terms[0].rows(), terms[0].cols());
    return pairwise_sum_impl(terms, zero);
}

}  // namespace csamp
