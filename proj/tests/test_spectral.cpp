#include <doctest.h>

#include <cmath>

#include "csamp/spectral.hpp"
#include "test_support.hpp"

using namespace csamp;
using csamp::testing::Rng;

namespace {

const SpectralCluster* find_cluster(const SpectralDecomposition& sd, Complex lambda) {
    for (const SpectralCluster& c : sd.clusters)
        if (std::abs(c.eigenvalue - lambda) < 1e-6) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("diagonal matrix decomposes into coordinate projectors") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = Complex(-1, 0);
    a(1, 1) = Complex(-2, 0);
    ComplexMatrix b(2, 1), c(1, 2);
    b << Complex(1, 0), Complex(2, 0);
    c << Complex(3, 0), Complex(4, 0);
    const ContinuousStateSpace plant = make_plant(a, b, c, ComplexMatrix::Zero(1, 1));
    const SpectralDecomposition sd = spectral_decomposition(plant);
    REQUIRE(sd.clusters.size() == 2);
    const SpectralCluster* c1 = find_cluster(sd, Complex(-1, 0));
    REQUIRE(c1 != nullptr);
    ComplexMatrix e00 = ComplexMatrix::Zero(2, 2);
    e00(0, 0) = Complex(1, 0);
    CHECK(max_abs(c1->projection - e00) < 1e-10);
    // R_{1,1} = C P_1 B.
    const std::size_t idx = static_cast<std::size_t>(c1 - sd.clusters.data());
    CHECK(std::abs(sd.residues[idx][0](0, 0) - (c * e00 * b)(0, 0)) < 1e-10);
}

TEST_CASE("conjugate pair of the rotation-damping matrix") {
    ComplexMatrix a(2, 2);
    a << Complex(-1, 0), Complex(-3, 0), Complex(3, 0), Complex(-1, 0);
    const SpectralDecomposition sd = spectral_decomposition(a);
    REQUIRE(sd.clusters.size() == 2);
    const SpectralCluster* plus = find_cluster(sd, Complex(-1, 3));
    const SpectralCluster* minus = find_cluster(sd, Complex(-1, -3));
    REQUIRE(plus != nullptr);
    REQUIRE(minus != nullptr);
    // Oracle: normal matrix, so P = v v^H from a standard eigen-solve.
    Eigen::ComplexEigenSolver<ComplexMatrix> ces(a);
    for (Eigen::Index i = 0; i < 2; ++i) {
        const SpectralCluster* target = find_cluster(sd, ces.eigenvalues()(i));
        REQUIRE(target != nullptr);
        const ComplexVector v = ces.eigenvectors().col(i);
        CHECK(max_abs(target->projection - v * v.adjoint()) < 1e-10);
    }
    // Conjugate-pair structure and the sum-to-identity invariant.
    CHECK(max_abs(plus->projection - minus->projection.conjugate()) < 1e-10);
    CHECK(max_abs(plus->projection + minus->projection -
                  ComplexMatrix::Identity(2, 2)) < 1e-8);
}

TEST_CASE("Jordan block keeps one cluster with P = I and a nonzero R_{1,2}") {
    ComplexMatrix a(2, 2);
    a << Complex(-1, 0), Complex(1, 0), Complex(0, 0), Complex(-1, 0);
    ComplexMatrix b(2, 1), c(1, 2);
    b << Complex(0, 0), Complex(1, 0);
    c << Complex(1, 0), Complex(0, 0);
    const ContinuousStateSpace plant = make_plant(a, b, c, ComplexMatrix::Zero(1, 1));
    const SpectralDecomposition sd = spectral_decomposition(plant);
    REQUIRE(sd.clusters.size() == 1);
    CHECK(sd.clusters[0].multiplicity == 2);
    CHECK(max_abs(sd.clusters[0].projection - ComplexMatrix::Identity(2, 2)) < 1e-8);
    REQUIRE(sd.residues[0].size() == 2);
    // R_{1,2} = C (A - lambda I) P B = C N B; N = [[0,1],[0,0]] here, so 1.
    CHECK(std::abs(sd.residues[0][1](0, 0) - Complex(1, 0)) < 1e-8);
    // (A - lambda I)^{m} P = 0 within tolerance.
    const ComplexMatrix n =
        a - sd.clusters[0].eigenvalue * ComplexMatrix::Identity(2, 2);
    CHECK((n * n * sd.clusters[0].projection).norm() < 1e-8);
}

TEST_CASE("decomposition invariants hold on random Hurwitz plants") {
    Rng rng(20240101);
    for (int trial = 0; trial < 12; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 4);
        const ContinuousStateSpace plant =
            csamp::testing::random_hurwitz_siso(rng, n, 1.5, 0.3, 0.1);
        SpectralDecomposition sd;
        try {
            sd = spectral_decomposition(plant);
        } catch (const UnseparableSpectrumError&) {
            continue;  // unlucky draw: legitimately refused
        }
        ComplexMatrix sum = ComplexMatrix::Zero(n, n);
        ComplexMatrix residue_sum = ComplexMatrix::Zero(1, 1);
        for (std::size_t j = 0; j < sd.clusters.size(); ++j) {
            sum += sd.clusters[j].projection;
            residue_sum += sd.residues[j][0];
            for (std::size_t k = 0; k < sd.clusters.size(); ++k) {
                const ComplexMatrix prod =
                    sd.clusters[j].projection * sd.clusters[k].projection;
                if (j == k)
                    CHECK((prod - sd.clusters[j].projection).norm() < 1e-8);
                else
                    CHECK(prod.norm() < 1e-8);
            }
        }
        CHECK(max_abs(sum - ComplexMatrix::Identity(n, n)) < 1e-8);
        // Proof-step identity: sum_j R_{j,1} = CB.
        CHECK(max_abs(residue_sum - plant.c * plant.b) < 1e-8);
    }
}

TEST_CASE("clusters that are separate but too close for circles are refused") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = Complex(-1, 0);
    a(1, 1) = Complex(-1 - 1e-6, 0);
    CHECK_THROWS_AS(spectral_decomposition(a), UnseparableSpectrumError);
}

TEST_CASE("near-coincident eigenvalues merge into one cluster by tolerance") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = Complex(-1, 0);
    a(1, 1) = Complex(-1 - 1e-9, 0);  // inside tau_cluster = 1e-7 * ||A||
    const SpectralDecomposition sd = spectral_decomposition(a);
    CHECK(sd.clusters.size() == 1);
    CHECK(sd.clusters[0].multiplicity == 2);
}
