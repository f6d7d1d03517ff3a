// SPDX-License-Identifier: Apache-2.0
#include "dirac/mode_spinors.hpp"
#include "dirac/momentum_operators.hpp"
#include "support.hpp"

using namespace dirac;
using testing_support::gap;

TEST(Normalization, ExactAtRest)
{
    EXPECT_EQ(spinor_normalization(Momentum(Vec3::Zero(), 1.0)), 1.0);
    EXPECT_EQ(spinor_normalization(Momentum(Vec3::Zero(), 3.5)), 1.0);
    EXPECT_DOUBLE_EQ(spinor_normalization(Momentum(Vec3(3, 0, 4), 1.0)), std::sqrt(1.0 / std::sqrt(26.0)));
}

TEST(RestSpinors, ChiralLiterals)
{
    PolarizationBasis b = PolarizationBasis::common();
    Momentum q(Vec3(0.1, 0.2, 0.3), 1.0);
    double r = 1.0 / std::sqrt(2.0);
    auto [u, v] = rest_spinors(b, q, Pol::Up);
    EXPECT_LT(gap(u, DiracSpinor(r, 0, r, 0)), 1e-15);
    EXPECT_LT(gap(v, DiracSpinor(0, -r, 0, r)), 1e-15);
}

TEST(DiracEquation, SpinorsSpanTheNullSpace)
{
    // the kernel of (slash p - m) computed by a rank-revealing decomposition
    PolarizationBasis b = PolarizationBasis::common();
    for (const auto& q : testing_support::momenta(31, 40)) {
        Mat4 op = slash(q) - q.mass() * Mat4::Identity();
        Eigen::FullPivLU<Mat4> lu(op);
        lu.setThreshold(1e-10);
        Eigen::MatrixXcd kernel = lu.kernel();
        ASSERT_EQ(kernel.cols(), 2);
        Eigen::MatrixXcd basis = kernel.householderQr().householderQ() * Eigen::MatrixXcd::Identity(4, 2);
        for (Pol s : kPolarizations) {
            DiracSpinor u = u_spinor(b, q, s);
            DiracSpinor inside = basis * (basis.adjoint() * u);
            EXPECT_LT(gap(inside, u), 1e-10);
            EXPECT_NEAR(u.norm(), 1.0, 1e-12);
        }
    }
}

TEST(DiracEquation, EnergyEigenvectors)
{
    PolarizationBasis b = PolarizationBasis::helicity();
    for (const auto& q : testing_support::momenta(32, 40)) {
        if (q[2] < -0.5 * q.norm()) continue;
        Mat4 h = gamma(0) * (gamma_dot(q.p()) + q.mass() * Mat4::Identity());
        for (Pol s : kPolarizations) {
            DiracSpinor u = u_spinor(b, q, s);
            DiracSpinor v = v_spinor(b, q.flipped(), s);
            EXPECT_LT(gap(DiracSpinor(h * u), DiracSpinor(q.energy() * u)), 1e-12 * q.energy());
            EXPECT_LT(gap(DiracSpinor(h * v), DiracSpinor(-q.energy() * v)), 1e-12 * q.energy());
        }
    }
}

TEST(ChargeConjugation, VIsCUStar)
{
    PolarizationBasis b = PolarizationBasis::common();
    Momentum q(Vec3(0.4, -0.1, 0.9), 1.3);
    for (Pol s : kPolarizations) {
        DiracSpinor u = u_spinor(b, q, s);
        EXPECT_LT(gap(v_spinor(b, q, s), DiracSpinor(I * gamma(2) * u.conjugate())), 1e-15);
    }
}

TEST(Projectors, CompletenessAgainstEigenvectors)
{
    PolarizationBasis b = PolarizationBasis::common(Vec3(0.6, 0.0, 0.8));
    for (const auto& q : testing_support::momenta(33, 30)) {
        Mat4 h = gamma(0) * (gamma_dot(q.p()) + q.mass() * Mat4::Identity());
        Eigen::SelfAdjointEigenSolver<Mat4> es(h);
        Eigen::Matrix<cplx, 4, 2> pos = es.eigenvectors().rightCols<2>();
        Mat4 oracle = pos * pos.adjoint();
        auto [plus, minus] = projector_from_spinors(b, q);
        EXPECT_LT(gap(plus, oracle), 1e-12);
        EXPECT_LT(gap(minus, Mat4(Mat4::Identity() - oracle)), 1e-12);
    }
}

TEST(ModeField, PlaneWavePhases)
{
    PolarizationBasis b = PolarizationBasis::common();
    Momentum q(Vec3(0.5, 0.0, 0.0), 1.0);
    ModeSpinorField up(b, q, Pol::Up, Species::U);
    ModeSpinorField vp(b, q, Pol::Up, Species::V);
    double t = 0.3;
    Vec3 x(1.0, 2.0, 0.0);
    double norm = std::pow(2.0 * std::numbers::pi, -1.5);
    cplx phase = std::exp(I * (-q.energy() * t + 0.5));
    EXPECT_LT(gap(up(t, x), DiracSpinor(norm * phase * up.spinor())), 1e-15);
    EXPECT_LT(gap(vp(t, x), DiracSpinor(norm * std::conj(phase) * vp.spinor())), 1e-15);
}
