// SPDX-License-Identifier: Apache-2.0
#include <unsupported/Eigen/MatrixFunctions>

#include "dirac/momentum_operators.hpp"
#include "support.hpp"

using namespace dirac;
using testing_support::gap;

namespace {

Mat4 hamiltonian(const Momentum& q)
{
    return gamma(0) * (gamma_dot(q.p()) + q.mass() * Mat4::Identity());
}

//! exp(theta/2 gamma.n) with tan theta = |p|/m
Mat4 fw_by_exponential(const Momentum& q)
{
    if (q.norm() == 0.0) return Mat4::Identity();
    double theta = std::atan2(q.norm(), q.mass());
    Mat4 g = gamma_dot(q.p() / q.norm());
    return (0.5 * theta * g).exp();
}

Mat4 positive_projector(const Momentum& q)
{
    Eigen::SelfAdjointEigenSolver<Mat4> es(hamiltonian(q));
    Eigen::Matrix<cplx, 4, 2> v = es.eigenvectors().rightCols<2>();
    return v * v.adjoint();
}

}  // namespace

TEST(Projectors, AgreeWithEigenvectors)
{
    for (const auto& q : testing_support::momenta(41, 40)) {
        ProjectorPair pr = projectors(q);
        Mat4 oracle = positive_projector(q);
        EXPECT_LT(gap(pr.plus, oracle), 1e-12);
        EXPECT_LT(gap(pr.minus, Mat4(Mat4::Identity() - oracle)), 1e-12);
        EXPECT_LT(gap(dirac_hamiltonian(q), hamiltonian(q)), 1e-15 * q.energy());
    }
}

TEST(PryceSpin, EqualsRestSpinPulledBackByFoldyWouthuysen)
{
    for (const auto& q : testing_support::momenta(42, 40)) {
        Mat4 u = fw_by_exponential(q);
        Triple<Mat4> s = pryce_e_spin(q);
        for (int i = 0; i < 3; ++i) EXPECT_LT(gap(s[i], Mat4(u.adjoint() * spin_matrix(i) * u)), 1e-12);
    }
}

TEST(PryceSpin, CasimirSpectrum)
{
    for (const auto& q : testing_support::momenta(43, 20)) {
        Triple<Mat4> s = pryce_e_spin(q);
        Mat4 sq = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
        Eigen::ComplexEigenSolver<Mat4> es(sq);
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(es.eigenvalues()[k] - 0.75), 0.0, 1e-12);
    }
}

TEST(SpinTypes, FrankelLiteralFormAndNorm)
{
    for (const auto& q : testing_support::momenta(44, 20)) {
        double m = q.mass(), e = q.energy();
        const Vec3& p = q.p();
        Triple<Mat4> fr = frankel_spin(q);
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            Mat4 pg = p[j] * gamma(k + 1) - p[k] * gamma(j + 1);
            EXPECT_LT(gap(fr[i], Mat4(spin_matrix(i) + (I / (2 * m)) * pg)), 1e-14 * e);
        }
        Mat4 n2 = fr[0] * fr[0] + fr[1] * fr[1] + fr[2] * fr[2];
        double expect = 0.25 * (1 + 2 * e * e / (m * m));
        EXPECT_LT(gap(n2, Mat4(expect * Mat4::Identity())), 1e-12 * expect);
    }
}

TEST(SpinTypes, PrycePcIsDiagonalPartOfRestSpin)
{
    for (const auto& q : testing_support::momenta(45, 20)) {
        Mat4 pp = positive_projector(q);
        Mat4 pm = Mat4::Identity() - pp;
        Triple<Mat4> pc = pc_spin(q);
        for (int i = 0; i < 3; ++i) {
            Mat4 s = spin_matrix(i);
            EXPECT_LT(gap(pc[i], Mat4(pp * s * pp + pm * s * pm)), 1e-12);
        }
    }
}

TEST(SpinTypes, FradkinGoodAtRest)
{
    Momentum q(Vec3::Zero(), 1.0);
    Triple<Mat4> fg = fradkin_good_spin(q);
    for (int i = 0; i < 3; ++i) EXPECT_LT(gap(fg[i], Mat4(gamma(0) * spin_matrix(i))), 1e-15);
    EXPECT_LT(gap(n_operator(q), gamma(0)), 1e-15);
}

TEST(PauliLubanski, BoostOfRestSpin)
{
    for (const auto& q : testing_support::momenta(46, 20)) {
        double m = q.mass();
        auto w = pauli_lubanski(q);
        Mat4 ps = q[0] * spin_matrix(0) + q[1] * spin_matrix(1) + q[2] * spin_matrix(2);
        EXPECT_LT(gap(w[0], ps), 1e-13 * q.energy());
        // the conserved spin seen in the FW frame boosted by the vector representation
        Mat4 u = fw_by_exponential(q);
        Eigen::Matrix3d theta =
            Eigen::Matrix3d::Identity() + q.p() * q.p().transpose() / (m * (q.energy() + m));
        for (int i = 0; i < 3; ++i) {
            Mat4 oracle = Mat4::Zero();
            for (int j = 0; j < 3; ++j) oracle += m * theta(i, j) * u.adjoint() * spin_matrix(j) * u;
            EXPECT_LT(gap(w[i + 1], oracle), 1e-12 * q.energy() * q.energy());
        }
    }
}

TEST(Chakrabarti, NotConservedAwayFromRest)
{
    Momentum q(Vec3(0.3, -0.4, 0.5), 1.0);
    Triple<Mat4> ch = chakrabarti_spin(q);
    EXPECT_GT(commutator(hamiltonian(q), ch[0]).cwiseAbs().maxCoeff(), 1e-3);
    Momentum rest(Vec3::Zero(), 1.0);
    EXPECT_LT(commutator(hamiltonian(rest), chakrabarti_spin(rest)[0]).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Decomposition, OscillatingPartsShiftEnergy)
{
    for (const auto& q : testing_support::momenta(47, 20)) {
        DiagOsc d = decompose_diag_osc(gamma(2), q);
        Mat4 h = hamiltonian(q);
        EXPECT_LT(gap(Mat4(h * d.plus_minus), Mat4(q.energy() * d.plus_minus)), 1e-12 * q.energy());
        EXPECT_LT(gap(Mat4(d.plus_minus * h), Mat4(-q.energy() * d.plus_minus)), 1e-12 * q.energy());
    }
}

TEST(Catalog, NamesAndErrors)
{
    EXPECT_EQ(fourier_catalog().size(), 11u);
    for (const char* n : {"pryce_e_spin", "pc_spin", "frankel_spin", "fradkin_good", "chakrabarti", "pauli_lubanski",
                          "delta_x", "projector_plus", "projector_minus", "n_op", "h_dirac"}) {
        EXPECT_NO_THROW(fourier_operator(n)) << n;
    }
    EXPECT_THROW(fourier_operator("nope"), std::invalid_argument);
    Momentum q(Vec3(1, 2, 3), 1.0);
    EXPECT_EQ(fourier_operator("pauli_lubanski")(q).size(), 4u);
    EXPECT_LT(gap(fourier_operator("h_dirac")(q)[0], hamiltonian(q)), 1e-14);
}

TEST(Momentum, RejectsNonPositiveMass)
{
    EXPECT_THROW(Momentum(Vec3::Zero(), 0.0), MassError);
    EXPECT_THROW(Momentum(Vec3::Zero(), -1.0), MassError);
}
