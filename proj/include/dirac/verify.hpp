// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "associated.hpp"
#include "format.hpp"
#include "random.hpp"
#include "wavepacket.hpp"

namespace dirac {

struct IdentityCheck {
    std::string suite;
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    //! true: value must stay below tolerance; false: value must exceed it
    bool upper_bound = true;

    bool passed() const { return upper_bound ? value <= tolerance : value > tolerance; }
};

struct VerifyOptions {
    int samples = 100;
    std::uint64_t seed = 7;
    std::optional<double> tolerance;
    double mass = 1.0;
};

/*!
 * Smooth probe spinor P(p - c) exp(-|p - c|^2 / (2 s^2)) with a random
 * complex quadratic 2-vector P and analytic gradient.
 */
inline WaveSpinor probe_spinor(SplitMix64& rng, const Vec3& center, double width)
{
    Eigen::Matrix<cplx, 2, 10> c;
    for (int a = 0; a < 2; ++a)
        for (int k = 0; k < 10; ++k) c(a, k) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    auto monomials = [](const Vec3& d) {
        Eigen::Matrix<double, 10, 1> v;
        v << 1.0, d[0], d[1], d[2], d[0] * d[0], d[1] * d[1], d[2] * d[2], d[0] * d[1], d[1] * d[2], d[0] * d[2];
        return v;
    };
    auto monomial_gradient = [](const Vec3& d) {
        Eigen::Matrix<double, 10, 3> g = Eigen::Matrix<double, 10, 3>::Zero();
        for (int i = 0; i < 3; ++i) {
            g(1 + i, i) = 1.0;
            g(4 + i, i) = 2.0 * d[i];
        }
        g(7, 0) = d[1];
        g(7, 1) = d[0];
        g(8, 1) = d[2];
        g(8, 2) = d[1];
        g(9, 0) = d[2];
        g(9, 2) = d[0];
        return g;
    };
    double s2 = width * width;
    WaveSpinor w;
    w.value = [=](const Vec3& p) {
        Vec3 d = p - center;
        double g = std::exp(-d.squaredNorm() / (2.0 * s2));
        return (c * monomials(d).cast<cplx>() * g).eval();
    };
    w.gradient = [=](const Vec3& p) {
        Vec3 d = p - center;
        double g = std::exp(-d.squaredNorm() / (2.0 * s2));
        auto mv = monomials(d);
        auto mg = monomial_gradient(d);
        std::array<PauliSpinor, 3> out;
        for (int i = 0; i < 3; ++i) {
            Eigen::Matrix<double, 10, 1> col = mg.col(i) - mv * (d[i] / s2);
            out[i] = (c * col.cast<cplx>() * g).eval();
        }
        return out;
    };
    return w;
}

namespace verify_detail {

inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

/*!
 * Collects max-over-samples residuals per named identity in insertion order.
 */
class Collector {
  public:
    Collector(std::string suite, const VerifyOptions& opt) : suite_(std::move(suite)), opt_(opt) {}

    void record(const std::string& name, double value, double tol)
    {
        auto& c = slot(name, tol, true);
        c.value = std::max(c.value, std::isnan(value) ? INFINITY : value);
    }

    //! value must exceed tol; the smallest sample is kept
    void record_lower(const std::string& name, double value, double tol)
    {
        auto& c = slot(name, tol, false);
        c.value = std::min(c.value, value);
    }

    std::vector<IdentityCheck> take() { return std::move(checks_); }

  private:
    IdentityCheck& slot(const std::string& name, double tol, bool upper)
    {
        for (auto& c : checks_)
            if (c.name == name) return c;
        IdentityCheck c{suite_, name, upper ? 0.0 : INFINITY, opt_.tolerance.value_or(tol), upper};
        checks_.push_back(c);
        return checks_.back();
    }

    std::string suite_;
    VerifyOptions opt_;
    std::vector<IdentityCheck> checks_;
};

inline SplitMix64 suite_rng(const std::string& suite, const VerifyOptions& opt)
{
    return SplitMix64(opt.seed ^ fnv1a(suite));
}

inline std::vector<Momentum> sample_momenta(SplitMix64& rng, int n, double m)
{
    std::vector<Momentum> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) out.push_back(random_momentum(rng, m));
    return out;
}

//! Momentum whose direction keeps a fixed distance from the helicity pole ray.
inline Momentum off_pole_momentum(SplitMix64& rng, double m, double margin = 0.1)
{
    Momentum q = random_momentum(rng, m);
    while (q.norm() + q[2] < margin * q.norm() || q.norm() - q[2] < margin * q.norm()) q = random_momentum(rng, m);
    return q;
}

inline Mat4 anticommutator(const Mat4& a, const Mat4& b)
{
    return a * b + b * a;
}

//! Rodrigues rotation for angle |theta| about theta/|theta|.
inline Real3 rodrigues(const Vec3& theta)
{
    double a = theta.norm();
    if (a == 0.0) return Real3::Identity();
    Vec3 n = theta / a;
    Real3 k;
    k << 0, -n[2], n[1], n[2], 0, -n[0], -n[1], n[0], 0;
    return Real3::Identity() + std::sin(a) * k + (1 - std::cos(a)) * k * k;
}

inline constexpr double kExact = 1e-15;
inline constexpr double kTight = 1e-12;
inline constexpr double kFd = 1e-6;
inline constexpr double kCommutatorFd = 1e-5;

}  // namespace verify_detail

inline std::vector<IdentityCheck> verify_clifford(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("clifford", opt);
    SplitMix64 rng = suite_rng("clifford", opt);
    Real4 eta = metric_matrix();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            c.record("{gamma^mu, gamma^nu} = 2 eta^{mu nu}",
                     max_abs(anticommutator(gamma(mu), gamma(nu)) - 2.0 * eta(mu, nu) * Mat4::Identity()), kExact);
            Mat4 s = sl2c_generator(mu, nu);
            c.record("s^{mu nu} = -s^{nu mu}", max_abs(s + sl2c_generator(nu, mu)), kExact);
            c.record("gamma^0 s^dagger gamma^0 = s", max_abs(gamma(0) * s.adjoint() * gamma(0) - s), kExact);
        }
    }
    Mat4 g5 = Mat4::Zero();
    g5.diagonal() << -1.0, -1.0, 1.0, 1.0;
    c.record("gamma5 = diag(-1,-1,1,1)", max_abs(gamma5() - g5), kExact);
    for (int i = 0; i < 3; ++i) {
        Mat4 block = detail::block_diag(0.5 * pauli(i), 0.5 * pauli(i));
        c.record("s_i = diag(sigma_i, sigma_i)/2", max_abs(spin_matrix(i) - block), kExact);
        Mat4 b0 = detail::block_diag(-0.5 * I * pauli(i), 0.5 * I * pauli(i));
        c.record("s^{0i} = diag(-i sigma_i, i sigma_i)/2", max_abs(sl2c_generator(0, i + 1) - b0), kExact);
        int j = (i + 1) % 3;
        int k = (i + 2) % 3;
        c.record("[s_i, s_j] = i eps_ijk s_k", max_abs(commutator(spin_matrix(i), spin_matrix(j)) - I * spin_matrix(k)),
                 kExact);
    }
    Mat4 cc = charge_conjugation();
    c.record("C C = 1", max_abs(cc * cc - Mat4::Identity()), kExact);
    c.record("r(2 pi e3) = -1", max_abs(rotation(Vec3(0, 0, 2 * std::numbers::pi)) + Mat4::Identity()), kTight);
    for (int n = 0; n < opt.samples; ++n) {
        Vec3 theta = rng.uniform(0.0, 2.0 * std::numbers::pi) * random_direction(rng);
        Mat4 r = rotation(theta);
        Mat2 rh = rotation_block(theta);
        c.record("r unitary", max_abs(r.adjoint() * r - Mat4::Identity()), kTight);
        c.record("det r-hat = 1", std::abs(rh.determinant() - 1.0), kTight);
        Real3 R = rodrigues(theta);
        for (int i = 0; i < 3; ++i) {
            Mat2 lhs = rh.inverse() * pauli(i) * rh;
            Mat2 rhs = R(i, 0) * pauli(0) + R(i, 1) * pauli(1) + R(i, 2) * pauli(2);
            c.record("r^-1 sigma_i r = R_ij sigma_j", max_abs(lhs - rhs), kTight);
        }
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_boosts(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("boosts", opt);
    SplitMix64 rng = suite_rng("boosts", opt);
    Real4 eta = metric_matrix();
    Mat4 up = 0.5 * (Mat4::Identity() + gamma(0));
    Mat4 down = 0.5 * (Mat4::Identity() - gamma(0));
    for (const auto& q : sample_momenta(rng, opt.samples, opt.mass)) {
        double m = q.mass();
        double e = q.energy();
        Mat4 l = boost_for_momentum(q);
        Mat4 lm = boost_for_momentum(q.flipped());
        c.record("l_p hermitian", residual(l, Mat4(l.adjoint())), kTight);
        c.record("l_p l_-p = 1", residual(Mat4(l * lm), Mat4(Mat4::Identity())), kTight);
        Mat4 l2 = (e * Mat4::Identity() + gamma(0) * gamma_dot(q.p())) / m;
        c.record("l_p^2 = (E + gamma0 gamma.p)/m", residual(Mat4(l * l), l2), kTight);
        c.record("P+ l_p^2 P+ = (E/m) P+", residual(Mat4(up * l * l * up), Mat4((e / m) * up)), kTight);
        c.record("P- l_-p^2 P- = (E/m) P-", residual(Mat4(down * lm * lm * down), Mat4((e / m) * down)), kTight);
        Real4 L = lorentz_boost_matrix(q);
        double canh = 0.0;
        for (int a = 0; a < 4; ++a) {
            Mat4 rhs = Mat4::Zero();
            for (int b = 0; b < 4; ++b) rhs += L(a, b) * gamma(b);
            canh = std::max(canh, residual(Mat4(lm * gamma(a) * l), rhs));
        }
        c.record("l_p^-1 gamma^a l_p = L^a_b gamma^b", canh, kTight);
        c.record("L_p^T eta L_p = eta", residual(Real4(L.transpose() * eta * L), eta), kTight);
        Vec4 rest(m, 0, 0, 0);
        c.record("L_p (m,0) = (E,p)", residual(Vec4(L * rest), four_momentum(q)), kTight);
        c.record("Theta Theta^-1 = 1", residual(Real3(theta_tensor(q) * theta_inverse(q)), Real3(Real3::Identity())),
                 kTight);
        c.record("Theta = space block of L_p", residual(Real3(L.bottomRightCorner<3, 3>()), theta_tensor(q)), kTight);
        double rap = std::atanh(q.norm() / e);
        Vec3 tau = q.norm() > 0 ? Vec3(-rap * q.p() / q.norm()) : Vec3::Zero();
        c.record("l(tau) = l_p for tau = -n atanh(|p|/E)", residual(boost(tau), l), kTight);
        Mat4 u = foldy_wouthuysen(q);
        Mat4 um = foldy_wouthuysen(q.flipped());
        c.record("U_FW unitary", residual(Mat4(u.adjoint() * u), Mat4(Mat4::Identity())), kTight);
        c.record("U_FW(p)^dagger = U_FW(-p)", residual(Mat4(u.adjoint()), um), kTight);
        c.record("U_FW H U_FW^-1 = gamma0 E", residual(Mat4(u * dirac_hamiltonian(q) * um), Mat4(e * gamma(0))), kTight);
        Triple<Mat4> s = pryce_e_spin(q);
        Triple<Mat4> fw;
        for (int i = 0; i < 3; ++i) fw[i] = u * s[i] * um;
        c.record("U_FW S U_FW^-1 = s", residual(fw, spin_matrices()), kTight);
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_projectors(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("projectors", opt);
    SplitMix64 rng = suite_rng("projectors", opt);
    const Mat4 one = Mat4::Identity();
    const Mat4 zero = Mat4::Zero();
    for (const auto& q : sample_momenta(rng, opt.samples, opt.mass)) {
        double e = q.energy();
        ProjectorPair pr = projectors(q);
        ProjectorPair pb = projectors_from_boosts(q);
        Mat4 h = dirac_hamiltonian(q);
        c.record("H hermitian", residual(h, Mat4(h.adjoint())), kTight);
        c.record("Pi+^2 = Pi+", residual(Mat4(pr.plus * pr.plus), pr.plus), kTight);
        c.record("Pi-^2 = Pi-", residual(Mat4(pr.minus * pr.minus), pr.minus), kTight);
        c.record("Pi+ Pi- = 0", residual(Mat4(pr.plus * pr.minus), zero), kTight);
        c.record("Pi+ + Pi- = 1", residual(Mat4(pr.plus + pr.minus), one), kTight);
        c.record("Pi+ = (m/E) l P+ l", residual(pb.plus, pr.plus), kTight);
        c.record("Pi- = (m/E) l^-1 P- l^-1", residual(pb.minus, pr.minus), kTight);
        c.record("H = E (Pi+ - Pi-)", residual(Mat4(e * (pr.plus - pr.minus)), h), kTight);
        Mat4 n = n_operator(q);
        c.record("N^2 = 1", residual(Mat4(n * n), one), kTight);
        Eigen::SelfAdjointEigenSolver<Mat4> es(h);
        Vec4 ev = es.eigenvalues();
        c.record("eigenvalues of H = {-E,-E,E,E}", residual(ev, Vec4(-e, -e, e, e)), kTight);
        Mat4 g1 = gamma(1);
        DiagOsc d = decompose_diag_osc(g1, q);
        c.record("diag/osc parts sum to A", residual(Mat4(d.plus + d.minus + d.plus_minus + d.minus_plus), g1), kTight);
        c.record("[H, A(+-)] = 2E A(+-)", residual(commutator(h, d.plus_minus), Mat4(2.0 * e * d.plus_minus)), kTight);
        c.record("[H, A(-+)] = -2E A(-+)", residual(commutator(h, d.minus_plus), Mat4(-2.0 * e * d.minus_plus)), kTight);
        Mat4 herm = I * g1;
        DiagOsc dh = decompose_diag_osc(herm, q);
        c.record("hermitian A: A(+-)^dagger = A(-+)", residual(Mat4(dh.plus_minus.adjoint()), dh.minus_plus), kTight);
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_polarization(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("polarization", opt);
    SplitMix64 rng = suite_rng("polarization", opt);
    const Mat2 one = Mat2::Identity();
    std::vector<PolarizationBasis> bases{PolarizationBasis::common(), PolarizationBasis::helicity()};
    for (int n = 0; n < opt.samples; ++n) {
        Momentum q = off_pole_momentum(rng, opt.mass);
        Vec3 dir = random_direction(rng);
        if (dir[2] < -0.99) dir = -dir;
        bases[0] = PolarizationBasis::common(dir);
        for (const auto& b : bases) {
            std::string tag = " [" + b.name() + "]";
            Mat2 f = b.frame(q);
            c.record("xi^dagger xi' = delta" + tag, max_abs(f.adjoint() * f - one), 1e-14);
            c.record("sum xi xi^dagger = 1" + tag, max_abs(f * f.adjoint() - one), 1e-14);
            Vec3 nv = b.kind() == PolarizationBasis::Kind::Common ? b.direction() : Vec3(q.p() / q.norm());
            Mat2 ns = sigma_dot(nv);
            Mat2 sum = Mat2::Zero();
            double eig = 0.0;
            for (Pol s : kPolarizations) {
                PauliSpinor x = b.xi(q, s);
                PauliSpinor y = b.eta(q, s);
                sum += 2.0 * pol_value(s) * x * x.adjoint();
                eig = std::max(eig, max_abs(0.5 * ns * x - pol_value(s) * x));
                eig = std::max(eig, max_abs(0.5 * ns * y + pol_value(s) * y));
            }
            c.record("sum 2 sigma xi xi^dagger = n.sigma" + tag, max_abs(sum - ns), kTight);
            c.record("(n.s) xi = sigma xi, (n.s) eta = -sigma eta" + tag, eig, kTight);
            Triple<Mat2> sg = b.sigma_matrices(q);
            double alg = 0.0;
            double direct = 0.0;
            for (int i = 0; i < 3; ++i) {
                int j = (i + 1) % 3;
                int k = (i + 2) % 3;
                alg = std::max(alg, max_abs(sg[i] * sg[j] - sg[j] * sg[i] - 2.0 * I * sg[k]));
                alg = std::max(alg, max_abs(sg[i] * sg[i] - one));
                alg = std::max(alg, max_abs(sg[i] - sg[i].adjoint()));
                direct = std::max(direct, max_abs(sg[i] - f.adjoint() * pauli(i) * f));
            }
            c.record("Sigma_i obey the Pauli algebra" + tag, alg, kTight);
            c.record("Sigma_i = xi^dagger sigma_i xi" + tag, direct, kTight);
            Triple<Mat2> om = b.omega(q);
            Triple<Mat2> ofd = b.omega_fd(q);
            double ah = 0.0, ahfd = 0.0, fd = 0.0;
            for (int i = 0; i < 3; ++i) {
                ah = std::max(ah, max_abs(om[i] + om[i].adjoint()));
                ahfd = std::max(ahfd, max_abs(ofd[i] + ofd[i].adjoint()));
                fd = std::max(fd, residual(om[i], ofd[i]));
            }
            c.record("Omega anti-hermitian" + tag, ah, kTight);
            c.record("Omega anti-hermitian (finite differences)" + tag, ahfd, kFd);
            c.record("Omega closed form = finite differences" + tag, fd, kFd);
            if (b.kind() == PolarizationBasis::Kind::Helicity) {
                Mat2 ps = q[0] * sg[0] + q[1] * sg[1] + q[2] * sg[2];
                c.record("p.Sigma = |p| sigma_3 [helicity]", residual(ps, Mat2(q.norm() * pauli(2))), kTight);
                Mat2 po = q[0] * om[0] + q[1] * om[1] + q[2] * om[2];
                c.record("p.Omega = 0 [helicity]", max_abs(po), kTight);
            }
        }
    }
    auto raises_pole = [](const std::function<void()>& f) {
        try {
            f();
        } catch (const PoleError&) {
            return 0.0;
        }
        return 1.0;
    };
    double eps = Conventions::pole_epsilon;
    c.record("pole error on the negative p3 ray", raises_pole([&] {
                 helicity_spinor(Momentum(Vec3(1e-6, 0.0, -1.0), opt.mass), Pol::Up);
             }),
             0.0);
    c.record("pole error for n within eps of -e3", raises_pole([&] {
                 double z = -1.0 + 0.5 * eps;
                 common_spinor(Vec3(std::sqrt(1.0 - z * z), 0.0, z), Pol::Up);
             }),
             0.0);
    return c.take();
}

inline std::vector<IdentityCheck> verify_mode_spinors(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("mode_spinors", opt);
    SplitMix64 rng = suite_rng("mode_spinors", opt);
    Mat4 up = 0.5 * (Mat4::Identity() + gamma(0));
    Mat4 down = 0.5 * (Mat4::Identity() - gamma(0));
    c.record("n(0) = 1", std::abs(spinor_normalization(Momentum(Vec3::Zero(), opt.mass)) - 1.0), 0.0);
    std::vector<PolarizationBasis> bases{PolarizationBasis::common(), PolarizationBasis::helicity()};
    for (const auto& q : sample_momenta(rng, opt.samples, opt.mass)) {
        Mat4 sl = slash(q);
        ProjectorPair pr = projectors(q);
        for (const auto& b : bases) {
            if (b.kind() == PolarizationBasis::Kind::Helicity && q.norm() - std::abs(q[2]) < 1e-6 * q.norm()) continue;
            std::string tag = " [" + b.name() + "]";
            Mat4 su = Mat4::Zero(), sv = Mat4::Zero();
            double dirac = 0.0, rest = 0.0, ortho = 0.0, inv = 0.0;
            for (Pol s : kPolarizations) {
                auto [u0, v0] = rest_spinors(b, q, s);
                su += u0 * u0.adjoint();
                sv += v0 * v0.adjoint();
                rest = std::max(rest, max_abs(gamma(0) * u0 - u0));
                rest = std::max(rest, max_abs(gamma(0) * v0 + v0));
                DiracSpinor u = u_spinor(b, q, s);
                DiracSpinor v = v_spinor(b, q, s);
                dirac = std::max(dirac, max_abs(sl * u - q.mass() * u));
                dirac = std::max(dirac, max_abs(sl * v + q.mass() * v));
                for (Pol t : kPolarizations) {
                    double delta = s == t ? 1.0 : 0.0;
                    ortho = std::max(ortho, std::abs(u.dot(u_spinor(b, q, t)) - delta));
                }
                DiracSpinor back = (charge_conjugation() * v.conjugate()).eval();
                inv = std::max(inv, max_abs(back - u));
            }
            c.record("gamma0 u0 = u0, gamma0 v0 = -v0" + tag, rest, kTight);
            c.record("sum u0 u0^dagger = (1+gamma0)/2" + tag, max_abs(su - up), kTight);
            c.record("sum v0 v0^dagger = (1-gamma0)/2" + tag, max_abs(sv - down), kTight);
            c.record("(gamma p - m) u = 0, (gamma p + m) v = 0" + tag, dirac / q.energy(), kTight);
            c.record("u^dagger u' = delta" + tag, ortho, kTight);
            c.record("C (C u^*)^* = u" + tag, inv, kTight);
            if (b.kind() == PolarizationBasis::Kind::Common) {
                auto [pp, pm] = projector_from_spinors(b, q);
                c.record("sum u u^dagger = Pi+" + tag, residual(pp, pr.plus), kTight);
                c.record("sum v(-p) v(-p)^dagger = Pi-" + tag, residual(pm, pr.minus), kTight);
                DiracSpinor u = u_spinor(b, q, Pol::Up);
                c.record("H u = E u" + tag, residual(DiracSpinor(dirac_hamiltonian(q) * u), DiracSpinor(q.energy() * u)),
                         kTight);
            }
        }
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_pryce_spin(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("pryce_spin", opt);
    SplitMix64 rng = suite_rng("pryce_spin", opt);
    Triple<Mat4> s0 = spin_matrices();
    for (const auto& q : sample_momenta(rng, opt.samples, opt.mass)) {
        Triple<Mat4> s = pryce_e_spin(q);
        Mat4 h = dirac_hamiltonian(q);
        ProjectorPair pr = projectors(q);
        c.record("S rational = boost sandwich", residual(s, pryce_e_spin_sandwich(q)), kTight);
        Mat4 sq = Mat4::Zero();
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            int k = (i + 2) % 3;
            c.record("S hermitian", residual(s[i], Mat4(s[i].adjoint())), kTight);
            c.record("[S_i, S_j] = i eps_ijk S_k", residual(commutator(s[i], s[j]), Mat4(I * s[k])), kTight);
            for (int jj = 0; jj < 3; ++jj) {
                Mat4 expect = (i == jj ? 0.5 : 0.0) * Mat4::Identity();
                c.record("{S_i, S_j} = delta_ij / 2", residual(anticommutator(s[i], s[jj]), expect), kTight);
            }
            c.record("[H, S] = 0", residual(commutator(h, s[i]), Mat4(Mat4::Zero())), kTight);
            sq += s[i] * s[i];
        }
        c.record("S^2 = 3/4", residual(sq, Mat4(0.75 * Mat4::Identity())), kTight);
        Triple<Mat4> dx = pryce_e_position_offset(q);
        Triple<Mat4> lhs = cross(dx, q.p());
        Triple<Mat4> rhs;
        for (int i = 0; i < 3; ++i) rhs[i] = s0[i] - s[i];
        c.record("dX wedge p = s - S", residual(lhs, rhs), kTight);

        // projector form with momentum derivatives of n(p) l_{+-p}
        double hstep = 1e-5 * std::max(q.norm(), q.mass());
        auto nl = [&](const Vec3& p, double sign) {
            Momentum k(p, q.mass());
            Momentum ks(sign * p, q.mass());
            return (spinor_normalization(k) * boost_for_momentum(ks)).eval();
        };
        Triple<Mat4> proj;
        Mat4 li = boost_for_momentum(q.flipped());
        Mat4 l = boost_for_momentum(q);
        double n = spinor_normalization(q);
        for (int i = 0; i < 3; ++i) {
            Mat4 dp = central_derivative([&](const Vec3& p) { return nl(p, 1.0); }, q.p(), i, hstep);
            Mat4 dm = central_derivative([&](const Vec3& p) { return nl(p, -1.0); }, q.p(), i, hstep);
            Mat4 xp = -I / n * dp * li;
            Mat4 xm = -I / n * dm * l;
            proj[i] = xp * pr.plus + xm * pr.minus;
        }
        c.record("dX = dx(p) Pi+ + dx(-p) Pi- (finite differences)", residual(proj, dx), kFd);

        Triple<Mat4> ch = chakrabarti_spin(q);
        Triple<Mat4> chm = chakrabarti_spin(q.flipped());
        Triple<Mat4> sum;
        for (int i = 0; i < 3; ++i) {
            c.record("s(p) = s(-p)^dagger", residual(ch[i], Mat4(chm[i].adjoint())), kTight);
            c.record("s(p) Pi+ = Pi+ s(-p)", residual(Mat4(ch[i] * pr.plus), Mat4(pr.plus * chm[i])), kTight);
            c.record("s(-p) Pi- = Pi- s(p)", residual(Mat4(chm[i] * pr.minus), Mat4(pr.minus * ch[i])), kTight);
            sum[i] = ch[i] * pr.plus + chm[i] * pr.minus;
        }
        c.record("S = s(p) Pi+ + s(-p) Pi-", residual(sum, s), kTight);
    }
    Momentum witness(Vec3(0.3, -0.4, 0.5), opt.mass);
    c.record_lower("|[H, s(p)]| > 0 (not conserved)",
                   max_abs(commutator(dirac_hamiltonian(witness), chakrabarti_spin(witness)[0])), 1e-6);
    return c.take();
}

inline std::vector<IdentityCheck> verify_spin_types(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("spin_types", opt);
    SplitMix64 rng = suite_rng("spin_types", opt);
    for (const auto& q : sample_momenta(rng, opt.samples, opt.mass)) {
        double m = q.mass();
        double e = q.energy();
        Mat4 h = dirac_hamiltonian(q);
        Mat4 n = n_operator(q);
        Triple<Mat4> s = pryce_e_spin(q);
        Triple<Mat4> sp = spin_plus(q);
        Triple<Mat4> sm = spin_minus(q);
        Triple<Mat4> fr = frankel_spin(q);
        Triple<Mat4> cfr = frankel_companion(q);
        Triple<Mat4> pc = pc_spin(q);
        Triple<Mat4> cpc = pc_companion(q);
        Triple<Mat4> fg = fradkin_good_spin(q);
        c.record("S_Fr = (E/m) S(-)", residual(fr, scaled(e / m, sm)), kTight);
        c.record("S_PC = (m/E) S(+)", residual(pc, scaled(m / e, sp)), kTight);
        c.record("S_PC = Pi+ s Pi+ + Pi- s Pi-", residual(pc, pc_spin_projected(q)), kTight);
        Triple<Mat4> diag;
        for (int i = 0; i < 3; ++i) {
            DiagOsc d = decompose_diag_osc(spin_matrix(i), q);
            diag[i] = d.plus + d.minus;
        }
        c.record("diagonal part of s = S_PC", residual(diag, pc), kTight);
        c.record("C_PC = (m^2/E^2) S_Fr", residual(cpc, scaled(m * m / (e * e), fr)), kTight);
        c.record("C_Fr = (E^2/m^2) S_PC", residual(cfr, scaled(e * e / (m * m), pc)), kTight);
        Mat4 fr2 = fr[0] * fr[0] + fr[1] * fr[1] + fr[2] * fr[2];
        Mat4 pc2 = pc[0] * pc[0] + pc[1] * pc[1] + pc[2] * pc[2];
        c.record("S_Fr^2 = (1 + 2E^2/m^2)/4", residual(fr2, Mat4(0.25 * (1 + 2 * e * e / (m * m)) * Mat4::Identity())),
                 kTight);
        c.record("S_PC^2 = (1 + 2m^2/E^2)/4", residual(pc2, Mat4(0.25 * (1 + 2 * m * m / (e * e)) * Mat4::Identity())),
                 kTight);
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            int k = (i + 2) % 3;
            c.record("[S_Fr,i, S_Fr,j] = i eps C_Fr,k", residual(commutator(fr[i], fr[j]), Mat4(I * cfr[k])), kTight);
            c.record("[S_PC,i, S_PC,j] = i eps C_PC,k", residual(commutator(pc[i], pc[j]), Mat4(I * cpc[k])), kTight);
            c.record("[S_FG,i, S_FG,j] = i eps N S_FG,k", residual(commutator(fg[i], fg[j]), Mat4(I * n * fg[k])),
                     kTight);
            c.record("S_FG = S N", residual(fg[i], Mat4(s[i] * n)), kTight);
            c.record("[H, S_Fr] = 0", residual(commutator(h, fr[i]), Mat4(Mat4::Zero())), kTight);
            c.record("[H, S_PC] = 0", residual(commutator(h, pc[i]), Mat4(Mat4::Zero())), kTight);
            c.record("[H, S_FG] = 0", residual(commutator(h, fg[i]), Mat4(Mat4::Zero())), kTight);
        }
        Mat4 ps = dot(q.p(), spin_matrices());
        c.record("p.S_Fr = p.s", residual(dot(q.p(), fr), ps), kTight);
        c.record("p.S_PC = p.s", residual(dot(q.p(), pc), ps), kTight);
        c.record("p.S = p.s", residual(dot(q.p(), s), ps), kTight);
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_pauli_lubanski(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("pauli_lubanski", opt);
    SplitMix64 rng = suite_rng("pauli_lubanski", opt);
    for (const auto& q : sample_momenta(rng, opt.samples, opt.mass)) {
        double m = q.mass();
        double e = q.energy();
        auto w = pauli_lubanski(q);
        Mat4 pw = e * w[0] - (q[0] * w[1] + q[1] * w[2] + q[2] * w[3]);
        c.record("p^mu W_mu = 0", residual(pw, Mat4(Mat4::Zero())), kTight);
        Mat4 w2 = w[0] * w[0] - w[1] * w[1] - w[2] * w[2] - w[3] * w[3];
        c.record("W^mu W_mu = -3m^2/4", residual(w2, Mat4(-0.75 * m * m * Mat4::Identity())), kTight);
        Real4 L = lorentz_boost_matrix(q);
        Triple<Mat4> s = pryce_e_spin(q);
        Triple<Mat4> ws;
        for (int i = 0; i < 3; ++i) {
            ws[i] = m * (L(i + 1, 1) * s[0] + L(i + 1, 2) * s[1] + L(i + 1, 3) * s[2]);
        }
        c.record("W^i = m L^i_j S_j", residual(Triple<Mat4>{w[1], w[2], w[3]}, ws), kTight);
        Mat4 h = dirac_hamiltonian(q);
        for (int a = 0; a < 4; ++a) c.record("[H, W^mu] = 0", residual(commutator(h, w[a]), Mat4(Mat4::Zero())), kTight);
        PositionOffsets off = pryce_cd_offsets(q);
        Triple<Mat4> dx = pryce_e_position_offset(q);
        Triple<Mat4> xc, xd;
        for (int i = 0; i < 3; ++i) {
            xc[i] = dx[i] + off.c_minus_e[i];
            xd[i] = dx[i] + off.d_minus_e[i];
        }
        Triple<Mat4> jc = cross(xc, q.p());
        Triple<Mat4> jd = cross(xd, q.p());
        Triple<Mat4> pc = pc_spin(q);
        Triple<Mat4> fr = frankel_spin(q);
        for (int i = 0; i < 3; ++i) {
            jc[i] += pc[i];
            jd[i] += fr[i];
        }
        c.record("dX_c wedge p + S_PC = s", residual(jc, spin_matrices()), kTight);
        c.record("dX_d wedge p + S_Fr = s", residual(jd, spin_matrices()), kTight);
        c.record("(dX_d - dX) = -(E/m)(dX_c - dX)", residual(off.d_minus_e, scaled(-e / m, off.c_minus_e)), kTight);
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_associated(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("associated", opt);
    SplitMix64 rng = suite_rng("associated", opt);
    std::vector<PolarizationBasis> bases{PolarizationBasis::common(), PolarizationBasis::helicity()};
    const Mat2 one = Mat2::Identity();
    const Mat2 zero = Mat2::Zero();
    for (int n = 0; n < opt.samples; ++n) {
        Momentum q = off_pole_momentum(rng, opt.mass);
        for (const auto& b : bases) {
            std::string tag = " [" + b.name() + "]";
            Triple<Mat2> sg = b.sigma_matrices(q);
            auto diag = [&](const MatrixField4& f) { return matrix_elements_diag(f, q, b); };
            AssociatedPair pp = diag([](const Momentum& k) { return projectors(k).plus; });
            c.record("Pi+ -> (1, 0)" + tag, std::max(max_abs(pp.particle - one), max_abs(pp.antiparticle)), kTight);
            AssociatedPair pm = diag([](const Momentum& k) { return projectors(k).minus; });
            c.record("Pi- -> (0, 1)" + tag, std::max(max_abs(pm.particle), max_abs(pm.antiparticle - one)), kTight);
            AssociatedPair nn = diag(n_operator);
            c.record("N -> (1, -1)" + tag, std::max(max_abs(nn.particle - one), max_abs(nn.antiparticle + one)), kTight);
            double e = q.energy();
            AssociatedPair hh = diag(dirac_hamiltonian);
            c.record("H -> (E, -E)" + tag,
                     std::max(residual(hh.particle, Mat2(e * one)), residual(hh.antiparticle, Mat2(-e * one))), kTight);
            for (int i = 0; i < 3; ++i) {
                AssociatedOperator sa = assoc::spin(b, i);
                AssociatedPair ss = diag([i](const Momentum& k) { return pryce_e_spin(k)[i]; });
                Mat2 half = 0.5 * sg[i];
                c.record("S -> Sigma/2 = -S^c" + tag,
                         std::max(max_abs(ss.particle - half), max_abs(ss.antiparticle - sa.sign_c * half)), kTight);
                AssociatedOperator spa = assoc::spin_plus(b, i);
                AssociatedPair sp = diag([i](const Momentum& k) { return spin_plus(k)[i]; });
                c.record("S(+) -> Theta Sigma/2" + tag, residual(sp.particle, spa.mult(q)), kTight);
                AssociatedOperator wa = assoc::pl_space(b, i);
                AssociatedPair wp = diag([i](const Momentum& k) { return pauli_lubanski(k)[i + 1]; });
                c.record("W^i -> (m/2) Theta Sigma" + tag, residual(wp.particle, wa.mult(q)), kTight);
                c.record("m Theta S antiparticle sector = -(m/2) Theta Sigma" + tag,
                         residual(wp.antiparticle, Mat2(-wa.mult(q))), kTight);
                AssociatedPair pi = diag([i](const Momentum& k) { return (k[i] * Mat4::Identity()).eval(); });
                c.record("P^i -> (p^i, -p^i)" + tag,
                         std::max(residual(pi.particle, Mat2(q[i] * one)), residual(pi.antiparticle, Mat2(-q[i] * one))),
                         kTight);
                AssociatedPair chs = diag([i](const Momentum& k) { return chakrabarti_spin(k)[i]; });
                c.record("s(p) particle sector = Sigma/2" + tag, max_abs(chs.particle - half), kTight);
                OscillatingPair os = matrix_elements_offdiag([i](const Momentum& k) { return pryce_e_spin(k)[i]; }, q,
                                                             0.0, b);
                c.record("S has no oscillating part" + tag, std::max(max_abs(os.plus_minus), max_abs(os.minus_plus)),
                         kTight);
                double t = 0.37;
                OscillatingPair og = matrix_elements_offdiag(
                    [i](const Momentum&) { return (-I * gamma(i + 1)).eval(); }, q, t, b);
                c.record("hermitian A: A(+-)^dagger = A(-+)" + tag,
                         residual(Mat2(og.plus_minus.adjoint()), og.minus_plus), kTight);
            }
            AssociatedOperator w0 = assoc::pl_time(b);
            AssociatedPair ww = diag([](const Momentum& k) { return pauli_lubanski(k)[0]; });
            c.record("W^0 -> p.Sigma/2 = +W0^c" + tag,
                     std::max(residual(ww.particle, w0.mult(q)), residual(ww.antiparticle, w0.mult(q))), kTight);
            (void)zero;
        }
        // covariant derivatives commute with the spin matrices
        PolarizationBasis hb = PolarizationBasis::helicity();
        WaveSpinor probe = probe_spinor(rng, q.p(), std::max(q.mass(), 1.0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double r = commutator_residual(assoc::covariant_derivative(hb, i), assoc::spin(hb, j),
                                               zero_operator(hb), probe, q);
                c.record("[d~_i, S_j] = 0 [helicity]", r, kCommutatorFd);
            }
    }
    return c.take();
}

namespace verify_detail {

inline ScalarField constant(cplx v)
{
    return [v](const Momentum&) { return v; };
}

//! Commutator table of the associated generators for one basis.
inline void commutator_table_for_basis(Collector& c, const PolarizationBasis& b, const Momentum& q,
                                 const std::vector<WaveSpinor>& probes)
{
    std::string tag = " [" + b.name() + "]";
    using namespace assoc;
    auto eps = [](int i, int j, int k) { return double(levi_civita(i, j, k)); };
    auto check = [&](const std::string& name, const AssociatedOperator& a, const AssociatedOperator& x,
                     const AssociatedOperator& rhs) {
        for (const auto& w : probes) c.record(name + tag, commutator_residual(a, x, rhs, w, q), kCommutatorFd);
        if (a.is_multiplicative() && x.is_multiplicative() && rhs.is_multiplicative()) {
            c.record(name + " (pointwise)" + tag, residual(multiplicative_commutator(a, x, q), rhs.mult(q)), kTight);
        }
    };
    auto eps_sum = [&](int i, int j, std::function<AssociatedOperator(int)> f, cplx factor) {
        std::vector<std::pair<ScalarField, AssociatedOperator>> terms;
        for (int k = 0; k < 3; ++k) terms.emplace_back(constant(factor * eps(i, j, k)), f(k));
        return combination(terms);
    };
    auto Ep = [](const Momentum& k) { return k.energy() + k.mass(); };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            check("[L_i, L_j] = i eps L_k", orbital(b, i), orbital(b, j),
                  eps_sum(i, j, [&](int k) { return orbital(b, k); }, I));
            check("[S_i, S_j] = i eps S_k", spin(b, i), spin(b, j), eps_sum(i, j, [&](int k) { return spin(b, k); }, I));
            check("[L_i, S_j] = 0", orbital(b, i), spin(b, j), zero_operator(b));
            check("[L_i, Ko_j] = i eps Ko_k", orbital(b, i), boost_orbital(b, j),
                  eps_sum(i, j, [&](int k) { return boost_orbital(b, k); }, I));
            check("[Ko_i, Ko_j] = -i eps L_k", boost_orbital(b, i), boost_orbital(b, j),
                  eps_sum(i, j, [&](int k) { return orbital(b, k); }, -I));
            {
                std::vector<std::pair<ScalarField, AssociatedOperator>> t;
                for (int k = 0; k < 3; ++k) {
                    t.emplace_back([=](const Momentum& p) { return -I * p.energy() * eps(i, j, k) / Ep(p); }, spin(b, k));
                }
                t.emplace_back([=](const Momentum& p) { return -I * p[i] / Ep(p); }, boost_spin(b, j));
                check("[Ko_i, Ks_j] = -i/(E+m) (E eps S_k + p^i Ks_j)", boost_orbital(b, i), boost_spin(b, j),
                      combination(t));
            }
            {
                std::vector<std::pair<ScalarField, AssociatedOperator>> t;
                t.emplace_back([=](const Momentum& p) { return I * p[i] / Ep(p); }, spin(b, j));
                if (i == j) t.emplace_back([=](const Momentum& p) { return -I / Ep(p); }, pl_time(b));
                check("[S_i, Ks_j] = i/(E+m) (p^i S_j - delta p.S)", spin(b, i), boost_spin(b, j), combination(t));
            }
            {
                std::vector<std::pair<ScalarField, AssociatedOperator>> t;
                t.emplace_back(
                    [=](const Momentum& p) {
                        double s = 0.0;
                        for (int k = 0; k < 3; ++k) s += eps(i, j, k) * p[k];
                        return I * s / (Ep(p) * Ep(p));
                    },
                    pl_time(b));
                check("[Ks_i, Ks_j] = i/(E+m)^2 eps p^k p.S", boost_spin(b, i), boost_spin(b, j), combination(t));
            }
            {
                std::vector<std::pair<ScalarField, AssociatedOperator>> t;
                AssociatedOperator id = AssociatedOperator{"1", b, [](const Momentum&) { return Mat2::Identity().eval(); },
                                                           {}, 1};
                t.emplace_back(
                    [=](const Momentum& p) {
                        double e = p.energy();
                        return cplx((i == j ? 1.0 : 0.0) / (2 * e) - p[i] * p[j] / (2 * e * e * e));
                    },
                    id);
                t.emplace_back([=](const Momentum& p) { return -I * p[j] / p.energy(); }, position(b, i));
                check("[Ko_i, X^j] = delta/2E - i p^j X^i / E - p^i p^j / 2E^3", boost_orbital(b, i), position(b, j),
                      combination(t));
                std::vector<std::pair<ScalarField, AssociatedOperator>> v;
                v.emplace_back(
                    [=](const Momentum& p) {
                        double e = p.energy();
                        return I * ((i == j ? 1.0 : 0.0) - p[i] * p[j] / (e * e));
                    },
                    id);
                check("[Ko_i, V^j] = i (delta - p^i p^j / E^2)", boost_orbital(b, i), velocity(b, j), combination(v));
                std::vector<std::pair<ScalarField, AssociatedOperator>> xv;
                xv.emplace_back(
                    [=](const Momentum& p) {
                        double e = p.energy();
                        return I * ((i == j ? 1.0 : 0.0) - p[i] * p[j] / (e * e)) / e;
                    },
                    id);
                check("E [X^i, V^j] = i (delta - p^i p^j / E^2)", position(b, i), velocity(b, j), combination(xv));
                check("[X^i, P^j] = i delta", position(b, i), momentum(b, j),
                      scaled(constant(I * (i == j ? 1.0 : 0.0)), id));
            }
            check("[L_i, X^j] = i eps X^k", orbital(b, i), position(b, j),
                  eps_sum(i, j, [&](int k) { return position(b, k); }, I));
            check("[S_i, X^j] = 0", spin(b, i), position(b, j), zero_operator(b));
            check("[X^i, X^j] = 0", position(b, i), position(b, j), zero_operator(b));
            {
                std::vector<std::pair<ScalarField, AssociatedOperator>> t;
                for (int k = 0; k < 3; ++k) t.emplace_back([=](const Momentum& p) { return -I * eps(i, j, k) / Ep(p); }, spin(b, k));
                t.emplace_back([=](const Momentum& p) { return I * p[j] / (p.energy() * Ep(p)); }, boost_spin(b, i));
                check("[Ks_i, X^j] = i/(E+m) (-eps S_k + p^j Ks_i / E)", boost_spin(b, i), position(b, j),
                      combination(t));
            }
            {
                std::vector<std::pair<ScalarField, AssociatedOperator>> t;
                for (int k = 0; k < 3; ++k) t.emplace_back([=](const Momentum& p) { return I * p.mass() * eps(i, j, k); }, spin(b, k));
                t.emplace_back([=](const Momentum& p) { return I * p[j]; }, boost_spin(b, i));
                check("[S_i, W^j] = i m eps S_k + i p^j Ks_i", spin(b, i), pl_space(b, j), combination(t));
            }
            {
                std::vector<std::pair<ScalarField, AssociatedOperator>> t;
                if (i == j) t.emplace_back([=](const Momentum& p) { return I / Ep(p); }, pl_time(b));
                t.emplace_back([=](const Momentum& p) { return I * p[j] / Ep(p); }, spin_minus(b, i));
                check("[X^i, W^j] = i/(E+m) (delta W^0 + p^j S(-)_i)", position(b, i), pl_space(b, j),
                      combination(t));
            }
            check("[Xc^i, Xc^j] = -i eps Yc^k", pryce_c_position(b, i), pryce_c_position(b, j),
                  eps_sum(i, j, [&](int k) { return pryce_c_y(b, k); }, -I));
            check("[Xd^i, Xd^j] = i eps Yd^k", pryce_d_position(b, i), pryce_d_position(b, j),
                  eps_sum(i, j, [&](int k) { return pryce_d_y(b, k); }, I));
        }
        check("[X^i, H] = i V^i", position(b, i), energy(b), scaled(constant(I), velocity(b, i)));
        check("[S_i, W^0] = i (E+m) Ks_i", spin(b, i), pl_time(b),
              scaled([=](const Momentum& p) { return I * Ep(p); }, boost_spin(b, i)));
        check("[X^i, W^0] = i S_i", position(b, i), pl_time(b), scaled(constant(I), spin(b, i)));
        Mat2 yc = pryce_c_y(b, i).mult(q);
        Mat2 wi = pl_space(b, i).mult(q) / std::pow(q.energy(), 3);
        c.record("Yc = W^i / E^3" + tag, residual(yc, wi), kTight);
    }
}

}  // namespace verify_detail

inline std::vector<IdentityCheck> verify_commutator_table(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("appendix_b", opt);
    SplitMix64 rng = suite_rng("appendix_b", opt);
    int n = std::min(opt.samples, 20);
    std::vector<PolarizationBasis> bases{PolarizationBasis::common(), PolarizationBasis::helicity()};
    for (int s = 0; s < n; ++s) {
        Momentum q = off_pole_momentum(rng, opt.mass);
        std::vector<WaveSpinor> probes;
        double width = std::max(q.mass(), 1.0);
        for (int k = 0; k < 3; ++k) probes.push_back(probe_spinor(rng, q.p() + 0.3 * width * random_direction(rng), width));
        for (const auto& b : bases) commutator_table_for_basis(c, b, q, probes);
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_wigner(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("wigner", opt);
    SplitMix64 rng = suite_rng("wigner", opt);
    PolarizationBasis common = PolarizationBasis::common();
    PolarizationBasis hel = PolarizationBasis::helicity();
    const Mat2 one = Mat2::Identity();
    auto random_lambda = [&](double max_rapidity) {
        Vec3 tau = rng.uniform(0.0, max_rapidity) * random_direction(rng);
        Vec3 theta = rng.uniform(0.0, 2.0 * std::numbers::pi) * random_direction(rng);
        return Mat4(boost(tau) * rotation(theta));
    };
    Momentum q0 = random_momentum(rng, opt.mass);
    c.record("lambda = 1 gives D = 1", max_abs(d_matrix(Mat4::Identity(), q0, hel) - one), kTight);
    int nb = std::min(opt.samples, 50);
    for (int k = 0; k < nb; ++k) {
        Mat4 lam = random_lambda(2.0);
        Momentum q = random_momentum(rng, opt.mass);
        for (const auto& b : {common, hel}) {
            std::string tag = " [" + b.name() + "]";
            Mat2 d = d_matrix(lam, q, b);
            c.record("D unitary" + tag, max_abs(d.adjoint() * d - one), kTight);
        }
        Mat4 w = wigner_little_group(lam, q);
        Vec4 rest(q.mass(), 0, 0, 0);
        c.record("Lambda[w] fixes the rest momentum", residual(Vec4(lorentz_of(w) * rest), rest), kTight);
        c.record("w is block diagonal unitary", max_abs(w.adjoint() * w - Mat4::Identity()), kTight);
    }
    int nr = std::min(opt.samples, 20);
    for (int k = 0; k < nr; ++k) {
        Vec3 theta = rng.uniform(0.0, 2.0 * std::numbers::pi) * random_direction(rng);
        Mat4 r = rotation(theta);
        Mat2 d0 = d_matrix(r, random_momentum(rng, opt.mass), common);
        double spread = 0.0;
        for (int j = 0; j < 20; ++j) spread = std::max(spread, max_abs(d_matrix(r, random_momentum(rng, opt.mass), common) - d0));
        c.record("rotations: D(r, p) independent of p [common]", spread, kTight);
        c.record("rotations: D(r, p) = r-hat [common e3]", max_abs(d0 - rotation_block(theta)), kTight);
    }
    // norm preservation on a grid
    double m = opt.mass;
    Vec3 center(0.3 * m, -0.2 * m, 0.5 * m);
    double width = 0.5 * m;
    WaveSpinor alpha{[=](const Vec3& p) {
                         double g = std::exp(-(p - center).squaredNorm() / (2 * width * width));
                         PauliSpinor v;
                         v << g * cplx(0.8, 0.1), g * cplx(-0.3, 0.5);
                         return v;
                     },
                     {}};
    GridSizes sizes{96, 48, 96};
    QuadratureGrid grid = QuadratureGrid::sphere(8.0 * m, sizes);
    auto norm = [&](const WaveSpinor& w) { return grid.integrate([&](const Vec3& p) { return w(p).squaredNorm(); }); };
    double n0 = norm(alpha);
    for (int k = 0; k < 3; ++k) {
        Mat4 lam = random_lambda(0.6);
        Vec4 a(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        WaveSpinor t = wigner_transform(alpha, lam, a, k % 2 ? hel : common, m);
        c.record("<T alpha, T alpha> = <alpha, alpha> on the grid", std::abs(norm(t) - n0) / n0, 1e-8);
    }
    return c.take();
}

inline std::vector<IdentityCheck> verify_kernels(const VerifyOptions& opt)
{
    using namespace verify_detail;
    Collector c("kernels", opt);
    SplitMix64 rng = suite_rng("kernels", opt);
    std::vector<PolarizationBasis> bases{PolarizationBasis::common(), PolarizationBasis::helicity()};
    int n = std::min(opt.samples, 50);
    for (int s = 0; s < n; ++s) {
        Momentum q = off_pole_momentum(rng, opt.mass);
        double t = rng.uniform(-2.0, 2.0);
        for (const auto& b : bases) {
            std::string tag = " [" + b.name() + "]";
            for (const auto& k : kernel_catalog()) {
                for (int comp = 0; comp < k.components; ++comp) {
                    Mat2 kv = k(comp, t, q, b);
                    auto parent = [&k, comp](const Momentum& p) { return k.parent(comp, p); };
                    OscillatingPair op = matrix_elements_offdiag(parent, q, t, b);
                    c.record(k.name + " = offdiag(parent)" + tag, residual(kv, op.plus_minus), 1e-10);
                    double h = 1e-4 / q.energy();
                    Mat2 dt = (k(comp, t + h, q, b) - k(comp, t - h, q, b)) / (2 * h);
                    Mat2 expect = 2.0 * I * q.energy() * kv;
                    c.record(k.name + " dK/dt = 2iE K" + tag, max_abs(dt - expect) / std::max(1e-300, max_abs(expect)),
                             kFd);
                    c.record(k.name + " |K| independent of t" + tag,
                             max_abs(Mat2(kv.cwiseAbs().cast<cplx>() - k(comp, 0.0, q, b).cwiseAbs().cast<cplx>())),
                             kTight);
                    Mat4 a = k.parent(comp, q);
                    double herm = max_abs(a - a.adjoint());
                    double anti = max_abs(a + a.adjoint());
                    if (herm < 1e-14 || anti < 1e-14) {
                        double sign = herm < 1e-14 ? 1.0 : -1.0;
                        c.record("(anti)hermitian parent: A(+-)^dagger = +-A(-+)" + tag,
                                 residual(Mat2(op.plus_minus.adjoint()), Mat2(sign * op.minus_plus)), kTight);
                    }
                }
            }
            MatrixField4 ps = [](const Momentum&) { return (gamma(0) * gamma5()).eval(); };
            AssociatedPair d = matrix_elements_diag(ps, q, b);
            c.record("pseudoscalar parent has no diagonal part" + tag,
                     std::max(max_abs(d.particle), max_abs(d.antiparticle)), kTight);
        }
    }
    return c.take();
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"clifford",   "boosts",         "projectors", "polarization",
                                                "mode_spinors", "pryce_spin",   "spin_types", "pauli_lubanski",
                                                "associated", "appendix_b",     "wigner",     "kernels"};
    return names;
}

inline std::vector<IdentityCheck> run_suite(const std::string& name, const VerifyOptions& opt)
{
    if (name == "clifford") return verify_clifford(opt);
    if (name == "boosts") return verify_boosts(opt);
    if (name == "projectors") return verify_projectors(opt);
    if (name == "polarization") return verify_polarization(opt);
    if (name == "mode_spinors") return verify_mode_spinors(opt);
    if (name == "pryce_spin") return verify_pryce_spin(opt);
    if (name == "spin_types") return verify_spin_types(opt);
    if (name == "pauli_lubanski") return verify_pauli_lubanski(opt);
    if (name == "associated") return verify_associated(opt);
    if (name == "appendix_b") return verify_commutator_table(opt);
    if (name == "wigner") return verify_wigner(opt);
    if (name == "kernels") return verify_kernels(opt);
    if (name == "all") {
        std::vector<IdentityCheck> out;
        for (const auto& s : suite_names()) {
            auto part = run_suite(s, opt);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

inline void write_report(std::ostream& os, const std::vector<IdentityCheck>& checks)
{
    os << "suite,identity,value,tolerance,bound,status\n";
    for (const auto& c : checks) {
        std::string name = c.name;
        std::replace(name.begin(), name.end(), ',', ';');
        os << c.suite << ',' << name << ',' << format_number(c.value) << ',' << format_number(c.tolerance) << ','
           << (c.upper_bound ? "max" : "min") << ',' << (c.passed() ? "pass" : "FAIL") << '\n';
    }
}

}  // namespace dirac
