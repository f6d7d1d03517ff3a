// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "types.hpp"

namespace dirac {

namespace detail {
inline Mat4 blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d)
{
    Mat4 m;
    m << a, b, c, d;
    return m;
}
inline Mat4 block_diag(const Mat2& a, const Mat2& d)
{
    return blocks(a, Mat2::Zero(), Mat2::Zero(), d);
}
}  // namespace detail

/*!
 * Chiral-representation gamma matrices gamma^mu, mu in 0..3.
 */
inline const Mat4& gamma(int mu)
{
    static const std::array<Mat4, 4> g = [] {
        std::array<Mat4, 4> out;
        Mat2 one = Mat2::Identity();
        Mat2 zero = Mat2::Zero();
        out[0] = detail::blocks(zero, one, one, zero);
        for (int i = 0; i < 3; ++i) {
            out[i + 1] = detail::blocks(zero, pauli(i), -pauli(i), zero);
        }
        return out;
    }();
    if (mu < 0 || mu > 3) throw std::out_of_range("gamma index must be in 0..3");
    return g[mu];
}

inline Mat4 gamma5()
{
    return detail::block_diag(-Mat2::Identity(), Mat2::Identity());
}

//! gamma^i p^i with upper spatial indices.
inline Mat4 gamma_dot(const Vec3& p)
{
    return p[0] * gamma(1) + p[1] * gamma(2) + p[2] * gamma(3);
}

//! s^{mu nu} = (i/4)[gamma^mu, gamma^nu]; zero when mu == nu.
inline Mat4 sl2c_generator(int mu, int nu)
{
    const Mat4& a = gamma(mu);
    const Mat4& b = gamma(nu);
    return (I / 4.0) * (a * b - b * a);
}

//! Pauli-Dirac spin matrices s_i = diag(sigma_i, sigma_i)/2.
inline Mat4 spin_matrix(int i)
{
    int j = (i + 1) % 3;
    int k = (i + 2) % 3;
    return sl2c_generator(j + 1, k + 1);
}

inline Triple<Mat4> spin_matrices()
{
    return {spin_matrix(0), spin_matrix(1), spin_matrix(2)};
}

//! Charge conjugation matrix C = i gamma^2.
inline Mat4 charge_conjugation()
{
    return I * gamma(2);
}

inline Mat2 sigma_dot(const Vec3& v)
{
    return v[0] * pauli(0) + v[1] * pauli(1) + v[2] * pauli(2);
}

//! exp(-i theta.sigma/2).
inline Mat2 rotation_block(const Vec3& theta)
{
    double angle = theta.norm();
    if (angle == 0.0) return Mat2::Identity();
    Vec3 axis = theta / angle;
    return std::cos(angle / 2) * Mat2::Identity() - I * std::sin(angle / 2) * sigma_dot(axis);
}

inline Mat4 rotation(const Vec3& theta)
{
    Mat2 r = rotation_block(theta);
    return detail::block_diag(r, r);
}

//! exp(tau.sigma/2) in the upper block, its inverse in the lower one.
inline Mat4 boost(const Vec3& tau)
{
    double rapidity = tau.norm();
    if (rapidity == 0.0) return Mat4::Identity();
    Mat2 ns = sigma_dot(tau / rapidity);
    Mat2 ch = std::cosh(rapidity / 2) * Mat2::Identity();
    Mat2 sh = std::sinh(rapidity / 2) * ns;
    return detail::block_diag(ch + sh, ch - sh);
}

//! SO(3) matrix R with r^{-1} sigma_i r = R_ij sigma_j.
inline Real3 so3_of(const Mat2& r)
{
    Real3 R;
    Mat2 rinv = r.inverse();
    for (int i = 0; i < 3; ++i) {
        Mat2 t = rinv * pauli(i) * r;
        for (int j = 0; j < 3; ++j) R(i, j) = 0.5 * (t * pauli(j)).trace().real();
    }
    return R;
}

/*!
 * Lorentz matrix of lambda in rho_D, read off from
 * lambda^{-1} gamma^a lambda = Lambda^a_b gamma^b.
 */
inline Real4 lorentz_of(const Mat4& lambda)
{
    Real4 L;
    Mat4 inv = lambda.inverse();
    for (int a = 0; a < 4; ++a) {
        Mat4 t = inv * gamma(a) * lambda;
        for (int b = 0; b < 4; ++b) {
            L(a, b) = 0.25 * Conventions::metric[b] * (t * gamma(b)).trace().real();
        }
    }
    return L;
}

//! Rest-frame to p boost l_p.
inline Mat4 boost_for_momentum(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    Mat4 num = (e + m) * Mat4::Identity() + gamma(0) * gamma_dot(q.p());
    return num / std::sqrt(2.0 * m * (e + m));
}

inline Real4 lorentz_boost_matrix(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    const Vec3& p = q.p();
    Real4 L;
    L(0, 0) = e / m;
    for (int i = 0; i < 3; ++i) {
        L(0, i + 1) = p[i] / m;
        L(i + 1, 0) = p[i] / m;
        for (int j = 0; j < 3; ++j) {
            L(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + p[i] * p[j] / (m * (e + m));
        }
    }
    return L;
}

inline Real4 metric_matrix()
{
    return Vec4(Conventions::metric[0], Conventions::metric[1], Conventions::metric[2],
                Conventions::metric[3])
        .asDiagonal();
}

//! Space block of the boost, delta + p p / (m(E+m)).
inline Real3 theta_tensor(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    return Real3::Identity() + q.p() * q.p().transpose() / (m * (e + m));
}

inline Real3 theta_inverse(const Momentum& q)
{
    double e = q.energy();
    return Real3::Identity() - q.p() * q.p().transpose() / (e * (e + q.mass()));
}

inline Mat4 foldy_wouthuysen(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    Mat4 num = (e + m) * Mat4::Identity() + gamma_dot(q.p());
    return num / std::sqrt(2.0 * e * (e + m));
}

//! True when lambda = diag(A, (A^dagger)^{-1}) with det A = 1.
inline bool is_sl2c_block(const Mat4& lambda, double tol = 1e-10)
{
    Mat2 a = lambda.topLeftCorner<2, 2>();
    Mat2 d = lambda.bottomRightCorner<2, 2>();
    if (max_abs(lambda.topRightCorner<2, 2>()) > tol) return false;
    if (max_abs(lambda.bottomLeftCorner<2, 2>()) > tol) return false;
    if (std::abs(a.determinant() - 1.0) > tol) return false;
    return max_abs(d * a.adjoint() - Mat2::Identity()) <= tol;
}

}  // namespace dirac
