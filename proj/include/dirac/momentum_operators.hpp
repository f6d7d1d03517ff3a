// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mode_spinors.hpp"

namespace dirac {

inline Mat4 dirac_hamiltonian(const Momentum& q)
{
    return q.mass() * gamma(0) + gamma(0) * gamma_dot(q.p());
}

struct ProjectorPair {
    Mat4 plus;
    Mat4 minus;
};

inline ProjectorPair projectors(const Momentum& q)
{
    Mat4 h = dirac_hamiltonian(q) / q.energy();
    return {0.5 * (Mat4::Identity() + h), 0.5 * (Mat4::Identity() - h)};
}

//! Projectors rebuilt as boost sandwiches of (1 +- gamma^0)/2.
inline ProjectorPair projectors_from_boosts(const Momentum& q)
{
    Mat4 l = boost_for_momentum(q);
    Mat4 li = boost_for_momentum(q.flipped());
    Mat4 up = 0.5 * (Mat4::Identity() + gamma(0));
    Mat4 down = 0.5 * (Mat4::Identity() - gamma(0));
    double f = q.mass() / q.energy();
    return {f * l * up * l, f * li * down * li};
}

inline Mat4 n_operator(const Momentum& q)
{
    return dirac_hamiltonian(q) / q.energy();
}

//! (a wedge b)_i = eps_ijk a_j b_k for vector a and matrix-valued b.
inline Triple<Mat4> cross(const Vec3& a, const Triple<Mat4>& b)
{
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        int k = (i + 2) % 3;
        out[i] = a[j] * b[k] - a[k] * b[j];
    }
    return out;
}

//! (a wedge p)_i = eps_ijk a_j p_k.
inline Triple<Mat4> cross(const Triple<Mat4>& a, const Vec3& p)
{
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        int k = (i + 2) % 3;
        out[i] = a[j] * p[k] - a[k] * p[j];
    }
    return out;
}

inline Mat4 dot(const Vec3& p, const Triple<Mat4>& a)
{
    return p[0] * a[0] + p[1] * a[1] + p[2] * a[2];
}

inline Triple<Mat4> contract(const Real3& t, const Triple<Mat4>& a)
{
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) out[i] = t(i, 0) * a[0] + t(i, 1) * a[1] + t(i, 2) * a[2];
    return out;
}

inline Triple<Mat4> scaled(double f, Triple<Mat4> a)
{
    for (auto& x : a) x *= f;
    return a;
}

inline Triple<Mat4> gamma_vector()
{
    return {gamma(1), gamma(2), gamma(3)};
}

//! Conserved spin, rational form.
inline Triple<Mat4> pryce_e_spin(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    const Vec3& p = q.p();
    Triple<Mat4> s = spin_matrices();
    Mat4 ps = dot(p, s);
    Triple<Mat4> pg = cross(p, gamma_vector());
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        out[i] = (m / e) * s[i] + p[i] * ps / (e * (e + m)) + (I / (2.0 * e)) * pg[i];
    }
    return out;
}

//! Conserved spin as boost sandwiches of the rest-frame spin.
inline Triple<Mat4> pryce_e_spin_sandwich(const Momentum& q)
{
    Mat4 l = boost_for_momentum(q);
    Mat4 li = boost_for_momentum(q.flipped());
    Mat4 up = 0.5 * (Mat4::Identity() + gamma(0));
    Mat4 down = 0.5 * (Mat4::Identity() - gamma(0));
    double f = q.mass() / q.energy();
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        Mat4 s = spin_matrix(i);
        out[i] = f * (l * s * up * l + li * s * down * li);
    }
    return out;
}

//! Position correction paired with the conserved spin.
inline Triple<Mat4> pryce_e_position_offset(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    const Vec3& p = q.p();
    Triple<Mat4> ps = cross(p, spin_matrices());
    Mat4 gp = gamma_dot(p);
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        out[i] = (I / (2.0 * e)) * gamma(i + 1) + ps[i] / (e * (e + m))
            - (I * p[i] / (2.0 * e * e * (e + m))) * gp;
    }
    return out;
}

//! l_p s l_p^{-1}.
inline Triple<Mat4> chakrabarti_spin(const Momentum& q)
{
    Mat4 l = boost_for_momentum(q);
    Mat4 li = boost_for_momentum(q.flipped());
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) out[i] = l * spin_matrix(i) * li;
    return out;
}

inline Triple<Mat4> spin_plus(const Momentum& q)
{
    return contract(theta_tensor(q), pryce_e_spin(q));
}

inline Triple<Mat4> spin_minus(const Momentum& q)
{
    return contract(theta_inverse(q), pryce_e_spin(q));
}

//! s + (i/2m) p wedge gamma.
inline Triple<Mat4> frankel_spin(const Momentum& q)
{
    Triple<Mat4> s = spin_matrices();
    Triple<Mat4> pg = cross(q.p(), gamma_vector());
    for (int i = 0; i < 3; ++i) s[i] += (I / (2.0 * q.mass())) * pg[i];
    return s;
}

inline Triple<Mat4> frankel_companion(const Momentum& q)
{
    return scaled(q.energy() / q.mass(), spin_plus(q));
}

inline Triple<Mat4> pc_spin(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    double e2 = e * e;
    const Vec3& p = q.p();
    Triple<Mat4> s = spin_matrices();
    Mat4 ps = dot(p, s);
    Triple<Mat4> pg = cross(p, gamma_vector());
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        out[i] = (m * m / e2) * s[i] + p[i] * ps / e2 + (I * m / (2.0 * e2)) * pg[i];
    }
    return out;
}

//! Diagonal part Pi+ s Pi+ + Pi- s Pi- of the rest spin.
inline Triple<Mat4> pc_spin_projected(const Momentum& q)
{
    ProjectorPair pr = projectors(q);
    Triple<Mat4> out;
    for (int i = 0; i < 3; ++i) {
        Mat4 s = spin_matrix(i);
        out[i] = pr.plus * s * pr.plus + pr.minus * s * pr.minus;
    }
    return out;
}

inline Triple<Mat4> pc_companion(const Momentum& q)
{
    return scaled(q.mass() / q.energy(), spin_minus(q));
}

inline Triple<Mat4> fradkin_good_spin(const Momentum& q)
{
    const Vec3& p = q.p();
    Triple<Mat4> s = spin_matrices();
    Triple<Mat4> out;
    if (p.squaredNorm() == 0.0) {
        for (int i = 0; i < 3; ++i) out[i] = gamma(0) * s[i];
        return out;
    }
    Mat4 shift = n_operator(q) - gamma(0);
    Mat4 ps = dot(p, s) / p.squaredNorm();
    for (int i = 0; i < 3; ++i) out[i] = gamma(0) * s[i] + p[i] * ps * shift;
    return out;
}

//! (W^0, W^1, W^2, W^3).
inline std::array<Mat4, 4> pauli_lubanski(const Momentum& q)
{
    Triple<Mat4> w = scaled(q.mass(), spin_plus(q));
    return {dot(q.p(), spin_matrices()), w[0], w[1], w[2]};
}

struct PositionOffsets {
    Triple<Mat4> c_minus_e;
    Triple<Mat4> d_minus_e;
};

inline PositionOffsets pryce_cd_offsets(const Momentum& q)
{
    double m = q.mass();
    double e = q.energy();
    Triple<Mat4> ps = cross(q.p(), pryce_e_spin(q));
    return {scaled(1.0 / (e * (e + m)), ps), scaled(-1.0 / (m * (e + m)), ps)};
}

struct DiagOsc {
    Mat4 plus;
    Mat4 minus;
    Mat4 plus_minus;
    Mat4 minus_plus;
};

inline DiagOsc decompose_diag_osc(const Mat4& a, const Momentum& q)
{
    ProjectorPair pr = projectors(q);
    return {pr.plus * a * pr.plus, pr.minus * a * pr.minus, pr.plus * a * pr.minus, pr.minus * a * pr.plus};
}

inline Mat4 commutator(const Mat4& a, const Mat4& b)
{
    return a * b - b * a;
}

using FourierEvaluator = std::function<std::vector<Mat4>(const Momentum&)>;

namespace detail {
inline std::vector<Mat4> as_vector(const Triple<Mat4>& t)
{
    return {t[0], t[1], t[2]};
}
}  // namespace detail

/*!
 * Named families of momentum-space operators. Vector families return
 * their components in order.
 */
inline const std::map<std::string, FourierEvaluator>& fourier_catalog()
{
    static const std::map<std::string, FourierEvaluator> catalog{
        {"pryce_e_spin", [](const Momentum& q) { return detail::as_vector(pryce_e_spin(q)); }},
        {"pc_spin", [](const Momentum& q) { return detail::as_vector(pc_spin(q)); }},
        {"frankel_spin", [](const Momentum& q) { return detail::as_vector(frankel_spin(q)); }},
        {"fradkin_good", [](const Momentum& q) { return detail::as_vector(fradkin_good_spin(q)); }},
        {"chakrabarti", [](const Momentum& q) { return detail::as_vector(chakrabarti_spin(q)); }},
        {"pauli_lubanski",
         [](const Momentum& q) {
             auto w = pauli_lubanski(q);
             return std::vector<Mat4>(w.begin(), w.end());
         }},
        {"delta_x", [](const Momentum& q) { return detail::as_vector(pryce_e_position_offset(q)); }},
        {"projector_plus", [](const Momentum& q) { return std::vector<Mat4>{projectors(q).plus}; }},
        {"projector_minus", [](const Momentum& q) { return std::vector<Mat4>{projectors(q).minus}; }},
        {"n_op", [](const Momentum& q) { return std::vector<Mat4>{n_operator(q)}; }},
        {"h_dirac", [](const Momentum& q) { return std::vector<Mat4>{dirac_hamiltonian(q)}; }},
    };
    return catalog;
}

inline const FourierEvaluator& fourier_operator(const std::string& name)
{
    const auto& cat = fourier_catalog();
    auto it = cat.find(name);
    if (it == cat.end()) throw std::invalid_argument("unknown operator: " + name);
    return it->second;
}

}  // namespace dirac
