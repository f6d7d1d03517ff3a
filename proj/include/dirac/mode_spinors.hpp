// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>
#include <utility>

#include "polarization.hpp"

namespace dirac {

//! sqrt(m/E(p)); equals one at rest.
inline double spinor_normalization(const Momentum& q)
{
    return std::sqrt(q.mass() / q.energy());
}

inline DiracSpinor stack(const PauliSpinor& top, const PauliSpinor& bottom)
{
    DiracSpinor d;
    d << top, bottom;
    return d;
}

//! Rest-frame particle and antiparticle spinors (u0, v0).
inline std::pair<DiracSpinor, DiracSpinor> rest_spinors(const PolarizationBasis& basis, const Momentum& q, Pol s)
{
    PauliSpinor x = basis.xi(q, s);
    PauliSpinor y = conjugate_spinor(x);
    const double r = 1.0 / std::sqrt(2.0);
    return {r * stack(x, x), r * stack(y, -y)};
}

inline DiracSpinor u_spinor(const PolarizationBasis& basis, const Momentum& q, Pol s)
{
    return spinor_normalization(q) * boost_for_momentum(q) * rest_spinors(basis, q, s).first;
}

inline DiracSpinor v_spinor(const PolarizationBasis& basis, const Momentum& q, Pol s)
{
    return charge_conjugation() * u_spinor(basis, q, s).conjugate();
}

//! gamma^mu p_mu = E gamma^0 - gamma.p.
inline Mat4 slash(const Momentum& q)
{
    return q.energy() * gamma(0) - gamma_dot(q.p());
}

enum class Species { U, V };

/*!
 * Plane-wave mode spinor U or V including the (2 pi)^{-3/2} factor.
 */
class ModeSpinorField {
  public:
    ModeSpinorField(PolarizationBasis basis, Momentum q, Pol s, Species species)
        : q_(std::move(q)), species_(species)
    {
        spinor_ = species == Species::U ? u_spinor(basis, q_, s) : v_spinor(basis, q_, s);
    }

    DiracSpinor operator()(double t, const Vec3& x) const
    {
        double phase = -q_.energy() * t + q_.p().dot(x);
        if (species_ == Species::V) phase = -phase;
        double norm = std::pow(2.0 * std::numbers::pi, -1.5);
        return norm * std::exp(I * phase) * spinor_;
    }

    const DiracSpinor& spinor() const { return spinor_; }

  private:
    Momentum q_;
    Species species_;
    DiracSpinor spinor_;
};

//! (sum_s u(p)u(p)^dagger, sum_s v(-p)v(-p)^dagger).
inline std::pair<Mat4, Mat4> projector_from_spinors(const PolarizationBasis& basis, const Momentum& q)
{
    Mat4 plus = Mat4::Zero();
    Mat4 minus = Mat4::Zero();
    Momentum mq = q.flipped();
    for (Pol s : kPolarizations) {
        DiracSpinor u = u_spinor(basis, q, s);
        DiracSpinor v = v_spinor(basis, mq, s);
        plus += u * u.adjoint();
        minus += v * v.adjoint();
    }
    return {plus, minus};
}

}  // namespace dirac
