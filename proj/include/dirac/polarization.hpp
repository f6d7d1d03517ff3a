// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "algebra.hpp"

namespace dirac {

//! Polarization label; row 0 carries +1/2, row 1 carries -1/2.
enum class Pol : int { Up = 0, Down = 1 };

inline constexpr std::array<Pol, 2> kPolarizations{Pol::Up, Pol::Down};

inline double pol_value(Pol s)
{
    return s == Pol::Up ? 0.5 : -0.5;
}

//! Eigenspinor of n.sigma/2 in the chart regular away from n = -e3.
inline PauliSpinor common_spinor(const Vec3& n, Pol s)
{
    if (std::abs(n.norm() - 1.0) > 1e-12) throw DomainError("polarization direction must be a unit vector");
    double c = 1.0 + n[2];
    if (!(c > Conventions::pole_epsilon)) throw PoleError("polarization chart singular at n = -e3");
    double a = std::sqrt(c / 2.0);
    PauliSpinor x;
    if (s == Pol::Up) {
        x << a, a * cplx(n[0], n[1]) / c;
    } else {
        x << a * cplx(-n[0], n[1]) / c, a;
    }
    return x;
}

//! eta = i sigma_2 xi^*.
inline PauliSpinor conjugate_spinor(const PauliSpinor& xi)
{
    return I * pauli(1) * xi.conjugate();
}

inline void check_helicity_chart(const Vec3& p)
{
    double norm = p.norm();
    if (norm == 0.0) throw DomainError("helicity is undefined at zero momentum");
    if (!(norm + p[2] > Conventions::pole_epsilon * norm)) {
        throw PoleError("helicity chart singular on the negative p3 axis");
    }
}

inline PauliSpinor helicity_spinor(const Momentum& q, Pol s)
{
    check_helicity_chart(q.p());
    return common_spinor(q.p() / q.norm(), s);
}

/*!
 * Common (fixed direction) or helicity polarization basis.
 *
 * Supplies xi_sigma(p), eta_sigma(p), the matrices Sigma_i(p) and the
 * connection Omega_i(p) used by covariant momentum derivatives.
 */
class PolarizationBasis {
  public:
    enum class Kind { Common, Helicity };

    static PolarizationBasis common(const Vec3& n = Vec3::UnitZ())
    {
        common_spinor(n, Pol::Up);
        return PolarizationBasis(Kind::Common, n);
    }
    static PolarizationBasis helicity() { return PolarizationBasis(Kind::Helicity, Vec3::UnitZ()); }

    Kind kind() const { return kind_; }
    const Vec3& direction() const { return n_; }
    std::string name() const { return kind_ == Kind::Common ? "common" : "helicity"; }

    PauliSpinor xi(const Momentum& q, Pol s) const
    {
        return kind_ == Kind::Common ? common_spinor(n_, s) : helicity_spinor(q, s);
    }
    PauliSpinor eta(const Momentum& q, Pol s) const { return conjugate_spinor(xi(q, s)); }

    //! Columns are xi_{+1/2}(p), xi_{-1/2}(p).
    Mat2 frame(const Momentum& q) const
    {
        Mat2 f;
        f.col(0) = xi(q, Pol::Up);
        f.col(1) = xi(q, Pol::Down);
        return f;
    }

    Triple<Mat2> sigma_matrices(const Momentum& q) const
    {
        if (kind_ == Kind::Helicity) return helicity_sigma(q.p());
        Mat2 f = frame(q);
        return {f.adjoint() * pauli(0) * f, f.adjoint() * pauli(1) * f, f.adjoint() * pauli(2) * f};
    }

    Triple<Mat2> omega(const Momentum& q) const
    {
        if (kind_ == Kind::Helicity) return helicity_omega(q.p());
        return {Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
    }

    //! Omega from fourth-order central differences of the frame.
    Triple<Mat2> omega_fd(const Momentum& q) const
    {
        double h = 1e-3 * std::max(q.norm(), 1e-2 * q.mass());
        Mat2 fa = frame(q).adjoint();
        Triple<Mat2> out;
        for (int i = 0; i < 3; ++i) {
            Mat2 d = (8.0 * (frame(q.shifted(i, h)) - frame(q.shifted(i, -h)))
                      - (frame(q.shifted(i, 2 * h)) - frame(q.shifted(i, -2 * h))))
                / (12.0 * h);
            out[i] = fa * d;
        }
        return out;
    }

    static Triple<Mat2> helicity_sigma(const Vec3& p)
    {
        check_helicity_chart(p);
        double n = p.norm();
        const Mat2& s1 = pauli(0);
        const Mat2& s2 = pauli(1);
        const Mat2& s3 = pauli(2);
        Mat2 transverse = p[0] * s1 + p[1] * s2;
        double d = n * (n + p[2]);
        return {p[0] / n * s3 - p[0] * transverse / d + s1,
                p[1] / n * s3 - p[1] * transverse / d + s2,
                p[2] / n * s3 - transverse / n};
    }

    static Triple<Mat2> helicity_omega(const Vec3& p)
    {
        check_helicity_chart(p);
        double n = p.norm();
        double n2 = n * n;
        double d = 2.0 * n2 * (n + p[2]);
        const Mat2& s1 = pauli(0);
        const Mat2& s2 = pauli(1);
        const Mat2& s3 = pauli(2);
        Mat2 o1 = (-I / d) * (p[0] * p[1] * s1 + n * p[1] * s3 + (n * p[2] + p[1] * p[1] + p[2] * p[2]) * s2);
        Mat2 o2 = (I / d) * (p[0] * p[1] * s2 + n * p[0] * s3 + (n * p[2] + p[0] * p[0] + p[2] * p[2]) * s1);
        Mat2 o3 = (I / (2.0 * n2)) * (p[0] * s2 - p[1] * s1);
        return {o1, o2, o3};
    }

  private:
    PolarizationBasis(Kind k, const Vec3& n) : kind_(k), n_(n) {}

    Kind kind_;
    Vec3 n_;
};

}  // namespace dirac
