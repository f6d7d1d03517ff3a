// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dirac {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using DiracSpinor = Eigen::Matrix<cplx, 4, 1>;
using PauliSpinor = Eigen::Matrix<cplx, 2, 1>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Real3 = Eigen::Matrix3d;
using Real4 = Eigen::Matrix4d;

template <class T>
using Triple = std::array<T, 3>;

inline constexpr cplx I{0.0, 1.0};

//! Fixed conventions: metric signature (+,-,-,-), epsilon^{0123} = -1, hbar = c = 1.
struct Conventions {
    static constexpr std::array<double, 4> metric{1.0, -1.0, -1.0, -1.0};
    static constexpr int epsilon_0123_upper = -1;
    static constexpr double pole_epsilon = 1e-9;
};

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

//! Raised when a polarization chart is evaluated on or near its singular ray.
class PoleError : public DomainError {
  public:
    using DomainError::DomainError;
};

class MassError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

//! Three-momentum with its mass shell.
class Momentum {
  public:
    Momentum(const Vec3& p, double m) : p_(p), m_(m)
    {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw MassError("mass must be positive and finite, got " + std::to_string(m));
        }
    }
    Momentum(double px, double py, double pz, double m) : Momentum(Vec3(px, py, pz), m) {}

    const Vec3& p() const { return p_; }
    double mass() const { return m_; }
    double operator[](int i) const { return p_[i]; }
    double norm() const { return p_.norm(); }
    double energy() const { return std::sqrt(p_.squaredNorm() + m_ * m_); }
    Momentum flipped() const { return Momentum(Vec3(-p_), m_); }
    Momentum shifted(int axis, double h) const
    {
        Vec3 q = p_;
        q[axis] += h;
        return Momentum(q, m_);
    }

  private:
    Vec3 p_;
    double m_;
};

inline int levi_civita(int i, int j, int k)
{
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

inline const Mat2& pauli(int i)
{
    static const std::array<Mat2, 3> s = [] {
        std::array<Mat2, 3> out;
        out[0] << 0.0, 1.0, 1.0, 0.0;
        out[1] << 0.0, -I, I, 0.0;
        out[2] << 1.0, 0.0, 0.0, -1.0;
        return out;
    }();
    return s.at(i);
}

//! Largest entry modulus.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a)
{
    return a.cwiseAbs().maxCoeff();
}

//! Entrywise residual scaled by max(1, |reference|).
template <class A, class B>
double residual(const Eigen::MatrixBase<A>& value, const Eigen::MatrixBase<B>& reference)
{
    double scale = std::max(1.0, max_abs(reference));
    return max_abs(value - reference) / scale;
}

template <class T>
double residual(const Triple<T>& value, const Triple<T>& reference)
{
    double r = 0.0;
    for (int i = 0; i < 3; ++i) r = std::max(r, residual(value[i], reference[i]));
    return r;
}

}  // namespace dirac
