// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "momentum_operators.hpp"

namespace dirac {

using MatrixField4 = std::function<Mat4(const Momentum&)>;

struct AssociatedPair {
    Mat2 particle;
    Mat2 antiparticle;
};

namespace detail {
inline Mat4 rest_up_frame(const PolarizationBasis& basis, const Momentum& q)
{
    // columns 0,1: u0_{+1/2}, u0_{-1/2}; stored in a 4x4 for convenience
    Mat4 f = Mat4::Zero();
    for (Pol s : kPolarizations) f.col(static_cast<int>(s)) = rest_spinors(basis, q, s).first;
    return f;
}
inline Mat4 rest_down_frame(const PolarizationBasis& basis, const Momentum& q)
{
    Mat4 f = Mat4::Zero();
    for (Pol s : kPolarizations) f.col(static_cast<int>(s)) = rest_spinors(basis, q, s).second;
    return f;
}
inline Mat2 corner(const Mat4& m)
{
    return m.topLeftCorner<2, 2>();
}
}  // namespace detail

/*!
 * Diagonal matrix elements of a momentum-space operator between
 * particle spinors and between antiparticle spinors.
 */
inline AssociatedPair matrix_elements_diag(const MatrixField4& a, const Momentum& q, const PolarizationBasis& basis)
{
    double f = q.mass() / q.energy();
    Mat4 l = boost_for_momentum(q);
    Mat4 c = charge_conjugation();
    Mat4 u0 = detail::rest_up_frame(basis, q);
    Mat2 plus = f * detail::corner(u0.adjoint() * l * a(q) * l * u0);
    Mat2 minus = f * detail::corner(u0.adjoint() * l * c * a(q.flipped()).transpose() * c * l * u0);
    return {plus, minus};
}

struct OscillatingPair {
    //! rows: particle label, columns: antiparticle label; phase e^{2iEt}
    Mat2 plus_minus;
    //! rows: antiparticle label, columns: particle label; phase e^{-2iEt}
    Mat2 minus_plus;
};

inline OscillatingPair matrix_elements_offdiag(const MatrixField4& a, const Momentum& q, double t,
                                               const PolarizationBasis& basis)
{
    double e = q.energy();
    double f = q.mass() / e;
    Momentum mq = q.flipped();
    Mat4 l = boost_for_momentum(q);
    Mat4 lm = boost_for_momentum(mq);
    Mat4 u0 = detail::rest_up_frame(basis, q);
    Mat4 v0 = detail::rest_down_frame(basis, mq);
    Mat4 av = a(q);
    cplx phase = std::exp(2.0 * I * e * t);
    Mat2 pm = f * phase * detail::corner(u0.adjoint() * l * av * lm * v0);
    Mat2 mp = f * std::conj(phase) * detail::corner(v0.adjoint() * lm * av * l * u0);
    return {pm, mp};
}

//! Two-component momentum-space wave function with optional analytic gradient.
struct WaveSpinor {
    std::function<PauliSpinor(const Vec3&)> value;
    std::function<std::array<PauliSpinor, 3>(const Vec3&)> gradient;

    PauliSpinor operator()(const Vec3& p) const { return value(p); }
    bool has_gradient() const { return static_cast<bool>(gradient); }
};

//! Step used by finite-difference momentum derivatives.
inline double fd_step(const Vec3& p, double m)
{
    return 1e-3 * std::max(p.norm(), 1e-2 * m);
}

/*!
 * Fourth-order central difference, Richardson-extrapolated once.
 */
template <class F>
auto central_derivative(const F& f, const Vec3& p, int axis, double h)
{
    auto d4 = [&](double s) {
        Vec3 a = p, b = p, c = p, d = p;
        a[axis] += s;
        b[axis] -= s;
        c[axis] += 2 * s;
        d[axis] -= 2 * s;
        return ((8.0 * (f(a) - f(b)) - (f(c) - f(d))) / (12.0 * s)).eval();
    };
    auto coarse = d4(h);
    auto fine = d4(h / 2);
    return ((16.0 * fine - coarse) / 15.0).eval();
}

inline std::array<PauliSpinor, 3> gradient_of(const WaveSpinor& alpha, const Vec3& p, double m)
{
    if (alpha.has_gradient()) return alpha.gradient(p);
    double h = fd_step(p, m);
    std::array<PauliSpinor, 3> g;
    for (int i = 0; i < 3; ++i) g[i] = central_derivative(alpha.value, p, i, h);
    return g;
}

/*!
 * Passive-mode operator acting on wave spinors:
 * (A alpha)(p) = M(p) alpha(p) + sum_i D_i(p) (d_i + Omega_i(p)) alpha(p).
 */
struct AssociatedOperator {
    std::string name;
    PolarizationBasis basis = PolarizationBasis::common();
    std::function<Mat2(const Momentum&)> multiplicative;
    std::function<Triple<Mat2>(const Momentum&)> derivative;
    //! relation between antiparticle and particle operators, A^c = sign_c * A
    int sign_c = 1;

    bool is_multiplicative() const { return !derivative; }
    Mat2 mult(const Momentum& q) const { return multiplicative ? multiplicative(q) : Mat2::Zero(); }
    Triple<Mat2> deriv(const Momentum& q) const
    {
        return derivative ? derivative(q) : Triple<Mat2>{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
    }
};

inline PauliSpinor apply_associated(const AssociatedOperator& op, const WaveSpinor& alpha, const Momentum& q)
{
    PauliSpinor a = alpha(q.p());
    PauliSpinor out = op.mult(q) * a;
    if (!op.is_multiplicative()) {
        auto grad = gradient_of(alpha, q.p(), q.mass());
        Triple<Mat2> d = op.deriv(q);
        Triple<Mat2> om = op.basis.omega(q);
        for (int i = 0; i < 3; ++i) out += d[i] * (grad[i] + om[i] * a);
    }
    return out;
}

//! Lazily evaluated A alpha.
inline WaveSpinor applied(const AssociatedOperator& op, const WaveSpinor& alpha, double m)
{
    return WaveSpinor{[op, alpha, m](const Vec3& p) { return apply_associated(op, alpha, Momentum(p, m)); }, {}};
}

inline PauliSpinor commutator_action(const AssociatedOperator& a, const AssociatedOperator& b,
                                     const WaveSpinor& alpha, const Momentum& q)
{
    double m = q.mass();
    return apply_associated(a, applied(b, alpha, m), q) - apply_associated(b, applied(a, alpha, m), q);
}

//! Residual of [A,B] alpha = C alpha at q, scaled by max(1, |C alpha|).
inline double commutator_residual(const AssociatedOperator& a, const AssociatedOperator& b,
                                  const AssociatedOperator& c, const WaveSpinor& alpha, const Momentum& q)
{
    PauliSpinor lhs = commutator_action(a, b, alpha, q);
    PauliSpinor rhs = apply_associated(c, alpha, q);
    return residual(lhs, rhs);
}

//! Pointwise [A,B] for multiplicative operators.
inline Mat2 multiplicative_commutator(const AssociatedOperator& a, const AssociatedOperator& b, const Momentum& q)
{
    if (!a.is_multiplicative() || !b.is_multiplicative()) {
        throw std::invalid_argument("structural commutator needs multiplicative operators");
    }
    Mat2 x = a.mult(q);
    Mat2 y = b.mult(q);
    return x * y - y * x;
}

using ScalarField = std::function<cplx(const Momentum&)>;

inline AssociatedOperator operator+(const AssociatedOperator& a, const AssociatedOperator& b)
{
    AssociatedOperator out{a.name + "+" + b.name, a.basis, {}, {}, a.sign_c};
    if (a.multiplicative || b.multiplicative) {
        out.multiplicative = [a, b](const Momentum& q) { return (a.mult(q) + b.mult(q)).eval(); };
    }
    if (a.derivative || b.derivative) {
        out.derivative = [a, b](const Momentum& q) {
            Triple<Mat2> x = a.deriv(q);
            Triple<Mat2> y = b.deriv(q);
            for (int i = 0; i < 3; ++i) x[i] += y[i];
            return x;
        };
    }
    return out;
}

inline AssociatedOperator scaled(const ScalarField& f, const AssociatedOperator& a)
{
    AssociatedOperator out{a.name, a.basis, {}, {}, a.sign_c};
    if (a.multiplicative) out.multiplicative = [f, a](const Momentum& q) { return (f(q) * a.mult(q)).eval(); };
    if (a.derivative) {
        out.derivative = [f, a](const Momentum& q) {
            Triple<Mat2> x = a.deriv(q);
            cplx c = f(q);
            for (auto& d : x) d *= c;
            return x;
        };
    }
    return out;
}

inline AssociatedOperator scaled(cplx c, const AssociatedOperator& a)
{
    return scaled([c](const Momentum&) { return c; }, a);
}

//! sum_k c_k(p) A_k.
inline AssociatedOperator combination(const std::vector<std::pair<ScalarField, AssociatedOperator>>& terms)
{
    if (terms.empty()) throw std::invalid_argument("empty combination");
    AssociatedOperator out = scaled(terms[0].first, terms[0].second);
    for (std::size_t k = 1; k < terms.size(); ++k) out = out + scaled(terms[k].first, terms[k].second);
    return out;
}

inline AssociatedOperator zero_operator(const PolarizationBasis& basis)
{
    return AssociatedOperator{"0", basis, [](const Momentum&) { return Mat2::Zero().eval(); }, {}, 1};
}

namespace assoc {

inline Triple<Mat2> no_derivative()
{
    return {Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
}

inline AssociatedOperator spin(const PolarizationBasis& b, int i)
{
    return {"S" + std::to_string(i + 1), b, [b, i](const Momentum& q) { return (0.5 * b.sigma_matrices(q)[i]).eval(); },
            {}, -1};
}

inline AssociatedOperator spin_plus(const PolarizationBasis& b, int i)
{
    return {"S(+)" + std::to_string(i + 1), b,
            [b, i](const Momentum& q) {
                Real3 t = theta_tensor(q);
                Triple<Mat2> s = b.sigma_matrices(q);
                return (0.5 * (t(i, 0) * s[0] + t(i, 1) * s[1] + t(i, 2) * s[2])).eval();
            },
            {}, -1};
}

inline AssociatedOperator spin_minus(const PolarizationBasis& b, int i)
{
    return {"S(-)" + std::to_string(i + 1), b,
            [b, i](const Momentum& q) {
                Real3 t = theta_inverse(q);
                Triple<Mat2> s = b.sigma_matrices(q);
                return (0.5 * (t(i, 0) * s[0] + t(i, 1) * s[1] + t(i, 2) * s[2])).eval();
            },
            {}, -1};
}

inline AssociatedOperator polarization(const PolarizationBasis& b)
{
    return {"Ws", b, [](const Momentum&) { return (0.5 * pauli(2)).eval(); }, {}, -1};
}

inline AssociatedOperator energy(const PolarizationBasis& b)
{
    return {"H", b, [](const Momentum& q) { return (q.energy() * Mat2::Identity()).eval(); }, {}, -1};
}

inline AssociatedOperator momentum(const PolarizationBasis& b, int i)
{
    return {"P" + std::to_string(i + 1), b, [i](const Momentum& q) { return (q[i] * Mat2::Identity()).eval(); }, {},
            -1};
}

inline AssociatedOperator velocity(const PolarizationBasis& b, int i)
{
    return {"V" + std::to_string(i + 1), b,
            [i](const Momentum& q) { return (q[i] / q.energy() * Mat2::Identity()).eval(); }, {}, 1};
}

//! Covariant derivative d_i + Omega_i.
inline AssociatedOperator covariant_derivative(const PolarizationBasis& b, int i)
{
    return {"D" + std::to_string(i + 1), b, {},
            [i](const Momentum&) {
                Triple<Mat2> d = no_derivative();
                d[i] = Mat2::Identity();
                return d;
            },
            1};
}

inline AssociatedOperator position(const PolarizationBasis& b, int i)
{
    return {"X" + std::to_string(i + 1), b, {},
            [i](const Momentum&) {
                Triple<Mat2> d = no_derivative();
                d[i] = I * Mat2::Identity();
                return d;
            },
            1};
}

inline AssociatedOperator orbital(const PolarizationBasis& b, int i)
{
    return {"L" + std::to_string(i + 1), b, {},
            [i](const Momentum& q) {
                Triple<Mat2> d = no_derivative();
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) d[k] += (-I * double(levi_civita(i, j, k)) * q[j]) * Mat2::Identity();
                return d;
            },
            -1};
}

inline AssociatedOperator boost_orbital(const PolarizationBasis& b, int i)
{
    return {"Ko" + std::to_string(i + 1), b,
            [i](const Momentum& q) { return (I * q[i] / (2.0 * q.energy()) * Mat2::Identity()).eval(); },
            [i](const Momentum& q) {
                Triple<Mat2> d = no_derivative();
                d[i] = I * q.energy() * Mat2::Identity();
                return d;
            },
            -1};
}

inline AssociatedOperator boost_spin(const PolarizationBasis& b, int i)
{
    return {"Ks" + std::to_string(i + 1), b,
            [b, i](const Momentum& q) {
                Triple<Mat2> s = b.sigma_matrices(q);
                Mat2 out = Mat2::Zero();
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) out += double(levi_civita(i, j, k)) * q[j] * s[k];
                return (out / (2.0 * (q.energy() + q.mass()))).eval();
            },
            {}, -1};
}

inline AssociatedOperator pl_time(const PolarizationBasis& b)
{
    return {"W0", b,
            [b](const Momentum& q) {
                Triple<Mat2> s = b.sigma_matrices(q);
                return (0.5 * (q[0] * s[0] + q[1] * s[1] + q[2] * s[2])).eval();
            },
            {}, 1};
}

inline AssociatedOperator pl_space(const PolarizationBasis& b, int i)
{
    AssociatedOperator w = scaled([](const Momentum& q) { return cplx(q.mass()); }, spin_plus(b, i));
    w.name = "W" + std::to_string(i + 1);
    w.sign_c = 1;
    return w;
}

namespace detail {
inline AssociatedOperator spin_offset_position(const PolarizationBasis& b, int i, std::function<double(const Momentum&)> f,
                                               std::string name)
{
    AssociatedOperator x = position(b, i);
    x.name = std::move(name);
    x.multiplicative = [b, i, f](const Momentum& q) {
        Triple<Mat2> s = b.sigma_matrices(q);
        Mat2 out = Mat2::Zero();
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out += double(levi_civita(i, j, k)) * q[j] * 0.5 * s[k];
        return (f(q) * out).eval();
    };
    return x;
}
}  // namespace detail

inline AssociatedOperator pryce_c_position(const PolarizationBasis& b, int i)
{
    return detail::spin_offset_position(
        b, i, [](const Momentum& q) { return 1.0 / (q.energy() * (q.energy() + q.mass())); },
        "Xc" + std::to_string(i + 1));
}

inline AssociatedOperator pryce_d_position(const PolarizationBasis& b, int i)
{
    return detail::spin_offset_position(
        b, i, [](const Momentum& q) { return -1.0 / (q.mass() * (q.energy() + q.mass())); },
        "Xd" + std::to_string(i + 1));
}

//! (m/E^3) S^(+).
inline AssociatedOperator pryce_c_y(const PolarizationBasis& b, int i)
{
    AssociatedOperator y =
        scaled([](const Momentum& q) { return cplx(q.mass() / std::pow(q.energy(), 3)); }, spin_plus(b, i));
    y.name = "Yc" + std::to_string(i + 1);
    return y;
}

//! S^(+) / (m E).
inline AssociatedOperator pryce_d_y(const PolarizationBasis& b, int i)
{
    AssociatedOperator y =
        scaled([](const Momentum& q) { return cplx(1.0 / (q.mass() * q.energy())); }, spin_plus(b, i));
    y.name = "Yd" + std::to_string(i + 1);
    return y;
}

}  // namespace assoc

// ---------------------------------------------------------------------------
// Wigner little group

inline Vec4 four_momentum(const Momentum& q)
{
    return Vec4(q.energy(), q[0], q[1], q[2]);
}

//! p' = Lambda^{-1} p for a precomputed inverse vector transformation.
inline Momentum transformed_momentum(const Real4& inverse, const Momentum& q)
{
    Vec4 k = inverse * four_momentum(q);
    return Momentum(k.tail<3>(), q.mass());
}

//! p' = Lambda(lambda)^{-1} p.
inline Momentum transformed_momentum(const Mat4& lambda, const Momentum& q)
{
    return transformed_momentum(Real4(lorentz_of(lambda).inverse()), q);
}

inline void require_sl2c(const Mat4& lambda)
{
    if (!is_sl2c_block(lambda)) throw DomainError("transformation is not block-structured in SL(2,C)");
}

/*!
 * Fixed SL(2,C) element with its vector representation inverted once,
 * for repeated evaluation over many momenta.
 */
class LittleGroupAction {
  public:
    explicit LittleGroupAction(const Mat4& lambda) : lambda_(lambda)
    {
        require_sl2c(lambda);
        inverse_ = lorentz_of(lambda).inverse();
    }

    Momentum transformed(const Momentum& q) const { return transformed_momentum(inverse_, q); }

    //! l_p^{-1} lambda l_{p'}.
    Mat4 little_group(const Momentum& q) const
    {
        return boost_for_momentum(q.flipped()) * lambda_ * boost_for_momentum(transformed(q));
    }

    Mat2 d_matrix(const Momentum& q, const PolarizationBasis& basis) const
    {
        Momentum qp = transformed(q);
        Mat2 w = (boost_for_momentum(q.flipped()) * lambda_ * boost_for_momentum(qp)).topLeftCorner<2, 2>();
        return basis.frame(q).adjoint() * w * basis.frame(qp);
    }

  private:
    Mat4 lambda_;
    Real4 inverse_;
};

inline Mat4 wigner_little_group(const Mat4& lambda, const Momentum& q)
{
    return LittleGroupAction(lambda).little_group(q);
}

inline Mat2 d_matrix(const Mat4& lambda, const Momentum& q, const PolarizationBasis& basis)
{
    return LittleGroupAction(lambda).d_matrix(q, basis);
}

/*!
 * Induced-representation action on a particle wave spinor; `a` holds
 * the contravariant translation a^mu.
 */
inline WaveSpinor wigner_transform(const WaveSpinor& alpha, const Mat4& lambda, const Vec4& a,
                                   const PolarizationBasis& basis, double m)
{
    LittleGroupAction act(lambda);
    return WaveSpinor{[alpha, act, a, basis, m](const Vec3& p) {
                          Momentum q(p, m);
                          Momentum qp = act.transformed(q);
                          double ap = a[0] * q.energy() - a.tail<3>().dot(p);
                          double f = std::sqrt(qp.energy() / q.energy());
                          return (f * std::exp(I * ap) * act.d_matrix(q, basis) * alpha(qp.p())).eval();
                      },
                      {}};
}

// ---------------------------------------------------------------------------
// Oscillating kernels

struct OscillatingKernel {
    std::string name;
    int components = 1;
    //! closed form at (t, p) for the given component
    std::function<Mat2(int, double, const Momentum&, const PolarizationBasis&)> eval;
    //! momentum-space parent operator of the given component
    std::function<Mat4(int, const Momentum&)> parent;

    Mat2 operator()(int component, double t, const Momentum& q, const PolarizationBasis& basis) const
    {
        if (component < 0 || component >= components) throw std::out_of_range("kernel component out of range");
        return eval(component, t, q, basis);
    }
    static double frequency(const Momentum& q) { return 2.0 * q.energy(); }
};

namespace detail {
//! B_{s s'} = xi_s(p)^dagger M eta_{s'}(-p).
inline Mat2 cross_bilinear(const PolarizationBasis& basis, const Momentum& q, const Mat2& m)
{
    Momentum mq = q.flipped();
    Mat2 eta;
    for (Pol s : kPolarizations) eta.col(static_cast<int>(s)) = basis.eta(mq, s);
    return basis.frame(q).adjoint() * m * eta;
}
inline cplx osc_phase(double t, const Momentum& q)
{
    return std::exp(2.0 * I * q.energy() * t);
}
}  // namespace detail

inline const std::vector<OscillatingKernel>& kernel_catalog()
{
    using detail::cross_bilinear;
    using detail::osc_phase;
    static const std::vector<OscillatingKernel> catalog{
        {"delta_x_osc", 3,
         [](int i, double t, const Momentum& q, const PolarizationBasis& b) {
             Real3 ti = theta_inverse(q);
             Mat2 m = ti(i, 0) * pauli(0) + ti(i, 1) * pauli(1) + ti(i, 2) * pauli(2);
             return (-I * osc_phase(t, q) / (2.0 * q.energy()) * cross_bilinear(b, q, m)).eval();
         },
         [](int i, const Momentum& q) { return pryce_e_position_offset(q)[i]; }},
        {"axial_current_osc", 3,
         [](int i, double t, const Momentum& q, const PolarizationBasis& b) {
             Mat2 m = Mat2::Zero();
             for (int j = 0; j < 3; ++j)
                 for (int k = 0; k < 3; ++k) m += double(levi_civita(i, j, k)) * q[j] * pauli(k);
             return (I * osc_phase(t, q) / q.energy() * cross_bilinear(b, q, m)).eval();
         },
         [](int i, const Momentum&) { return (2.0 * spin_matrix(i)).eval(); }},
        {"fw_generator_osc", 3,
         [](int i, double t, const Momentum& q, const PolarizationBasis& b) {
             Real3 th = theta_tensor(q);
             Mat2 m = th(i, 0) * pauli(0) + th(i, 1) * pauli(1) + th(i, 2) * pauli(2);
             return (I * osc_phase(t, q) * q.mass() / q.energy() * cross_bilinear(b, q, m)).eval();
         },
         [](int i, const Momentum&) { return (-I * gamma(i + 1)).eval(); }},
        {"scalar_charge_osc", 1,
         [](int, double t, const Momentum& q, const PolarizationBasis& b) {
             return (osc_phase(t, q) / q.energy() * cross_bilinear(b, q, sigma_dot(q.p()))).eval();
         },
         [](int, const Momentum&) { return gamma(0); }},
        {"pseudoscalar_osc", 1,
         [](int, double t, const Momentum& q, const PolarizationBasis& b) {
             return (-osc_phase(t, q) * cross_bilinear(b, q, Mat2::Identity())).eval();
         },
         [](int, const Momentum&) { return (gamma(0) * gamma5()).eval(); }},
        {"chakrabarti_osc", 3,
         [](int i, double t, const Momentum& q, const PolarizationBasis& b) {
             Mat2 m = Mat2::Zero();
             for (int j = 0; j < 3; ++j)
                 for (int k = 0; k < 3; ++k) m += double(levi_civita(i, j, k)) * q[j] * pauli(k);
             return (I * osc_phase(t, q) / q.mass() * cross_bilinear(b, q, m)).eval();
         },
         [](int i, const Momentum& q) { return chakrabarti_spin(q)[i]; }},
        {"axial_charge_osc", 1,
         [](int, double t, const Momentum& q, const PolarizationBasis& b) {
             return (-osc_phase(t, q) * q.mass() / q.energy() * cross_bilinear(b, q, Mat2::Identity())).eval();
         },
         [](int, const Momentum&) { return gamma5(); }},
    };
    return catalog;
}

inline const OscillatingKernel& zitter_kernel(const std::string& name)
{
    for (const auto& k : kernel_catalog())
        if (k.name == name) return k;
    throw std::invalid_argument("unknown kernel: " + name);
}

}  // namespace dirac
