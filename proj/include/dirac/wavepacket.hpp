// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "associated.hpp"
#include "quadrature.hpp"

namespace dirac {

/*!
 * G(nu, rho; mu) = int_0^inf p^{2nu-1} (p^2+m^2)^{rho-1} e^{-mu p} dp
 * by tanh-sinh quadrature near the origin and Gauss-Kronrod on the tail.
 */
inline double g_integral(double nu, double rho, double mu, double m)
{
    if (!(mu > 0.0)) throw DomainError("G integral diverges for non-positive decay rate");
    if (!(nu > 0.0)) throw DomainError("G integral diverges at the origin for nu <= 0");
    if (m == 0.0 && !(2.0 * nu + 2.0 * rho - 2.0 > 0.0)) throw DomainError("G integral diverges at the origin");
    auto f = [=](double p) {
        if (p <= 0.0) return 0.0;
        double lg = (2.0 * nu - 1.0) * std::log(p) + 2.0 * (rho - 1.0) * std::log(std::hypot(p, m)) - mu * p;
        return std::exp(lg);
    };
    double err = 0.0;
    double scale = std::max(1.0, (2.0 * nu + 2.0 * rho) / mu);
    boost::math::quadrature::tanh_sinh<double> head;
    double a = head.integrate(f, 0.0, scale, 1e-14, &err);
    double b = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, scale, std::numeric_limits<double>::infinity(), 20, 1e-14, &err);
    return a + b;
}

/*!
 * Isotropic profile phi(p) = N p^{q-3/2} e^{-gamma p}, q = gamma * pbar.
 */
class IsotropicProfile {
  public:
    IsotropicProfile(double gamma, double pbar, double m) : gamma_(gamma), pbar_(pbar), m_(m)
    {
        if (!(gamma > 0.0) || !(pbar > 0.0)) throw std::invalid_argument("gamma and pbar must be positive");
        if (!(m > 0.0)) throw MassError("mass must be positive");
        if (!(gamma * pbar > 1.0)) throw std::invalid_argument("gamma * pbar must exceed 1");
        double q = gamma * pbar;
        log_norm_ = q * std::log(2.0 * gamma) - std::log(2.0) - 0.5 * (std::log(std::numbers::pi) + std::lgamma(2.0 * q));
    }

    double gamma() const { return gamma_; }
    double pbar() const { return pbar_; }
    double mass() const { return m_; }
    double q() const { return gamma_ * pbar_; }
    double norm_factor() const { return std::exp(log_norm_); }
    double p_max() const { return (q() + 40.0) / gamma_; }

    double radial(double p) const
    {
        if (p <= 0.0) return 0.0;
        return std::exp(log_norm_ + (q() - 1.5) * std::log(p) - gamma_ * p);
    }
    double radial_derivative(double p) const
    {
        if (p <= 0.0) return 0.0;
        return radial(p) * ((q() - 1.5) / p - gamma_);
    }

    double operator()(const Vec3& p) const { return radial(p.norm()); }
    Vec3 gradient(const Vec3& p) const
    {
        double r = p.norm();
        if (r == 0.0) return Vec3::Zero();
        return radial_derivative(r) * p / r;
    }

    // closed forms
    double mean_momentum() const { return pbar_; }
    double momentum_dispersion() const { return pbar_ / (2.0 * gamma_); }
    double mean_energy_squared() const { return pbar_ * pbar_ + m_ * m_ + pbar_ / (2.0 * gamma_); }
    double position_dispersion() const { return gamma_ * gamma_ / (6.0 * (q() - 1.0)); }
    double cartesian_momentum_second_moment() const { return (pbar_ * pbar_ + pbar_ / (2.0 * gamma_)) / 3.0; }

    double g_moment(double nu, double rho) const
    {
        double n2 = std::exp(2.0 * log_norm_);
        return 4.0 * std::numbers::pi * n2 * g_integral(nu, rho, 2.0 * gamma_, m_);
    }
    double mean_energy() const { return g_moment(q(), 1.5); }
    double mean_velocity() const { return g_moment(q() + 0.5, 0.5); }
    double mean_velocity_squared() const { return g_moment(q() + 1.0, 0.0); }

  private:
    double gamma_;
    double pbar_;
    double m_;
    double log_norm_;
};

/*!
 * One-particle packet alpha(p) = phi(p) e^{-i x0.p} (cos(theta_s/2), sin(theta_s/2)).
 */
struct PacketProfile {
    std::function<double(const Vec3&)> phi;
    std::function<Vec3(const Vec3&)> grad_phi;
    double theta_s = 0.0;
    Vec3 x0 = Vec3::Zero();
    PolarizationBasis basis = PolarizationBasis::common();
    double mass = 1.0;
    double p_max = 40.0;

    static PacketProfile isotropic(const IsotropicProfile& iso, double theta_s = 0.0, const Vec3& x0 = Vec3::Zero())
    {
        if (theta_s < 0.0 || theta_s > std::numbers::pi) throw std::invalid_argument("theta_s must lie in [0, pi]");
        PacketProfile p;
        p.phi = [iso](const Vec3& k) { return iso(k); };
        p.grad_phi = [iso](const Vec3& k) { return iso.gradient(k); };
        p.theta_s = theta_s;
        p.x0 = x0;
        p.mass = iso.mass();
        p.p_max = iso.p_max();
        return p;
    }

    PauliSpinor polarization() const
    {
        PauliSpinor c;
        c << std::cos(theta_s / 2), std::sin(theta_s / 2);
        return c;
    }

    WaveSpinor wave_spinor() const
    {
        WaveSpinor w;
        PauliSpinor chi = polarization();
        Vec3 x = x0;
        auto f = phi;
        w.value = [f, chi, x](const Vec3& p) { return (f(p) * std::exp(-I * x.dot(p)) * chi).eval(); };
        if (grad_phi) {
            auto g = grad_phi;
            w.gradient = [f, g, chi, x](const Vec3& p) {
                cplx ph = std::exp(-I * x.dot(p));
                double v = f(p);
                Vec3 d = g(p);
                std::array<PauliSpinor, 3> out;
                for (int i = 0; i < 3; ++i) out[i] = ((d[i] - I * x[i] * v) * ph * chi).eval();
                return out;
            };
        }
        return w;
    }
};

inline const std::vector<std::string>& observable_names()
{
    static const std::vector<std::string> names{"H",  "P",  "P1", "P2", "P3", "V",  "V1", "V2", "V3", "X1", "X2",
                                                "X3", "S1", "S2", "S3", "Ws", "L1", "L2", "L3"};
    return names;
}

inline AssociatedOperator observable(const std::string& name, const PolarizationBasis& b)
{
    auto index = [&](char c) { return int(c - '1'); };
    if (name == "H") return assoc::energy(b);
    if (name == "P") {
        return {"P", b, [](const Momentum& q) { return (q.norm() * Mat2::Identity()).eval(); }, {}, -1};
    }
    if (name == "V") {
        return {"V", b, [](const Momentum& q) { return (q.norm() / q.energy() * Mat2::Identity()).eval(); }, {}, 1};
    }
    if (name == "Ws") return assoc::polarization(b);
    if (name.size() == 2 && name[1] >= '1' && name[1] <= '3') {
        int i = index(name[1]);
        switch (name[0]) {
        case 'P': return assoc::momentum(b, i);
        case 'V': return assoc::velocity(b, i);
        case 'X': return assoc::position(b, i);
        case 'S': return assoc::spin(b, i);
        case 'L': return assoc::orbital(b, i);
        default: break;
        }
    }
    throw std::invalid_argument("unknown observable: " + name);
}

struct Statistic {
    std::string name;
    double expectation = 0.0;
    double second_moment = 0.0;
    double dispersion = 0.0;
    double uncertainty = 0.0;
    //! normalization defect of the packet on the grid
    double quadrature_error = 0.0;
    bool clipped = false;
};

struct StatisticsReport {
    std::vector<Statistic> rows;
    double norm = 0.0;

    const Statistic& at(const std::string& name) const
    {
        for (const auto& r : rows)
            if (r.name == name) return r;
        throw std::out_of_range("no statistic named " + name);
    }
};

/*!
 * Packet values and gradients sampled once on a grid.
 */
class SampledPacket {
  public:
    SampledPacket(const PacketProfile& profile, const QuadratureGrid& grid) : profile_(profile), grid_(grid)
    {
        WaveSpinor w = profile.wave_spinor();
        values_.reserve(grid.size());
        grads_.reserve(grid.size());
        for (const auto& p : grid.nodes) {
            values_.push_back(w(p));
            grads_.push_back(gradient_of(w, p, profile.mass));
        }
    }

    double inner(const std::vector<PauliSpinor>& a, const std::vector<PauliSpinor>& b) const
    {
        std::vector<double> t(a.size());
        for (std::size_t n = 0; n < a.size(); ++n) t[n] = grid_.weights[n] * a[n].dot(b[n]).real();
        return pairwise_sum(t);
    }

    double norm() const { return inner(values_, values_); }

    std::vector<PauliSpinor> apply(const AssociatedOperator& op) const
    {
        std::vector<PauliSpinor> out(values_.size());
        for (std::size_t n = 0; n < values_.size(); ++n) {
            Momentum q(grid_.nodes[n], profile_.mass);
            PauliSpinor r = op.mult(q) * values_[n];
            if (!op.is_multiplicative()) {
                Triple<Mat2> d = op.deriv(q);
                Triple<Mat2> om = op.basis.omega(q);
                for (int i = 0; i < 3; ++i) r += d[i] * (grads_[n][i] + om[i] * values_[n]);
            }
            out[n] = r;
        }
        return out;
    }

    Statistic statistic(const std::string& name, double clip_tol = 1e-10) const
    {
        AssociatedOperator op = observable(name, profile_.basis);
        if (!op.is_multiplicative() && !profile_.grad_phi) {
            throw std::invalid_argument("observable " + name + " needs the profile gradient");
        }
        auto av = apply(op);
        Statistic s;
        s.name = name;
        s.expectation = inner(values_, av);
        s.second_moment = inner(av, av);
        s.dispersion = s.second_moment - s.expectation * s.expectation;
        if (s.dispersion < 0.0 && s.dispersion > -clip_tol) {
            s.dispersion = 0.0;
            s.clipped = true;
        }
        s.uncertainty = std::sqrt(std::max(0.0, s.dispersion));
        s.quadrature_error = std::abs(norm() - 1.0);
        return s;
    }

  private:
    PacketProfile profile_;
    const QuadratureGrid& grid_;
    std::vector<PauliSpinor> values_;
    std::vector<std::array<PauliSpinor, 3>> grads_;
};

inline StatisticsReport expectation_and_dispersion(const PacketProfile& profile, const std::vector<std::string>& names,
                                                   const GridSizes& sizes = {})
{
    QuadratureGrid grid = QuadratureGrid::sphere(profile.p_max, sizes);
    SampledPacket sp(profile, grid);
    StatisticsReport rep;
    rep.norm = sp.norm();
    if (std::abs(rep.norm - 1.0) > 1e-6) throw DomainError("packet is not normalized on the grid");
    for (const auto& n : names) rep.rows.push_back(sp.statistic(n));
    return rep;
}

//! disp X^i(t) = disp X^i + t^2 disp V^i.
inline Vec3 position_dispersion_at_time(const PacketProfile& profile, double t, const GridSizes& sizes = {})
{
    if (t < 0.0) throw std::invalid_argument("time must be non-negative");
    StatisticsReport r = expectation_and_dispersion(profile, {"X1", "X2", "X3", "V1", "V2", "V3"}, sizes);
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        std::string k = std::to_string(i + 1);
        out[i] = r.at("X" + k).dispersion + t * t * r.at("V" + k).dispersion;
    }
    return out;
}

struct RadialStatistics {
    double mean_energy = 0.0;
    double energy_dispersion = 0.0;
    double mean_momentum = 0.0;
    double momentum_dispersion = 0.0;
    double mean_velocity = 0.0;
    double velocity_dispersion = 0.0;
    Vec3 position_dispersion = Vec3::Zero();
};

struct ConeFilterResult {
    double kappa = 0.0;
    //! probability (Delta Omega * kappa)^2 of detecting the packet in the cone
    double probability = 0.0;
    std::function<double(double)> radial_profile;
    RadialStatistics stats;
};

/*!
 * Restriction of a packet to a narrow cone around n.
 */
inline ConeFilterResult cone_filter(const PacketProfile& profile, const Vec3& n, double d_omega, int radial_nodes = 400)
{
    if (std::abs(n.norm() - 1.0) > 1e-12) throw DomainError("cone axis must be a unit vector");
    if (!(d_omega > 0.0)) throw std::invalid_argument("solid angle must be positive");
    Rule1D r = gauss_legendre(radial_nodes, 0.0, profile.p_max);
    auto moment = [&](const std::function<double(double)>& f) {
        std::vector<double> t(r.nodes.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            double p = r.nodes[k];
            double v = profile.phi(p * n);
            t[k] = r.weights[k] * p * p * v * v * f(p);
        }
        return pairwise_sum(t);
    };
    ConeFilterResult out;
    out.kappa = moment([](double) { return 1.0; });
    if (!(out.kappa > 0.0)) throw DomainError("profile vanishes along the cone axis");
    out.probability = std::pow(d_omega * out.kappa, 2);
    double kappa = out.kappa;
    auto phi = profile.phi;
    Vec3 axis = n;
    out.radial_profile = [phi, axis, kappa](double p) { return p * phi(p * axis) / std::sqrt(kappa); };
    double m = profile.mass;
    auto energy = [m](double p) { return std::sqrt(p * p + m * m); };
    RadialStatistics& s = out.stats;
    s.mean_energy = moment(energy) / kappa;
    s.energy_dispersion = moment([&](double p) { return p * p + m * m; }) / kappa - s.mean_energy * s.mean_energy;
    s.mean_momentum = moment([](double p) { return p; }) / kappa;
    s.momentum_dispersion = moment([](double p) { return p * p; }) / kappa - s.mean_momentum * s.mean_momentum;
    s.mean_velocity = moment([&](double p) { return p / energy(p); }) / kappa;
    s.velocity_dispersion =
        moment([&](double p) { return p * p / (p * p + m * m); }) / kappa - s.mean_velocity * s.mean_velocity;
    if (profile.grad_phi) {
        for (int i = 0; i < 3; ++i) {
            std::vector<double> t(r.nodes.size());
            for (std::size_t k = 0; k < t.size(); ++k) {
                double p = r.nodes[k];
                double g = profile.grad_phi(p * n)[i];
                t[k] = r.weights[k] * p * p * g * g;
            }
            s.position_dispersion[i] = pairwise_sum(t) / kappa;
        }
    }
    return out;
}

struct FigureRow {
    double q;
    double first;
    double second;
};

/*!
 * Rows (q, <H>/E(pbar), 2 gamma disp(H)/pbar) for figure 1 and
 * (q, <V>/V(pbar), disp(V)) for figure 2, with m = 1 and gamma = gamma_m.
 * Samples q_min + (q_max - q_min) k / points for k = 1..points.
 */
inline std::vector<FigureRow> figure_data(int which, double q_min, double q_max, int points, double gamma_m = 1.0)
{
    if (which != 1 && which != 2) throw std::invalid_argument("figure must be 1 or 2");
    if (!(q_min >= 1.0) || !(q_max > q_min)) throw std::invalid_argument("need 1 <= q_min < q_max");
    if (points < 1) throw std::invalid_argument("points must be positive");
    if (!(gamma_m > 0.0)) throw std::invalid_argument("gamma_m must be positive");
    const double m = 1.0;
    const double gamma = gamma_m / m;
    std::vector<FigureRow> rows;
    rows.reserve(points);
    for (int k = 1; k <= points; ++k) {
        double q = q_min + (q_max - q_min) * k / points;
        double pbar = q / gamma;
        IsotropicProfile iso(gamma, pbar, m);
        double e = std::sqrt(pbar * pbar + m * m);
        if (which == 1) {
            double h = iso.mean_energy();
            double disp = iso.mean_energy_squared() - h * h;
            rows.push_back({q, h / e, 2.0 * gamma * disp / pbar});
        } else {
            double v = iso.mean_velocity();
            double disp = iso.mean_velocity_squared() - v * v;
            rows.push_back({q, v / (pbar / e), disp});
        }
    }
    return rows;
}

}  // namespace dirac
