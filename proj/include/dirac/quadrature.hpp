// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "types.hpp"

namespace dirac {

//! Pairwise (cascade) summation; ordering fixed by the input order.
template <class T>
T pairwise_sum(std::span<const T> v)
{
    if (v.empty()) return T{};
    if (v.size() <= 8) {
        T acc = v[0];
        for (std::size_t i = 1; i < v.size(); ++i) acc += v[i];
        return acc;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v)
{
    return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/*!
 * Gauss-Legendre rule with n nodes on [a, b] (Newton iteration on P_n).
 */
inline Rule1D gauss_legendre(int n, double a, double b)
{
    if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
    Rule1D r;
    r.nodes.resize(n);
    r.weights.resize(n);
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
        }
        double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.nodes[i] = mid - half * z;
        r.nodes[n - 1 - i] = mid + half * z;
        r.weights[i] = half * w;
        r.weights[n - 1 - i] = half * w;
    }
    return r;
}

struct GridSizes {
    int radial = 160;
    int cos_theta = 32;
    int phi = 64;
};

/*!
 * Product grid over a ball of radius p_max: Gauss-Legendre in |p| and
 * cos(theta), uniform in phi. Weights include the p^2 measure.
 */
struct QuadratureGrid {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    double p_max = 0.0;

    static QuadratureGrid sphere(double p_max, const GridSizes& sizes)
    {
        if (sizes.radial < 1 || sizes.cos_theta < 1 || sizes.phi < 1) {
            throw std::invalid_argument("grid sizes must be positive");
        }
        QuadratureGrid g;
        g.p_max = p_max;
        Rule1D rr = gauss_legendre(sizes.radial, 0.0, p_max);
        Rule1D rc = gauss_legendre(sizes.cos_theta, -1.0, 1.0);
        double dphi = 2.0 * std::numbers::pi / sizes.phi;
        g.nodes.reserve(std::size_t(sizes.radial) * sizes.cos_theta * sizes.phi);
        g.weights.reserve(g.nodes.capacity());
        for (int i = 0; i < sizes.radial; ++i) {
            double p = rr.nodes[i];
            for (int j = 0; j < sizes.cos_theta; ++j) {
                double c = rc.nodes[j];
                double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                for (int k = 0; k < sizes.phi; ++k) {
                    double phi = (k + 0.5) * dphi;
                    g.nodes.emplace_back(p * s * std::cos(phi), p * s * std::sin(phi), p * c);
                    g.weights.push_back(rr.weights[i] * p * p * rc.weights[j] * dphi);
                }
            }
        }
        return g;
    }

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(const F& f) const
    {
        std::vector<double> terms(nodes.size());
        for (std::size_t n = 0; n < nodes.size(); ++n) terms[n] = weights[n] * f(nodes[n]);
        return pairwise_sum(terms);
    }
};

}  // namespace dirac
