// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dirac/types.hpp"

namespace testing_support {

//! Momenta drawn with the standard library engine, log-uniform in |p|/m over [0.01, 10].
inline std::vector<dirac::Momentum> momenta(unsigned seed, int n, double m = 1.0)
{
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> logr(std::log(0.01), std::log(10.0));
    std::vector<dirac::Momentum> out;
    for (int k = 0; k < n; ++k) {
        dirac::Vec3 d(gauss(eng), gauss(eng), gauss(eng));
        out.emplace_back(dirac::Vec3(m * std::exp(logr(eng)) * d.normalized()), m);
    }
    return out;
}

template <class A, class B>
double gap(const A& a, const B& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testing_support
