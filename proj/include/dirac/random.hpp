// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numbers>

#include "types.hpp"

namespace dirac {

/*!
 * SplitMix64 generator. Bit-identical on every platform; `split` derives
 * an independent stream.
 */
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    //! Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    SplitMix64 split() { return SplitMix64(next()); }

  private:
    std::uint64_t state_;
};

inline Vec3 random_direction(SplitMix64& rng)
{
    double c = rng.uniform(-1.0, 1.0);
    double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return Vec3(s * std::cos(phi), s * std::sin(phi), c);
}

//! |p|/m log-uniform in [lo, hi], direction uniform on the sphere.
inline Momentum random_momentum(SplitMix64& rng, double m, double lo = 0.01, double hi = 10.0)
{
    double r = std::exp(rng.uniform(std::log(lo), std::log(hi)));
    return Momentum(r * m * random_direction(rng), m);
}

}  // namespace dirac
