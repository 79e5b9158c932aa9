#pragma once

#include "mwt/geom.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mwt {

/// The one random source: std::mt19937_64 (its output sequence is fixed by
/// the C++ standard). Doubles use the top 53 bits; normals use the polar
/// method on those doubles. Identical on every conforming platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Standard normal.
    double normal();

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// n points uniform in the square of side `extent` centred at the origin.
/// Duplicates are redrawn.
std::vector<Point> generate_uniform(std::size_t n, std::uint64_t seed, double extent = 1.0);

/// n points with both coordinates N(0, sigma^2). Duplicates are redrawn.
std::vector<Point> generate_normal(std::size_t n, std::uint64_t seed, double sigma = 1.0);

} // namespace mwt
