#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "yigmag/constants.hpp"

namespace yigmag {

// Standard normal source with a portable, fully specified output sequence.
// std::normal_distribution is implementation-defined, so the transform from
// the 64-bit engine (period 2^19937 - 1) is done here with Box-Muller.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = constants::two_pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform_open() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace yigmag
