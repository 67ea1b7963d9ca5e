#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace stabb {

// Deterministic random source with an explicit bits-to-double mapping, so the
// same seed yields the same stream on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_bits() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double gaussian();

  // Uniform on the closed unit ball in dimension n.
  Eigen::VectorXd unit_ball(int n);

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stabb
