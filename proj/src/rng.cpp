#include "stabb/rng.hpp"

#include <cmath>

namespace stabb {

double Rng::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Eigen::VectorXd Rng::unit_ball(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = gaussian();
  double norm = v.norm();
  if (norm == 0.0) return Eigen::VectorXd::Zero(n);
  // Radius u^(1/n) makes the direction-radius pair uniform in volume.
  double radius = std::pow(uniform(), 1.0 / n);
  return v * (radius / norm);
}

}  // namespace stabb
