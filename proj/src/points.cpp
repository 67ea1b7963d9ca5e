#include "stabb/points.hpp"

#include <stdexcept>

#include "stabb/rng.hpp"

namespace stabb {

EmpiricalPointSet::EmpiricalPointSet(Eigen::MatrixXd pts, Eigen::VectorXd tol)
    : points(std::move(pts)), tolerance(std::move(tol)) {
  if (points.rows() == 0 || points.cols() == 0)
    throw std::invalid_argument("point set must be nonempty");
  if (tolerance.size() != points.cols())
    throw std::invalid_argument("tolerance length must match the variable count");
  for (int j = 0; j < tolerance.size(); ++j)
    if (!(tolerance[j] > 0.0)) throw std::invalid_argument("tolerances must be positive");
}

double weighted_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& tolerance) {
  if (v.size() != tolerance.size()) throw std::invalid_argument("vector length mismatch");
  return (v.array() / tolerance.array()).matrix().norm();
}

bool is_admissible(const Perturbation& p, const EmpiricalPointSet& x) {
  if (p.offsets.rows() != x.points.rows() || p.offsets.cols() != x.points.cols())
    throw std::invalid_argument("perturbation shape mismatch");
  for (int k = 0; k < p.offsets.rows(); ++k) {
    if (weighted_norm(p.offsets.row(k).transpose(), x.tolerance) > 1.0) return false;
  }
  return true;
}

bool are_distinct(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                  const Eigen::VectorXd& tolerance) {
  return weighted_norm(p - q, tolerance) > 2.0;
}

std::vector<std::pair<int, int>> indistinct_pairs(const EmpiricalPointSet& x) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < x.count(); ++i) {
    for (int j = i + 1; j < x.count(); ++j) {
      Eigen::VectorXd d = x.points.row(i) - x.points.row(j);
      if (!are_distinct(Eigen::VectorXd::Zero(d.size()), d, x.tolerance)) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

void validate(const EmpiricalPointSet& x) {
  auto pairs = indistinct_pairs(x);
  if (!pairs.empty()) {
    throw std::invalid_argument("points " + std::to_string(pairs.front().first) + " and " +
                                std::to_string(pairs.front().second) +
                                " are not distinct at the given tolerance");
  }
}

Perturbation sample_admissible(const EmpiricalPointSet& x, std::uint64_t seed) {
  Rng rng(seed);
  return sample_admissible(x, rng);
}

Perturbation sample_admissible(const EmpiricalPointSet& x, Rng& rng) {
  Eigen::MatrixXd offsets(x.count(), x.nvars());
  for (int k = 0; k < x.count(); ++k) {
    Eigen::VectorXd b = rng.unit_ball(x.nvars());
    offsets.row(k) = (b.array() * x.tolerance.array()).transpose();
  }
  return Perturbation{std::move(offsets)};
}

Eigen::MatrixXd perturbed_points(const EmpiricalPointSet& x, const Perturbation& p) {
  if (p.offsets.rows() != x.points.rows() || p.offsets.cols() != x.points.cols())
    throw std::invalid_argument("perturbation shape mismatch");
  return x.points + p.offsets;
}

}  // namespace stabb
