#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace stabb {

// A set of s approximate points in n variables together with a componentwise
// tolerance vector. Row k of points is the k-th point.
struct EmpiricalPointSet {
  Eigen::MatrixXd points;
  Eigen::VectorXd tolerance;

  EmpiricalPointSet(Eigen::MatrixXd pts, Eigen::VectorXd tol);

  int count() const { return static_cast<int>(points.rows()); }
  int nvars() const { return static_cast<int>(points.cols()); }
};

// A candidate displacement of every point: offsets has the same shape as the
// point matrix. Admissible when every row satisfies the weighted bound.
struct Perturbation {
  Eigen::MatrixXd offsets;
};

// Tolerance-weighted norm ||diag(1/eps) v||_2.
double weighted_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& tolerance);

// True iff every row's weighted offset norm is at most 1 (closed region).
bool is_admissible(const Perturbation& p, const EmpiricalPointSet& x);

// Two points are distinct when their weighted distance exceeds 2; at exactly
// 2 the surrounding regions still touch, so the pair is not distinct.
bool are_distinct(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                  const Eigen::VectorXd& tolerance);

// Indices (i, j), i < j, of point pairs that fail the distinctness test.
std::vector<std::pair<int, int>> indistinct_pairs(const EmpiricalPointSet& x);

// Throws std::invalid_argument describing the first problem found: shape
// mismatch, nonpositive tolerance, or an indistinct pair.
void validate(const EmpiricalPointSet& x);

class Rng;

// Draws one admissible perturbation uniformly per point: componentwise the
// tolerance scales a uniform sample from the closed weighted unit ball.
Perturbation sample_admissible(const EmpiricalPointSet& x, std::uint64_t seed);
Perturbation sample_admissible(const EmpiricalPointSet& x, Rng& rng);

Eigen::MatrixXd perturbed_points(const EmpiricalPointSet& x, const Perturbation& p);

}  // namespace stabb
