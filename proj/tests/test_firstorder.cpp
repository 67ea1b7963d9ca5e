#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "stabb/evaluation.hpp"
#include "stabb/firstorder.hpp"
#include "stabb/monomial.hpp"
#include "stabb/rng.hpp"
#include "testutil.hpp"

using namespace stabb;
using testutil::pp;

namespace {

// An evaluation-structured least squares instance: k accepted terms plus one
// border candidate over a random point set.
struct Instance {
  Eigen::MatrixXd points;
  std::vector<PowerProduct> terms;
  PowerProduct candidate;
  FirstOrderMatrix<double> m;
  FirstOrderVector<double> v;
};

double cond2(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sigma = svd.singularValues();
  return sigma[sigma.size() - 1] == 0.0 ? 1e300 : sigma[0] / sigma[sigma.size() - 1];
}

// Rejects ill-conditioned or (near-)consistent draws so halving-test
// denominators stay meaningful.
Instance random_instance(Rng& rng, bool want_residual) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    const int s = 3 + static_cast<int>(rng.uniform(0.0, 6.0));
    const int k = 1 + static_cast<int>(rng.uniform(0.0, std::min(s - 1, 4) + 0.0));
    testutil::RandomSet set = testutil::random_point_set(rng, s, n, 0.05, 0.2);
    OrderIdealSet ideal = testutil::random_order_ideal(rng, n, k);
    std::vector<PowerProduct> b = border(ideal);
    PowerProduct candidate = b[static_cast<std::size_t>(rng.uniform(0.0, b.size() + 0.0)) % b.size()];

    Instance inst{set.points, ideal.terms(), candidate,
                  evaluation_matrix_first_order<double>(ideal.terms(), set.points),
                  eval_first_order<double>(candidate, set.points)};
    if (cond2(inst.m.value) > 1e5) continue;
    Eigen::VectorXd alpha = testutil::svd_ls(inst.m.value, inst.v.value);
    double rho = (inst.v.value - inst.m.value * alpha).norm();
    if (want_residual && rho < 1e-3 * std::max(1.0, inst.v.value.norm())) continue;
    return inst;
  }
  throw std::runtime_error("no usable random instance");
}

Eigen::MatrixXd direction_as_offsets(const Eigen::VectorXd& u, int s, int n) {
  Eigen::MatrixXd offsets(s, n);
  for (int k = 0; k < s; ++k)
    for (int j = 0; j < n; ++j) offsets(k, j) = u[error_column(k, j, s)];
  return offsets;
}

double ortho_scale(const FirstOrderMatrix<double>& m, const FirstOrderVector<double>& v) {
  double mNorm = m.value.norm();
  for (const auto& jac : m.column_jacobians) mNorm += jac.norm();
  return mNorm * (v.value.norm() + v.jacobian.norm()) + 1.0;
}

}  // namespace

TEST_CASE("error variable layout groups by coordinate") {
  // column j*s + k belongs to coordinate j of point k
  CHECK(error_column(0, 0, 4) == 0);
  CHECK(error_column(3, 0, 4) == 3);
  CHECK(error_column(0, 1, 4) == 4);
  CHECK(error_column(2, 1, 4) == 6);

  Eigen::MatrixXd points = testutil::line_points();
  FirstOrderVector<double> vx = eval_first_order<double>(pp("x", 2), points);
  for (int k = 0; k < 4; ++k) {
    for (int mu = 0; mu < 8; ++mu)
      CHECK(vx.jacobian(k, mu) == (mu == error_column(k, 0, 4) ? 1.0 : 0.0));
  }
  // d(xy^2)/dx = y^2, d(xy^2)/dy = 2xy at each point
  FirstOrderVector<double> vm = eval_first_order<double>(pp("xy^2", 2), points);
  for (int k = 0; k < 4; ++k) {
    double x = points(k, 0), y = points(k, 1);
    CHECK(vm.value[k] == doctest::Approx(x * y * y));
    CHECK(vm.jacobian(k, error_column(k, 0, 4)) == doctest::Approx(y * y));
    CHECK(vm.jacobian(k, error_column(k, 1, 4)) == doctest::Approx(2 * x * y));
  }
}

TEST_CASE("first order evaluation matches a Taylor halving test") {
  Rng rng(301);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const int s = 4 + trial % 4;
    testutil::RandomSet set = testutil::random_point_set(rng, s, n, 0.05, 0.2);
    OrderIdealSet ideal = testutil::random_order_ideal(rng, n, 3 + trial % 3);
    PowerProduct t = border(ideal).front();
    FirstOrderVector<double> v = eval_first_order<double>(t, set.points);

    Eigen::VectorXd u(n * s);
    for (int i = 0; i < u.size(); ++i) u[i] = rng.gaussian();
    u.normalize();
    Eigen::MatrixXd offsets = direction_as_offsets(u, s, n);

    auto err = [&](double h) {
      Eigen::MatrixXd moved = set.points + h * offsets;
      Eigen::VectorXd exact(s);
      for (int k = 0; k < s; ++k) {
        Eigen::VectorXd p = moved.row(k).transpose();
        exact[k] = eval_power_product<double>(t, p);
      }
      return (exact - (v.value + h * (v.jacobian * u))).norm();
    };
    double e1 = err(1e-3), e2 = err(5e-4);
    if (e2 < 1e-13) continue;  // curvature-free direction
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.13));
  }
}

TEST_CASE("matrix columns round trip through append") {
  Eigen::MatrixXd points = testutil::five_points();
  std::vector<PowerProduct> terms = {pp("1", 2), pp("y", 2), pp("x", 2)};
  FirstOrderMatrix<double> m = evaluation_matrix_first_order<double>(terms, points);
  CHECK(m.rows() == 5);
  CHECK(m.cols() == 3);
  CHECK(m.nerr() == 10);
  for (int j = 0; j < 3; ++j) {
    FirstOrderVector<double> direct = eval_first_order<double>(terms[static_cast<std::size_t>(j)], points);
    CHECK(m.column(j).value == direct.value);
    CHECK(m.column(j).jacobian == direct.jacobian);
  }
  FirstOrderMatrix<double> bad;
  bad.append_column(eval_first_order<double>(pp("1", 2), points));
  FirstOrderVector<double> wrong = eval_first_order<double>(pp("x", 2), testutil::line_points());
  CHECK_THROWS_AS(bad.append_column(wrong), std::invalid_argument);
}

TEST_CASE("least squares zero order part matches an independent solver") {
  Rng rng(302);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = random_instance(rng, false);
    FirstOrderLSResult<double> ls = ls_first_order(inst.m, inst.v);
    Eigen::VectorXd oracle = testutil::svd_ls(inst.m.value, inst.v.value);
    CHECK((ls.solution - oracle).norm() <= 1e-9 * (oracle.norm() + 1.0));
    CHECK((ls.residual - (inst.v.value - inst.m.value * oracle)).norm() <=
          1e-9 * (inst.v.value.norm() + 1.0));
  }
}

TEST_CASE("orthogonality identities hold to first order") {
  Rng rng(303);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = random_instance(rng, false);
    FirstOrderLSResult<double> ls = ls_first_order(inst.m, inst.v);
    const double scale = ortho_scale(inst.m, inst.v);

    CHECK((inst.m.value.transpose() * ls.residual).norm() <= 1e-10 * scale);

    const int k = inst.m.cols();
    Eigen::MatrixXd mixed = inst.m.value.transpose() * ls.residual_jacobian;
    for (int j = 0; j < k; ++j)
      mixed.row(j) += ls.residual.transpose() * inst.m.column_jacobians[static_cast<std::size_t>(j)];
    CHECK(mixed.norm() <= 1e-10 * scale);
  }
}

TEST_CASE("solution and residual jacobians pass the halving test") {
  Rng rng(304);
  int tested = 0;
  for (int trial = 0; trial < 60 && tested < 25; ++trial) {
    Instance inst = random_instance(rng, true);
    FirstOrderLSResult<double> ls = ls_first_order(inst.m, inst.v);
    const int s = static_cast<int>(inst.points.rows());
    const int n = static_cast<int>(inst.points.cols());

    Eigen::VectorXd u(n * s);
    for (int i = 0; i < u.size(); ++i) u[i] = rng.gaussian();
    u.normalize();
    Eigen::MatrixXd offsets = direction_as_offsets(u, s, n);

    auto errors = [&](double h) {
      Eigen::MatrixXd moved = inst.points + h * offsets;
      Eigen::MatrixXd m = evaluation_matrix<double>(inst.terms, moved);
      Eigen::VectorXd v(s);
      for (int r = 0; r < s; ++r) {
        Eigen::VectorXd p = moved.row(r).transpose();
        v[r] = eval_power_product<double>(inst.candidate, p);
      }
      Eigen::VectorXd alpha = testutil::svd_ls(m, v);
      Eigen::VectorXd rho = v - m * alpha;
      double ea = (alpha - (ls.solution + h * (ls.solution_jacobian * u))).norm();
      double er = (rho - (ls.residual + h * (ls.residual_jacobian * u))).norm();
      return std::pair<double, double>(ea, er);
    };
    auto [a1, r1] = errors(1e-3);
    auto [a2, r2] = errors(5e-4);
    if (a2 < 1e-12 || r2 < 1e-12) continue;
    CHECK(a1 / a2 == doctest::Approx(4.0).epsilon(0.13));
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.13));
    ++tested;
  }
  CHECK(tested >= 15);
}

TEST_CASE("least squares input validation") {
  Eigen::MatrixXd points = testutil::line_points();
  std::vector<PowerProduct> terms = {pp("1", 2), pp("y", 2)};
  FirstOrderMatrix<double> m = evaluation_matrix_first_order<double>(terms, points);
  FirstOrderVector<double> v = eval_first_order<double>(pp("x", 2), points);

  FirstOrderVector<double> short_v = v;
  short_v.value = v.value.head(3);
  CHECK_THROWS_AS(ls_first_order(m, short_v), std::invalid_argument);

  FirstOrderVector<double> narrow = v;
  narrow.jacobian = v.jacobian.leftCols(4);
  CHECK_THROWS_AS(ls_first_order(m, narrow), std::invalid_argument);

  // duplicated column: rank deficiency is a logic error upstream
  FirstOrderMatrix<double> degenerate = m;
  degenerate.append_column(m.column(1));
  CHECK_THROWS_AS(ls_first_order(degenerate, v), std::runtime_error);
}

TEST_CASE("minimal norm solution on consistent wide systems") {
  Rng rng(305);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 2 + trial % 3;
    const int c = r + 1 + trial % 4;
    Eigen::MatrixXd a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a(i, j) = rng.gaussian();
    Eigen::VectorXd x0(c);
    for (int j = 0; j < c; ++j) x0[j] = rng.gaussian();
    Eigen::VectorXd b = a * x0;

    Eigen::VectorXd e = min_norm_solution<double>(a, b);
    CHECK((a * e - b).norm() <= 1e-9 * (b.norm() + 1.0));
    CHECK(e.norm() <= x0.norm() + 1e-9);
    // minimal norm solutions live in the row space
    Eigen::VectorXd y = testutil::svd_ls(a.transpose(), e);
    CHECK((a.transpose() * y - e).norm() <= 1e-8 * (e.norm() + 1.0));
  }
}

TEST_CASE("minimal norm solution edge cases") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 2);
  Eigen::VectorXd b(3);
  b << 1, 2, 3;
  CHECK(min_norm_solution<double>(zero, b) == Eigen::VectorXd::Zero(2));

  // singular values below the relative cutoff are treated as zero
  Eigen::MatrixXd near(2, 2);
  near << 1, 0, 0, 1e-15;
  Eigen::VectorXd rhs(2);
  rhs << 1, 1;
  Eigen::VectorXd e = min_norm_solution<double>(near, rhs);
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(std::abs(e[1]) <= 1e-6);

  CHECK_THROWS_AS(min_norm_solution<double>(zero, Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("first order inverse agrees with numeric inversion") {
  Rng rng(306);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 4;
    const int nerr = 3 + trial % 5;
    FirstOrderMatrix<double> a;
    Eigen::MatrixXd a0(k, k);
    do {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a0(i, j) = rng.gaussian();
    } while (cond2(a0) > 1e4);
    a.value = a0;
    for (int j = 0; j < k; ++j) {
      Eigen::MatrixXd jac(k, nerr);
      for (int i = 0; i < k; ++i)
        for (int mu = 0; mu < nerr; ++mu) jac(i, mu) = rng.gaussian();
      a.column_jacobians.push_back(std::move(jac));
    }

    FirstOrderMatrix<double> inv = inverse_first_order(a);
    CHECK((inv.value * a.value - Eigen::MatrixXd::Identity(k, k)).norm() <= 1e-10 * k);

    Eigen::VectorXd u(nerr);
    for (int mu = 0; mu < nerr; ++mu) u[mu] = rng.gaussian();
    u.normalize();
    auto assemble = [&](const FirstOrderMatrix<double>& f, double h) {
      Eigen::MatrixXd out = f.value;
      for (int j = 0; j < f.cols(); ++j)
        out.col(j) += h * (f.column_jacobians[static_cast<std::size_t>(j)] * u);
      return out;
    };
    auto err = [&](double h) {
      Eigen::MatrixXd exact = assemble(a, h).fullPivLu().inverse();
      return (exact - assemble(inv, h)).norm();
    };
    double e1 = err(1e-4), e2 = err(5e-5);
    if (e2 < 1e-12) continue;
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.13));
  }

  FirstOrderMatrix<double> rect;
  rect.value = Eigen::MatrixXd::Ones(3, 2);
  rect.column_jacobians.assign(2, Eigen::MatrixXd::Zero(3, 1));
  CHECK_THROWS_AS(inverse_first_order(rect), std::invalid_argument);

  FirstOrderMatrix<double> singular;
  singular.value = Eigen::MatrixXd::Ones(2, 2);
  singular.column_jacobians.assign(2, Eigen::MatrixXd::Zero(2, 1));
  CHECK_THROWS_AS(inverse_first_order(singular), std::runtime_error);
}
