#include <algorithm>
#include <cmath>
#include <vector>

#include "dd/core.hpp"
#include "dd/hull_lp.hpp"
#include "doctest.h"

using namespace dd;

namespace {

SampleCloud w_vertices() {
  return SampleCloud(
      {Point({-1.0}), Point({-0.5}), Point({0.0}), Point({0.5}), Point({1.0})},
      {0.8, 0.2, 0.5, 0.0, 0.9});
}

// Brute-force optimum of min c.x, a x = b, x >= 0 with two rows: enumerate
// all 2x2 bases. Assumes the problem is feasible and bounded.
double vertex_enumeration_optimum(const LpProblem& lp) {
  const int n = lp.cols();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = lp.a[0][i], b = lp.a[0][j];
      const double c = lp.a[1][i], d = lp.a[1][j];
      const double det = a * d - b * c;
      if (std::abs(det) < 1e-10) continue;
      const double xi = (lp.b[0] * d - b * lp.b[1]) / det;
      const double xj = (a * lp.b[1] - lp.b[0] * c) / det;
      if (xi < -1e-9 || xj < -1e-9) continue;
      best = std::min(best, lp.c[i] * xi + lp.c[j] * xj);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("simplex solves a two-variable toy exactly") {
  // min 5 l1 + l2  s.t.  l1 + l2 = 1, l >= 0
  LpProblem lp;
  lp.c = {5.0, 1.0};
  lp.a = {{1.0, 1.0}};
  lp.b = {1.0};
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(1.0));
  CHECK(sol.x[0] == doctest::Approx(0.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("simplex reports infeasible and unbounded problems") {
  LpProblem infeasible;
  infeasible.c = {1.0};
  infeasible.a = {{0.0}};
  infeasible.b = {1.0};
  const LpSolution bad = solve_lp(infeasible);
  CHECK(bad.status == LpStatus::infeasible);
  CHECK(bad.value == doctest::Approx(1.0));  // phase-1 residual

  LpProblem unbounded;
  unbounded.c = {-1.0, 0.0};
  unbounded.a = {{0.0, 1.0}};
  unbounded.b = {0.0};
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);
}

TEST_CASE("simplex agrees with basis enumeration on random instances") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    LpProblem lp;
    const int n = 4;
    lp.a.assign(2, std::vector<double>(n));
    for (auto& row : lp.a)
      for (double& v : row) v = rng.uniform(-1.0, 1.0);
    // feasible by construction: b = a xhat with xhat >= 0
    std::vector<double> xhat(n);
    for (double& v : xhat) v = rng.uniform(0.0, 1.0);
    lp.b.assign(2, 0.0);
    for (int r = 0; r < 2; ++r)
      for (int j = 0; j < n; ++j) lp.b[r] += lp.a[r][j] * xhat[j];
    // nonnegative costs keep the optimum finite
    lp.c.assign(n, 0.0);
    for (double& v : lp.c) v = rng.uniform(0.0, 1.0);

    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.value ==
          doctest::Approx(vertex_enumeration_optimum(lp)).epsilon(1e-7));
    // returned point is primal feasible
    for (int r = 0; r < 2; ++r) {
      double lhs = 0;
      for (int j = 0; j < n; ++j) lhs += lp.a[r][j] * sol.x[j];
      CHECK(lhs == doctest::Approx(lp.b[r]).epsilon(1e-8));
    }
    for (double v : sol.x) CHECK(v >= -1e-9);
  }
}

TEST_CASE("1-D lower hulls keep only strictly increasing slopes") {
  const auto hull = lower_hull_1d(w_vertices());
  REQUIRE(hull.size() == 4);  // (0, 0.5) sits above the chord and drops out
  CHECK(hull[0].x == -1.0);
  CHECK(hull[1].x == -0.5);
  CHECK(hull[2].x == 0.5);
  CHECK(hull[3].x == 1.0);
  CHECK(hull[2].f == 0.0);

  CHECK(hull_interpolate(hull, 0.0).value() == doctest::Approx(0.1));
  CHECK(hull_interpolate(hull, -1.0).value() == doctest::Approx(0.8));
  CHECK(hull_interpolate(hull, 1.2).is_inf());
  CHECK(hull_interpolate(hull, -1.0 - 1e-10).value() ==
        doctest::Approx(0.8));  // membership collar
}

TEST_CASE("the truncated-vee grid hull collapses to three vertices") {
  std::vector<Point> pts;
  std::vector<double> vals;
  for (int i = -50; i <= 50; ++i) {
    const double x = 0.1 * i;
    pts.push_back(Point({x}));
    vals.push_back(std::min(std::abs(x), 1.0));
  }
  const auto hull = lower_hull_1d(SampleCloud(pts, vals));
  REQUIRE(hull.size() == 3);
  CHECK(hull[0].x == doctest::Approx(-5.0));
  CHECK(hull[1].x == doctest::Approx(0.0));
  CHECK(hull[2].x == doctest::Approx(5.0));
  CHECK(hull_interpolate(hull, 0.5).value() == doctest::Approx(0.1));
}

TEST_CASE("weighted combinations validate their weights") {
  CHECK_THROWS_AS(WeightedCombination({Point({0.0})}, {0.5}), InputError);
  CHECK_THROWS_AS(WeightedCombination({Point({0.0}), Point({1.0})},
                                      {0.5, -0.5}),
                  InputError);
  CHECK_THROWS_AS(WeightedCombination({Point({0.0}), Point({1.0, 2.0})},
                                      {0.5, 0.5}),
                  InputError);
  const WeightedCombination comb({Point({0.0}), Point({1.0})}, {0.25, 0.75});
  CHECK(comb.barycenter() == Point({0.75}));
}

TEST_CASE("support reduction reaches dim+1 points and keeps the barycenter") {
  const WeightedCombination comb(
      {Point({-1.0}), Point({0.5}), Point({1.0})}, {0.4, 0.4, 0.2});
  CHECK(comb.barycenter()[0] == doctest::Approx(0.0));

  std::vector<int> kept;
  const WeightedCombination red = caratheodory_reduce(comb, nullptr, &kept);
  REQUIRE(red.size() <= 2);
  CHECK(red.barycenter()[0] == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(kept.size() == static_cast<std::size_t>(red.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    CHECK(red.points()[i] == comb.points()[kept[i]]);
  }
}

TEST_CASE("support reduction never increases the weighted value") {
  // dropping the expensive middle point is the only valid reduction
  const WeightedCombination comb(
      {Point({0.0}), Point({0.5}), Point({1.0})}, {0.25, 0.5, 0.25});
  const std::vector<double> values = {0.0, 1.0, 0.0};
  std::vector<int> kept;
  const WeightedCombination red = caratheodory_reduce(comb, &values, &kept);
  REQUIRE(red.size() == 2);
  CHECK(red.barycenter()[0] == doctest::Approx(0.5));
  double after = 0;
  for (std::size_t i = 0; i < kept.size(); ++i)
    after += red.weights()[i] * values[kept[i]];
  CHECK(after == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("support reduction handles many redundant points in the plane") {
  Rng rng(5);
  const Point lo({-1.0, -1.0}), hi({1.0, 1.0});
  std::vector<Point> pts;
  std::vector<double> w(10);
  double total = 0;
  for (int i = 0; i < 10; ++i) {
    pts.push_back(rng.point_in_box(lo, hi));
    w[i] = rng.uniform(0.1, 1.0);
    total += w[i];
  }
  for (double& v : w) v /= total;
  const WeightedCombination comb(pts, w);
  const Point bary = comb.barycenter();
  const WeightedCombination red = caratheodory_reduce(comb);
  CHECK(red.size() <= 3);
  CHECK(red.barycenter().dist(bary) <= 1e-10);
}

TEST_CASE("hull membership residual separates inside from outside") {
  const std::vector<Point> seg = {Point({0.0}), Point({1.0})};
  CHECK(hull_membership_residual(seg, Point({0.5})) <= 1e-10);
  CHECK(hull_membership_residual(seg, Point({2.0})) == doctest::Approx(1.0));

  const std::vector<Point> tri = {Point({0.0, 0.0}), Point({1.0, 0.0}),
                                  Point({0.0, 1.0})};
  CHECK(hull_membership_residual(tri, Point({0.3, 0.3})) <= 1e-10);
  CHECK(hull_membership_residual(tri, Point({1.0, 1.0})) > 0.4);
}
