#pragma once

#include <vector>

#include "dd/core.hpp"

namespace dd {

///// Convex combination: points with nonnegative weights summing to one.
class WeightedCombination {
 public:
  WeightedCombination(std::vector<Point> points, std::vector<double> weights);

  int dim() const { return points_[0].dim(); }
  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  Point barycenter() const;

 private:
  std::vector<Point> points_;
  std::vector<double> weights_;
};

/// Standard-form linear program: minimize c.x subject to a x = b, x >= 0.
struct LpProblem {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<double> b;

  int cols() const { return static_cast<int>(c.size()); }
  int rows() const { return static_cast<int>(a.size()); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double value = 0;
  std::vector<double> x;
  int iterations = 0;
};

/// Dense two-phase primal simplex with Bland's rule. Deterministic; throws
/// NumericalError if the iteration cap 50*(rows+cols) is hit.
LpSolution solve_lp(const LpProblem& p);

/// Vertex of a 1-D lower convex hull.
struct HullVertex {
  double x = 0;
  double f = 0;
};

/// Lower convex hull of a 1-D cloud: vertices ordered by x with strictly
/// increasing consecutive slopes (within 1e-12).
std::vector<HullVertex> lower_hull_1d(const SampleCloud& cloud);

/// Piecewise-linear interpolant of the hull; +infinity outside
/// [first vertex, last vertex] beyond the membership tolerance.
ExtReal hull_interpolate(const std::vector<HullVertex>& hull, double x);

///// Caratheodory reduction: rewrite the combination on at most dim+1 support
/// points with the same barycenter. Zero weights are dropped first. If `values`
/// is given (one per point), the weighted value sum never increases. `kept`,
/// when non-null, receives the surviving input indices in output order.
WeightedCombination caratheodory_reduce(const WeightedCombination& comb,
                                        const std::vector<double>* values = nullptr,
                                        std::vector<int>* kept = nullptr);

/// L1 residual of the best approximation of x as a convex combination of pts
/// (phase-1 optimum); ~0 exactly when x lies in the convex hull.
double hull_membership_residual(const std::vector<Point>& pts, const Point& x);

}  // namespace dd
