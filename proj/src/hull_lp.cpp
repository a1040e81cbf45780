#include "dd/hull_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dd {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-8;

// Dense simplex tableau: a = B^-1 A, b = B^-1 b, basis[r] = basic column of row r.
struct Tableau {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<int> basis;

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return rows() ? static_cast<int>(a[0].size()) : 0; }

  void pivot(int pr, int pc) {
    double pv = a[pr][pc];
    for (double& v : a[pr]) v /= pv;
    b[pr] /= pv;
    a[pr][pc] = 1.0;  // kill roundoff on the pivot itself
    for (int r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      double m = a[r][pc];
      if (m == 0.0) continue;
      for (int c = 0; c < cols(); ++c) a[r][c] -= m * a[pr][c];
      a[r][pc] = 0.0;
      b[r] -= m * b[pr];
    }
  }
};

// Minimize c over the tableau with Bland's rule; columns >= col_limit never
// enter. Returns false when the problem is unbounded.
bool run_simplex(Tableau& t, const std::vector<double>& c, int col_limit,
                 int* iterations, int iter_cap) {
  const int m = t.rows();
  while (true) {
    // reduced costs d_j = c_j - c_B . a_j, entering = smallest j with d_j < -tol
    int enter = -1;
    for (int j = 0; j < col_limit && enter < 0; ++j) {
      bool basic = false;
      for (int r = 0; r < m; ++r)
        if (t.basis[r] == j) {
          basic = true;
          break;
        }
      if (basic) continue;
      double d = c[j];
      for (int r = 0; r < m; ++r) d -= c[t.basis[r]] * t.a[r][j];
      if (d < -kPivotTol) enter = j;
    }
    if (enter < 0) return true;
    // ratio test; ties leave the smallest basic index (Bland)
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      if (t.a[r][enter] <= kPivotTol) continue;
      double ratio = t.b[r] / t.a[r][enter];
      if (leave < 0 || ratio < best - 1e-12) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + 1e-12 && t.basis[r] < t.basis[leave]) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
    t.basis[leave] = enter;
    if (++*iterations > iter_cap)
      throw NumericalError("solve_lp: simplex iteration cap exceeded");
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const int m = p.rows();
  const int n = p.cols();
  if (static_cast<int>(p.b.size()) != m)
    throw InputError("solve_lp: rhs length mismatch");
  for (const auto& row : p.a)
    if (static_cast<int>(row.size()) != n)
      throw InputError("solve_lp: ragged constraint matrix");
  for (double v : p.c)
    if (!std::isfinite(v)) throw InputError("solve_lp: non-finite objective");
  const int iter_cap = 50 * (n + m + m);  // artificial columns count too

  // Phase 1: minimize the sum of one artificial per row (rhs made nonnegative).
  Tableau t;
  t.a.assign(m, std::vector<double>(n + m, 0.0));
  t.b.assign(m, 0.0);
  t.basis.resize(m);
  for (int r = 0; r < m; ++r) {
    double sign = p.b[r] < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t.a[r][j] = sign * p.a[r][j];
    t.b[r] = sign * p.b[r];
    t.a[r][n + r] = 1.0;
    t.basis[r] = n + r;
  }
  std::vector<double> c1(n + m, 0.0);
  for (int r = 0; r < m; ++r) c1[n + r] = 1.0;

  LpSolution sol;
  if (!run_simplex(t, c1, n + m, &sol.iterations, iter_cap))
    throw NumericalError("solve_lp: phase 1 unbounded");
  double infeas = 0;
  for (int r = 0; r < m; ++r)
    if (t.basis[r] >= n) infeas += t.b[r];
  if (infeas > kFeasTol) {
    sol.status = LpStatus::infeasible;
    sol.value = infeas;
    return sol;
  }

  // Drive leftover artificials out of the basis; a row with no usable
  // structural pivot is redundant and gets dropped.
  for (int r = t.rows() - 1; r >= 0; --r) {
    if (t.basis[r] < n) continue;
    int pc = -1;
    for (int j = 0; j < n && pc < 0; ++j)
      if (std::abs(t.a[r][j]) > kPivotTol) pc = j;
    if (pc >= 0) {
      t.pivot(r, pc);
      t.basis[r] = pc;
    } else {
      t.a.erase(t.a.begin() + r);
      t.b.erase(t.b.begin() + r);
      t.basis.erase(t.basis.begin() + r);
    }
  }
  for (auto& row : t.a) row.resize(n);

  // Phase 2 with the real objective.
  if (!run_simplex(t, p.c, n, &sol.iterations, iter_cap)) {
    sol.status = LpStatus::unbounded;
    return sol;
  }
  sol.status = LpStatus::optimal;
  sol.x.assign(n, 0.0);
  for (int r = 0; r < t.rows(); ++r) sol.x[t.basis[r]] = t.b[r];
  sol.value = 0;
  for (int j = 0; j < n; ++j) sol.value += p.c[j] * sol.x[j];
  return sol;
}

// ---------------------------------------------------------------- 1-D hull

std::vector<HullVertex> lower_hull_1d(const SampleCloud& cloud) {
  if (cloud.dim() != 1) throw InputError("lower_hull_1d: cloud must be 1-D");
  std::vector<HullVertex> pts(cloud.size());
  for (int i = 0; i < cloud.size(); ++i)
    pts[i] = HullVertex{cloud.point(i)[0], cloud.value(i)};
  std::sort(pts.begin(), pts.end(),
            [](const HullVertex& a, const HullVertex& b) { return a.x < b.x; });
  std::vector<HullVertex> hull;
  auto slope = [](const HullVertex& a, const HullVertex& b) {
    return (b.f - a.f) / (b.x - a.x);
  };
  for (const HullVertex& p : pts) {
    // keep consecutive slopes strictly increasing
    while (hull.size() >= 2 &&
           slope(hull[hull.size() - 1], p) <=
               slope(hull[hull.size() - 2], hull[hull.size() - 1]) + 1e-12)
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

ExtReal hull_interpolate(const std::vector<HullVertex>& hull, double x) {
  if (hull.empty()) throw InputError("hull_interpolate: empty hull");
  if (x < hull.front().x - kMembershipTol || x > hull.back().x + kMembershipTol)
    return ExtReal::inf();
  if (x <= hull.front().x) return ExtReal(hull.front().f);
  if (x >= hull.back().x) return ExtReal(hull.back().f);
  auto it = std::upper_bound(
      hull.begin(), hull.end(), x,
      [](double v, const HullVertex& h) { return v < h.x; });
  const HullVertex& hi = *it;
  const HullVertex& lo = *(it - 1);
  double w = (x - lo.x) / (hi.x - lo.x);
  return ExtReal(lo.f + w * (hi.f - lo.f));
}

// ------------------------------------------------------- WeightedCombination

WeightedCombination::WeightedCombination(std::vector<Point> points,
                                         std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty() || points_.size() != weights_.size())
    throw InputError("WeightedCombination: bad points/weights lengths");
  int n = points_[0].dim();
  double sum = 0;
  for (const Point& p : points_)
    if (p.dim() != n) throw InputError("WeightedCombination: mixed dimensions");
  for (double w : weights_) {
    if (!(w >= -1e-10))
      throw InputError("WeightedCombination: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw InputError("WeightedCombination: weights must sum to 1");
}

Point WeightedCombination::barycenter() const {
  Point b = Point::zeros(dim());
  for (int i = 0; i < size(); ++i) b = b + weights_[i] * points_[i];
  return b;
}

namespace {

// Nontrivial null vector of the (n+1) x m matrix whose columns are (p_k, 1);
// exists whenever m > n+1. Gaussian elimination with partial pivoting, first
// free column gets coefficient 1.
std::vector<double> affine_dependence(const std::vector<Point>& pts) {
  const int m = static_cast<int>(pts.size());
  const int n = pts[0].dim();
  const int rows = n + 1;
  std::vector<std::vector<double>> a(rows, std::vector<double>(m, 1.0));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < m; ++k) a[r][k] = pts[k][r];

  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int col = 0; col < m && rank < rows; ++col) {
    int best = -1;
    double best_abs = 1e-12;
    for (int r = rank; r < rows; ++r)
      if (std::abs(a[r][col]) > best_abs) {
        best_abs = std::abs(a[r][col]);
        best = r;
      }
    if (best < 0) continue;
    std::swap(a[rank], a[best]);
    double pv = a[rank][col];
    for (int c = col; c < m; ++c) a[rank][c] /= pv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double f = a[r][col];
      if (f == 0.0) continue;
      for (int c = col; c < m; ++c) a[r][c] -= f * a[rank][c];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  int free_col = -1;
  for (int col = 0; col < m && free_col < 0; ++col) {
    bool used = false;
    for (int r = 0; r < rank; ++r)
      if (pivot_col[r] == col) used = true;
    if (!used) free_col = col;
  }
  if (free_col < 0)
    throw NumericalError("caratheodory_reduce: no affine dependence found");
  std::vector<double> mu(m, 0.0);
  mu[free_col] = 1.0;
  for (int r = 0; r < rank; ++r) mu[pivot_col[r]] = -a[r][free_col];
  return mu;
}

}  // namespace

WeightedCombination caratheodory_reduce(const WeightedCombination& comb,
                                        const std::vector<double>* values,
                                        std::vector<int>* kept) {
  if (values && static_cast<int>(values->size()) != comb.size())
    throw InputError("caratheodory_reduce: values length mismatch");
  const int n = comb.dim();
  std::vector<Point> pts;
  std::vector<double> w;
  std::vector<double> val;
  std::vector<int> src;
  for (int i = 0; i < comb.size(); ++i) {
    if (comb.weights()[i] <= 1e-15) continue;  // zero weights dropped up front
    pts.push_back(comb.points()[i]);
    w.push_back(comb.weights()[i]);
    if (values) val.push_back((*values)[i]);
    src.push_back(i);
  }
  if (pts.empty())
    throw InputError("caratheodory_reduce: all weights are zero");

  while (static_cast<int>(pts.size()) > n + 1) {
    std::vector<double> mu = affine_dependence(pts);
    // Orient so the weighted value sum cannot increase; without values, make
    // the first nonzero coefficient positive for determinism.
    double orient = 0;
    if (values)
      for (std::size_t k = 0; k < mu.size(); ++k) orient += mu[k] * val[k];
    if (orient == 0)
      for (double c : mu)
        if (c != 0) {
          orient = c;
          break;
        }
    if (orient < 0)
      for (double& c : mu) c = -c;

    double t = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mu.size(); ++k)
      if (mu[k] > 1e-14) t = std::min(t, w[k] / mu[k]);
    if (!std::isfinite(t))
      throw NumericalError("caratheodory_reduce: degenerate dependence");
    std::vector<Point> npts;
    std::vector<double> nw, nval;
    std::vector<int> nsrc;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      double wk = w[k] - t * mu[k];
      if (wk <= 1e-15) continue;
      npts.push_back(pts[k]);
      nw.push_back(wk);
      if (values) nval.push_back(val[k]);
      nsrc.push_back(src[k]);
    }
    if (npts.size() >= pts.size())
      throw NumericalError("caratheodory_reduce: no progress");
    pts = std::move(npts);
    w = std::move(nw);
    val = std::move(nval);
    src = std::move(nsrc);
  }
  if (kept) *kept = src;
  return WeightedCombination(std::move(pts), std::move(w));
}

double hull_membership_residual(const std::vector<Point>& pts, const Point& x) {
  if (pts.empty()) throw InputError("hull_membership_residual: empty point set");
  const int n = x.dim();
  const int m = static_cast<int>(pts.size());
  // min sum(s+ + s-)  s.t.  sum_k w_k p_k + s+ - s- = (x, 1)
  LpProblem p;
  const int rows = n + 1;
  p.c.assign(m + 2 * rows, 0.0);
  for (int r = 0; r < 2 * rows; ++r) p.c[m + r] = 1.0;
  p.a.assign(rows, std::vector<double>(m + 2 * rows, 0.0));
  p.b.assign(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < m; ++k) p.a[r][k] = r < n ? pts[k][r] : 1.0;
    p.a[r][m + 2 * r] = 1.0;
    p.a[r][m + 2 * r + 1] = -1.0;
    p.b[r] = r < n ? x[r] : 1.0;
  }
  LpSolution s = solve_lp(p);
  if (s.status != LpStatus::optimal)
    throw NumericalError("hull_membership_residual: residual LP failed");
  return s.value;
}

}  // namespace dd
