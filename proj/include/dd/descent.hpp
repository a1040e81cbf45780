#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dd/core.hpp"

namespace dd {

enum class Stage1Solver { angular_grid, projected_subgradient, compass_search };

Stage1Solver stage1_solver_from_string(const std::string& name);
std::string to_string(Stage1Solver solver);

struct Stage1Config {
  Point x0;
  double delta = 0.1;
  Stage1Solver solver = Stage1Solver::compass_search;
  int budget = 0;  // max evaluations; 0 picks the per-solver default
  std::uint64_t seed = 0;
};

struct Stage1Result {
  Point d_star;             // always of norm delta
  ExtReal value;            // f(x0 + d_star)
  Point ball_best_d;        // best probe over the closed ball (may be interior)
  ExtReal ball_best_value;
  int evaluations = 0;
  bool zero_progress = false;  // no probe improved on f(x0)
};

struct Stage2Config {
  double alpha = 0.1;
  int max_steps = 0;  // 0 = ceil(domain diameter / alpha)
  int patience = 3;   // stop after this many consecutive non-improvements
  std::optional<double> target;  // stage 2 is skipped once stage 1 meets this
};

struct TraceEntry {
  int m = 0;
  Point x;
  ExtReal f;
};

/// The a-priori error bound f(x_m*) - f(x*) <= K*alpha + K*r*|d - d0|.
struct BoundCheck {
  double k = 0;
  double r = 0;     // |x* - x0|
  double dist = 0;  // |d/delta - d0|
  long m_star = 0;  // floor(r / alpha)
  double lhs = 0;   // may be +inf when the probe iterate leaves the domain
  double rhs = 0;
  bool satisfied = false;  // lhs <= rhs + 1e-9
};

struct DescentReport {
  Point d_star;
  std::vector<TraceEntry> trace;
  Point best_x;
  ExtReal best_f;
  int evaluations = 0;
  bool skipped_stage2 = false;
  std::string skip_reason;
  Stage1Result stage1;
  std::optional<BoundCheck> bound;  // present when the minimizer is known
  bool hypotheses_verified = false;
};

/// Deterministic unit directions covering the sphere: +-1 in 1-D, a uniform
/// angle grid in 2-D, a Fibonacci lattice in 3-D. Other dimensions are
/// rejected with InputError.
std::vector<Point> sphere_directions(int dim, int count);

/// Best direction of norm exactly delta from x0 (the ball restricted to its
/// boundary; the projected-subgradient solver also reports interior probes).
/// The delta-ball must lie inside the domain, else InputError.
Stage1Result stage1_direction(const Objective& obj, const Stage1Config& cfg);

/// March x_m = x0 + m*alpha*d/|d|, each iterate computed directly from m.
/// Stops at max_steps or after `patience` consecutive non-improvements;
/// out-of-domain iterates evaluate to +infinity and count as non-improvements.
std::vector<TraceEntry> stage2_march(const Objective& obj, const Point& x0,
                                     const Point& d, const Stage2Config& cfg);

DescentReport directional_descent(const Objective& obj, const Stage1Config& s1,
                                  const Stage2Config& s2);

/// Pure bound arithmetic; d_unit and d0 must be unit vectors (within 1e-9).
BoundCheck error_bound(double k, double r, double alpha, const Point& d_unit,
                       const Point& d0, double lhs);

}  // namespace dd
