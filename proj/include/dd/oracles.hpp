#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dd/core.hpp"

namespace dd {

/// One concrete counterexample to a claimed property. Fields that do not
/// apply to a given property are left at dimension zero / zero.
struct ViolationWitness {
  std::string property;
  std::string fn_id;
  Point x0;
  double delta = 0;
  Point d;
  Point a;
  Point b;
  double observed_lhs = 0;  // raw doubles; +-inf encode out-of-domain values
  double observed_rhs = 0;
  double margin = 0;  // how badly the property failed (larger = worse)
};

struct CheckReport {
  std::string property;
  long instances_checked = 0;
  std::vector<ViolationWitness> violations;  // worst first, at most 100 kept
  long violation_count = 0;                  // total found, including dropped
  long strict_ties = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::vector<std::pair<std::string, double>> diagnostics;

  bool pass() const { return violation_count == 0; }
  void add_violation(ViolationWitness w);
  /// Sort worst-margin-first (ties broken by lexicographic inputs) and trim.
  void finalize();
};

struct DirectionSweep {
  int sphere_count = 0;   // 0 = dimension default (2 / 720 / 2000)
  int radial_levels = 3;  // radii delta * l / levels, l = 1..levels
};

/// Sweep the closed delta-ball at x0 and test every probe against the point
/// at distance delta straight toward the known minimizer. Probes that do
/// strictly better are violations; exact ties elsewhere are tallied apart.
CheckReport check_optimal_direction(const Objective& obj, const Point& x0,
                                    double delta,
                                    const DirectionSweep& sweep = {});

/// Check strict decrease of f along the segment from x0 to the known
/// minimizer, over all ordered pairs of a uniform parameter grid.
CheckReport check_monotone_segment(const Objective& obj, const Point& x0,
                                   int grid = 50);

/// Reference envelope value by enumerating supports directly: singletons,
/// segments, and (in 2-D) triangles through the query point. Exponential in
/// spirit; no size guard, so keep clouds small.
ExtReal lce_exhaustive(const SampleCloud& cloud, const Point& x);

/// Guarded front end for lce_exhaustive: dimensions 1-2, at most 40 points.
ExtReal lce_bruteforce(const SampleCloud& cloud, const Point& x);

/// The sample minimizer must stay the unique envelope minimizer, with the
/// same value. Extra probe points are reported in diagnostics.
CheckReport check_minimizer_preservation(const SampleCloud& cloud,
                                         const std::vector<Point>& probes = {},
                                         double unique_tol = 1e-9);

/// Recomputing the envelope from the convexity-set samples alone must
/// reproduce the full envelope at every cloud point. tol 0 = default.
CheckReport check_envelope_restriction(const SampleCloud& cloud,
                                       double tol = 0);

/// Seeded random clouds: LP envelope vs exhaustive enumeration, plus the
/// 1-D hull interpolant.
CheckReport check_envelope_equivalence(std::uint64_t seed = 1,
                                       int clouds = 200);

/// Seeded random weighted combinations: support size, barycenter
/// preservation, and value non-increase after reduction.
CheckReport check_caratheodory(std::uint64_t seed = 1, int reductions = 1000);

/// Seeded random clouds: at hull-interior cloud points, the subgradient
/// certificate must be feasible exactly on the convexity set, with its gap
/// matching the envelope gap.
CheckReport check_subgradient_equivalence(std::uint64_t seed = 1,
                                          int clouds = 50);

}  // namespace dd
