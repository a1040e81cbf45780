#pragma once

#include <vector>

#include "dd/core.hpp"
#include "dd/hull_lp.hpp"

namespace dd {

/// Envelope value at a query point plus the optimal support certificate.
struct EnvelopeCertificate {
  Point query;
  ExtReal value;                       // +inf when the query is outside the hull
  std::vector<Point> support;          // <= n+1 points; empty when value is +inf
  std::vector<double> weights;
  std::vector<double> support_values;  // f at the support points
};

/// Per-sample envelope values, gaps and convexity flags for a cloud.
struct ConvexityMask {
  std::vector<double> envelope;
  std::vector<double> gap;      // f_i - envelope_i, >= -1e-8
  std::vector<bool> in_set;     // gap <= tol
  double tol = 0;
};

struct SubgradientCertificate {
  Point z;
  bool feasible = false;
  Point g;         // certificate vector when feasible
  double gap = 0;  // Chebyshev optimum; clamped at 0 when feasible
};

/// Default convexity tolerance: 1e-7 relative to the value range, floored so
/// near-constant clouds don't dip under LP noise.
double default_convexity_tol(const SampleCloud& cloud);

/// Lower convex envelope of the cloud at x via the support LP. Returns
/// +infinity with empty support when x lies outside the hull of the samples.
EnvelopeCertificate lce_value(const SampleCloud& cloud, const Point& x);

/// Points of convexity: samples where the envelope touches f (gap <= tol).
ConvexityMask convexity_set(const SampleCloud& cloud, double tol);
ConvexityMask convexity_set(const SampleCloud& cloud);

/// Largest realized sample distance from x0 whose closed ball contains only
/// points of convexity, walking samples outward; 0 when a non-convexity point
/// is nearest. x0 must be a cloud point inside the set, else InputError.
double convexity_radius(const SampleCloud& cloud, const Point& x0, double tol);
double convexity_radius(const SampleCloud& cloud, const Point& x0);

/// Best affine minorant pinned at cloud point z, as a Chebyshev LP over the
/// samples. Feasible iff the optimum is <= tol. By LP duality the optimum
/// equals the envelope gap at z.
SubgradientCertificate subgradient_certificate(const SampleCloud& cloud,
                                               const Point& z, double tol = 1e-8);

}  // namespace dd
