#include "dd/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dd {

double default_convexity_tol(const SampleCloud& cloud) {
  return 1e-7 * std::max(1.0, cloud.value_range());
}

EnvelopeCertificate lce_value(const SampleCloud& cloud, const Point& x) {
  if (x.dim() != cloud.dim())
    throw InputError("lce_value: query dimension mismatch");
  const int n = cloud.dim();
  const int m = cloud.size();

  // min sum_k lambda_k f_k  s.t.  sum_k lambda_k x_k = x, sum_k lambda_k = 1
  LpProblem p;
  p.c = cloud.values();
  p.a.assign(n + 1, std::vector<double>(m, 1.0));
  p.b.assign(n + 1, 1.0);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < m; ++k) p.a[r][k] = cloud.point(k)[r];
    p.b[r] = x[r];
  }
  LpSolution s = solve_lp(p);

  EnvelopeCertificate cert;
  cert.query = x;
  if (s.status == LpStatus::infeasible) {
    cert.value = ExtReal::inf();
    return cert;
  }
  if (s.status != LpStatus::optimal)
    throw NumericalError("lce_value: support LP failed");

  std::vector<Point> pts;
  std::vector<double> w, fv;
  double wsum = 0;
  for (int k = 0; k < m; ++k)
    if (s.x[k] > 1e-10) {
      pts.push_back(cloud.point(k));
      w.push_back(s.x[k]);
      fv.push_back(cloud.value(k));
      wsum += s.x[k];
    }
  for (double& v : w) v /= wsum;
  std::vector<int> kept;
  WeightedCombination reduced =
      caratheodory_reduce(WeightedCombination(pts, w), &fv, &kept);

  cert.value = ExtReal(s.value);
  cert.support = reduced.points();
  cert.weights = reduced.weights();
  for (int i : kept) cert.support_values.push_back(fv[i]);
  return cert;
}

ConvexityMask convexity_set(const SampleCloud& cloud, double tol) {
  if (!(tol > 0)) throw InputError("convexity_set: tolerance must be positive");
  ConvexityMask mask;
  mask.tol = tol;
  for (int i = 0; i < cloud.size(); ++i) {
    EnvelopeCertificate cert = lce_value(cloud, cloud.point(i));
    if (!cert.value.finite())
      throw NumericalError("convexity_set: envelope infeasible at a sample");
    double env = cert.value.value();
    mask.envelope.push_back(env);
    mask.gap.push_back(cloud.value(i) - env);
    mask.in_set.push_back(mask.gap.back() <= tol);
  }
  return mask;
}

ConvexityMask convexity_set(const SampleCloud& cloud) {
  return convexity_set(cloud, default_convexity_tol(cloud));
}

double convexity_radius(const SampleCloud& cloud, const Point& x0, double tol) {
  int i0 = -1;
  for (int i = 0; i < cloud.size() && i0 < 0; ++i)
    if (cloud.point(i).dist(x0) <= kMembershipTol) i0 = i;
  if (i0 < 0)
    throw InputError("convexity_radius: x0 is not a cloud point");
  ConvexityMask mask = convexity_set(cloud, tol);
  if (!mask.in_set[i0])
    throw InputError("convexity_radius: x0 is not a point of convexity");

  std::vector<std::pair<double, bool>> by_dist;
  for (int i = 0; i < cloud.size(); ++i)
    by_dist.push_back({cloud.point(i).dist(x0), static_cast<bool>(mask.in_set[i])});
  std::sort(by_dist.begin(), by_dist.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // walk outward by distance level; stop before the first level with a bad point
  double best = 0;
  std::size_t i = 0;
  while (i < by_dist.size()) {
    double d = by_dist[i].first;
    bool all_good = true;
    std::size_t j = i;
    while (j < by_dist.size() && by_dist[j].first <= d + kDuplicateTol) {
      all_good = all_good && by_dist[j].second;
      ++j;
    }
    if (!all_good) break;
    best = by_dist[j - 1].first;
    i = j;
  }
  return best;
}

double convexity_radius(const SampleCloud& cloud, const Point& x0) {
  return convexity_radius(cloud, x0, default_convexity_tol(cloud));
}

SubgradientCertificate subgradient_certificate(const SampleCloud& cloud,
                                               const Point& z, double tol) {
  if (z.dim() != cloud.dim())
    throw InputError("subgradient_certificate: dimension mismatch");
  if (!(tol > 0))
    throw InputError("subgradient_certificate: tolerance must be positive");
  int iz = -1;
  for (int i = 0; i < cloud.size() && iz < 0; ++i)
    if (cloud.point(i).dist(z) <= kMembershipTol) iz = i;
  if (iz < 0)
    throw InputError("subgradient_certificate: z is not a cloud point");
  const int n = cloud.dim();
  const int m = cloud.size();
  const double fz = cloud.value(iz);

  // min s  s.t.  g.(x_i - z) - s + t_i = f_i - f(z),  g = g+ - g-, all vars >= 0.
  // The optimum is max_i violation of the minorant, so feasibility <=> opt <= tol.
  LpProblem p;
  const int cols = 2 * n + 1 + m;
  p.c.assign(cols, 0.0);
  p.c[2 * n] = 1.0;
  p.a.assign(m, std::vector<double>(cols, 0.0));
  p.b.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int d = 0; d < n; ++d) {
      double coef = cloud.point(i)[d] - z[d];
      p.a[i][d] = coef;
      p.a[i][n + d] = -coef;
    }
    p.a[i][2 * n] = -1.0;
    p.a[i][2 * n + 1 + i] = 1.0;
    p.b[i] = cloud.value(i) - fz;
  }
  LpSolution s = solve_lp(p);
  if (s.status != LpStatus::optimal)
    throw NumericalError("subgradient_certificate: Chebyshev LP failed");

  SubgradientCertificate cert;
  cert.z = z;
  cert.feasible = s.value <= tol;
  cert.gap = cert.feasible ? std::max(0.0, s.value) : s.value;
  std::vector<double> g(n);
  for (int d = 0; d < n; ++d) g[d] = s.x[d] - s.x[n + d];
  cert.g = Point(std::move(g));
  return cert;
}

}  // namespace dd
