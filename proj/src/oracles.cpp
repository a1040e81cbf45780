#include "dd/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dd/descent.hpp"
#include "dd/envelope.hpp"
#include "dd/hull_lp.hpp"

namespace dd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int point_cmp(const Point& p, const Point& q) {
  if (lex_less(p, q)) return -1;
  if (lex_less(q, p)) return 1;
  return 0;
}

bool witness_before(const ViolationWitness& lhs, const ViolationWitness& rhs) {
  if (lhs.margin != rhs.margin) return lhs.margin > rhs.margin;
  if (int c = point_cmp(lhs.x0, rhs.x0)) return c < 0;
  if (int c = point_cmp(lhs.a, rhs.a)) return c < 0;
  if (int c = point_cmp(lhs.b, rhs.b)) return c < 0;
  return point_cmp(lhs.d, rhs.d) < 0;
}

// Difference that stays meaningful when either side is +infinity.
double safe_margin(double lhs, double rhs) {
  if (std::isinf(lhs) && lhs == rhs) return 0.0;  // agreeing at +-inf
  return lhs - rhs;
}

SampleCloud random_cloud(Rng& rng, int dim, int size) {
  const Point lo(std::vector<double>(dim, -1.0));
  const Point hi(std::vector<double>(dim, 1.0));
  std::vector<Point> pts;
  std::vector<double> vals;
  pts.reserve(size);
  vals.reserve(size);
  for (int i = 0; i < size; ++i) {
    pts.push_back(rng.point_in_box(lo, hi));
    vals.push_back(rng.uniform(-1.0, 1.0));
  }
  return SampleCloud(pts, vals);
}

bool hull_interior(const std::vector<Point>& pts, const Point& z) {
  const int n = z.dim();
  for (int i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      auto c = z.coords();
      c[i] += sign * 1e-6;
      if (hull_membership_residual(pts, Point(c)) > 1e-8) return false;
    }
  }
  return true;
}

}  // namespace

void CheckReport::add_violation(ViolationWitness w) {
  ++violation_count;
  violations.push_back(std::move(w));
}

void CheckReport::finalize() {
  std::stable_sort(violations.begin(), violations.end(), witness_before);
  if (violations.size() > 100) violations.resize(100);
}

CheckReport check_optimal_direction(const Objective& obj, const Point& x0,
                                    double delta, const DirectionSweep& sweep) {
  if (!obj.known_minimizer || !obj.known_min_value) {
    throw InputError("optimal-direction check needs a known minimizer");
  }
  if (x0.dim() != obj.dim) throw InputError("start point dimension mismatch");
  const Point& xstar = *obj.known_minimizer;
  const double r = x0.dist(xstar);
  if (r <= 1e-12) throw InputError("x0 must differ from the minimizer");
  if (!(delta > 0) || delta > r * (1.0 + 1e-12)) {
    throw InputError("need 0 < delta <= |x* - x0|");
  }
  const Point d0 = (1.0 / r) * (xstar - x0);
  const ExtReal ref = obj.evaluate(x0 + delta * d0);
  if (!ref.finite()) {
    throw NumericalError("reference point evaluates to +infinity");
  }

  CheckReport rep;
  rep.property = "optimal-direction";
  rep.tolerances["strict"] = 1e-9;
  const int count = sweep.sphere_count > 0
                        ? sweep.sphere_count
                        : (obj.dim == 1 ? 2 : obj.dim == 2 ? 720 : 2000);
  const Point ref_d = delta * d0;
  for (const auto& u : sphere_directions(obj.dim, count)) {
    for (int l = 1; l <= sweep.radial_levels; ++l) {
      const Point dvec = (delta * l / sweep.radial_levels) * u;
      const double fx = obj.evaluate(x0 + dvec).raw();
      ++rep.instances_checked;
      if (fx < ref.value() - 1e-9) {
        ViolationWitness w;
        w.property = rep.property;
        w.fn_id = obj.name;
        w.x0 = x0;
        w.delta = delta;
        w.d = dvec;
        w.observed_lhs = fx;
        w.observed_rhs = ref.value();
        w.margin = ref.value() - fx;
        rep.add_violation(std::move(w));
      } else if (std::abs(fx - ref.value()) <= 1e-9 &&
                 dvec.dist(ref_d) > 1e-9) {
        ++rep.strict_ties;
      }
    }
  }
  rep.finalize();
  return rep;
}

CheckReport check_monotone_segment(const Objective& obj, const Point& x0,
                                   int grid) {
  if (!obj.known_minimizer) {
    throw InputError("monotone-segment check needs a known minimizer");
  }
  if (x0.dim() != obj.dim) throw InputError("start point dimension mismatch");
  if (grid < 2) throw InputError("grid must have at least two points");
  const Point& xstar = *obj.known_minimizer;
  if (x0.dist(xstar) <= 1e-12) {
    throw InputError("x0 must differ from the minimizer");
  }

  std::vector<Point> z;
  std::vector<double> f;
  z.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / (grid - 1);
    z.push_back(x0 + t * (xstar - x0));
    f.push_back(obj.evaluate(z.back()).raw());
  }

  CheckReport rep;
  rep.property = "monotone-segment";
  rep.tolerances["strict"] = 1e-12;
  for (int i = 0; i < grid; ++i) {
    for (int j = i + 1; j < grid; ++j) {
      ++rep.instances_checked;
      if (f[j] >= f[i] - 1e-12) {
        ViolationWitness w;
        w.property = rep.property;
        w.fn_id = obj.name;
        w.x0 = x0;
        w.a = z[i];
        w.b = z[j];
        w.observed_lhs = f[j];
        w.observed_rhs = f[i];
        w.margin = safe_margin(f[j], f[i]);
        rep.add_violation(std::move(w));
      }
    }
  }
  rep.finalize();
  return rep;
}

ExtReal lce_exhaustive(const SampleCloud& cloud, const Point& x) {
  const int n = cloud.dim();
  if (x.dim() != n) throw InputError("query point dimension mismatch");
  if (n > 2) throw InputError("exhaustive envelope supports dimensions 1-2");
  const int m = cloud.size();
  double best = kInf;

  for (int i = 0; i < m; ++i) {
    if (x.dist(cloud.point(i)) <= 1e-9) best = std::min(best, cloud.value(i));
  }

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Point& p = cloud.point(i);
      const Point seg = cloud.point(j) - p;
      const double len2 = seg.dot(seg);
      if (len2 < 1e-24) continue;
      double t = (x - p).dot(seg) / len2;
      if (t < -1e-9 || t > 1.0 + 1e-9) continue;
      t = std::clamp(t, 0.0, 1.0);
      if ((p + t * seg).dist(x) > 1e-9) continue;
      best = std::min(best, (1.0 - t) * cloud.value(i) + t * cloud.value(j));
    }
  }

  if (n == 2) {
    for (int i = 0; i < m; ++i) {
      const Point& p = cloud.point(i);
      for (int j = i + 1; j < m; ++j) {
        const Point u = cloud.point(j) - p;
        for (int k = j + 1; k < m; ++k) {
          const Point v = cloud.point(k) - p;
          const double det = u[0] * v[1] - u[1] * v[0];
          if (std::abs(det) <= 1e-12) continue;
          const double rx = x[0] - p[0];
          const double ry = x[1] - p[1];
          const double l1 = (rx * v[1] - ry * v[0]) / det;
          const double l2 = (ry * u[0] - rx * u[1]) / det;
          const double l0 = 1.0 - l1 - l2;
          if (l0 < -1e-9 || l1 < -1e-9 || l2 < -1e-9) continue;
          best = std::min(best, l0 * cloud.value(i) + l1 * cloud.value(j) +
                                    l2 * cloud.value(k));
        }
      }
    }
  }

  return std::isinf(best) ? ExtReal::inf() : ExtReal(best);
}

ExtReal lce_bruteforce(const SampleCloud& cloud, const Point& x) {
  if (cloud.dim() > 2) {
    throw InputError("brute-force envelope supports dimensions 1-2");
  }
  if (cloud.size() > 40) {
    throw InputError("brute-force envelope is capped at 40 points");
  }
  return lce_exhaustive(cloud, x);
}

CheckReport check_minimizer_preservation(const SampleCloud& cloud,
                                         const std::vector<Point>& probes,
                                         double unique_tol) {
  const int m = cloud.size();
  if (m < 2) throw InputError("need at least two samples");

  int fmin_idx = 0;
  for (int i = 1; i < m; ++i) {
    if (cloud.value(i) < cloud.value(fmin_idx)) fmin_idx = i;
  }
  double f_second = kInf;
  for (int i = 0; i < m; ++i) {
    if (i != fmin_idx) f_second = std::min(f_second, cloud.value(i));
  }
  if (f_second - cloud.value(fmin_idx) <= unique_tol) {
    throw InputError("sample minimizer is not unique");
  }

  CheckReport rep;
  rep.property = "minimizer-preservation";
  rep.tolerances["unique"] = unique_tol;
  rep.tolerances["value"] = 1e-9;

  const ConvexityMask mask = convexity_set(cloud);
  int emin_idx = 0;
  for (int i = 1; i < m; ++i) {
    if (mask.envelope[i] < mask.envelope[emin_idx]) emin_idx = i;
  }
  double e_second = kInf;
  for (int i = 0; i < m; ++i) {
    if (i != emin_idx) e_second = std::min(e_second, mask.envelope[i]);
  }
  rep.instances_checked = m;

  auto witness = [&](double lhs, double rhs, double margin) {
    ViolationWitness w;
    w.property = rep.property;
    w.fn_id = "cloud";
    w.x0 = cloud.point(emin_idx);
    w.a = cloud.point(fmin_idx);
    w.observed_lhs = lhs;
    w.observed_rhs = rhs;
    w.margin = margin;
    rep.add_violation(std::move(w));
  };

  if (emin_idx != fmin_idx) {
    witness(mask.envelope[emin_idx], cloud.value(fmin_idx),
            cloud.value(fmin_idx) - mask.envelope[emin_idx]);
  }
  if (std::abs(mask.envelope[emin_idx] - cloud.value(fmin_idx)) > 1e-9) {
    witness(mask.envelope[emin_idx], cloud.value(fmin_idx),
            std::abs(mask.envelope[emin_idx] - cloud.value(fmin_idx)));
  }
  if (e_second - mask.envelope[emin_idx] <= unique_tol) {
    witness(e_second, mask.envelope[emin_idx],
            unique_tol - (e_second - mask.envelope[emin_idx]));
  }

  for (const auto& p : probes) {
    rep.diagnostics.emplace_back(to_string(p), lce_value(cloud, p).value.raw());
  }
  rep.finalize();
  return rep;
}

CheckReport check_envelope_restriction(const SampleCloud& cloud, double tol) {
  if (tol <= 0) tol = default_convexity_tol(cloud);
  const ConvexityMask mask = convexity_set(cloud, tol);

  std::vector<Point> pts;
  std::vector<double> vals;
  for (int i = 0; i < cloud.size(); ++i) {
    if (mask.in_set[i]) {
      pts.push_back(cloud.point(i));
      vals.push_back(cloud.value(i));
    }
  }
  const SampleCloud restricted(pts, vals);

  CheckReport rep;
  rep.property = "envelope-restriction";
  rep.tolerances["match"] = 1e-7;
  rep.tolerances["convexity"] = tol;
  rep.diagnostics.emplace_back("restricted-size",
                               static_cast<double>(restricted.size()));

  for (int i = 0; i < cloud.size(); ++i) {
    ++rep.instances_checked;
    const double full = mask.envelope[i];
    const double sub = lce_value(restricted, cloud.point(i)).value.raw();
    if (std::abs(safe_margin(sub, full)) > 1e-7) {
      ViolationWitness w;
      w.property = rep.property;
      w.fn_id = "cloud";
      w.x0 = cloud.point(i);
      w.observed_lhs = sub;
      w.observed_rhs = full;
      w.margin = std::abs(safe_margin(sub, full));
      rep.add_violation(std::move(w));
    }
  }
  rep.finalize();
  return rep;
}

CheckReport check_envelope_equivalence(std::uint64_t seed, int clouds) {
  Rng rng(seed);
  CheckReport rep;
  rep.property = "envelope-equivalence";
  rep.seed = seed;
  rep.tolerances["match"] = 1e-8;

  for (int t = 0; t < clouds; ++t) {
    const int n = 1 + t % 2;
    const SampleCloud cloud = random_cloud(rng, n, rng.uniform_int(3, 25));
    const std::string id = "cloud-" + std::to_string(t);

    std::vector<Point> queries;
    for (int i = 0; i < cloud.size(); ++i) queries.push_back(cloud.point(i));
    const Point lo(std::vector<double>(n, -1.0));
    const Point hi(std::vector<double>(n, 1.0));
    for (int q = 0; q < 5; ++q) queries.push_back(rng.point_in_box(lo, hi));
    const Point lo_out(std::vector<double>(n, 2.0));
    const Point hi_out(std::vector<double>(n, 3.0));
    for (int q = 0; q < 2; ++q)
      queries.push_back(rng.point_in_box(lo_out, hi_out));

    std::vector<HullVertex> hull;
    if (n == 1) hull = lower_hull_1d(cloud);

    for (const auto& q : queries) {
      const double lp = lce_value(cloud, q).value.raw();
      const double brute = lce_exhaustive(cloud, q).raw();
      ++rep.instances_checked;
      if (std::abs(safe_margin(lp, brute)) > 1e-8) {
        ViolationWitness w;
        w.property = rep.property;
        w.fn_id = id;
        w.x0 = q;
        w.observed_lhs = lp;
        w.observed_rhs = brute;
        w.margin = std::abs(safe_margin(lp, brute));
        rep.add_violation(std::move(w));
      }
      if (n == 1) {
        const double hv = hull_interpolate(hull, q[0]).raw();
        ++rep.instances_checked;
        if (std::abs(safe_margin(lp, hv)) > 1e-8) {
          ViolationWitness w;
          w.property = rep.property;
          w.fn_id = id + "/hull";
          w.x0 = q;
          w.observed_lhs = lp;
          w.observed_rhs = hv;
          w.margin = std::abs(safe_margin(lp, hv));
          rep.add_violation(std::move(w));
        }
      }
    }
  }
  rep.finalize();
  return rep;
}

CheckReport check_caratheodory(std::uint64_t seed, int reductions) {
  Rng rng(seed);
  CheckReport rep;
  rep.property = "caratheodory";
  rep.seed = seed;
  rep.tolerances["barycenter"] = 1e-9;
  rep.tolerances["value"] = 1e-9;

  for (int t = 0; t < reductions; ++t) {
    const int n = 1 + t % 3;
    const int m = rng.uniform_int(n + 2, 12);
    const Point lo(std::vector<double>(n, -1.0));
    const Point hi(std::vector<double>(n, 1.0));
    std::vector<Point> pts;
    std::vector<double> raw(m), vals(m);
    double total = 0;
    for (int i = 0; i < m; ++i) {
      pts.push_back(rng.point_in_box(lo, hi));
      raw[i] = rng.uniform(0.01, 1.0);
      total += raw[i];
      vals[i] = rng.uniform(-1.0, 1.0);
    }
    for (double& w : raw) w /= total;

    const WeightedCombination comb(pts, raw);
    const Point before_bar = comb.barycenter();
    double before_val = 0;
    for (int i = 0; i < m; ++i) before_val += raw[i] * vals[i];

    std::vector<int> kept;
    const WeightedCombination red = caratheodory_reduce(comb, &vals, &kept);
    double after_val = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      after_val += red.weights()[i] * vals[kept[i]];
    }
    ++rep.instances_checked;

    const double bar_err = red.barycenter().dist(before_bar);
    const bool size_ok = red.size() <= n + 1;
    const bool value_ok = after_val <= before_val + 1e-9;
    if (bar_err > 1e-9 || !size_ok || !value_ok) {
      ViolationWitness w;
      w.property = rep.property;
      w.fn_id = "combination-" + std::to_string(t);
      w.x0 = before_bar;
      w.a = red.barycenter();
      w.observed_lhs = after_val;
      w.observed_rhs = before_val;
      w.margin = std::max({bar_err, after_val - before_val,
                           size_ok ? 0.0 : static_cast<double>(red.size())});
      rep.add_violation(std::move(w));
    }
  }
  rep.finalize();
  return rep;
}

CheckReport check_subgradient_equivalence(std::uint64_t seed, int clouds) {
  Rng rng(seed);
  CheckReport rep;
  rep.property = "subgradient-equivalence";
  rep.seed = seed;
  rep.tolerances["gap-match"] = 1e-6;

  for (int t = 0; t < clouds; ++t) {
    const int n = 1 + t % 2;
    const SampleCloud cloud = random_cloud(rng, n, rng.uniform_int(4, 20));
    const double tol = default_convexity_tol(cloud);
    const ConvexityMask mask = convexity_set(cloud, tol);
    const std::string id = "cloud-" + std::to_string(t);

    for (int i = 0; i < cloud.size(); ++i) {
      const Point& z = cloud.point(i);
      if (!hull_interior(cloud.points(), z)) continue;
      const SubgradientCertificate cert = subgradient_certificate(cloud, z, tol);
      ++rep.instances_checked;

      if (cert.feasible != static_cast<bool>(mask.in_set[i])) {
        ViolationWitness w;
        w.property = rep.property;
        w.fn_id = id;
        w.x0 = z;
        w.observed_lhs = cert.gap;
        w.observed_rhs = mask.gap[i];
        w.margin = std::max(cert.gap, mask.gap[i]);
        rep.add_violation(std::move(w));
      } else if (std::abs(cert.gap - mask.gap[i]) > 1e-6) {
        ViolationWitness w;
        w.property = rep.property;
        w.fn_id = id + "/gap";
        w.x0 = z;
        w.observed_lhs = cert.gap;
        w.observed_rhs = mask.gap[i];
        w.margin = std::abs(cert.gap - mask.gap[i]);
        rep.add_violation(std::move(w));
      }
    }
  }
  rep.finalize();
  return rep;
}

}  // namespace dd
