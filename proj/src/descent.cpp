#include "dd/descent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dd {
namespace {

constexpr double kPi = 3.14159265358979323846;

int default_budget(Stage1Solver solver, int dim) {
  if (solver == Stage1Solver::angular_grid) {
    if (dim == 1) return 2;
    if (dim == 2) return 720;
    return 2000;
  }
  return 2000;
}

struct Probe {
  Point d;
  ExtReal value;
};

}  // namespace

std::vector<Point> sphere_directions(int dim, int count) {
  std::vector<Point> dirs;
  if (dim == 1) {
    dirs.emplace_back(std::vector<double>{1.0});
    dirs.emplace_back(std::vector<double>{-1.0});
    return dirs;
  }
  if (dim == 2) {
    dirs.reserve(count);
    for (int j = 0; j < count; ++j) {
      const double theta = 2.0 * kPi * j / count;
      dirs.emplace_back(std::vector<double>{std::cos(theta), std::sin(theta)});
    }
    return dirs;
  }
  if (dim == 3) {
    dirs.reserve(count);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * j;
      dirs.emplace_back(
          std::vector<double>{r * std::cos(phi), r * std::sin(phi), z});
    }
    return dirs;
  }
  throw InputError("sphere sweeps support dimensions 1 to 3");
}

namespace {

Stage1Result finish_on_sphere(const Objective& obj, const Stage1Config& cfg,
                              const Probe& best, ExtReal f0, int evals) {
  Stage1Result res;
  res.d_star = best.d;
  res.value = best.value;
  res.ball_best_d = best.d;
  res.ball_best_value = best.value;
  res.evaluations = evals;
  res.zero_progress = !(best.value < f0);
  (void)obj;
  (void)cfg;
  return res;
}

Stage1Result run_angular_grid(const Objective& obj, const Stage1Config& cfg,
                              int budget, ExtReal f0) {
  const auto dirs = sphere_directions(obj.dim, budget);
  Probe best;
  int evals = 0;
  for (const auto& u : dirs) {
    Point x = cfg.x0 + cfg.delta * u;
    ExtReal fx = obj.evaluate(x);
    ++evals;
    if (best.d.dim() == 0 || fx < best.value) best = {cfg.delta * u, fx};
  }
  return finish_on_sphere(obj, cfg, best, f0, evals);
}

Stage1Result run_compass(const Objective& obj, const Stage1Config& cfg,
                         int budget, ExtReal f0) {
  const int n = obj.dim;
  if (n == 1) return run_angular_grid(obj, cfg, 2, f0);

  auto axis = [&](int i, double sign) {
    std::vector<double> c(n, 0.0);
    c[i] = sign;
    return Point(c);
  };

  int evals = 0;
  auto eval_dir = [&](const Point& u) {
    ++evals;
    return obj.evaluate(cfg.x0 + cfg.delta * u);
  };

  Probe best;
  Point u = axis(0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      Point cand = axis(i, sign);
      ExtReal fc = eval_dir(cand);
      if (best.d.dim() == 0 || fc < best.value) {
        best = {cfg.delta * cand, fc};
        u = cand;
      }
    }
  }

  double phi = kPi / 4.0;
  ExtReal current = best.value;
  while (evals < budget && phi >= 1e-4) {
    bool improved = false;
    Point next = u;
    ExtReal next_value = current;
    for (int i = 0; i < n && evals < budget; ++i) {
      for (double sign : {1.0, -1.0}) {
        if (evals >= budget) break;
        Point raw = std::cos(phi) * u + (sign * std::sin(phi)) * axis(i, 1.0);
        if (raw.norm() < 1e-9) continue;  // rotation collapsed onto the axis
        Point cand = raw.normalized();
        ExtReal fc = eval_dir(cand);
        if (fc < next_value) {
          next = cand;
          next_value = fc;
          improved = true;
        }
      }
    }
    if (improved) {
      u = next;
      current = next_value;
      if (current < best.value) best = {cfg.delta * u, current};
    } else {
      phi *= 0.5;
    }
  }
  return finish_on_sphere(obj, cfg, best, f0, evals);
}

Stage1Result run_projected_subgradient(const Objective& obj,
                                       const Stage1Config& cfg, int budget,
                                       ExtReal f0) {
  const int n = obj.dim;
  const double k = obj.lipschitz_k > 0 ? obj.lipschitz_k : 1.0;
  int evals = 0;

  auto eval_at = [&](const Point& d) {
    ++evals;
    return obj.evaluate(cfg.x0 + d);
  };

  // Central differences with one-sided fallback near the domain boundary.
  auto gradient = [&](const Point& x) {
    if (obj.subgradient_hint) return (*obj.subgradient_hint)(x);
    const double h = 1e-6;
    ExtReal fc = obj.evaluate(x);
    ++evals;
    std::vector<double> g(n, 0.0);
    for (int i = 0; i < n; ++i) {
      auto shift = [&](double step) {
        auto c = x.coords();
        c[i] += step;
        ++evals;
        return obj.evaluate(Point(c));
      };
      ExtReal fp = shift(h);
      ExtReal fm = shift(-h);
      if (fp.finite() && fm.finite()) {
        g[i] = (fp.value() - fm.value()) / (2.0 * h);
      } else if (fp.finite() && fc.finite()) {
        g[i] = (fp.value() - fc.value()) / h;
      } else if (fm.finite() && fc.finite()) {
        g[i] = (fc.value() - fm.value()) / h;
      }
    }
    return Point(g);
  };

  Point d(std::vector<double>(n, 0.0));
  Point best_d = d;
  ExtReal best_value = f0;

  for (int iter = 1; evals < budget; ++iter) {
    Point g = gradient(cfg.x0 + d);
    if (g.norm() < 1e-14) break;
    const double t = cfg.delta / (k * std::sqrt(static_cast<double>(iter)));
    Point next = d - t * g;
    if (next.norm() > cfg.delta) next = (cfg.delta / next.norm()) * next;
    ExtReal fn = eval_at(next);
    if (fn < best_value) {
      best_value = fn;
      best_d = next;
    }
    d = next;
  }

  Stage1Result res;
  res.ball_best_d = best_d;
  res.ball_best_value = best_value;
  res.zero_progress = !(best_value < f0);

  Point u(std::vector<double>(n, 0.0));
  if (best_d.norm() > 1e-12) {
    u = best_d.normalized();
  } else {
    // Nothing beat the center; fall back to the steepest axis probe so the
    // reported direction still lies on the sphere.
    Probe best;
    for (int i = 0; i < n; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> c(n, 0.0);
        c[i] = sign;
        Point cand(c);
        ExtReal fc = eval_at(cfg.delta * cand);
        if (best.d.dim() == 0 || fc < best.value) best = {cand, fc};
      }
    }
    u = best.d;
  }
  res.d_star = cfg.delta * u;
  res.value = obj.evaluate(cfg.x0 + res.d_star);
  ++evals;
  res.evaluations = evals;
  if (res.value < res.ball_best_value) {
    res.ball_best_d = res.d_star;
    res.ball_best_value = res.value;
  }
  return res;
}

}  // namespace

Stage1Solver stage1_solver_from_string(const std::string& name) {
  if (name == "angular-grid" || name == "angular_grid") {
    return Stage1Solver::angular_grid;
  }
  if (name == "projected-subgradient" || name == "projected_subgradient") {
    return Stage1Solver::projected_subgradient;
  }
  if (name == "compass-search" || name == "compass_search") {
    return Stage1Solver::compass_search;
  }
  throw InputError("unknown stage-1 solver: " + name);
}

std::string to_string(Stage1Solver solver) {
  switch (solver) {
    case Stage1Solver::angular_grid:
      return "angular-grid";
    case Stage1Solver::projected_subgradient:
      return "projected-subgradient";
    case Stage1Solver::compass_search:
      return "compass-search";
  }
  return "?";
}

Stage1Result stage1_direction(const Objective& obj, const Stage1Config& cfg) {
  if (cfg.x0.dim() != obj.dim) {
    throw InputError("start point dimension mismatch");
  }
  if (!(cfg.delta > 0)) throw InputError("delta must be positive");
  if (!obj.domain.contains_ball(cfg.x0, cfg.delta)) {
    throw InputError("the delta-ball around x0 must lie inside the domain");
  }

  ExtReal f0 = obj.evaluate(cfg.x0);
  const int budget = cfg.budget > 0 ? cfg.budget
                                    : default_budget(cfg.solver, obj.dim);
  Stage1Result res;
  switch (cfg.solver) {
    case Stage1Solver::angular_grid:
      res = run_angular_grid(obj, cfg, budget, f0);
      break;
    case Stage1Solver::compass_search:
      res = run_compass(obj, cfg, budget, f0);
      break;
    case Stage1Solver::projected_subgradient:
      res = run_projected_subgradient(obj, cfg, budget, f0);
      break;
  }
  res.evaluations += 1;  // f(x0)
  return res;
}

std::vector<TraceEntry> stage2_march(const Objective& obj, const Point& x0,
                                     const Point& d, const Stage2Config& cfg) {
  if (!(cfg.alpha > 0)) throw InputError("alpha must be positive");
  if (d.norm() <= 0) throw InputError("march direction must be nonzero");
  const Point u = d.normalized();

  int max_steps = cfg.max_steps;
  if (max_steps <= 0) {
    const double diam = obj.domain.diameter();
    max_steps = static_cast<int>(std::ceil(diam / cfg.alpha)) + 1;
  }

  std::vector<TraceEntry> trace;
  ExtReal best = ExtReal::inf();
  int stale = 0;
  for (int m = 0; m <= max_steps; ++m) {
    Point x = x0 + (m * cfg.alpha) * u;
    ExtReal fx = obj.evaluate(x);
    trace.push_back({m, x, fx});
    if (fx < best) {
      best = fx;
      stale = 0;
    } else {
      ++stale;
      if (stale >= cfg.patience) break;
    }
  }
  return trace;
}

DescentReport directional_descent(const Objective& obj, const Stage1Config& s1,
                                  const Stage2Config& s2) {
  DescentReport report;
  ExtReal f0 = obj.evaluate(s1.x0);
  report.stage1 = stage1_direction(obj, s1);
  report.d_star = report.stage1.d_star;
  report.evaluations = report.stage1.evaluations + 1;

  const auto& st1 = report.stage1;
  const ExtReal stage1_best =
      st1.ball_best_value < st1.value ? st1.ball_best_value : st1.value;

  if (s2.target && stage1_best.finite() &&
      stage1_best.value() <= *s2.target) {
    report.skipped_stage2 = true;
    report.skip_reason = "target reached during stage 1";
  } else if (st1.ball_best_d.norm() < s1.delta * (1.0 - 1e-9) &&
             st1.ball_best_value < st1.value) {
    report.skipped_stage2 = true;
    report.skip_reason = "stage 1 found an interior optimum of the ball";
  } else if (st1.zero_progress) {
    report.skipped_stage2 = true;
    report.skip_reason = "no direction improved on f(x0)";
  }

  if (report.skipped_stage2) {
    report.trace.push_back({0, s1.x0, f0});
  } else {
    report.trace = stage2_march(obj, s1.x0, st1.d_star, s2);
    report.evaluations += static_cast<int>(report.trace.size());
  }

  // Best iterate over the march plus both stage-1 probes.
  report.best_x = report.trace.front().x;
  report.best_f = report.trace.front().f;
  for (const auto& entry : report.trace) {
    if (entry.f < report.best_f) {
      report.best_f = entry.f;
      report.best_x = entry.x;
    }
  }
  if (st1.value < report.best_f) {
    report.best_f = st1.value;
    report.best_x = s1.x0 + st1.d_star;
  }
  if (st1.ball_best_value < report.best_f) {
    report.best_f = st1.ball_best_value;
    report.best_x = s1.x0 + st1.ball_best_d;
  }

  if (obj.known_minimizer && obj.known_min_value) {
    const Point& xstar = *obj.known_minimizer;
    const double r = s1.x0.dist(xstar);
    const double k = obj.lipschitz_k;
    if (r <= 1e-12) {
      BoundCheck bc;
      bc.k = k;
      bc.r = 0.0;
      bc.dist = 0.0;
      bc.m_star = 0;
      bc.lhs = f0.finite() ? f0.value() - *obj.known_min_value
                           : std::numeric_limits<double>::infinity();
      bc.rhs = k * s2.alpha;
      bc.satisfied = bc.lhs <= bc.rhs + 1e-9;
      report.bound = bc;
    } else {
      const Point d0 = (1.0 / r) * (xstar - s1.x0);
      const Point u = (1.0 / s1.delta) * st1.d_star;
      // The nudge keeps ratios like 0.25/0.05 from flooring one step short.
      const long m_star = static_cast<long>(std::floor(r / s2.alpha + 1e-9));
      Point probe = s1.x0 + (static_cast<double>(m_star) * s2.alpha) * u;
      ExtReal fp = obj.evaluate(probe);
      report.evaluations += 1;
      const double lhs = fp.finite()
                             ? fp.value() - *obj.known_min_value
                             : std::numeric_limits<double>::infinity();
      report.bound = error_bound(k, r, s2.alpha, u, d0, lhs);
    }
  }
  return report;
}

BoundCheck error_bound(double k, double r, double alpha, const Point& d_unit,
                       const Point& d0, double lhs) {
  if (!(alpha > 0)) throw InputError("alpha must be positive");
  if (k < 0 || r < 0) throw InputError("k and r must be nonnegative");
  if (std::abs(d_unit.norm() - 1.0) > 1e-9 || std::abs(d0.norm() - 1.0) > 1e-9) {
    throw InputError("error_bound expects unit directions");
  }
  BoundCheck bc;
  bc.k = k;
  bc.r = r;
  bc.dist = d_unit.dist(d0);
  bc.m_star = static_cast<long>(std::floor(r / alpha + 1e-9));
  bc.lhs = lhs;
  bc.rhs = k * alpha + k * r * bc.dist;
  bc.satisfied = lhs <= bc.rhs + 1e-9;
  return bc;
}

}  // namespace dd
