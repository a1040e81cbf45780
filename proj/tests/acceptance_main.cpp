// Acceptance gate: one line per criterion, exit code = number of failures.
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dd/cli.hpp"
#include "dd/core.hpp"
#include "dd/descent.hpp"
#include "dd/envelope.hpp"
#include "dd/hull_lp.hpp"
#include "dd/oracles.hpp"
#include "dd/testfns.hpp"

using namespace dd;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void criterion(int n, const std::string& what,
               const std::function<std::string()>& run) {
  try {
    const std::string detail = run();  // empty = pass
    report(n, what, detail.empty(), detail);
  } catch (const std::exception& e) {
    report(n, what, false, std::string("exception: ") + e.what());
  }
}

Point default_start(const Objective& obj) {
  const Box box = obj.domain.bounding_box();
  return *obj.known_minimizer + 0.5 * (box.hi - *obj.known_minimizer);
}

double boundary_gap(const Objective& obj, const Point& x0) {
  const Box box = obj.domain.bounding_box();
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x0.dim(); ++i) {
    gap = std::min({gap, x0[i] - box.lo[i], box.hi[i] - x0[i]});
  }
  return gap;
}

std::vector<std::string> ids_with_tags(const std::vector<std::string>& tags) {
  std::vector<std::string> out;
  for (const auto& id : list_functions()) {
    const RegistryEntry e = get_function(id);
    bool all = true;
    for (const auto& t : tags) all = all && e.has_tag(t);
    if (all) out.push_back(id);
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ------------------------------------------------------------- criteria

std::string envelope_oracle_equivalence() {
  const CheckReport rep = check_envelope_equivalence(1, 200);
  if (!rep.pass()) {
    return "LP vs enumeration: " + std::to_string(rep.violation_count) +
           " mismatches";
  }

  // 1-D cross-check against the hull interpolant: 20 clouds x 50 queries.
  Rng rng(42);
  long queries = 0;
  for (int c = 0; c < 20; ++c) {
    std::vector<Point> pts;
    std::vector<double> vals;
    const int m = static_cast<int>(rng.uniform_int(5, 25));
    for (int i = 0; i < m; ++i) {
      pts.push_back(Point({rng.uniform(-1.0, 1.0)}));
      vals.push_back(rng.uniform(-1.0, 1.0));
    }
    const SampleCloud cloud(pts, vals);
    const auto hull = lower_hull_1d(cloud);
    for (int q = 0; q < 50; ++q) {
      const Point x({rng.uniform(-1.1, 1.1)});
      const ExtReal lp = lce_value(cloud, x).value;
      const ExtReal hv = hull_interpolate(hull, x[0]);
      ++queries;
      if (lp.is_inf() != hv.is_inf()) {
        return "hull/LP domain mismatch at x=" + to_string(x);
      }
      if (lp.finite() && std::abs(lp.value() - hv.value()) > 1e-8) {
        return "hull/LP value mismatch at x=" + to_string(x);
      }
    }
  }
  if (queries != 1000) return "expected 1000 hull queries";
  return "";
}

std::string convexity_sets_match_enumeration() {
  for (const auto& id : list_functions()) {
    const SampleCloud cloud = get_function(id).canonical_cloud();
    const double tol = default_convexity_tol(cloud);
    const ConvexityMask mask = convexity_set(cloud, tol);
    for (int i = 0; i < cloud.size(); ++i) {
      if (mask.envelope[i] > cloud.value(i) + 1e-8) {
        return id + ": envelope exceeds f at sample " + std::to_string(i);
      }
      const ExtReal ex = lce_exhaustive(cloud, cloud.point(i));
      const bool in_ex = cloud.value(i) - ex.value() <= tol;
      if (in_ex != static_cast<bool>(mask.in_set[i])) {
        return id + ": membership flag differs from enumeration at sample " +
               std::to_string(i);
      }
    }
    // extreme points of the cloud always belong to the set
    for (int i = 0; i < cloud.size(); ++i) {
      std::vector<Point> others;
      for (int j = 0; j < cloud.size(); ++j) {
        if (j != i) others.push_back(cloud.point(j));
      }
      if (hull_membership_residual(others, cloud.point(i)) > 1e-8 &&
          !mask.in_set[i]) {
        return id + ": extreme point flagged out at sample " +
               std::to_string(i);
      }
    }
  }
  return "";
}

std::string caratheodory_reductions() {
  const CheckReport rep = check_caratheodory(1, 1000);
  if (!rep.pass()) {
    return std::to_string(rep.violation_count) + " reduction failures";
  }
  return "";
}

std::string minimizer_preservation_and_counterexamples() {
  if (!check_minimizer_preservation(
           get_function("w_piecewise").canonical_cloud())
           .pass()) {
    return "w_piecewise argmin drifted";
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    FnParams p;
    p.seed = seed;
    const auto rep = check_minimizer_preservation(
        get_function("random_lsc_pl", p).canonical_cloud());
    if (!rep.pass()) {
      return "random_lsc_pl seed " + std::to_string(seed) + " failed";
    }
  }

  // flat-spot value at x=0.25 scales like 0.25h/(0.5+h) with the mesh
  for (const double h : {0.01, 0.005}) {
    FnParams p;
    p.mesh = h;
    const SampleCloud cloud =
        get_function("lsc_counterexample", p).canonical_cloud();
    const CheckReport rep =
        check_minimizer_preservation(cloud, {Point({0.25})});
    if (!rep.pass()) return "jump cloud lost its argmin at mesh " + fmt17(h);
    const double got = rep.diagnostics.back().second;
    const double want = 0.25 * h / (0.5 + h);
    if (std::abs(got - want) > 1e-9) {
      return "flat-spot value " + fmt17(got) + " != " + fmt17(want) +
             " at mesh " + fmt17(h);
    }
  }

  // the truncated vee's envelope is |x|/R at every sample
  for (const double R : {2.0, 5.0, 10.0}) {
    FnParams p;
    p.r = R;
    const SampleCloud cloud =
        get_function("unbounded_counterexample_truncated", p).canonical_cloud();
    const ConvexityMask mask = convexity_set(cloud);
    for (int i = 0; i < cloud.size(); ++i) {
      const double want = std::abs(cloud.point(i)[0]) / R;
      if (std::abs(mask.envelope[i] - want) > 1e-9) {
        return "R=" + fmt17(R) + ": envelope " + fmt17(mask.envelope[i]) +
               " != " + fmt17(want) + " at x=" + fmt17(cloud.point(i)[0]);
      }
    }
  }
  return "";
}

std::string subgradient_feasibility() {
  const CheckReport rep = check_subgradient_equivalence(1, 50);
  if (!rep.pass()) {
    return std::to_string(rep.violation_count) + " certificate mismatches";
  }
  const SubgradientCertificate cert = subgradient_certificate(
      get_function("w_piecewise").canonical_cloud(), Point({0.0}));
  if (cert.feasible) return "W notch certificate should be infeasible";
  if (std::abs(cert.gap - 0.4) > 1e-8) {
    return "W notch gap " + fmt17(cert.gap) + " != 0.4";
  }
  return "";
}

std::string optimal_direction_checks() {
  // 1-D convex entries, straight sweep
  struct Case {
    std::string id;
    int dim;
  };
  for (const auto& [id, dim] : std::vector<Case>{
           {"abs1d", 1}, {"plateau_flat", 1}, {"norm_radial", 1}}) {
    FnParams p;
    p.dim = id == "norm_radial" ? dim : 0;
    const Objective obj = get_function(id, p).objective;
    const Point x0 = default_start(obj);
    const double r = x0.dist(*obj.known_minimizer);
    const CheckReport rep = check_optimal_direction(obj, x0, 0.5 * r);
    if (!rep.pass()) return id + ": " + std::to_string(rep.violation_count) +
                            " probes beat the straight direction";
  }

  // seeded radial instances in 2-D and 3-D
  for (const int dim : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      FnParams p;
      p.dim = dim;
      p.seed = seed;
      const Objective obj = get_function("random_radial_pl", p).objective;
      const Point x0 = default_start(obj);
      const double r = x0.dist(*obj.known_minimizer);
      DirectionSweep sweep;
      sweep.sphere_count = dim == 2 ? 720 : 2000;
      const CheckReport rep =
          check_optimal_direction(obj, x0, 0.5 * r, sweep);
      if (!rep.pass()) {
        return "radial dim " + std::to_string(dim) + " seed " +
               std::to_string(seed) + ": " +
               std::to_string(rep.violation_count) + " violations";
      }
    }
  }

  // the skewed bowl must produce its known witness
  const Objective aniso = get_function("aniso_quadratic").objective;
  const CheckReport rep =
      check_optimal_direction(aniso, Point({1.0, 1.0}), 0.1);
  if (rep.pass()) return "skewed bowl unexpectedly passed";
  const double margin = rep.violations.front().margin;
  if (std::abs(margin - 0.41023) > 1e-4) {
    return "witness margin " + fmt17(margin) + " not within 1e-4 of 0.41023";
  }
  return "";
}

std::string monotone_segments() {
  for (const auto& id : ids_with_tags({"convex", "unique-min"})) {
    const Objective obj = get_function(id).objective;
    const CheckReport rep =
        check_monotone_segment(obj, default_start(obj), 50);
    if (!rep.pass()) {
      return id + ": " + std::to_string(rep.violation_count) +
             " non-decreasing pairs";
    }
  }
  return "";
}

std::string descent_bound_holds() {
  const std::vector<Stage1Solver> solvers = {
      Stage1Solver::angular_grid, Stage1Solver::compass_search,
      Stage1Solver::projected_subgradient};
  for (const auto& id : list_functions()) {
    const Objective obj = get_function(id).objective;
    const Point x0 = default_start(obj);
    const double gap = boundary_gap(obj, x0);
    if (gap <= 1e-9) continue;  // start pinned to the boundary
    const double delta = std::min(0.2, 0.5 * gap);
    for (const Stage1Solver solver : solvers) {
      for (const double alpha : {0.1, 0.05}) {
        Stage1Config s1;
        s1.x0 = x0;
        s1.delta = delta;
        s1.solver = solver;
        Stage2Config s2;
        s2.alpha = alpha;
        const DescentReport rep = directional_descent(obj, s1, s2);
        if (!rep.bound.has_value()) {
          return id + "/" + to_string(solver) + ": bound missing";
        }
        if (!rep.bound->satisfied) {
          return id + "/" + to_string(solver) + " alpha=" + fmt17(alpha) +
                 ": lhs " + fmt17(rep.bound->lhs) + " > rhs " +
                 fmt17(rep.bound->rhs);
        }
      }
    }
  }

  // exact straight-line march: excess <= K*alpha, and the bound halves with
  // the step, bit for bit
  for (const std::string id : {"abs1d", "norm_radial"}) {
    const Objective obj = get_function(id).objective;
    const Point x0 = default_start(obj);
    const double r = x0.dist(*obj.known_minimizer);
    const Point d0 = (1.0 / r) * (*obj.known_minimizer - x0);
    double prev_rhs = 0;
    for (const double alpha : {0.2, 0.1, 0.05, 0.025}) {
      Stage2Config cfg;
      cfg.alpha = alpha;
      const auto trace = stage2_march(obj, x0, d0, cfg);
      ExtReal best = ExtReal::inf();
      for (const auto& e : trace) {
        if (e.f < best) best = e.f;
      }
      const double excess = best.value() - *obj.known_min_value;
      if (excess > obj.lipschitz_k * alpha + 1e-9) {
        return id + " alpha=" + fmt17(alpha) + ": excess " + fmt17(excess) +
               " above K*alpha";
      }
      const BoundCheck bc =
          error_bound(obj.lipschitz_k, r, alpha, d0, d0, excess);
      if (!bc.satisfied) return id + ": straight-line bound violated";
      if (prev_rhs != 0 && prev_rhs != 2.0 * bc.rhs) {
        return id + ": bound did not halve exactly (" + fmt17(prev_rhs) +
               " vs " + fmt17(bc.rhs) + ")";
      }
      prev_rhs = bc.rhs;
    }
  }
  return "";
}

std::string cli_reruns_identical() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("ddopt-acc-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto path = [&](const std::string& name) { return (dir / name).string(); };

  const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
      {"lce", {"lce", "--fn", "w_piecewise"}},
      {"convexity", {"convexity", "--fn", "random_lsc_pl", "--seed", "3"}},
      {"descend",
       {"descend", "--fn", "abs1d", "--x0", "0.8", "--delta", "0.2"}},
      {"verify-direction", {"verify", "direction"}},
      {"verify-envelope", {"verify", "envelope", "--count", "20"}},
      {"bench", {"bench"}},
  };
  std::string detail;
  for (const auto& [name, args] : runs) {
    const std::string a = path(name + "-a");
    const std::string b = path(name + "-b");
    auto with_out = [&](const std::string& out) {
      auto v = args;
      v.push_back("--out");
      v.push_back(out);
      return v;
    };
    const int rc_a = run_cli(with_out(a));
    const int rc_b = run_cli(with_out(b));
    if (rc_a != rc_b || slurp(a).empty() || slurp(a) != slurp(b)) {
      detail = name + ": reruns differ";
      break;
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return detail;
}

}  // namespace

int main() {
  criterion(1, "envelope agrees with brute-force enumeration and 1-D hulls",
            envelope_oracle_equivalence);
  criterion(2, "convexity sets match exhaustive search on every catalogue cloud",
            convexity_sets_match_enumeration);
  criterion(3, "support reductions preserve barycenter, size, and value",
            caratheodory_reductions);
  criterion(4, "envelope minimizers survive sampling; counterexamples scale as computed",
            minimizer_preservation_and_counterexamples);
  criterion(5, "subgradient certificates split exactly along the convexity set",
            subgradient_feasibility);
  criterion(6, "straight-at-the-minimum direction is unbeaten where claimed",
            optimal_direction_checks);
  criterion(7, "descent toward the minimum is strictly monotone where claimed",
            monotone_segments);
  criterion(8, "a-priori error bound holds on every two-stage run",
            descent_bound_holds);
  criterion(9, "CLI reruns are byte-for-byte identical",
            cli_reruns_identical);
  return failures;
}
