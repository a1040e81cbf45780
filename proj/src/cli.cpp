#include "dd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dd/core.hpp"
#include "dd/descent.hpp"
#include "dd/envelope.hpp"
#include "dd/oracles.hpp"
#include "dd/testfns.hpp"

namespace dd {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "ddopt 0.1.0";

// ----------------------------------------------------------- utilities

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InputError("not a number: '" + text + "'");
  }
  return v;
}

Point parse_point(const std::string& text) {
  std::vector<double> coords;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) coords.push_back(parse_double(item));
  if (coords.empty()) throw InputError("empty coordinate list");
  return Point(coords);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path);
  out << content;
}

json num_json(double v) {
  if (!std::isfinite(v)) return json();  // +-inf and NaN serialize as null
  return json(v);
}

json point_json(const Point& p) {
  json arr = json::array();
  for (double c : p.coords()) arr.push_back(c);
  return arr;
}

std::string comment_block(std::vector<std::pair<std::string, std::string>> kv) {
  std::sort(kv.begin(), kv.end());
  std::ostringstream out;
  for (const auto& [k, v] : kv) out << "# " << k << "=" << v << "\n";
  return out.str();
}

// ------------------------------------------------------ config file

// Flat key=value files; keys are long option names without the dashes.
// Command-line flags win: keys already present on argv are not injected.
std::vector<std::string> inject_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  std::set<std::string> present;
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0) present.insert(a.substr(0, a.find('=')));
  }

  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(lineno) +
                       " is missing '='");
    }
    std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (key == "--config" || present.count(key)) continue;
    if (value == "true") {
      args.push_back(key);
    } else if (value == "false") {
      // absent flag
    } else {
      args.push_back(key);
      args.push_back(value);
    }
  }
  return args;
}

// ------------------------------------------------- function resolution

struct FnOpts {
  std::string fn;
  int dim = 0;
  double kappa = 10.0;
  double r = 5.0;
  double mesh = 0;
  std::uint64_t seed = 1;
};

void attach_fn_opts(CLI::App* cmd, FnOpts& o, bool required) {
  auto* fn = cmd->add_option("--fn", o.fn,
                             "registry function id, or file:<path> for a "
                             "sample-cloud CSV");
  if (required) fn->required();
  cmd->add_option("--dim", o.dim, "dimension of the radial families (1-3)");
  cmd->add_option("--kappa", o.kappa, "anisotropy ratio of the quadratic");
  cmd->add_option("--r", o.r, "half-width of the truncation box");
  cmd->add_option("--mesh", o.mesh, "grid mesh of the canonical cloud");
  cmd->add_option("--seed", o.seed, "seed of the random families");
}

FnParams to_params(const FnOpts& o) {
  FnParams p;
  p.dim = o.dim;
  p.kappa = o.kappa;
  p.r = o.r;
  p.mesh = o.mesh;
  p.seed = o.seed;
  return p;
}

bool is_file_fn(const std::string& fn) { return fn.rfind("file:", 0) == 0; }

SampleCloud resolve_cloud(const FnOpts& o) {
  if (is_file_fn(o.fn)) return SampleCloud::read_csv_file(o.fn.substr(5));
  return get_function(o.fn, to_params(o)).canonical_cloud();
}

Objective resolve_objective(const FnOpts& o) {
  if (is_file_fn(o.fn)) {
    return objective_from_cloud(SampleCloud::read_csv_file(o.fn.substr(5)));
  }
  return get_function(o.fn, to_params(o)).objective;
}

// Whether the error-bound hypotheses hold for this input: lower semicontinuity
// plus a unique minimizer, read off the registry tags, or off the samples for
// file clouds (a PL interpolant is always continuous).
bool hypotheses_hold(const FnOpts& o) {
  if (is_file_fn(o.fn)) {
    const SampleCloud cloud = SampleCloud::read_csv_file(o.fn.substr(5));
    double lowest = cloud.value(0), second = std::numeric_limits<double>::infinity();
    for (int i = 1; i < cloud.size(); ++i) {
      const double v = cloud.value(i);
      if (v < lowest) {
        second = lowest;
        lowest = v;
      } else {
        second = std::min(second, v);
      }
    }
    return second - lowest > 1e-9;
  }
  const RegistryEntry e = get_function(o.fn, to_params(o));
  return e.has_tag("lsc") && e.has_tag("unique-min");
}

Point default_start(const Objective& obj) {
  if (!obj.known_minimizer) {
    throw InputError("pass --x0: " + obj.name + " has no known minimizer");
  }
  const Box box = obj.domain.bounding_box();
  return *obj.known_minimizer + 0.5 * (box.hi - *obj.known_minimizer);
}

std::vector<std::string> ids_with_tags(const std::vector<std::string>& tags) {
  std::vector<std::string> out;
  for (const auto& id : list_functions()) {
    const RegistryEntry e = get_function(id);
    const bool all = std::all_of(tags.begin(), tags.end(), [&](const auto& t) {
      return e.has_tag(t);
    });
    if (all) out.push_back(id);
  }
  return out;
}

// --------------------------------------------------- report serialization

json witness_json(const ViolationWitness& w) {
  json j;
  j["property"] = w.property;
  j["fn_id"] = w.fn_id;
  j["x0"] = point_json(w.x0);
  j["delta"] = w.delta;
  j["d"] = point_json(w.d);
  j["a"] = point_json(w.a);
  j["b"] = point_json(w.b);
  j["observed_lhs"] = num_json(w.observed_lhs);
  j["observed_rhs"] = num_json(w.observed_rhs);
  j["margin"] = num_json(w.margin);
  return j;
}

json report_json(const CheckReport& rep) {
  json j;
  j["property"] = rep.property;
  j["instances_checked"] = rep.instances_checked;
  j["violation_count"] = rep.violation_count;
  j["strict_ties"] = rep.strict_ties;
  j["pass"] = rep.pass();
  j["seed"] = rep.seed;
  j["tolerances"] = json::object();
  for (const auto& [k, v] : rep.tolerances) j["tolerances"][k] = v;
  j["diagnostics"] = json::array();
  for (const auto& [k, v] : rep.diagnostics) {
    j["diagnostics"].push_back(json::array({k, num_json(v)}));
  }
  j["violations"] = json::array();
  for (const auto& w : rep.violations) j["violations"].push_back(witness_json(w));
  return j;
}

int emit_report(const CheckReport& rep, const std::string& out) {
  write_output(out, report_json(rep).dump(2) + "\n");
  return rep.pass() ? 0 : 1;
}

CheckReport merge_reports(std::vector<CheckReport> parts) {
  CheckReport out;
  if (parts.empty()) return out;
  out.property = parts.front().property;
  out.seed = parts.front().seed;
  for (auto& p : parts) {
    out.instances_checked += p.instances_checked;
    out.violation_count += p.violation_count;
    out.strict_ties += p.strict_ties;
    for (auto& w : p.violations) out.violations.push_back(std::move(w));
    out.tolerances.insert(p.tolerances.begin(), p.tolerances.end());
    for (auto& d : p.diagnostics) out.diagnostics.push_back(std::move(d));
  }
  std::stable_sort(out.violations.begin(), out.violations.end(),
                   [](const ViolationWitness& a, const ViolationWitness& b) {
                     return a.margin > b.margin;
                   });
  if (out.violations.size() > 100) out.violations.resize(100);
  return out;
}

// --------------------------------------------------------- subcommands

std::string envelope_csv(const SampleCloud& cloud, const ConvexityMask& mask,
                         const std::vector<Point>& queries,
                         std::vector<std::pair<std::string, std::string>> config) {
  std::ostringstream out;
  out << comment_block(std::move(config));
  for (int i = 0; i < cloud.dim(); ++i) out << "x" << i + 1 << ",";
  out << "lce,gap,in_Af\n";

  auto sample_index = [&](const Point& q) {
    for (int i = 0; i < cloud.size(); ++i) {
      if (q.dist(cloud.point(i)) <= kMembershipTol) return i;
    }
    return -1;
  };

  auto emit = [&](const Point& q) {
    for (int i = 0; i < q.dim(); ++i) out << fmt17(q[i]) << ",";
    const int idx = sample_index(q);
    if (idx >= 0) {
      out << fmt17(mask.envelope[idx]) << "," << fmt17(mask.gap[idx]) << ","
          << (mask.in_set[idx] ? 1 : 0) << "\n";
    } else {
      out << fmt17(lce_value(cloud, q).value.raw()) << ",,\n";
    }
  };

  if (queries.empty()) {
    for (int i = 0; i < cloud.size(); ++i) emit(cloud.point(i));
  } else {
    for (const auto& q : queries) emit(q);
  }
  return out.str();
}

int cmd_envelope_csv(const FnOpts& fn, double tol,
                     const std::vector<std::string>& at,
                     const std::string& radius_at, const std::string& out) {
  const SampleCloud cloud = resolve_cloud(fn);
  const double used_tol = tol > 0 ? tol : default_convexity_tol(cloud);
  const ConvexityMask mask = convexity_set(cloud, used_tol);

  std::vector<Point> queries;
  for (const auto& s : at) {
    Point q = parse_point(s);
    if (q.dim() != cloud.dim()) {
      throw InputError("query dimension mismatch: " + s);
    }
    queries.push_back(std::move(q));
  }

  std::vector<std::pair<std::string, std::string>> config = {
      {"fn", fn.fn},
      {"tol", fmt17(used_tol)},
      {"version", kVersion},
  };
  if (!is_file_fn(fn.fn)) {
    config.emplace_back("mesh", fmt17(get_function(fn.fn, to_params(fn)).default_mesh));
    config.emplace_back("seed", std::to_string(fn.seed));
  }
  std::string body = envelope_csv(cloud, mask, queries, std::move(config));
  if (!radius_at.empty()) {
    const Point x0 = parse_point(radius_at);
    const double radius = convexity_radius(cloud, x0, used_tol);
    body += "# convexity_radius=" + fmt17(radius) + "\n";
  }
  write_output(out, body);
  return 0;
}

json descent_json(const Objective& obj, const Stage1Config& s1,
                  const Stage2Config& s2, const DescentReport& rep) {
  json j;
  j["version"] = kVersion;
  j["function"] = obj.name;
  j["x0"] = point_json(s1.x0);
  j["delta"] = s1.delta;
  j["alpha"] = s2.alpha;
  j["solver"] = to_string(s1.solver);
  j["seed"] = s1.seed;
  j["config"] = {{"budget", s1.budget},
                 {"max_steps", s2.max_steps},
                 {"patience", s2.patience},
                 {"target", s2.target ? json(*s2.target) : json()}};
  j["d_star"] = point_json(rep.d_star);
  j["evaluations"] = rep.evaluations;
  j["skipped_stage2"] = rep.skipped_stage2;
  j["skip_reason"] = rep.skip_reason;
  j["hypotheses_verified"] = rep.hypotheses_verified;
  j["stage1"] = {{"value_at_d_star", num_json(rep.stage1.value.raw())},
                 {"ball_best_x", point_json(s1.x0 + rep.stage1.ball_best_d)},
                 {"ball_best_f", num_json(rep.stage1.ball_best_value.raw())},
                 {"evaluations", rep.stage1.evaluations},
                 {"zero_progress", rep.stage1.zero_progress}};
  j["trace"] = json::array();
  for (const auto& e : rep.trace) {
    j["trace"].push_back({{"m", e.m},
                          {"x", point_json(e.x)},
                          {"f", num_json(e.f.raw())}});
  }
  j["best"] = {{"x", point_json(rep.best_x)}, {"f", num_json(rep.best_f.raw())}};
  if (rep.bound) {
    j["bound"] = {{"k", rep.bound->k},
                  {"r", rep.bound->r},
                  {"dist", rep.bound->dist},
                  {"m_star", rep.bound->m_star},
                  {"lhs", num_json(rep.bound->lhs)},
                  {"rhs", rep.bound->rhs},
                  {"satisfied", rep.bound->satisfied}};
  } else {
    j["bound"] = json();
  }
  return j;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Lower convex envelopes and two-stage directional descent"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path,
                 "flat key=value file; command-line flags win");

  // ---- lce / convexity
  FnOpts env_fn;
  double env_tol = 0;
  std::vector<std::string> env_at;
  std::string env_radius_at, env_out;
  auto* lce_cmd = app.add_subcommand(
      "lce", "Lower convex envelope of a sample cloud (CSV)");
  attach_fn_opts(lce_cmd, env_fn, true);
  lce_cmd->add_option("--tol", env_tol, "convexity threshold (0 = auto)");
  lce_cmd->add_option("--at", env_at,
                      "query point 'x1,x2,...'; default: every sample");
  lce_cmd->add_option("--out", env_out, "output path (default stdout)");

  FnOpts cvx_fn;
  double cvx_tol = 0;
  std::string cvx_radius_at, cvx_out;
  auto* cvx_cmd = app.add_subcommand(
      "convexity", "Points-of-convexity mask over a sample cloud (CSV)");
  attach_fn_opts(cvx_cmd, cvx_fn, true);
  cvx_cmd->add_option("--tol", cvx_tol, "convexity threshold (0 = auto)");
  cvx_cmd->add_option("--radius-at", cvx_radius_at,
                      "also report the convexity radius at this sample");
  cvx_cmd->add_option("--out", cvx_out, "output path (default stdout)");

  // ---- descend
  FnOpts dsc_fn;
  std::string dsc_x0, dsc_solver = "compass-search", dsc_out;
  double dsc_delta = 0.1, dsc_alpha = 0.1, dsc_target = 0;
  int dsc_budget = 0, dsc_max_steps = 0, dsc_patience = 3;
  auto* dsc_cmd = app.add_subcommand(
      "descend", "Two-stage descent: direction on a sphere, then a march");
  attach_fn_opts(dsc_cmd, dsc_fn, true);
  dsc_cmd->add_option("--x0", dsc_x0, "start point 'x1,x2,...'")->required();
  dsc_cmd->add_option("--delta", dsc_delta, "stage-1 sphere radius");
  dsc_cmd->add_option("--alpha", dsc_alpha, "stage-2 step length");
  dsc_cmd->add_option("--solver", dsc_solver,
                      "angular-grid | projected-subgradient | compass-search");
  dsc_cmd->add_option("--budget", dsc_budget,
                      "stage-1 evaluation budget (0 = default)");
  dsc_cmd->add_option("--max-steps", dsc_max_steps,
                      "stage-2 step cap (0 = domain diameter / alpha)");
  dsc_cmd->add_option("--patience", dsc_patience,
                      "stop after this many non-improving steps");
  auto* dsc_target_opt =
      dsc_cmd->add_option("--target", dsc_target, "stop once f <= target");
  dsc_cmd->add_option("--out", dsc_out, "output path (default stdout)");

  // ---- verify
  auto* ver_cmd = app.add_subcommand("verify", "Run a property checker");
  ver_cmd->require_subcommand(1);

  FnOpts dir_fn;
  std::string dir_x0, dir_out;
  double dir_delta = 0;
  int dir_sphere = 0, dir_levels = 3;
  auto* dir_cmd = ver_cmd->add_subcommand(
      "direction", "No direction beats heading straight for the minimizer");
  attach_fn_opts(dir_cmd, dir_fn, false);
  dir_cmd->add_option("--x0", dir_x0, "start point (default: midpoint rule)");
  dir_cmd->add_option("--delta", dir_delta, "sphere radius (default: r/2)");
  dir_cmd->add_option("--sphere-count", dir_sphere,
                      "directions on the sphere (0 = default)");
  dir_cmd->add_option("--radial-levels", dir_levels, "radii per direction");
  dir_cmd->add_option("--out", dir_out, "output path (default stdout)");

  FnOpts mon_fn;
  std::string mon_x0, mon_out;
  int mon_grid = 50;
  auto* mon_cmd = ver_cmd->add_subcommand(
      "monotone", "Strict decrease along the segment to the minimizer");
  attach_fn_opts(mon_cmd, mon_fn, false);
  mon_cmd->add_option("--x0", mon_x0, "start point (default: midpoint rule)");
  mon_cmd->add_option("--grid", mon_grid, "points on the segment");
  mon_cmd->add_option("--out", mon_out, "output path (default stdout)");

  std::uint64_t env_seed = 1;
  int env_count = 200;
  std::string enveq_out;
  auto* enveq_cmd = ver_cmd->add_subcommand(
      "envelope", "LP envelope matches exhaustive enumeration");
  enveq_cmd->add_option("--seed", env_seed, "random cloud seed");
  enveq_cmd->add_option("--count", env_count, "number of clouds");
  enveq_cmd->add_option("--out", enveq_out, "output path (default stdout)");

  std::uint64_t car_seed = 1;
  int car_count = 1000;
  std::string car_out;
  auto* car_cmd = ver_cmd->add_subcommand(
      "caratheodory", "Support reduction keeps barycenter and value");
  car_cmd->add_option("--seed", car_seed, "random combination seed");
  car_cmd->add_option("--count", car_count, "number of reductions");
  car_cmd->add_option("--out", car_out, "output path (default stdout)");

  FnOpts pre_fn;
  std::string pre_out;
  auto* pre_cmd = ver_cmd->add_subcommand(
      "preservation", "The unique sample minimizer survives the envelope");
  attach_fn_opts(pre_cmd, pre_fn, false);
  pre_cmd->add_option("--out", pre_out, "output path (default stdout)");

  FnOpts res_fn;
  double res_tol = 0;
  std::string res_out;
  auto* res_cmd = ver_cmd->add_subcommand(
      "restriction", "Envelope of the convexity-set samples matches");
  attach_fn_opts(res_cmd, res_fn, false);
  res_cmd->add_option("--tol", res_tol, "convexity threshold (0 = auto)");
  res_cmd->add_option("--out", res_out, "output path (default stdout)");

  std::uint64_t sub_seed = 1;
  int sub_count = 50;
  std::string sub_out;
  auto* sub_cmd = ver_cmd->add_subcommand(
      "subgradient", "Subgradient certificates match the convexity set");
  sub_cmd->add_option("--seed", sub_seed, "random cloud seed");
  sub_cmd->add_option("--count", sub_count, "number of clouds");
  sub_cmd->add_option("--out", sub_out, "output path (default stdout)");

  // ---- bench
  std::vector<std::string> bench_fns;
  std::vector<double> bench_alphas;
  std::string bench_solver = "compass-search", bench_out;
  double bench_delta = 0.2;
  std::uint64_t bench_seed = 1;
  bool bench_timing = false;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Error-bound table over the registry (CSV)");
  bench_cmd->add_option("--fn", bench_fns, "function ids (default: built-ins)");
  bench_cmd->add_option("--alpha", bench_alphas,
                        "step lengths (default: 0.2 0.1 0.05 0.025)");
  bench_cmd->add_option("--delta", bench_delta, "stage-1 sphere radius cap");
  bench_cmd->add_option("--solver", bench_solver, "stage-1 solver");
  bench_cmd->add_option("--seed", bench_seed, "seed of the random families");
  bench_cmd->add_flag("--timing", bench_timing,
                      "measure wall time (breaks byte-for-byte reruns)");
  bench_cmd->add_option("--out", bench_out, "output path (default stdout)");

  try {
    try {
      args = inject_config(std::move(args));
      std::vector<std::string> argv_store = std::move(args);
      argv_store.insert(argv_store.begin(), "ddopt");
      std::vector<char*> argv;
      argv.reserve(argv_store.size());
      for (auto& s : argv_store) argv.push_back(s.data());
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    if (*lce_cmd) {
      return cmd_envelope_csv(env_fn, env_tol, env_at, "", env_out);
    }

    if (*cvx_cmd) {
      return cmd_envelope_csv(cvx_fn, cvx_tol, {}, cvx_radius_at, cvx_out);
    }

    if (*dsc_cmd) {
      const Objective obj = resolve_objective(dsc_fn);
      Stage1Config s1;
      s1.x0 = parse_point(dsc_x0);
      s1.delta = dsc_delta;
      s1.solver = stage1_solver_from_string(dsc_solver);
      s1.budget = dsc_budget;
      s1.seed = dsc_fn.seed;
      Stage2Config s2;
      s2.alpha = dsc_alpha;
      s2.max_steps = dsc_max_steps;
      s2.patience = dsc_patience;
      if (dsc_target_opt->count() > 0) s2.target = dsc_target;
      DescentReport rep = directional_descent(obj, s1, s2);
      rep.hypotheses_verified = hypotheses_hold(dsc_fn);
      write_output(dsc_out, descent_json(obj, s1, s2, rep).dump(2) + "\n");
      return 0;
    }

    if (*dir_cmd) {
      DirectionSweep sweep{dir_sphere, dir_levels};
      auto run_one = [&](const FnOpts& o) {
        const Objective obj = resolve_objective(o);
        const Point x0 = dir_x0.empty() ? default_start(obj) : parse_point(dir_x0);
        if (!obj.known_minimizer) {
          throw InputError(obj.name + " has no known minimizer");
        }
        const double r = x0.dist(*obj.known_minimizer);
        const double delta = dir_delta > 0 ? dir_delta : 0.5 * r;
        CheckReport rep = check_optimal_direction(obj, x0, delta, sweep);
        rep.diagnostics.emplace_back(obj.name + ":delta", delta);
        return rep;
      };
      if (!dir_fn.fn.empty()) return emit_report(run_one(dir_fn), dir_out);
      std::vector<CheckReport> parts;
      for (const auto& id : ids_with_tags({"radial", "unique-min"})) {
        FnOpts o = dir_fn;
        o.fn = id;
        parts.push_back(run_one(o));
      }
      return emit_report(merge_reports(std::move(parts)), dir_out);
    }

    if (*mon_cmd) {
      auto run_one = [&](const FnOpts& o) {
        const Objective obj = resolve_objective(o);
        const Point x0 = mon_x0.empty() ? default_start(obj) : parse_point(mon_x0);
        return check_monotone_segment(obj, x0, mon_grid);
      };
      if (!mon_fn.fn.empty()) return emit_report(run_one(mon_fn), mon_out);
      std::vector<CheckReport> parts;
      for (const auto& id : ids_with_tags({"convex", "unique-min"})) {
        FnOpts o = mon_fn;
        o.fn = id;
        parts.push_back(run_one(o));
      }
      return emit_report(merge_reports(std::move(parts)), mon_out);
    }

    if (*enveq_cmd) {
      return emit_report(check_envelope_equivalence(env_seed, env_count),
                         enveq_out);
    }

    if (*car_cmd) {
      return emit_report(check_caratheodory(car_seed, car_count), car_out);
    }

    if (*pre_cmd) {
      auto run_one = [&](const FnOpts& o) {
        return check_minimizer_preservation(resolve_cloud(o));
      };
      if (!pre_fn.fn.empty()) return emit_report(run_one(pre_fn), pre_out);
      std::vector<CheckReport> parts;
      for (const auto& id : ids_with_tags({"unique-min"})) {
        FnOpts o = pre_fn;
        o.fn = id;
        CheckReport rep = run_one(o);
        rep.diagnostics.emplace_back(id, static_cast<double>(rep.instances_checked));
        parts.push_back(std::move(rep));
      }
      return emit_report(merge_reports(std::move(parts)), pre_out);
    }

    if (*res_cmd) {
      auto run_one = [&](const FnOpts& o) {
        return check_envelope_restriction(resolve_cloud(o), res_tol);
      };
      if (!res_fn.fn.empty()) return emit_report(run_one(res_fn), res_out);
      std::vector<CheckReport> parts;
      for (const auto& id : list_functions()) {
        FnOpts o = res_fn;
        o.fn = id;
        CheckReport rep = run_one(o);
        rep.diagnostics.emplace_back(id, static_cast<double>(rep.instances_checked));
        parts.push_back(std::move(rep));
      }
      return emit_report(merge_reports(std::move(parts)), res_out);
    }

    if (*sub_cmd) {
      return emit_report(check_subgradient_equivalence(sub_seed, sub_count),
                         sub_out);
    }

    if (*bench_cmd) {
      std::vector<std::string> fns = bench_fns;
      if (fns.empty()) fns = ids_with_tags({"lsc", "unique-min"});
      std::vector<double> alphas = bench_alphas;
      if (alphas.empty()) alphas = {0.2, 0.1, 0.05, 0.025};

      std::ostringstream out;
      out << comment_block({{"delta", fmt17(bench_delta)},
                            {"seed", std::to_string(bench_seed)},
                            {"solver", bench_solver},
                            {"timing", bench_timing ? "true" : "false"},
                            {"version", kVersion}});
      out << "function,alpha,delta,excess,k_alpha,k_r_dist,satisfied,"
             "evaluations,wall_ms\n";
      for (const auto& id : fns) {
        FnOpts o;
        o.fn = id;
        o.seed = bench_seed;
        const Objective obj = resolve_objective(o);
        if (!obj.known_minimizer || !obj.known_min_value) {
          throw InputError(id + " has no known minimizer");
        }
        const Point x0 = default_start(obj);
        const Box box = obj.domain.bounding_box();
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < x0.dim(); ++i) {
          gap = std::min({gap, x0[i] - box.lo[i], box.hi[i] - x0[i]});
        }
        const double delta = std::min(bench_delta, 0.5 * gap);
        if (delta <= 1e-9) {
          out << "# skipped=" << id << "\n";
          continue;
        }
        for (const double alpha : alphas) {
          Stage1Config s1;
          s1.x0 = x0;
          s1.delta = delta;
          s1.solver = stage1_solver_from_string(bench_solver);
          s1.seed = bench_seed;
          Stage2Config s2;
          s2.alpha = alpha;
          const auto start = std::chrono::steady_clock::now();
          const DescentReport rep = directional_descent(obj, s1, s2);
          double wall_ms = 0;
          if (bench_timing) {
            wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
          }
          const double excess = rep.best_f.raw() - *obj.known_min_value;
          out << id << "," << fmt17(alpha) << "," << fmt17(delta) << ","
              << fmt17(excess) << "," << fmt17(rep.bound->k * alpha) << ","
              << fmt17(rep.bound->k * rep.bound->r * rep.bound->dist) << ","
              << (rep.bound->satisfied ? 1 : 0) << "," << rep.evaluations << ","
              << fmt17(wall_ms) << "\n";
        }
      }
      write_output(bench_out, out.str());
      return 0;
    }

    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace dd
