#include "dd/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dd {
namespace {

double default_mesh_for(int dim) {
  return dim == 1 ? 0.05 : dim == 2 ? 0.5 : 1.0;
}

int pick_dim(const FnParams& params, int fallback, int max_dim = 3) {
  const int dim = params.dim > 0 ? params.dim : fallback;
  if (dim < 1 || dim > max_dim) {
    throw InputError("dimension must be between 1 and " +
                     std::to_string(max_dim));
  }
  return dim;
}

Point pick_center(const FnParams& params, int dim) {
  if (!params.center) return Point::zeros(dim);
  if (params.center->dim() != dim) {
    throw InputError("center dimension mismatch");
  }
  return *params.center;
}

Domain symmetric_box(int dim, double half) {
  return Domain::box(Point(std::vector<double>(dim, -half)),
                     Point(std::vector<double>(dim, half)));
}

RegistryEntry make_abs1d() {
  RegistryEntry e;
  e.id = "abs1d";
  e.tags = {"convex", "lsc", "radial", "unique-min"};
  e.default_mesh = 0.05;
  e.objective.name = e.id;
  e.objective.dim = 1;
  e.objective.domain = symmetric_box(1, 1.0);
  e.objective.fn = [](const Point& x) { return ExtReal(std::abs(x[0])); };
  e.objective.lipschitz_k = 1.0;
  e.objective.known_minimizer = Point({0.0});
  e.objective.known_min_value = 0.0;
  e.objective.subgradient_hint = [](const Point& x) {
    return Point({x[0] > 0 ? 1.0 : x[0] < 0 ? -1.0 : 0.0});
  };
  return e;
}

RegistryEntry make_aniso_quadratic(const FnParams& params) {
  const double kappa = params.kappa;
  if (!(kappa > 0)) throw InputError("kappa must be positive");
  RegistryEntry e;
  e.id = "aniso_quadratic";
  e.tags = {"convex", "lsc", "unique-min"};
  e.default_mesh = 0.5;
  e.objective.name = e.id;
  e.objective.dim = 2;
  e.objective.domain = symmetric_box(2, 2.0);
  e.objective.fn = [kappa](const Point& x) {
    return ExtReal(x[0] * x[0] + kappa * x[1] * x[1]);
  };
  e.objective.lipschitz_k = 4.0 * std::sqrt(1.0 + kappa * kappa);
  e.objective.known_minimizer = Point::zeros(2);
  e.objective.known_min_value = 0.0;
  e.objective.subgradient_hint = [kappa](const Point& x) {
    return Point({2.0 * x[0], 2.0 * kappa * x[1]});
  };
  return e;
}

RegistryEntry make_lsc_counterexample() {
  RegistryEntry e;
  e.id = "lsc_counterexample";
  e.tags = {"counterexample", "nonconvex", "unique-min"};
  e.default_mesh = 0.01;
  e.objective.name = e.id;
  e.objective.dim = 1;
  e.objective.domain = Domain::box(Point({0.0}), Point({1.0}));
  // Zero at the origin, affine on (1/2, 1], +infinity on the gap between;
  // the open endpoint gets a small guard so grid points at exactly 1/2
  // stay inside the gap despite accumulated rounding.
  e.objective.fn = [](const Point& p) {
    const double x = p[0];
    if (std::abs(x) <= 1e-12) return ExtReal(0.0);
    if (x > 0.5 + 1e-9) return ExtReal(x - 0.5);
    return ExtReal::inf();
  };
  e.objective.lipschitz_k = 1.0;
  e.objective.known_minimizer = Point({0.0});
  e.objective.known_min_value = 0.0;
  return e;
}

RegistryEntry make_norm_radial(const FnParams& params) {
  const int dim = pick_dim(params, 2);
  const Point c = pick_center(params, dim);
  RegistryEntry e;
  e.id = "norm_radial";
  e.tags = {"convex", "lsc", "radial", "unique-min"};
  e.default_mesh = default_mesh_for(dim);
  e.objective.name = e.id;
  e.objective.dim = dim;
  e.objective.domain = symmetric_box(dim, 2.0);
  e.objective.fn = [c](const Point& x) { return ExtReal(x.dist(c)); };
  e.objective.lipschitz_k = 1.0;
  e.objective.known_minimizer = c;
  e.objective.known_min_value = 0.0;
  e.objective.subgradient_hint = [c](const Point& x) {
    const double r = x.dist(c);
    if (r <= 1e-12) return Point::zeros(x.dim());
    return (1.0 / r) * (x - c);
  };
  return e;
}

RegistryEntry make_plateau_flat() {
  RegistryEntry e;
  e.id = "plateau_flat";
  e.tags = {"convex", "lsc"};
  e.default_mesh = 0.05;
  e.objective.name = e.id;
  e.objective.dim = 1;
  e.objective.domain = symmetric_box(1, 1.0);
  e.objective.fn = [](const Point& x) {
    return ExtReal(std::max(0.0, std::abs(x[0]) - 0.5));
  };
  e.objective.lipschitz_k = 1.0;
  // One representative of the flat minimizing interval [-1/2, 1/2].
  e.objective.known_minimizer = Point({0.0});
  e.objective.known_min_value = 0.0;
  return e;
}

RegistryEntry make_random_lsc_pl(const FnParams& params) {
  Rng rng(params.seed);
  const int count = rng.uniform_int(5, 9);
  std::set<int> idx = {0, 40};  // grid indices on [-1, 1] at mesh 0.05
  while (static_cast<int>(idx.size()) < count) {
    idx.insert(rng.uniform_int(1, 39));
  }
  std::vector<Point> xs;
  std::vector<double> vals;
  for (int i : idx) {
    xs.push_back(Point({-1.0 + 0.05 * i}));
    vals.push_back(rng.uniform(0.2, 1.0));
  }
  const int min_at = rng.uniform_int(0, count - 1);
  const double margin = rng.uniform(0.1, 0.4);
  vals[min_at] = *std::min_element(vals.begin(), vals.end()) - margin;

  RegistryEntry e;
  e.id = "random_lsc_pl";
  e.tags = {"lsc", "unique-min"};
  e.default_mesh = 0.05;
  e.objective = objective_from_cloud(SampleCloud(xs, vals));
  e.objective.name = e.id + "-s" + std::to_string(params.seed);
  e.objective.known_minimizer = xs[min_at];
  e.objective.known_min_value = vals[min_at];
  return e;
}

RegistryEntry make_random_radial_pl(const FnParams& params) {
  const int dim = pick_dim(params, 2);
  Rng rng(params.seed);
  const int pieces = rng.uniform_int(3, 5);
  std::vector<double> slopes(pieces);
  slopes[0] = rng.uniform(0.3, 1.0);
  for (int j = 1; j < pieces; ++j) {
    slopes[j] = slopes[j - 1] + rng.uniform(0.1, 1.0);
  }
  std::vector<double> breaks(pieces - 1);
  double acc = 0;
  for (double& b : breaks) {
    acc += rng.uniform(0.2, 0.8);
    b = acc;
  }
  std::vector<double> c_coords(dim);
  for (double& v : c_coords) v = rng.uniform(-0.3, 0.3);
  const Point c(c_coords);

  // Convex increasing piecewise-linear profile with phi(0) = 0.
  auto phi = [slopes, breaks](double r) {
    double value = 0;
    double at = 0;
    std::size_t j = 0;
    while (j < breaks.size() && r > breaks[j]) {
      value += slopes[j] * (breaks[j] - at);
      at = breaks[j];
      ++j;
    }
    return value + slopes[j] * (r - at);
  };
  auto slope_at = [slopes, breaks](double r) {
    std::size_t j = 0;
    while (j < breaks.size() && r > breaks[j]) ++j;
    return slopes[j];
  };

  RegistryEntry e;
  e.id = "random_radial_pl";
  e.tags = {"convex", "lsc", "radial", "unique-min"};
  e.default_mesh = default_mesh_for(dim);
  e.objective.name = e.id + "-s" + std::to_string(params.seed);
  e.objective.dim = dim;
  e.objective.domain = symmetric_box(dim, 2.0);
  e.objective.fn = [c, phi](const Point& x) { return ExtReal(phi(x.dist(c))); };
  e.objective.lipschitz_k = slopes.back();
  e.objective.known_minimizer = c;
  e.objective.known_min_value = 0.0;
  e.objective.subgradient_hint = [c, slope_at](const Point& x) {
    const double r = x.dist(c);
    if (r <= 1e-12) return Point::zeros(x.dim());
    return (slope_at(r) / r) * (x - c);
  };
  return e;
}

RegistryEntry make_sq_radial(const FnParams& params) {
  const int dim = pick_dim(params, 2);
  const Point c = pick_center(params, dim);
  double reach2 = 0;
  for (int i = 0; i < dim; ++i) {
    const double m = std::max(std::abs(-2.0 - c[i]), std::abs(2.0 - c[i]));
    reach2 += m * m;
  }
  RegistryEntry e;
  e.id = "sq_radial";
  e.tags = {"convex", "lsc", "radial", "unique-min"};
  e.default_mesh = default_mesh_for(dim);
  e.objective.name = e.id;
  e.objective.dim = dim;
  e.objective.domain = symmetric_box(dim, 2.0);
  e.objective.fn = [c](const Point& x) {
    const double r = x.dist(c);
    return ExtReal(r * r);
  };
  e.objective.lipschitz_k = 2.0 * std::sqrt(reach2);
  e.objective.known_minimizer = c;
  e.objective.known_min_value = 0.0;
  e.objective.subgradient_hint = [c](const Point& x) { return 2.0 * (x - c); };
  return e;
}

RegistryEntry make_truncated(const FnParams& params) {
  const double half = params.r;
  if (!(half > 1.0)) throw InputError("truncation box must extend past 1");
  RegistryEntry e;
  e.id = "unbounded_counterexample_truncated";
  e.tags = {"counterexample", "lsc", "nonconvex", "unique-min"};
  e.default_mesh = 0.1;
  e.objective.name = e.id;
  e.objective.dim = 1;
  e.objective.domain = symmetric_box(1, half);
  e.objective.fn = [](const Point& x) {
    return ExtReal(std::min(std::abs(x[0]), 1.0));
  };
  e.objective.lipschitz_k = 1.0;
  e.objective.known_minimizer = Point({0.0});
  e.objective.known_min_value = 0.0;
  return e;
}

RegistryEntry make_w_piecewise() {
  const SampleCloud vertices(
      {Point({-1.0}), Point({-0.5}), Point({0.0}), Point({0.5}), Point({1.0})},
      {0.8, 0.2, 0.5, 0.0, 0.9});
  RegistryEntry e;
  e.id = "w_piecewise";
  e.tags = {"lsc", "nonconvex", "unique-min"};
  e.default_mesh = 0.05;
  e.objective = objective_from_cloud(vertices);
  e.objective.name = e.id;
  e.objective.known_minimizer = Point({0.5});
  e.objective.known_min_value = 0.0;
  return e;
}

}  // namespace

bool RegistryEntry::has_tag(const std::string& tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

SampleCloud RegistryEntry::canonical_cloud() const {
  return sample_grid(objective, default_mesh);
}

RegistryEntry get_function(const std::string& id, const FnParams& params) {
  RegistryEntry e;
  if (id == "abs1d") {
    e = make_abs1d();
  } else if (id == "aniso_quadratic") {
    e = make_aniso_quadratic(params);
  } else if (id == "lsc_counterexample") {
    e = make_lsc_counterexample();
  } else if (id == "norm_radial") {
    e = make_norm_radial(params);
  } else if (id == "plateau_flat") {
    e = make_plateau_flat();
  } else if (id == "random_lsc_pl") {
    e = make_random_lsc_pl(params);
  } else if (id == "random_radial_pl") {
    e = make_random_radial_pl(params);
  } else if (id == "sq_radial") {
    e = make_sq_radial(params);
  } else if (id == "unbounded_counterexample_truncated") {
    e = make_truncated(params);
  } else if (id == "w_piecewise") {
    e = make_w_piecewise();
  } else {
    throw InputError("unknown function: " + id);
  }
  if (params.mesh > 0) e.default_mesh = params.mesh;
  return e;
}

std::vector<std::string> list_functions() {
  return {"abs1d",
          "aniso_quadratic",
          "lsc_counterexample",
          "norm_radial",
          "plateau_flat",
          "random_lsc_pl",
          "random_radial_pl",
          "sq_radial",
          "unbounded_counterexample_truncated",
          "w_piecewise"};
}

}  // namespace dd
