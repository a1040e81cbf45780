#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dd/core.hpp"

namespace dd {

struct FnParams {
  int dim = 0;                  // 0 = function default
  double kappa = 10.0;          // anisotropy ratio of the quadratic
  double r = 5.0;               // half-width of the truncation box
  double mesh = 0;              // 0 = function default
  std::uint64_t seed = 1;       // seed of the random families
  std::optional<Point> center;  // minimizer location where supported
};

struct RegistryEntry {
  std::string id;
  Objective objective;
  std::vector<std::string> tags;  // sorted, e.g. convex / lsc / radial / ...
  double default_mesh = 0.05;

  bool has_tag(const std::string& tag) const;
  /// Grid samples of the objective at default_mesh (finite values only).
  SampleCloud canonical_cloud() const;
};

/// Look up a benchmark function by id; parameters that do not apply to the
/// function are ignored. Unknown ids raise InputError.
RegistryEntry get_function(const std::string& id, const FnParams& params = {});

/// All registry ids, lexicographically sorted.
std::vector<std::string> list_functions();

}  // namespace dd
