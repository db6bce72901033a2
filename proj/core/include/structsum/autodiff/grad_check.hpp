#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "structsum/autodiff/graph.hpp"

namespace structsum::ad {

struct GradCheckOptions {
  double step = 1e-5;
  double rel_tolerance = 1e-4;
  // Differences below this are treated as agreement (unused weights).
  double abs_floor = 1e-7;
  // Check at most this many coordinates per parameter (sampled); 0 = all.
  std::size_t max_coords_per_param = 0;
  std::uint64_t seed = 1;
};

struct ParamCheck {
  std::string name;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t coords_checked = 0;
  bool passed = true;
};

struct GradCheckReport {
  std::vector<ParamCheck> params;
  bool passed = true;

  double max_rel_error() const;
  const ParamCheck* worst() const;
};

// Builds the scalar objective on a fresh graph from the current parameter
// values. Must be deterministic.
using Objective = std::function<Var(Graph&)>;

// Compares analytic gradients with central differences
// (f(p+h) - f(p-h)) / 2h for every checked coordinate of `params`.
// Throws std::domain_error if the objective produces a non-finite value.
GradCheckReport grad_check(const Objective& f, std::vector<Parameter*> params,
                           const GradCheckOptions& options = {});

// Relative error with an absolute floor: returns 0 when |a - n| <= floor.
double gradient_error(double analytic, double numeric, double abs_floor);

}  // namespace structsum::ad
