#include "structsum/autodiff/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace structsum::ad {
namespace {

double evaluate(const Objective& f) {
  Graph g;
  Var out = f(g);
  double v = out.scalar();
  if (!std::isfinite(v)) throw std::domain_error("grad_check: objective is not finite");
  return v;
}

}  // namespace

double gradient_error(double analytic, double numeric, double abs_floor) {
  double diff = std::abs(analytic - numeric);
  if (diff <= abs_floor) return 0.0;
  return diff / std::max(std::abs(analytic), std::abs(numeric));
}

double GradCheckReport::max_rel_error() const {
  double m = 0.0;
  for (const auto& p : params) m = std::max(m, p.max_rel_error);
  return m;
}

const ParamCheck* GradCheckReport::worst() const {
  const ParamCheck* w = nullptr;
  for (const auto& p : params) {
    if (w == nullptr || p.max_rel_error > w->max_rel_error) w = &p;
  }
  return w;
}

GradCheckReport grad_check(const Objective& f, std::vector<Parameter*> params,
                           const GradCheckOptions& options) {
  if (!(options.step > 0.0)) throw std::invalid_argument("grad_check: step must be positive");

  std::vector<Tensor> saved_grads;
  saved_grads.reserve(params.size());
  for (Parameter* p : params) {
    saved_grads.push_back(p->grad);
    p->zero_grad();
  }
  {
    Graph g;
    Var loss = f(g);
    if (!std::isfinite(loss.scalar())) throw std::domain_error("grad_check: objective is not finite");
    g.backward(loss);
  }
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    analytic.push_back(params[k]->grad);
    params[k]->grad = saved_grads[k];
  }

  std::mt19937_64 rng(options.seed);
  GradCheckReport report;
  const double h = options.step;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    std::vector<Index> coords(static_cast<std::size_t>(p.value.size()));
    std::iota(coords.begin(), coords.end(), Index{0});
    if (options.max_coords_per_param != 0 && coords.size() > options.max_coords_per_param) {
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(options.max_coords_per_param);
    }
    ParamCheck check;
    check.name = p.name;
    for (Index c : coords) {
      double original = p.value(c);
      p.value(c) = original + h;
      double up = evaluate(f);
      p.value(c) = original - h;
      double down = evaluate(f);
      p.value(c) = original;
      double numeric = (up - down) / (2.0 * h);
      double a = analytic[k](c);
      check.max_abs_error = std::max(check.max_abs_error, std::abs(a - numeric));
      check.max_rel_error = std::max(check.max_rel_error, gradient_error(a, numeric, options.abs_floor));
      ++check.coords_checked;
    }
    check.passed = check.max_rel_error < options.rel_tolerance;
    report.passed = report.passed && check.passed;
    report.params.push_back(std::move(check));
  }
  return report;
}

}  // namespace structsum::ad
