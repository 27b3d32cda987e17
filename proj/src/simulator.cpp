#include "spotplan/simulator.hpp"

#include <cstdint>
#include <exception>
#include <stdexcept>

#include "spotplan/baselines.hpp"

namespace spotplan {

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::DeepVm:
      return "deepvm";
    case Policy::NoScale:
      return "noscale";
    case Policy::CostFirst:
      return "cost_first";
    case Policy::PerformanceFirst:
      return "performance_first";
  }
  return "unknown";
}

std::optional<Policy> parse_policy(std::string_view text) {
  for (Policy p : kAllPolicies) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (pw_min.units() < 0) throw std::invalid_argument("pw_min must be >= 0");
  if (!(pw_min < pw_max)) throw std::invalid_argument("pw_min must be below pw_max");
  if (pw_step.units() <= 0) throw std::invalid_argument("pw_step must be positive");
  if (policies.empty()) throw std::invalid_argument("sweep needs at least one policy");
  // pw itself is checked per grid point.
  PlanRequest probe = request_template;
  probe.pw = Money::from_units(1);
  probe.validate();
}

std::vector<Money> SweepSpec::grid() const {
  std::vector<Money> out;
  for (std::int64_t k = 0;; ++k) {
    const Money pw = pw_min + k * pw_step;
    if (pw > pw_max) break;
    out.push_back(pw);
  }
  return out;
}

const SweepCurve* SweepResult::curve(Policy policy) const {
  for (const auto& c : curves) {
    if (c.policy == policy) return &c;
  }
  return nullptr;
}

double evaluate_performance(const ClusterPlan& plan, const ScalingSource& scaling) {
  return plan.n_gpu * plan.gpu.eflops * scaling.factor(plan.gpu, plan.n_gpu);
}

double evaluate_performance(const std::optional<ClusterPlan>& plan, const ScalingSource& scaling) {
  return plan ? evaluate_performance(*plan, scaling) : 0.0;
}

std::optional<ClusterPlan> plan_for_policy(Policy policy, const Catalog& catalog,
                                           const PlanRequest& request, const ScalingSource& scaling,
                                           const SaturationTable& saturation, Execution execution) {
  if (request.pw.units() <= 0) return std::nullopt;
  PlanRequest top1 = request;
  top1.top_k = 1;
  auto first = [](std::vector<ClusterPlan> plans) -> std::optional<ClusterPlan> {
    if (plans.empty()) return std::nullopt;
    return std::move(plans.front());
  };
  switch (policy) {
    case Policy::DeepVm:
      return first(recommend(catalog, top1, scaling, saturation, execution));
    case Policy::NoScale:
      return first(plan_noscale(catalog, top1, saturation, execution));
    case Policy::CostFirst:
      return plan_cost_first(catalog, top1, scaling);
    case Policy::PerformanceFirst:
      return plan_performance_first(catalog, top1, scaling);
  }
  return std::nullopt;
}

SweepResult run_sweep(const Catalog& catalog, const SweepSpec& spec, const ScalingSource& scaling,
                      const SaturationTable& saturation, Execution execution) {
  spec.validate();

  SweepResult result;
  result.spec = spec;
  result.grid = spec.grid();
  const std::size_t points = result.grid.size();
  const std::size_t policies = spec.policies.size();

  result.curves.resize(policies);
  for (std::size_t p = 0; p < policies; ++p) {
    result.curves[p].policy = spec.policies[p];
    result.curves[p].points.resize(points);
  }

  auto evaluate_cell = [&](std::size_t cell) {
    const std::size_t g = cell / policies;
    const std::size_t p = cell % policies;
    PlanRequest request = spec.request_template;
    request.pw = result.grid[g];
    SweepPoint& point = result.curves[p].points[g];
    point.pw = request.pw;
    // Cells already run concurrently; keep each planner call single-threaded.
    point.plan = plan_for_policy(spec.policies[p], catalog, request, scaling, saturation,
                                 Execution::Serial);
    point.raw = evaluate_performance(point.plan, scaling);
  };

  const auto cells = static_cast<std::int64_t>(points * policies);
  if (execution == Execution::Serial) {
    for (std::int64_t i = 0; i < cells; ++i) evaluate_cell(static_cast<std::size_t>(i));
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < cells; ++i) {
      try {
        evaluate_cell(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(spotplan_sweep_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  if (!result.grid.empty() && result.grid.back() == spec.pw_max) {
    // Reuse the deepvm cell at pw_max when the policy is part of the sweep.
    if (const SweepCurve* deepvm = result.curve(Policy::DeepVm)) {
      result.normalizer = deepvm->points.back().raw;
      return result;
    }
  }
  PlanRequest at_max = spec.request_template;
  at_max.pw = spec.pw_max;
  result.normalizer = evaluate_performance(
      plan_for_policy(Policy::DeepVm, catalog, at_max, scaling, saturation, execution), scaling);
  return result;
}

CostEstimate estimate_cost(const ClusterPlan& plan, double total_ops, const ScalingSource& scaling) {
  if (!(total_ops > 0.0)) throw std::invalid_argument("total_ops must be positive");
  const double performance = evaluate_performance(plan, scaling);
  if (!(performance > 0.0)) throw std::domain_error("configuration cannot make progress");
  CostEstimate out;
  out.makespan_hours = total_ops / (performance * 3600.0);
  out.total_cost = out.makespan_hours * plan.hourly_price.to_double();
  return out;
}

}  // namespace spotplan
