#pragma once

#include <optional>
#include <vector>

#include "spotplan/planner.hpp"

namespace spotplan {

// Comparison policies. Cost-First and Performance-First only build
// single-anchor clusters, each with as many Spot trainers as the budget and
// the instance cap allow.

/// GPU with the lowest Spot price (ties: higher eFLOPS, then catalog order).
std::optional<ClusterPlan> plan_cost_first(const Catalog& catalog, const PlanRequest& request,
                                           const ScalingSource& scaling);

/// GPU with the highest eFLOPS (ties: lower Spot price, then catalog order).
/// No fallback: if its On-Demand anchor alone exceeds the budget, no plan.
std::optional<ClusterPlan> plan_performance_first(const Catalog& catalog, const PlanRequest& request,
                                                  const ScalingSource& scaling);

/// The full planner with K(v, n) = 1 everywhere in Z.
std::vector<ClusterPlan> plan_noscale(const Catalog& catalog, const PlanRequest& request,
                                      const SaturationTable& saturation,
                                      Execution execution = Execution::Parallel);

}  // namespace spotplan
