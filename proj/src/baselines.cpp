#include "spotplan/baselines.hpp"

#include <algorithm>

namespace spotplan {
namespace {

std::optional<ClusterPlan> largest_single_anchor(const InstanceSpec& gpu, const PlanRequest& request,
                                                 const ScalingSource& scaling) {
  if (gpu.od_price > request.pw) return std::nullopt;
  const std::int64_t extra_spot = (request.pw - gpu.od_price).units() / gpu.spot_price.units();
  const int n = static_cast<int>(std::min<std::int64_t>(request.max_instances, extra_spot + 1));

  const FloppScore f = flopp(gpu);
  ClusterPlan plan;
  plan.architecture = ArchitectureKind::SingleAnchor;
  plan.gpu = gpu;
  plan.n_gpu = n;
  plan.hourly_price = (n - 1) * gpu.spot_price + gpu.od_price;
  plan.score_z = ((n - 1) * f.spfp + f.odfp) * scaling.factor(gpu, n);
  return plan;
}

}  // namespace

std::optional<ClusterPlan> plan_cost_first(const Catalog& catalog, const PlanRequest& request,
                                           const ScalingSource& scaling) {
  request.validate();
  const InstanceSpec* pick = nullptr;
  for (const auto& gpu : catalog.gpu_view()) {
    if (!pick || gpu.spot_price < pick->spot_price ||
        (gpu.spot_price == pick->spot_price && gpu.eflops > pick->eflops)) {
      pick = &gpu;
    }
  }
  if (!pick) return std::nullopt;
  return largest_single_anchor(*pick, request, scaling);
}

std::optional<ClusterPlan> plan_performance_first(const Catalog& catalog, const PlanRequest& request,
                                                  const ScalingSource& scaling) {
  request.validate();
  const InstanceSpec* pick = nullptr;
  for (const auto& gpu : catalog.gpu_view()) {
    if (!pick || gpu.eflops > pick->eflops ||
        (gpu.eflops == pick->eflops && gpu.spot_price < pick->spot_price)) {
      pick = &gpu;
    }
  }
  if (!pick) return std::nullopt;
  return largest_single_anchor(*pick, request, scaling);
}

std::vector<ClusterPlan> plan_noscale(const Catalog& catalog, const PlanRequest& request,
                                      const SaturationTable& saturation, Execution execution) {
  return recommend(catalog, request, ScalingSource::unit(), saturation, execution);
}

}  // namespace spotplan
