#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spotplan/planner.hpp"

namespace spotplan {

enum class Policy { DeepVm, NoScale, CostFirst, PerformanceFirst };

inline constexpr std::array<Policy, 4> kAllPolicies{Policy::DeepVm, Policy::NoScale,
                                                    Policy::CostFirst, Policy::PerformanceFirst};

/// "deepvm", "noscale", "cost_first", "performance_first".
std::string_view to_string(Policy policy);
std::optional<Policy> parse_policy(std::string_view text);

/// Pricing-willingness grid plus the request every grid point shares.
/// Defaults: 0 to 10 in steps of 0.1.
struct SweepSpec {
  Money pw_min = Money::from_units(0);
  Money pw_max = Money::from_units(10 * Money::kScale);
  Money pw_step = Money::from_units(Money::kScale / 10);
  std::vector<Policy> policies{kAllPolicies.begin(), kAllPolicies.end()};
  PlanRequest request_template;  // pw is replaced per grid point

  void validate() const;

  /// pw_min + k * pw_step for every k with the result <= pw_max, exact.
  std::vector<Money> grid() const;
};

struct SweepPoint {
  Money pw;
  double raw = 0.0;
  std::optional<ClusterPlan> plan;
};

struct SweepCurve {
  Policy policy = Policy::DeepVm;
  std::vector<SweepPoint> points;  // one per grid value, grid order
};

struct SweepResult {
  SweepSpec spec;
  std::vector<Money> grid;
  std::vector<SweepCurve> curves;  // spec.policies order
  double normalizer = 0.0;         // deepvm raw performance at pw_max

  /// raw / normalizer, or 0 when nothing is feasible at pw_max.
  double normalized(double raw) const { return normalizer > 0.0 ? raw / normalizer : 0.0; }
  const SweepCurve* curve(Policy policy) const;
};

/// (training GPU count) x eFLOPS(v) x K(v, n). A single-anchor cluster trains
/// on all n GPUs including the anchor.
double evaluate_performance(const ClusterPlan& plan, const ScalingSource& scaling);
double evaluate_performance(const std::optional<ClusterPlan>& plan, const ScalingSource& scaling);

/// The single configuration a policy recommends at request.pw (deepvm and
/// noscale: their top-ranked plan). No plan when request.pw <= 0.
std::optional<ClusterPlan> plan_for_policy(Policy policy, const Catalog& catalog,
                                           const PlanRequest& request, const ScalingSource& scaling,
                                           const SaturationTable& saturation,
                                           Execution execution = Execution::Parallel);

/// Evaluates every policy at every grid point. Grid points are independent;
/// the parallel run is bit-identical to the serial one.
SweepResult run_sweep(const Catalog& catalog, const SweepSpec& spec, const ScalingSource& scaling,
                      const SaturationTable& saturation, Execution execution = Execution::Parallel);

struct CostEstimate {
  double makespan_hours = 0.0;
  double total_cost = 0.0;
};

/// makespan = total_ops / (performance * 3600 s); cost = makespan * hourly
/// price. eFLOPS are read as operations per second here. Throws
/// std::domain_error for a plan with no throughput and std::invalid_argument
/// for total_ops <= 0.
CostEstimate estimate_cost(const ClusterPlan& plan, double total_ops, const ScalingSource& scaling);

// ---------------------------------------------------------------------------
// Sweep files

/// One CSV line: pw,policy,raw,normalized,architecture,gpu,gpu_count,cpu,cpu_count,hourly_price
struct SweepRow {
  Money pw;
  std::string policy;
  double raw = 0.0;
  double normalized = 0.0;
  std::string architecture;  // empty when no plan
  std::string gpu;
  std::optional<int> gpu_count;
  std::string cpu;
  std::optional<int> cpu_count;
  std::optional<Money> hourly_price;

  bool operator==(const SweepRow&) const = default;
};

/// Grid-major, then policy order.
std::vector<SweepRow> sweep_rows(const SweepResult& result);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_json(std::ostream& out, const SweepResult& result);
void write_sweep_table(std::ostream& out, const SweepResult& result);

std::vector<SweepRow> read_sweep_csv(std::istream& in);
std::vector<SweepRow> read_sweep_json(std::istream& in);

}  // namespace spotplan
