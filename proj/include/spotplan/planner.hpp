#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spotplan/catalog.hpp"
#include "spotplan/money.hpp"
#include "spotplan/saturation.hpp"
#include "spotplan/scaling_source.hpp"

namespace spotplan {

/// User inputs. Defaults: pw=3, bf=2, ckpsize=0.5, MAX_LIMIT=256.
struct PlanRequest {
  Money pw = Money::from_units(3 * Money::kScale);  // pricing willingness, per hour
  double ckpt_size_gib = 0.5;                       // f
  int buffer_count = 2;                             // s
  int max_instances = 256;                          // cap on n and on m
  int top_k = 3;

  /// Throws std::invalid_argument on the first violated invariant.
  void validate() const;

  double checkpoint_footprint_gib() const { return ckpt_size_gib * buffer_count; }
};

/// Operations per currency unit on Spot and On-Demand pricing.
struct FloppScore {
  double spfp = 0.0;
  double odfp = 0.0;
};

/// Throws std::invalid_argument for CPU instances.
FloppScore flopp(const InstanceSpec& instance);

enum class ArchitectureKind { SingleAnchor, Tiering };

std::string_view to_string(ArchitectureKind kind);

struct ClusterPlan {
  ArchitectureKind architecture = ArchitectureKind::SingleAnchor;
  InstanceSpec gpu;
  int n_gpu = 0;  // SingleAnchor: total trainers including the On-Demand anchor
  std::optional<InstanceSpec> cpu;
  std::optional<int> m_cpu;
  Money hourly_price;
  double score_z = 0.0;

  bool operator==(const ClusterPlan&) const = default;
};

// ---------------------------------------------------------------------------
// Architecture registry

struct CandidateInput {
  const InstanceSpec& gpu;
  const InstanceSpec* cpu;  // null unless the architecture uses memory nodes
  int n;
  FloppScore flopp;
  double k;  // scaling factor K(gpu, n)
  const PlanRequest& request;
  const SaturationTable& saturation;
};

struct CandidateScore {
  int n_gpu = 0;
  int m_cpu = 0;
  Money hourly_price;
  double score_z = 0.0;
};

/// A cluster shape: a feasibility predicate plus a Z evaluator for one
/// (GPU type, optional memory-node type, GPU count) point.
class Architecture {
 public:
  virtual ~Architecture() = default;
  virtual ArchitectureKind kind() const = 0;
  virtual bool uses_memory_nodes() const = 0;
  virtual std::optional<CandidateScore> evaluate(const CandidateInput& in) const = 0;
};

/// One On-Demand GPU anchor plus n - 1 Spot GPU trainers.
const Architecture& single_anchor_architecture();
/// n Spot GPU trainers plus m On-Demand CPU memory nodes.
const Architecture& tiering_architecture();
/// {SingleAnchor, Tiering}, in tie-break order.
std::span<const Architecture* const> default_architectures();

enum class Execution { Parallel, Serial };

/// Exhaustive search over every architecture, GPU type, memory-node type and
/// count in [1, max_instances]. Returns at most `top_k` plans ordered by Z
/// descending, then hourly price ascending, then architecture order, then
/// catalog order. Counts where K(gpu, n) <= 0 are skipped. Parallel and
/// Serial produce identical results.
std::vector<ClusterPlan> search(const Catalog& catalog, const PlanRequest& request,
                                const ScalingSource& scaling, const SaturationTable& saturation,
                                std::span<const Architecture* const> architectures,
                                std::size_t top_k, Execution execution = Execution::Parallel);

std::optional<ClusterPlan> plan_single_anchor(const Catalog& catalog, const PlanRequest& request,
                                              const ScalingSource& scaling,
                                              Execution execution = Execution::Parallel);

std::optional<ClusterPlan> plan_tiering(const Catalog& catalog, const PlanRequest& request,
                                        const ScalingSource& scaling,
                                        const SaturationTable& saturation,
                                        Execution execution = Execution::Parallel);

/// Top `request.top_k` plans pooled across all registered architectures.
std::vector<ClusterPlan> recommend(const Catalog& catalog, const PlanRequest& request,
                                   const ScalingSource& scaling, const SaturationTable& saturation,
                                   Execution execution = Execution::Parallel);

inline std::vector<ClusterPlan> recommend_serial(const Catalog& catalog, const PlanRequest& request,
                                                 const ScalingSource& scaling,
                                                 const SaturationTable& saturation) {
  return recommend(catalog, request, scaling, saturation, Execution::Serial);
}

}  // namespace spotplan
