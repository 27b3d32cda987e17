#include "spotplan/planner.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spotplan {

void PlanRequest::validate() const {
  if (pw.units() <= 0) throw std::invalid_argument("pricing willingness must be positive");
  if (!(ckpt_size_gib > 0.0)) throw std::invalid_argument("checkpoint size must be positive");
  if (buffer_count < 1) throw std::invalid_argument("buffer count must be >= 1");
  if (max_instances < 1) throw std::invalid_argument("max instances must be >= 1");
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
}

FloppScore flopp(const InstanceSpec& instance) {
  if (!instance.is_gpu()) {
    throw std::invalid_argument("FLOPP is only defined for gpu instances ('" + instance.name + "')");
  }
  return {instance.eflops / instance.spot_price.to_double(),
          instance.eflops / instance.od_price.to_double()};
}

std::string_view to_string(ArchitectureKind kind) {
  switch (kind) {
    case ArchitectureKind::SingleAnchor:
      return "single_anchor";
    case ArchitectureKind::Tiering:
      return "tiering";
  }
  return "unknown";
}

namespace {

class SingleAnchor final : public Architecture {
 public:
  ArchitectureKind kind() const override { return ArchitectureKind::SingleAnchor; }
  bool uses_memory_nodes() const override { return false; }

  std::optional<CandidateScore> evaluate(const CandidateInput& in) const override {
    const Money price = (in.n - 1) * in.gpu.spot_price + in.gpu.od_price;
    if (price > in.request.pw) return std::nullopt;
    const double z = ((in.n - 1) * in.flopp.spfp + in.flopp.odfp) * in.k;
    return CandidateScore{in.n, 0, price, z};
  }
};

class Tiering final : public Architecture {
 public:
  ArchitectureKind kind() const override { return ArchitectureKind::Tiering; }
  bool uses_memory_nodes() const override { return true; }

  std::optional<CandidateScore> evaluate(const CandidateInput& in) const override {
    const InstanceSpec& cpu = *in.cpu;
    if (cpu.memory_gib < in.request.checkpoint_footprint_gib()) return std::nullopt;
    const int m = min_cpu_count(in.n, n_sat_lookup(in.saturation, in.gpu, cpu));
    if (m > in.request.max_instances) return std::nullopt;
    const Money price = in.n * in.gpu.spot_price + m * cpu.od_price;
    if (price > in.request.pw) return std::nullopt;
    return CandidateScore{in.n, m, price, in.n * in.flopp.spfp * in.k};
  }
};

const SingleAnchor kSingleAnchor;
const Tiering kTiering;
const std::array<const Architecture*, 2> kDefaultArchitectures{&kSingleAnchor, &kTiering};

struct Candidate {
  double z;
  Money price;
  std::uint32_t arch;  // registry position
  std::uint32_t gpu;   // catalog position
  std::int32_t cpu;    // catalog position, -1 if none
  int n;
  int m;
};

bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.z != b.z) return a.z > b.z;
  if (a.price != b.price) return a.price < b.price;
  return std::tie(a.arch, a.gpu, a.cpu, a.n, a.m) < std::tie(b.arch, b.gpu, b.cpu, b.n, b.m);
}

// Bounded best-k set under the total order above. Insertion order does not
// affect the contents, so per-thread sets merge deterministically.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) { items_.reserve(k + 1); }

  void offer(const Candidate& c) {
    if (items_.size() == k_ && !ranks_before(c, items_.back())) return;
    items_.insert(std::upper_bound(items_.begin(), items_.end(), c, ranks_before), c);
    if (items_.size() > k_) items_.pop_back();
  }

  void merge(const TopK& other) {
    for (const auto& c : other.items_) offer(c);
  }

  const std::vector<Candidate>& items() const { return items_; }

 private:
  std::size_t k_;
  std::vector<Candidate> items_;
};

struct WorkUnit {
  std::uint32_t arch;
  std::size_t gpu;  // index into gpu tables
  std::int32_t cpu;
};

struct GpuTables {
  std::vector<FloppScore> flopp;
  std::vector<std::vector<double>> k;  // k[g][n - 1]
};

void run_unit(const WorkUnit& unit, const Catalog& catalog, const PlanRequest& request,
              const SaturationTable& saturation, std::span<const Architecture* const> architectures,
              const GpuTables& tables, TopK& best) {
  const std::size_t gpu_pos = catalog.gpu_indices()[unit.gpu];
  const InstanceSpec& gpu = catalog.at(gpu_pos);
  const InstanceSpec* cpu = unit.cpu >= 0 ? &catalog.at(static_cast<std::size_t>(unit.cpu)) : nullptr;
  const Architecture& arch = *architectures[unit.arch];
  const auto& k_table = tables.k[unit.gpu];

  for (int n = 1; n <= request.max_instances; ++n) {
    // The tangent branch of a steep per-instance model can dip to zero or
    // below at small n; such a cluster makes no modeled progress.
    if (!(k_table[n - 1] > 0.0)) continue;
    const CandidateInput in{gpu, cpu, n, tables.flopp[unit.gpu], k_table[n - 1], request, saturation};
    if (auto score = arch.evaluate(in)) {
      best.offer({score->score_z, score->hourly_price, unit.arch, static_cast<std::uint32_t>(gpu_pos),
                  unit.cpu, score->n_gpu, score->m_cpu});
    }
  }
}

ClusterPlan materialize(const Candidate& c, const Catalog& catalog,
                        std::span<const Architecture* const> architectures) {
  ClusterPlan plan;
  plan.architecture = architectures[c.arch]->kind();
  plan.gpu = catalog.at(c.gpu);
  plan.n_gpu = c.n;
  if (c.cpu >= 0) {
    plan.cpu = catalog.at(static_cast<std::size_t>(c.cpu));
    plan.m_cpu = c.m;
  }
  plan.hourly_price = c.price;
  plan.score_z = c.z;
  return plan;
}

}  // namespace

const Architecture& single_anchor_architecture() { return kSingleAnchor; }
const Architecture& tiering_architecture() { return kTiering; }
std::span<const Architecture* const> default_architectures() { return kDefaultArchitectures; }

std::vector<ClusterPlan> search(const Catalog& catalog, const PlanRequest& request,
                                const ScalingSource& scaling, const SaturationTable& saturation,
                                std::span<const Architecture* const> architectures,
                                std::size_t top_k, Execution execution) {
  request.validate();
  if (top_k == 0) return {};

  const auto gpus = catalog.gpu_indices();
  GpuTables tables;
  tables.flopp.reserve(gpus.size());
  tables.k.reserve(gpus.size());
  for (std::size_t pos : gpus) {
    tables.flopp.push_back(flopp(catalog.at(pos)));
    tables.k.push_back(scaling.factor_table(catalog.at(pos), request.max_instances));
  }

  std::vector<WorkUnit> units;
  for (std::uint32_t a = 0; a < architectures.size(); ++a) {
    for (std::size_t g = 0; g < gpus.size(); ++g) {
      if (architectures[a]->uses_memory_nodes()) {
        for (std::size_t cpu_pos : catalog.cpu_indices()) {
          units.push_back({a, g, static_cast<std::int32_t>(cpu_pos)});
        }
      } else {
        units.push_back({a, g, -1});
      }
    }
  }

  TopK best(top_k);
  if (execution == Execution::Serial) {
    for (const auto& unit : units) {
      run_unit(unit, catalog, request, saturation, architectures, tables, best);
    }
  } else {
    const auto count = static_cast<std::int64_t>(units.size());
#pragma omp parallel
    {
      TopK local(top_k);
#pragma omp for schedule(dynamic) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        run_unit(units[i], catalog, request, saturation, architectures, tables, local);
      }
#pragma omp critical(spotplan_topk_merge)
      best.merge(local);
    }
  }

  std::vector<ClusterPlan> plans;
  plans.reserve(best.items().size());
  for (const auto& c : best.items()) plans.push_back(materialize(c, catalog, architectures));
  return plans;
}

std::optional<ClusterPlan> plan_single_anchor(const Catalog& catalog, const PlanRequest& request,
                                              const ScalingSource& scaling, Execution execution) {
  // The single-anchor shape never consults the saturation table.
  static const SaturationTable kUnused = SaturationTable::bundled();
  const std::array<const Architecture*, 1> archs{&kSingleAnchor};
  auto plans = search(catalog, request, scaling, kUnused, archs, 1, execution);
  if (plans.empty()) return std::nullopt;
  return std::move(plans.front());
}

std::optional<ClusterPlan> plan_tiering(const Catalog& catalog, const PlanRequest& request,
                                        const ScalingSource& scaling,
                                        const SaturationTable& saturation, Execution execution) {
  const std::array<const Architecture*, 1> archs{&kTiering};
  auto plans = search(catalog, request, scaling, saturation, archs, 1, execution);
  if (plans.empty()) return std::nullopt;
  return std::move(plans.front());
}

std::vector<ClusterPlan> recommend(const Catalog& catalog, const PlanRequest& request,
                                   const ScalingSource& scaling, const SaturationTable& saturation,
                                   Execution execution) {
  return search(catalog, request, scaling, saturation, default_architectures(),
                static_cast<std::size_t>(request.top_k), execution);
}

}  // namespace spotplan
