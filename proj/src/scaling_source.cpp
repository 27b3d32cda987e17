#include "spotplan/scaling_source.hpp"

#include <algorithm>
#include <sstream>

namespace spotplan {

ScalingSource::ScalingSource(LogisticParams fallback, ScalingProvenance provenance)
    : fallback_(fallback, provenance) {}

ScalingSource ScalingSource::unit() {
  ScalingSource s;
  s.unit_ = true;
  return s;
}

ScalingModel ScalingSource::model_for(const InstanceSpec& instance) const {
  if (instance.scaling) return ScalingModel(*instance.scaling, ScalingProvenance::PerInstance);
  return fallback_;
}

double ScalingSource::factor(const InstanceSpec& instance, int n) const {
  if (unit_) return 1.0;
  return scaling_factor(model_for(instance), n);
}

std::vector<double> ScalingSource::factor_table(const InstanceSpec& instance, int max_n) const {
  std::vector<double> table(static_cast<std::size_t>(std::max(max_n, 0)), 1.0);
  if (unit_) return table;
  const ScalingModel model = model_for(instance);
  for (int n = 1; n <= max_n; ++n) table[n - 1] = scaling_factor(model, n);
  return table;
}

std::vector<std::string> superlinear_warnings(const Catalog& catalog, const ScalingSource& scaling,
                                              int max_n) {
  std::vector<std::string> out;
  if (scaling.is_unit()) return out;
  for (const auto& gpu : catalog.gpu_view()) {
    const auto table = scaling.factor_table(gpu, max_n);
    for (int n = 1; n <= max_n; ++n) {
      if (table[n - 1] > 1.0) {
        std::ostringstream msg;
        msg << "instance '" << gpu.name << "': speedup model is superlinear (K(" << n
            << ") = " << table[n - 1] << " > 1); using it as-is";
        out.push_back(msg.str());
        break;
      }
    }
  }
  return out;
}

}  // namespace spotplan
