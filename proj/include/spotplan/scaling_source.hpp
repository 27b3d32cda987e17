#pragma once

#include <string>
#include <vector>

#include "spotplan/catalog.hpp"
#include "spotplan/scaling.hpp"

namespace spotplan {

/// Resolves the speedup model to use for a given instance.
///
/// An instance's own `scaling` params win; otherwise the fallback applies
/// (the reference average unless told otherwise). The unit source models
/// perfectly linear speedup, K(n) = 1.
class ScalingSource {
 public:
  ScalingSource() : ScalingSource(kReferenceAverageParams, ScalingProvenance::ReferenceAverage) {}
  explicit ScalingSource(LogisticParams fallback,
                         ScalingProvenance provenance = ScalingProvenance::Fitted);

  static ScalingSource reference_average() { return ScalingSource(); }
  static ScalingSource unit();

  bool is_unit() const { return unit_; }
  const ScalingModel& fallback() const { return fallback_; }

  ScalingModel model_for(const InstanceSpec& instance) const;

  /// K(n) for this instance.
  double factor(const InstanceSpec& instance, int n) const;

  /// K(1..max_n) for this instance; element i holds K(i + 1).
  std::vector<double> factor_table(const InstanceSpec& instance, int max_n) const;

 private:
  ScalingModel fallback_;
  bool unit_ = false;
};

/// One message per available GPU whose model implies K(n) > 1 for some
/// n in [1, max_n] (superlinear speedup). Such models are used as-is.
std::vector<std::string> superlinear_warnings(const Catalog& catalog, const ScalingSource& scaling,
                                              int max_n);

}  // namespace spotplan
