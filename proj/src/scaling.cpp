#include "spotplan/scaling.hpp"

#include <cmath>
#include <string>

namespace spotplan {

void LogisticParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument(std::string("logistic parameter '") + name +
                                  "' must be a positive finite number");
    }
  };
  check(a, "a");
  check(b, "b");
  check(c, "c");
}

ScalingModel::ScalingModel(LogisticParams params, ScalingProvenance provenance)
    : params_(params), provenance_(provenance) {
  params_.validate();
}

double s_average(const ScalingModel& model, double n) {
  const auto& p = model.params();
  return p.c / (1.0 + std::exp(-p.a * (n - p.b)));
}

double tangent_speedup(const ScalingModel& model, double n) {
  const auto& p = model.params();
  return p.c / 2.0 + (p.a * p.c / 4.0) * (n - p.b);
}

double s_hybrid(const ScalingModel& model, double n) {
  return n <= model.params().b ? tangent_speedup(model, n) : s_average(model, n);
}

double scaling_factor(const ScalingModel& model, int n) {
  return s_hybrid(model, static_cast<double>(n)) / static_cast<double>(n);
}

LogisticParams average_params(std::span<const LogisticParams> models) {
  if (models.empty()) {
    throw std::invalid_argument("cannot average an empty list of logistic parameters");
  }
  LogisticParams sum;
  for (const auto& m : models) {
    sum.a += m.a;
    sum.b += m.b;
    sum.c += m.c;
  }
  const double count = static_cast<double>(models.size());
  return {sum.a / count, sum.b / count, sum.c / count};
}

}  // namespace spotplan
