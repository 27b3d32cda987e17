#pragma once

#include "json.hpp"
#include "spotplan/planner.hpp"

namespace spotplan::detail {

inline nlohmann::json plan_to_json(const ClusterPlan& plan) {
  nlohmann::json out{{"architecture", std::string(to_string(plan.architecture))},
                     {"gpu", plan.gpu.name},
                     {"gpu_count", plan.n_gpu},
                     {"cpu", nullptr},
                     {"cpu_count", nullptr},
                     {"hourly_price", plan.hourly_price.to_double()},
                     {"score_z", plan.score_z}};
  if (plan.cpu) {
    out["cpu"] = plan.cpu->name;
    out["cpu_count"] = plan.m_cpu.value_or(0);
  }
  return out;
}

}  // namespace spotplan::detail
