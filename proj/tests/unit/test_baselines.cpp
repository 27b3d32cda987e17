#include "doctest.h"

#include "spotplan/baselines.hpp"

using namespace spotplan;

namespace {

InstanceSpec gpu(std::string name, const char* od, const char* spot, double eflops,
                 std::optional<LogisticParams> scaling = std::nullopt) {
  return {std::move(name), InstanceKind::Gpu, Money::parse(od), Money::parse(spot), 10, eflops, 16, true, scaling};
}

PlanRequest request_at(const char* pw) {
  PlanRequest r;
  r.pw = Money::parse(pw);
  return r;
}

const Catalog kSim = bundled_simulated_catalog();

}  // namespace

TEST_CASE("cost-first picks the cheapest spot gpu") {
  const auto p = plan_cost_first(kSim, request_at("3"), ScalingSource());
  REQUIRE(p);
  CHECK(p->gpu.name == "J");
  CHECK(p->architecture == ArchitectureKind::SingleAnchor);
  // (3 - 0.22) / 0.066 = 42.1 spot trainers, plus the anchor.
  CHECK(p->n_gpu == 43);
  CHECK(p->hourly_price == Money::parse("2.992"));
}

TEST_CASE("cost-first budget boundaries") {
  const auto p = plan_cost_first(kSim, request_at("0.22"), ScalingSource());
  REQUIRE(p);
  CHECK(p->n_gpu == 1);
  CHECK_FALSE(plan_cost_first(kSim, request_at("0.2"), ScalingSource()));
}

TEST_CASE("performance-first picks the highest eflops gpu") {
  const auto p = plan_performance_first(kSim, request_at("3"), ScalingSource());
  REQUIRE(p);
  CHECK(p->gpu.name == "I");
}

TEST_CASE("performance-first budget boundaries") {
  CHECK_FALSE(plan_performance_first(kSim, request_at("1.5"), ScalingSource()));
  const auto p = plan_performance_first(kSim, request_at("2.2"), ScalingSource());
  REQUIRE(p);
  CHECK(p->n_gpu == 2);
  CHECK(p->hourly_price == Money::parse("2.109"));
}

TEST_CASE("baselines respect the instance cap") {
  PlanRequest r = request_at("100");
  r.max_instances = 7;
  CHECK(plan_cost_first(kSim, r, ScalingSource())->n_gpu == 7);
  CHECK(plan_performance_first(kSim, r, ScalingSource())->n_gpu == 7);
}

TEST_CASE("baseline tie-breaks") {
  // Same spot price: cost-first prefers more eflops.
  const Catalog same_spot({gpu("slow", "1", "0.1", 50), gpu("fast", "1", "0.1", 80)});
  CHECK(plan_cost_first(same_spot, request_at("3"), ScalingSource())->gpu.name == "fast");
  // Same eflops: performance-first prefers the cheaper spot price.
  const Catalog same_eflops({gpu("dear", "1", "0.3", 80), gpu("cheap", "1", "0.2", 80)});
  CHECK(plan_performance_first(same_eflops, request_at("3"), ScalingSource())->gpu.name == "cheap");
  // Full tie: catalog order.
  const Catalog twins({gpu("a", "1", "0.2", 80), gpu("b", "1", "0.2", 80)});
  CHECK(plan_cost_first(twins, request_at("3"), ScalingSource())->gpu.name == "a");
  CHECK(plan_performance_first(twins, request_at("3"), ScalingSource())->gpu.name == "a");
}

TEST_CASE("noscale plans stay within budget") {
  for (const char* pw : {"0.3", "1", "3", "7.5"}) {
    for (const auto& p : plan_noscale(kSim, request_at(pw), SaturationTable::bundled())) {
      CHECK(p.hourly_price <= Money::parse(pw));
    }
  }
}

TEST_CASE("noscale is fooled by a high-flopp gpu that scales poorly") {
  // "flat" has twice the spot FLOPP of "steady" but saturates at 1.2x speedup.
  const Catalog c({gpu("flat", "0.3", "0.1", 200, LogisticParams{0.5, 1.5, 1.2}), gpu("steady", "0.3", "0.1", 100)});
  const PlanRequest r = request_at("2");
  const ScalingSource scaling;

  // Direct Z at the largest anchor cluster (n = 18) for both GPUs.
  auto z = [&](const InstanceSpec& g, double k) {
    return (17 * g.eflops / g.spot_price.to_double() + g.eflops / g.od_price.to_double()) * k;
  };
  const InstanceSpec& flat = *c.find("flat");
  const InstanceSpec& steady = *c.find("steady");
  REQUIRE(z(flat, 1.0) > z(steady, 1.0));
  REQUIRE(z(flat, scaling.factor(flat, 18)) < z(steady, scaling.factor(steady, 18)));

  const auto full = recommend(c, r, scaling, SaturationTable::bundled());
  const auto noscale = plan_noscale(c, r, SaturationTable::bundled());
  REQUIRE_FALSE(full.empty());
  REQUIRE_FALSE(noscale.empty());
  CHECK(full.front().gpu.name == "steady");
  CHECK(noscale.front().gpu.name == "flat");
}

TEST_CASE("noscale agrees with the full planner on the simulated catalog") {
  const auto full = recommend(kSim, request_at("3"), ScalingSource(), SaturationTable::bundled());
  const auto noscale = plan_noscale(kSim, request_at("3"), SaturationTable::bundled());
  REQUIRE_FALSE(full.empty());
  REQUIRE_FALSE(noscale.empty());
  CHECK(full.front().architecture == noscale.front().architecture);
  CHECK(full.front().gpu.name == noscale.front().gpu.name);
  CHECK(full.front().n_gpu == noscale.front().n_gpu);
  CHECK(full.front().cpu == noscale.front().cpu);
  CHECK(full.front().m_cpu == noscale.front().m_cpu);
}

TEST_CASE("noscale equals the full planner when every model is linear") {
  // L(n) = c/2 + (a c / 4)(n - b) = 512 + (n - 512) = n below b = 512.
  const LogisticParams linear{0.00390625, 512.0, 1024.0};
  std::vector<InstanceSpec> rows(kSim.instances().begin(), kSim.instances().end());
  for (auto& x : rows) {
    if (x.is_gpu()) x.scaling = linear;
  }
  const Catalog c(std::move(rows));
  for (const char* pw : {"0.5", "1.6", "3", "9.9"}) {
    CAPTURE(pw);
    const auto full = recommend(c, request_at(pw), ScalingSource(), SaturationTable::bundled());
    const auto noscale = plan_noscale(c, request_at(pw), SaturationTable::bundled());
    CHECK(full == noscale);
  }
}
