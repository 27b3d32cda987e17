#include "doctest.h"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spotplan/simulator.hpp"

using namespace spotplan;

namespace {

const Catalog kSim = bundled_simulated_catalog();

SweepResult default_sweep(Execution exec = Execution::Parallel) {
  return run_sweep(kSim, SweepSpec{}, ScalingSource(), SaturationTable::bundled(), exec);
}

}  // namespace

TEST_CASE("policy names") {
  for (Policy p : kAllPolicies) CHECK(parse_policy(to_string(p)) == p);
  CHECK_FALSE(parse_policy("bogus"));
}

TEST_CASE("grid arithmetic") {
  SweepSpec spec;
  const auto grid = spec.grid();
  REQUIRE(grid.size() == 101);
  CHECK(grid.front() == Money());
  CHECK(grid[37] == Money::parse("3.7"));
  CHECK(grid.back() == Money::parse("10"));

  spec.pw_step = Money::parse("5");
  CHECK(spec.grid() == std::vector<Money>{Money::parse("0"), Money::parse("5"), Money::parse("10")});

  spec.pw_step = Money::parse("3");
  CHECK(spec.grid().back() == Money::parse("9"));
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.pw_min = Money::parse("5");
  spec.pw_max = Money::parse("5");
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SweepSpec{};
  spec.pw_step = Money();
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SweepSpec{};
  spec.policies.clear();
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SweepSpec{};
  spec.pw_min = Money::parse("-1");
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("performance of a plan") {
  CHECK(evaluate_performance(std::optional<ClusterPlan>{}, ScalingSource()) == 0.0);
  ClusterPlan p;
  p.architecture = ArchitectureKind::Tiering;
  p.gpu = *kSim.find("A");
  p.n_gpu = 1;
  p.cpu = *kSim.find("K");
  p.m_cpu = 1;
  const ScalingModel avg = ScalingModel::reference_average();
  CHECK(evaluate_performance(p, ScalingSource()) == doctest::Approx(100.0 * tangent_speedup(avg, 1.0)));
  // The on-demand anchor trains too.
  p.architecture = ArchitectureKind::SingleAnchor;
  p.cpu.reset();
  p.m_cpu.reset();
  p.n_gpu = 4;
  CHECK(evaluate_performance(p, ScalingSource()) == doctest::Approx(4 * 100.0 * scaling_factor(avg, 4)));
}

TEST_CASE("no plan at zero budget") {
  PlanRequest r;
  r.pw = Money();
  for (Policy p : kAllPolicies) {
    CHECK_FALSE(plan_for_policy(p, kSim, r, ScalingSource(), SaturationTable::bundled()));
  }
}

TEST_CASE("default sweep shape") {
  const SweepResult s = default_sweep();
  CHECK(s.grid.size() == 101);
  REQUIRE(s.curves.size() == 4);
  for (const auto& c : s.curves) {
    REQUIRE(c.points.size() == 101);
    for (const auto& pt : c.points) {
      CHECK(pt.raw >= 0.0);
      if (pt.plan) CHECK(pt.plan->hourly_price <= pt.pw);
    }
  }
  const SweepCurve* deepvm = s.curve(Policy::DeepVm);
  REQUIRE(deepvm);
  CHECK(s.normalized(deepvm->points.back().raw) == 1.0);
}

TEST_CASE("deepvm curve is non-decreasing and stepwise") {
  const SweepResult s = default_sweep();
  const SweepCurve& d = *s.curve(Policy::DeepVm);
  int plateaus = 0;
  for (std::size_t i = 1; i < d.points.size(); ++i) {
    CHECK(d.points[i].raw >= d.points[i - 1].raw);
    if (d.points[i].plan == d.points[i - 1].plan) {
      CHECK(d.points[i].raw == d.points[i - 1].raw);
      ++plateaus;
    }
  }
  CHECK(plateaus > 0);
}

TEST_CASE("every curve changes only when its plan changes") {
  const SweepResult s = default_sweep();
  for (const auto& c : s.curves) {
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      if (c.points[i].plan == c.points[i - 1].plan) REQUIRE(c.points[i].raw == c.points[i - 1].raw);
    }
  }
}

TEST_CASE("parallel sweep is bit-identical to the serial sweep") {
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
#endif
  const SweepResult par = default_sweep(Execution::Parallel);
  const SweepResult ser = default_sweep(Execution::Serial);
  CHECK(par.normalizer == ser.normalizer);
  REQUIRE(par.curves.size() == ser.curves.size());
  for (std::size_t c = 0; c < par.curves.size(); ++c) {
    for (std::size_t i = 0; i < par.curves[c].points.size(); ++i) {
      REQUIRE(par.curves[c].points[i].raw == ser.curves[c].points[i].raw);
      REQUIRE(par.curves[c].points[i].plan == ser.curves[c].points[i].plan);
    }
  }
  std::ostringstream a, b;
  write_sweep_csv(a, par);
  write_sweep_csv(b, ser);
  CHECK(a.str() == b.str());
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
}

TEST_CASE("normalizer without a deepvm curve") {
  SweepSpec spec;
  spec.policies = {Policy::CostFirst};
  const SweepResult s = run_sweep(kSim, spec, ScalingSource(), SaturationTable::bundled());
  CHECK(s.normalizer == default_sweep().normalizer);
}

TEST_CASE("sweep files round-trip") {
  SweepSpec spec;
  spec.pw_step = Money::parse("0.5");
  const SweepResult s = run_sweep(kSim, spec, ScalingSource(), SaturationTable::bundled());
  const auto rows = sweep_rows(s);
  REQUIRE(rows.size() == 21 * 4);
  CHECK(rows[0].pw == Money());
  CHECK(rows[0].policy == "deepvm");
  CHECK(rows[1].policy == "noscale");

  std::stringstream csv;
  write_sweep_csv(csv, s);
  CHECK(csv.str().rfind("pw,policy,raw,normalized,architecture,gpu,gpu_count,cpu,cpu_count,hourly_price\n", 0) == 0);
  CHECK(read_sweep_csv(csv) == rows);

  std::stringstream json;
  write_sweep_json(json, s);
  CHECK(read_sweep_json(json) == rows);
}

TEST_CASE("malformed sweep files") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_sweep_csv(empty), std::runtime_error);
  std::istringstream wrong_header("a,b\n");
  CHECK_THROWS_AS(read_sweep_csv(wrong_header), std::runtime_error);
  std::istringstream short_row("pw,policy,raw,normalized,architecture,gpu,gpu_count,cpu,cpu_count,hourly_price\n1,deepvm\n");
  CHECK_THROWS_AS(read_sweep_csv(short_row), std::runtime_error);
  std::istringstream bad_json("{\"grid\": 3}");
  CHECK_THROWS_AS(read_sweep_json(bad_json), std::runtime_error);
}

TEST_CASE("cost estimate") {
  const auto plans = recommend(kSim, PlanRequest{}, ScalingSource(), SaturationTable::bundled());
  REQUIRE_FALSE(plans.empty());
  const ClusterPlan& p = plans.front();
  const double perf = evaluate_performance(p, ScalingSource());
  const CostEstimate e = estimate_cost(p, 3600.0 * perf, ScalingSource());
  CHECK(e.makespan_hours == doctest::Approx(1.0));
  CHECK(e.total_cost == doctest::Approx(p.hourly_price.to_double()));
  CHECK_THROWS_AS(estimate_cost(p, 0.0, ScalingSource()), std::invalid_argument);

  ClusterPlan dead = p;
  dead.gpu.eflops = 0.0;
  try {
    estimate_cost(dead, 1.0, ScalingSource());
    FAIL("expected an error");
  } catch (const std::domain_error& err) {
    CHECK(std::string(err.what()) == "configuration cannot make progress");
  }
}
