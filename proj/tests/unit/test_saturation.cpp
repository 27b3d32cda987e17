#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "spotplan/saturation.hpp"

using namespace spotplan;

namespace {

InstanceSpec node(InstanceKind kind, double gbps) {
  return {"x", kind, Money::parse("1"), Money::parse("0.5"), gbps, kind == InstanceKind::Gpu ? 1.0 : 0.0, 16,
          true, std::nullopt};
}

}  // namespace

TEST_CASE("bundled table values") {
  const SaturationTable t = SaturationTable::bundled();
  const std::vector<std::pair<double, int>> expected{{0.3, 3},   {1.7, 12}, {5, 16},  {10, 20},
                                                     {12.5, 24}, {15, 24},  {25, 28}, {30, 32}};
  REQUIRE(t.entries().size() == expected.size());
  for (const auto& [bw, nsat] : expected) {
    CAPTURE(bw);
    CHECK(t.lookup(bw) == nsat);
  }
}

TEST_CASE("lookup floors to the nearest key") {
  const SaturationTable t = SaturationTable::bundled();
  CHECK(t.lookup(11.0) == 20);
  CHECK(t.lookup(1.69) == 3);
  CHECK(t.lookup(29.9) == 28);
  CHECK(t.lookup(100.0) == 32);
  CHECK(t.lookup(0.1) == 3);  // below the smallest key
}

TEST_CASE("keyed by the slower endpoint") {
  const SaturationTable t = SaturationTable::bundled();
  CHECK(n_sat_lookup(t, node(InstanceKind::Gpu, 25), node(InstanceKind::Cpu, 1.7)) == 12);
  CHECK(n_sat_lookup(t, node(InstanceKind::Gpu, 10), node(InstanceKind::Cpu, 30)) == 20);
  CHECK(n_sat_lookup(t, node(InstanceKind::Gpu, 10), node(InstanceKind::Cpu, 10)) == 20);
}

TEST_CASE("fewest memory nodes keeping n/m below n_sat") {
  CHECK(min_cpu_count(32, 12) == 3);
  CHECK(min_cpu_count(1, 3) == 1);
  CHECK(min_cpu_count(24, 12) == 3);
  CHECK(min_cpu_count(23, 12) == 2);
  for (int nsat = 1; nsat <= 40; ++nsat) {
    for (int n = 1; n <= 256; ++n) {
      const int m = min_cpu_count(n, nsat);
      REQUIRE(n < m * nsat);                // n / m < n_sat
      REQUIRE_FALSE(n < (m - 1) * nsat);    // m - 1 would not do
    }
  }
}

TEST_CASE("lookup is monotone in bandwidth") {
  const SaturationTable t = SaturationTable::bundled();
  int prev = 0;
  for (int i = 0; i <= 400; ++i) {
    const int v = t.lookup(i * 0.1);
    REQUIRE(v >= prev);
    prev = v;
  }
}

TEST_CASE("table validation and loading") {
  CHECK_THROWS_AS(SaturationTable({}), std::invalid_argument);
  CHECK_THROWS_AS(SaturationTable({{1.0, 3}, {1.0, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(SaturationTable({{2.0, 3}, {1.0, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(SaturationTable({{1.0, 0}}), std::invalid_argument);

  std::istringstream in(R"({"entries": [[1, 2], [5, 9]]})");
  const SaturationTable t = load_saturation(in);
  CHECK(t.lookup(4.0) == 2);
  CHECK(t.lookup(5.0) == 9);

  std::istringstream bad(R"({"entries": [[1]]})");
  CHECK_THROWS_AS(load_saturation(bad), std::runtime_error);

  const SaturationTable shipped = load_saturation_file(SPOTPLAN_CATALOG_DIR "/saturation.json");
  CHECK(std::ranges::equal(shipped.entries(), SaturationTable::bundled().entries(),
                           [](const SaturationEntry& x, const SaturationEntry& y) {
                             return x.bandwidth_gbps == y.bandwidth_gbps && x.n_sat == y.n_sat;
                           }));
}
