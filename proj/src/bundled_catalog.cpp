#include "spotplan/catalog.hpp"

namespace spotplan {
namespace {

InstanceSpec gpu(const char* name, const char* od, const char* spot, double gbps, double eflops,
                 double memory_gib = 16.0) {
  return {name, InstanceKind::Gpu, Money::parse(od), Money::parse(spot), gbps, eflops, memory_gib, true, std::nullopt};
}

// The simulated CPU nodes carry no memory figure; 8 GiB covers the
// default checkpoint footprint (0.5 GiB x 2 buffers).
InstanceSpec cpu(const char* name, const char* od, const char* spot, double gbps) {
  return {name, InstanceKind::Cpu, Money::parse(od), Money::parse(spot), gbps, 0.0, 8.0, true, std::nullopt};
}

}  // namespace

Catalog bundled_simulated_catalog() {
  return Catalog({
      gpu("A", "0.75", "0.225", 10, 100, 30.5),
      gpu("B", "0.526", "0.158", 25, 377),
      gpu("C", "1.006", "0.302", 10, 696),
      gpu("D", "0.55", "0.165", 15, 700),
      gpu("E", "0.368", "0.11", 1.7, 100),
      gpu("F", "1.236", "0.371", 25, 800),
      gpu("G", "0.973", "0.292", 30, 200),
      gpu("H", "0.252", "0.076", 5, 150),
      gpu("I", "1.622", "0.487", 30, 900),
      gpu("J", "0.22", "0.066", 5, 50),
      cpu("K", "0.199", "0.126", 1.7),
      cpu("L", "0.1664", "0.103", 5),
      cpu("M", "0.17", "0.1", 10),
      cpu("N", "0.192", "0.12", 12.5),
      cpu("O", "0.499", "0.158", 15),
      cpu("P", "0.216", "0.127", 25),
      cpu("Q", "0.2268", "0.127", 30),
  });
}

}  // namespace spotplan
