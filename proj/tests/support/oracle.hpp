#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spotplan/catalog.hpp"
#include "spotplan/planner.hpp"
#include "spotplan/saturation.hpp"
#include "spotplan/scaling.hpp"

// Reference implementations used only by tests. Nothing here calls into the
// planner, the scaling model or the saturation lookup.
namespace spotplan::testing {

/// Logistic speedup with its inflection tangent below b, in long double.
long double oracle_s_hybrid(const LogisticParams& p, long double n);

/// n_sat by linear scan: the largest key not above bw, else the first entry.
int oracle_n_sat(const std::vector<SaturationEntry>& table, double bw);

struct OraclePlan {
  ArchitectureKind architecture;
  std::string gpu;
  int n = 0;
  std::string cpu;  // empty for single anchor
  int m = 0;
  Money price;
  double z = 0.0;
};

/// Every feasible candidate, best first (Z desc, price asc, architecture,
/// GPU position, CPU position, n, m). Counts with K <= 0 are skipped.
/// `unit_k` forces K = 1.
std::vector<OraclePlan> brute_force(const Catalog& catalog, const PlanRequest& request,
                                    const std::vector<SaturationEntry>& table,
                                    const LogisticParams& fallback, bool unit_k = false);

bool same_configuration(const OraclePlan& expected, const ClusterPlan& actual);
std::string describe(const OraclePlan& p);
std::string describe(const ClusterPlan& p);

// ---------------------------------------------------------------------------
// Random inputs

struct RandomCatalogOptions {
  int max_gpus = 5;
  int max_cpus = 5;
  bool clones = true;            // sometimes repeat the previous row under a new name
  bool scaling_overrides = true; // sometimes attach per-instance params
  bool unavailable = true;       // sometimes mark a row unavailable
};

/// Prices are even multiples of 0.0001 so halving them stays exact.
Catalog random_catalog(std::mt19937_64& rng, const RandomCatalogOptions& options = {});

/// Random pw in (0, 12], f in [0.1, 4], s in [1, 4], max_instances in [1, max_cap].
PlanRequest random_request(std::mt19937_64& rng, int max_cap = 64);

/// Multiplies every price by num/den; throws if a price is not divisible.
Catalog scale_prices(const Catalog& catalog, int num, int den);
Money scale_money(Money m, int num, int den);

}  // namespace spotplan::testing
