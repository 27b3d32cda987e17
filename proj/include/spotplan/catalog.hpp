#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spotplan/money.hpp"
#include "spotplan/scaling.hpp"

namespace spotplan {

enum class InstanceKind { Gpu, Cpu };

std::string_view to_string(InstanceKind kind);

/// One VM type as the optimizer sees it.
struct InstanceSpec {
  std::string name;
  InstanceKind kind = InstanceKind::Gpu;
  Money od_price;
  Money spot_price;
  double network_gbps = 0.0;
  double eflops = 0.0;  // effective DL throughput; 0 for CPU instances
  double memory_gib = 0.0;
  bool available = true;
  std::optional<LogisticParams> scaling;  // overrides the default speedup model

  bool is_gpu() const { return kind == InstanceKind::Gpu; }
  bool operator==(const InstanceSpec&) const = default;
};

/// Malformed catalog document (bad JSON, wrong value types, missing keys).
class CatalogParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document that violates an instance or catalog invariant.
class CatalogValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable, validated collection of instance types.
///
/// Unavailable instances are kept (they round-trip through serialization) but
/// are excluded from the GPU and CPU views the planner searches.
class Catalog {
 public:
  Catalog() = default;

  /// Validates every invariant; throws CatalogValidationError naming the
  /// first violation and the offending instance.
  explicit Catalog(std::vector<InstanceSpec> instances, std::vector<std::string> warnings = {});

  std::span<const InstanceSpec> instances() const { return instances_; }
  const InstanceSpec& at(std::size_t index) const { return instances_.at(index); }
  std::size_t size() const { return instances_.size(); }

  /// Catalog positions of available GPU / CPU instances, in catalog order.
  std::span<const std::size_t> gpu_indices() const { return gpu_; }
  std::span<const std::size_t> cpu_indices() const { return cpu_; }

  auto gpu_view() const {
    return gpu_ | std::views::transform([this](std::size_t i) -> const InstanceSpec& { return instances_[i]; });
  }
  auto cpu_view() const {
    return cpu_ | std::views::transform([this](std::size_t i) -> const InstanceSpec& { return instances_[i]; });
  }

  const InstanceSpec* find(std::string_view name) const;

  /// Non-fatal load diagnostics (e.g. ignored unknown fields).
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool operator==(const Catalog& other) const { return instances_ == other.instances_; }

 private:
  std::vector<InstanceSpec> instances_;
  std::vector<std::size_t> gpu_;
  std::vector<std::size_t> cpu_;
  std::vector<std::string> warnings_;
};

/// Checks a single instance's invariants; throws CatalogValidationError.
void validate_instance(const InstanceSpec& instance);

/// Parses a `{"instances": [...]}` JSON document.
Catalog load_catalog(std::istream& source);
Catalog load_catalog(std::string_view text);
Catalog load_catalog_file(const std::filesystem::path& path);

/// Inverse of load_catalog; prices are written with at most 4 fractional digits.
std::string serialize_catalog(const Catalog& catalog);

/// The 17 simulated instances: GPU A-J and CPU K-Q.
Catalog bundled_simulated_catalog();

}  // namespace spotplan
