#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "spotplan/catalog.hpp"

namespace spotplan {

struct SaturationEntry {
  double bandwidth_gbps = 0.0;
  int n_sat = 1;

  bool operator==(const SaturationEntry&) const = default;
};

/// Bandwidth -> number of concurrent checkpoint senders one receiver tolerates
/// before N-to-1 transfer time stops improving.
class SaturationTable {
 public:
  /// Throws std::invalid_argument if empty, bandwidths are not strictly
  /// increasing, or n_sat decreases / is < 1.
  explicit SaturationTable(std::vector<SaturationEntry> entries);

  /// The measured AWS table: 0.3:3 1.7:12 5:16 10:20 12.5:24 15:24 25:28 30:32.
  static SaturationTable bundled();

  std::span<const SaturationEntry> entries() const { return entries_; }

  /// n_sat of the largest key <= bandwidth; the smallest key's n_sat below it.
  int lookup(double bandwidth_gbps) const;

 private:
  std::vector<SaturationEntry> entries_;
};

/// Keys the table by the bottleneck min(bw(v), bw(w)).
int n_sat_lookup(const SaturationTable& table, const InstanceSpec& gpu, const InstanceSpec& cpu);

/// Smallest m >= 1 with n_gpu / m < n_sat, i.e. floor(n_gpu / n_sat) + 1.
constexpr int min_cpu_count(int n_gpu, int n_sat) { return n_gpu / n_sat + 1; }

/// `{"entries": [[bandwidth, n_sat], ...]}`
SaturationTable load_saturation(std::istream& in);
SaturationTable load_saturation_file(const std::filesystem::path& path);

}  // namespace spotplan
