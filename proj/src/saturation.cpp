#include "spotplan/saturation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"

namespace spotplan {

SaturationTable::SaturationTable(std::vector<SaturationEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("saturation table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!std::isfinite(e.bandwidth_gbps) || e.bandwidth_gbps <= 0.0) {
      throw std::invalid_argument("saturation table: bandwidth must be positive");
    }
    if (e.n_sat < 1) throw std::invalid_argument("saturation table: n_sat must be >= 1");
    if (i == 0) continue;
    const auto& prev = entries_[i - 1];
    if (!(e.bandwidth_gbps > prev.bandwidth_gbps)) {
      throw std::invalid_argument("saturation table: bandwidths must be strictly increasing");
    }
    if (e.n_sat < prev.n_sat) {
      throw std::invalid_argument("saturation table: n_sat must not decrease with bandwidth");
    }
  }
}

SaturationTable SaturationTable::bundled() {
  return SaturationTable({{0.3, 3}, {1.7, 12}, {5, 16}, {10, 20},
                          {12.5, 24}, {15, 24}, {25, 28}, {30, 32}});
}

int SaturationTable::lookup(double bandwidth_gbps) const {
  // First key strictly greater than the bandwidth; the one before it is the floor.
  auto it = std::upper_bound(entries_.begin(), entries_.end(), bandwidth_gbps,
                             [](double bw, const SaturationEntry& e) { return bw < e.bandwidth_gbps; });
  if (it == entries_.begin()) return entries_.front().n_sat;
  return std::prev(it)->n_sat;
}

int n_sat_lookup(const SaturationTable& table, const InstanceSpec& gpu, const InstanceSpec& cpu) {
  return table.lookup(std::min(gpu.network_gbps, cpu.network_gbps));
}

SaturationTable load_saturation(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("saturation table is not valid JSON: ") + e.what());
  }
  auto list = doc.is_object() ? doc.find("entries") : doc.end();
  if (!doc.is_object() || list == doc.end() || !list->is_array()) {
    throw std::runtime_error("saturation document needs an \"entries\" array");
  }
  std::vector<SaturationEntry> entries;
  for (const auto& pair : *list) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number_integer()) {
      throw std::runtime_error("saturation entries must be [bandwidth, n_sat] pairs");
    }
    entries.push_back({pair[0].get<double>(), pair[1].get<int>()});
  }
  try {
    return SaturationTable(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

SaturationTable load_saturation_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open saturation file '" + path.string() + "'");
  return load_saturation(in);
}

}  // namespace spotplan
