#include "spotplan/catalog.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace spotplan {

using nlohmann::json;

std::string_view to_string(InstanceKind kind) {
  return kind == InstanceKind::Gpu ? "gpu" : "cpu";
}

void validate_instance(const InstanceSpec& x) {
  auto fail = [&](const std::string& what) {
    throw CatalogValidationError("instance '" + x.name + "': " + what);
  };
  if (x.name.empty()) throw CatalogValidationError("instance with empty name");
  if (x.od_price.units() <= 0) fail("od_price must be positive");
  if (x.spot_price.units() <= 0) fail("spot_price must be positive");
  if (x.spot_price > x.od_price) fail("spot_price exceeds od_price");
  if (!std::isfinite(x.network_gbps) || x.network_gbps <= 0.0) fail("network_gbps must be positive");
  if (!std::isfinite(x.memory_gib) || x.memory_gib <= 0.0) fail("memory_gib must be positive");
  if (!std::isfinite(x.eflops) || x.eflops < 0.0) fail("eflops must be a non-negative number");
  if (x.kind == InstanceKind::Cpu && x.eflops != 0.0) fail("eflops must be 0 for a cpu instance");
  if (x.kind == InstanceKind::Gpu && x.available && x.eflops <= 0.0) {
    fail("eflops must be positive for an available gpu instance");
  }
  if (x.scaling) {
    try {
      x.scaling->validate();
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
}

Catalog::Catalog(std::vector<InstanceSpec> instances, std::vector<std::string> warnings)
    : instances_(std::move(instances)), warnings_(std::move(warnings)) {
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const auto& x = instances_[i];
    validate_instance(x);
    if (!names.insert(x.name).second) {
      throw CatalogValidationError("duplicate instance name '" + x.name + "'");
    }
    if (!x.available) continue;
    (x.is_gpu() ? gpu_ : cpu_).push_back(i);
  }
}

const InstanceSpec* Catalog::find(std::string_view name) const {
  for (const auto& x : instances_) {
    if (x.name == name) return &x;
  }
  return nullptr;
}

namespace {

const std::set<std::string, std::less<>> kKnownKeys{
    "name", "kind", "od_price", "spot_price", "network_gbps",
    "eflops", "memory_gib", "available", "scaling"};

double require_number(const json& obj, const char* key, const std::string& who) {
  auto it = obj.find(key);
  if (it == obj.end()) throw CatalogParseError(who + ": missing key '" + key + "'");
  if (!it->is_number()) throw CatalogParseError(who + ": '" + key + "' must be a number");
  return it->get<double>();
}

Money require_price(const json& obj, const char* key, const std::string& who) {
  const double value = require_number(obj, key, who);
  try {
    return Money::from_double(value);
  } catch (const std::invalid_argument& e) {
    throw CatalogValidationError(who + ": " + key + ": " + e.what());
  }
}

InstanceSpec parse_instance(const json& entry, std::size_t index, std::vector<std::string>& warnings) {
  std::string who = "instances[" + std::to_string(index) + "]";
  if (!entry.is_object()) throw CatalogParseError(who + ": expected an object");

  InstanceSpec x;
  auto name = entry.find("name");
  if (name == entry.end() || !name->is_string()) {
    throw CatalogParseError(who + ": 'name' must be a string");
  }
  x.name = name->get<std::string>();
  who = "instance '" + x.name + "'";

  auto kind = entry.find("kind");
  if (kind == entry.end() || !kind->is_string()) {
    throw CatalogParseError(who + ": 'kind' must be \"gpu\" or \"cpu\"");
  }
  const auto kind_text = kind->get<std::string>();
  if (kind_text == "gpu") {
    x.kind = InstanceKind::Gpu;
  } else if (kind_text == "cpu") {
    x.kind = InstanceKind::Cpu;
  } else {
    throw CatalogParseError(who + ": unknown kind '" + kind_text + "'");
  }

  x.od_price = require_price(entry, "od_price", who);
  x.spot_price = require_price(entry, "spot_price", who);
  x.network_gbps = require_number(entry, "network_gbps", who);
  x.memory_gib = require_number(entry, "memory_gib", who);
  x.eflops = entry.contains("eflops") ? require_number(entry, "eflops", who) : 0.0;

  if (auto it = entry.find("available"); it != entry.end()) {
    if (!it->is_boolean()) throw CatalogParseError(who + ": 'available' must be a boolean");
    x.available = it->get<bool>();
  }

  if (auto it = entry.find("scaling"); it != entry.end() && !it->is_null()) {
    if (!it->is_object()) throw CatalogParseError(who + ": 'scaling' must be an object");
    const std::string sub = who + " scaling";
    x.scaling = LogisticParams{require_number(*it, "a", sub), require_number(*it, "b", sub),
                               require_number(*it, "c", sub)};
  }

  for (const auto& [key, _] : entry.items()) {
    if (!kKnownKeys.contains(key)) {
      warnings.push_back(who + ": ignoring unknown field '" + key + "'");
    }
  }
  return x;
}

}  // namespace

Catalog load_catalog(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw CatalogParseError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CatalogParseError("catalog document must be a JSON object");
  auto list = doc.find("instances");
  if (list == doc.end() || !list->is_array()) {
    throw CatalogParseError("catalog document needs an \"instances\" array");
  }

  std::vector<std::string> warnings;
  for (const auto& [key, _] : doc.items()) {
    if (key != "instances") warnings.push_back("ignoring unknown top-level field '" + key + "'");
  }

  std::vector<InstanceSpec> instances;
  instances.reserve(list->size());
  for (std::size_t i = 0; i < list->size(); ++i) {
    instances.push_back(parse_instance((*list)[i], i, warnings));
  }
  return Catalog(std::move(instances), std::move(warnings));
}

Catalog load_catalog(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_catalog(in);
}

Catalog load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogParseError("cannot open catalog file '" + path.string() + "'");
  return load_catalog(in);
}

std::string serialize_catalog(const Catalog& catalog) {
  json list = json::array();
  for (const auto& x : catalog.instances()) {
    json entry{{"name", x.name},
               {"kind", std::string(to_string(x.kind))},
               {"od_price", x.od_price.to_double()},
               {"spot_price", x.spot_price.to_double()},
               {"network_gbps", x.network_gbps},
               {"eflops", x.eflops},
               {"memory_gib", x.memory_gib},
               {"available", x.available}};
    if (x.scaling) entry["scaling"] = {{"a", x.scaling->a}, {"b", x.scaling->b}, {"c", x.scaling->c}};
    list.push_back(std::move(entry));
  }
  return json{{"instances", std::move(list)}}.dump(2) + "\n";
}

}  // namespace spotplan
