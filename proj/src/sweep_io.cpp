#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "format.hpp"
#include "json.hpp"
#include "plan_json.hpp"
#include "spotplan/simulator.hpp"

namespace spotplan {
namespace {

using nlohmann::json;
using detail::format_double;

constexpr std::string_view kCsvHeader =
    "pw,policy,raw,normalized,architecture,gpu,gpu_count,cpu,cpu_count,hourly_price";

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  return fields;
}

double parse_double(const std::string& text, int line_no) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw std::runtime_error("sweep csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

std::optional<int> parse_count(const std::string& text, int line_no) {
  if (text.empty()) return std::nullopt;
  int v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw std::runtime_error("sweep csv line " + std::to_string(line_no) + ": bad count '" + text + "'");
  }
  return v;
}

SweepRow make_row(const SweepResult& result, const SweepCurve& curve, const SweepPoint& point) {
  SweepRow row;
  row.pw = point.pw;
  row.policy = std::string(to_string(curve.policy));
  row.raw = point.raw;
  row.normalized = result.normalized(point.raw);
  if (point.plan) {
    const ClusterPlan& plan = *point.plan;
    row.architecture = std::string(to_string(plan.architecture));
    row.gpu = plan.gpu.name;
    row.gpu_count = plan.n_gpu;
    if (plan.cpu) {
      row.cpu = plan.cpu->name;
      row.cpu_count = plan.m_cpu;
    }
    row.hourly_price = plan.hourly_price;
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_rows(const SweepResult& result) {
  std::vector<SweepRow> rows;
  rows.reserve(result.grid.size() * result.curves.size());
  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    for (const auto& curve : result.curves) rows.push_back(make_row(result, curve, curve.points[g]));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& row : sweep_rows(result)) {
    out << row.pw.to_string() << ',' << csv_field(row.policy) << ',' << format_double(row.raw) << ','
        << format_double(row.normalized) << ',' << csv_field(row.architecture) << ','
        << csv_field(row.gpu) << ',' << (row.gpu_count ? std::to_string(*row.gpu_count) : "") << ','
        << csv_field(row.cpu) << ',' << (row.cpu_count ? std::to_string(*row.cpu_count) : "") << ','
        << (row.hourly_price ? row.hourly_price->to_string() : "") << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& result) {
  json grid = json::array();
  for (Money pw : result.grid) grid.push_back(pw.to_double());

  json curves = json::array();
  for (const auto& curve : result.curves) {
    json points = json::array();
    for (const auto& point : curve.points) {
      points.push_back({{"pw", point.pw.to_double()},
                        {"raw", point.raw},
                        {"normalized", result.normalized(point.raw)},
                        {"plan", point.plan ? detail::plan_to_json(*point.plan) : json(nullptr)}});
    }
    curves.push_back({{"policy", std::string(to_string(curve.policy))}, {"points", std::move(points)}});
  }

  json doc{{"pw_min", result.spec.pw_min.to_double()},
           {"pw_max", result.spec.pw_max.to_double()},
           {"pw_step", result.spec.pw_step.to_double()},
           {"normalizer", result.normalizer},
           {"grid", std::move(grid)},
           {"curves", std::move(curves)}};
  out << doc.dump(2) << '\n';
}

void write_sweep_table(std::ostream& out, const SweepResult& result) {
  out << std::left << std::setw(8) << "pw" << std::setw(19) << "policy" << std::setw(13) << "raw"
      << std::setw(12) << "normalized" << std::setw(15) << "architecture" << std::setw(14) << "gpu"
      << std::setw(6) << "n" << std::setw(14) << "cpu" << std::setw(6) << "m"
      << "hourly_price\n";
  for (const auto& row : sweep_rows(result)) {
    out << std::setw(8) << row.pw.to_string() << std::setw(19) << row.policy << std::setw(13)
        << detail::format_sig6(row.raw) << std::setw(12) << detail::format_sig6(row.normalized)
        << std::setw(15) << (row.architecture.empty() ? "-" : row.architecture) << std::setw(14)
        << (row.gpu.empty() ? "-" : row.gpu) << std::setw(6)
        << (row.gpu_count ? std::to_string(*row.gpu_count) : "-") << std::setw(14)
        << (row.cpu.empty() ? "-" : row.cpu) << std::setw(6)
        << (row.cpu_count ? std::to_string(*row.cpu_count) : "-")
        << (row.hourly_price ? row.hourly_price->to_string() : "-") << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("sweep csv is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("sweep csv: unexpected header '" + line + "'");

  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) {
      throw std::runtime_error("sweep csv line " + std::to_string(line_no) + ": expected 10 fields");
    }
    SweepRow row;
    row.pw = Money::parse(f[0]);
    row.policy = f[1];
    row.raw = parse_double(f[2], line_no);
    row.normalized = parse_double(f[3], line_no);
    row.architecture = f[4];
    row.gpu = f[5];
    row.gpu_count = parse_count(f[6], line_no);
    row.cpu = f[7];
    row.cpu_count = parse_count(f[8], line_no);
    if (!f[9].empty()) row.hourly_price = Money::parse(f[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> read_sweep_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
    const auto& grid = doc.at("grid");
    const auto& curves = doc.at("curves");
    std::vector<SweepRow> rows;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      for (const auto& curve : curves) {
        const auto& point = curve.at("points").at(g);
        SweepRow row;
        row.pw = Money::from_double(point.at("pw").get<double>());
        row.policy = curve.at("policy").get<std::string>();
        row.raw = point.at("raw").get<double>();
        row.normalized = point.at("normalized").get<double>();
        const auto& plan = point.at("plan");
        if (!plan.is_null()) {
          row.architecture = plan.at("architecture").get<std::string>();
          row.gpu = plan.at("gpu").get<std::string>();
          row.gpu_count = plan.at("gpu_count").get<int>();
          if (!plan.at("cpu").is_null()) {
            row.cpu = plan.at("cpu").get<std::string>();
            row.cpu_count = plan.at("cpu_count").get<int>();
          }
          row.hourly_price = Money::from_double(plan.at("hourly_price").get<double>());
        }
        rows.push_back(std::move(row));
      }
    }
    return rows;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed sweep json: ") + e.what());
  }
}

}  // namespace spotplan
