#include "spotplan/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "format.hpp"
#include "json.hpp"
#include "plan_json.hpp"
#include "spotplan/baselines.hpp"
#include "spotplan/catalog.hpp"
#include "spotplan/planner.hpp"
#include "spotplan/saturation.hpp"
#include "spotplan/scaling.hpp"
#include "spotplan/simulator.hpp"

namespace spotplan {
namespace {

using nlohmann::json;

enum class Format { Table, Json, Csv };

const std::map<std::string, Format> kFormats{
    {"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};

// Raised for bad configuration discovered after argument parsing.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string catalog;
  std::string saturation;
  std::string out;
  Format format = Format::Table;
  int threads = 0;
};

struct RequestOptions {
  std::string pw = "3";
  double ckpt_size_gib = 0.5;
  int buffer_count = 2;
  int max_limit = 256;
  int top_k = 3;
};

Money parse_money_option(const std::string& text, const char* flag) {
  try {
    return Money::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(flag) + ": " + e.what());
  }
}

Catalog resolve_catalog(const CommonOptions& opts, std::ostream& err) {
  std::string path = opts.catalog;
  if (path.empty()) {
    if (const char* env = std::getenv(kCatalogEnvVar); env && *env) path = env;
  }
  Catalog catalog = path.empty() ? bundled_simulated_catalog() : load_catalog_file(path);
  for (const auto& w : catalog.warnings()) err << "warning: " << w << '\n';
  return catalog;
}

SaturationTable resolve_saturation(const CommonOptions& opts) {
  return opts.saturation.empty() ? SaturationTable::bundled() : load_saturation_file(opts.saturation);
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

PlanRequest build_request(const RequestOptions& r) {
  PlanRequest req;
  req.pw = parse_money_option(r.pw, "--pw");
  req.ckpt_size_gib = r.ckpt_size_gib;
  req.buffer_count = r.buffer_count;
  req.max_instances = r.max_limit;
  req.top_k = r.top_k;
  try {
    req.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return req;
}

void add_format(CLI::App& cmd, Format& format) {
  cmd.add_option_function<std::string>(
         "--format", [&format](const std::string& name) { format = kFormats.at(CLI::detail::to_lower(name)); },
         "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}, CLI::ignore_case).description(""))
      ->option_text("table|json|csv");
}

void add_common(CLI::App& cmd, CommonOptions& opts, bool with_saturation = true) {
  cmd.add_option("--catalog", opts.catalog,
                 "Catalog JSON file (default: $SPOTPLAN_CATALOG, else the built-in simulated catalog)");
  if (with_saturation) {
    cmd.add_option("--saturation", opts.saturation, "Saturation table JSON (default: built-in table)");
  }
  cmd.add_option("--out", opts.out, "Write the report here instead of standard output");
  add_format(cmd, opts.format);
}

void add_request(CLI::App& cmd, RequestOptions& r, bool with_pw) {
  if (with_pw) cmd.add_option("--pw", r.pw, "Pricing willingness per hour")->capture_default_str();
  cmd.add_option("--buffer-count", r.buffer_count, "Checkpoints buffered per memory node (s)")
      ->capture_default_str();
  cmd.add_option("--ckpt-size-gib", r.ckpt_size_gib, "Checkpoint file size in GiB (f)")
      ->capture_default_str();
  cmd.add_option("--max-limit", r.max_limit, "Cap on any single instance count")->capture_default_str();
}

// ---------------------------------------------------------------------------
// plan

struct PlanReport {
  PlanRequest request;
  std::vector<ClusterPlan> plans;
  bool with_baselines = false;
  std::optional<ClusterPlan> cost_first;
  std::optional<ClusterPlan> performance_first;
  std::optional<ClusterPlan> noscale;
};

std::string opt_count(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

void write_plan_table(std::ostream& out, const PlanReport& r) {
  out << "pw=" << r.request.pw.to_string() << " buffer_count=" << r.request.buffer_count
      << " ckpt_size_gib=" << detail::format_sig6(r.request.ckpt_size_gib)
      << " max_limit=" << r.request.max_instances << '\n';
  out << std::left << std::setw(19) << "policy" << std::setw(6) << "rank" << std::setw(15)
      << "architecture" << std::setw(14) << "gpu" << std::setw(6) << "n" << std::setw(14) << "cpu"
      << std::setw(6) << "m" << std::setw(14) << "hourly_price"
      << "score_z\n";
  auto row = [&](std::string_view policy, int rank, const ClusterPlan& p) {
    out << std::setw(19) << policy << std::setw(6) << rank << std::setw(15) << to_string(p.architecture)
        << std::setw(14) << p.gpu.name << std::setw(6) << p.n_gpu << std::setw(14)
        << (p.cpu ? p.cpu->name : "-") << std::setw(6) << opt_count(p.m_cpu) << std::setw(14)
        << p.hourly_price.to_string() << detail::format_sig6(p.score_z) << '\n';
  };
  for (std::size_t i = 0; i < r.plans.size(); ++i) row("deepvm", static_cast<int>(i + 1), r.plans[i]);
  if (!r.with_baselines) return;
  auto baseline = [&](std::string_view name, const std::optional<ClusterPlan>& p) {
    if (p) {
      row(name, 1, *p);
    } else {
      out << std::setw(19) << name << "no feasible configuration\n";
    }
  };
  baseline("noscale", r.noscale);
  baseline("cost_first", r.cost_first);
  baseline("performance_first", r.performance_first);
}

void write_plan_json(std::ostream& out, const PlanReport& r) {
  json plans = json::array();
  for (std::size_t i = 0; i < r.plans.size(); ++i) {
    json p = detail::plan_to_json(r.plans[i]);
    p["rank"] = i + 1;
    plans.push_back(std::move(p));
  }
  json doc{{"request",
            {{"pw", r.request.pw.to_double()},
             {"buffer_count", r.request.buffer_count},
             {"ckpt_size_gib", r.request.ckpt_size_gib},
             {"max_limit", r.request.max_instances},
             {"top_k", r.request.top_k}}},
           {"plans", std::move(plans)}};
  if (r.with_baselines) {
    auto to_json = [](const std::optional<ClusterPlan>& p) {
      return p ? detail::plan_to_json(*p) : json(nullptr);
    };
    doc["baselines"] = {{"noscale", to_json(r.noscale)},
                        {"cost_first", to_json(r.cost_first)},
                        {"performance_first", to_json(r.performance_first)}};
  }
  out << doc.dump(2) << '\n';
}

void write_plan_csv(std::ostream& out, const PlanReport& r) {
  out << "policy,rank,architecture,gpu,gpu_count,cpu,cpu_count,hourly_price,score_z\n";
  auto row = [&](std::string_view policy, std::size_t rank, const ClusterPlan& p) {
    out << policy << ',' << rank << ',' << to_string(p.architecture) << ',' << p.gpu.name << ','
        << p.n_gpu << ',' << (p.cpu ? p.cpu->name : "") << ','
        << (p.m_cpu ? std::to_string(*p.m_cpu) : "") << ',' << p.hourly_price.to_string() << ','
        << detail::format_double(p.score_z) << '\n';
  };
  for (std::size_t i = 0; i < r.plans.size(); ++i) row("deepvm", i + 1, r.plans[i]);
  if (!r.with_baselines) return;
  if (r.noscale) row("noscale", 1, *r.noscale);
  if (r.cost_first) row("cost_first", 1, *r.cost_first);
  if (r.performance_first) row("performance_first", 1, *r.performance_first);
}

// Writes to --out when given, else to `out`.
template <typename Fn>
void emit(const CommonOptions& opts, std::ostream& out, Fn&& write) {
  if (opts.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(opts.out);
  if (!file) throw ConfigError("cannot open output file '" + opts.out + "'");
  write(file);
}

int cmd_plan(const CommonOptions& opts, const RequestOptions& ropts, bool with_baselines,
             std::ostream& out, std::ostream& err) {
  apply_threads(opts.threads);
  const PlanRequest request = build_request(ropts);
  const Catalog catalog = resolve_catalog(opts, err);
  const SaturationTable saturation = resolve_saturation(opts);
  const ScalingSource scaling;
  for (const auto& w : superlinear_warnings(catalog, scaling, request.max_instances)) {
    err << "warning: " << w << '\n';
  }

  PlanReport report;
  report.request = request;
  report.plans = recommend(catalog, request, scaling, saturation);
  report.with_baselines = with_baselines;
  if (with_baselines) {
    auto ns = plan_noscale(catalog, request, saturation);
    if (!ns.empty()) report.noscale = ns.front();
    report.cost_first = plan_cost_first(catalog, request, scaling);
    report.performance_first = plan_performance_first(catalog, request, scaling);
  }

  emit(opts, out, [&](std::ostream& os) {
    switch (opts.format) {
      case Format::Table:
        write_plan_table(os, report);
        break;
      case Format::Json:
        write_plan_json(os, report);
        break;
      case Format::Csv:
        write_plan_csv(os, report);
        break;
    }
  });

  if (report.plans.empty()) {
    err << "no feasible configuration for pw=" << request.pw.to_string() << '\n';
    return kExitInfeasible;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const CommonOptions& opts, const RequestOptions& ropts, const std::string& pw_min,
                 const std::string& pw_max, const std::string& pw_step,
                 const std::vector<std::string>& policies, std::ostream& out, std::ostream& err) {
  apply_threads(opts.threads);
  SweepSpec spec;
  spec.pw_min = parse_money_option(pw_min, "--pw-min");
  spec.pw_max = parse_money_option(pw_max, "--pw-max");
  spec.pw_step = parse_money_option(pw_step, "--pw-step");
  if (!policies.empty()) {
    spec.policies.clear();
    for (const auto& name : policies) {
      auto p = parse_policy(name);
      if (!p) throw ConfigError("unknown policy '" + name + "'");
      spec.policies.push_back(*p);
    }
  }
  spec.request_template.ckpt_size_gib = ropts.ckpt_size_gib;
  spec.request_template.buffer_count = ropts.buffer_count;
  spec.request_template.max_instances = ropts.max_limit;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const Catalog catalog = resolve_catalog(opts, err);
  const SaturationTable saturation = resolve_saturation(opts);
  const ScalingSource scaling;
  for (const auto& w : superlinear_warnings(catalog, scaling, spec.request_template.max_instances)) {
    err << "warning: " << w << '\n';
  }

  const SweepResult result = run_sweep(catalog, spec, scaling, saturation);
  emit(opts, out, [&](std::ostream& os) {
    switch (opts.format) {
      case Format::Table:
        write_sweep_table(os, result);
        break;
      case Format::Json:
        write_sweep_json(os, result);
        break;
      case Format::Csv:
        write_sweep_csv(os, result);
        break;
    }
  });
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

int cmd_fit(const CommonOptions& opts, const std::vector<std::string>& files, bool average,
            std::ostream& out, std::ostream& err) {
  struct Entry {
    std::string file;
    FitResult fit;
  };
  std::vector<Entry> fits;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open speedup file '" + path + "'");
    std::vector<SpeedupSample> samples;
    try {
      samples = read_speedup_csv(in);
      fits.push_back({path, fit_logistic(samples)});
    } catch (const FitError& e) {
      std::ostringstream msg;
      msg << path << ": " << e.what() << " (best a=" << e.best().a << " b=" << e.best().b
          << " c=" << e.best().c << ", residual=" << e.residual() << ")";
      throw ConfigError(msg.str());
    } catch (const std::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }

  std::optional<LogisticParams> mean;
  if (average) {
    std::vector<LogisticParams> params;
    for (const auto& f : fits) params.push_back(f.fit.params);
    mean = average_params(params);
  }

  const bool single = fits.size() == 1 && !average;
  emit(opts, out, [&](std::ostream& os) {
    using detail::format_double;
    switch (opts.format) {
      case Format::Json: {
        auto fit_json = [](const FitResult& f) {
          return json{{"a", f.params.a}, {"b", f.params.b}, {"c", f.params.c}, {"residual", f.residual}};
        };
        if (single) {
          os << fit_json(fits.front().fit).dump(2) << '\n';
          break;
        }
        json doc{{"fits", json::array()}};
        for (const auto& f : fits) {
          json j = fit_json(f.fit);
          j["file"] = f.file;
          doc["fits"].push_back(std::move(j));
        }
        if (mean) doc["average"] = {{"a", mean->a}, {"b", mean->b}, {"c", mean->c}};
        os << doc.dump(2) << '\n';
        break;
      }
      case Format::Csv:
        os << "file,a,b,c,residual\n";
        for (const auto& f : fits) {
          os << f.file << ',' << format_double(f.fit.params.a) << ',' << format_double(f.fit.params.b)
             << ',' << format_double(f.fit.params.c) << ',' << format_double(f.fit.residual) << '\n';
        }
        if (mean) {
          os << "average," << format_double(mean->a) << ',' << format_double(mean->b) << ','
             << format_double(mean->c) << ",\n";
        }
        break;
      case Format::Table:
        os << std::left << std::setw(32) << "file" << std::setw(14) << "a" << std::setw(14) << "b"
           << std::setw(14) << "c"
           << "residual\n";
        for (const auto& f : fits) {
          os << std::setw(32) << f.file << std::setw(14) << detail::format_sig6(f.fit.params.a)
             << std::setw(14) << detail::format_sig6(f.fit.params.b) << std::setw(14)
             << detail::format_sig6(f.fit.params.c) << detail::format_sig6(f.fit.residual) << '\n';
        }
        if (mean) {
          os << std::setw(32) << "average" << std::setw(14) << detail::format_sig6(mean->a)
             << std::setw(14) << detail::format_sig6(mean->b) << std::setw(14)
             << detail::format_sig6(mean->c) << "-\n";
        }
        break;
    }
  });
  (void)err;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate-catalog

int cmd_validate(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const Catalog catalog = resolve_catalog(opts, err);
  const SaturationTable saturation = resolve_saturation(opts);
  const std::size_t gpus = catalog.gpu_indices().size();
  const std::size_t cpus = catalog.cpu_indices().size();
  const std::size_t unavailable = catalog.size() - gpus - cpus;

  emit(opts, out, [&](std::ostream& os) {
    if (opts.format == Format::Json) {
      os << json{{"valid", true},
                 {"instances", catalog.size()},
                 {"gpu_available", gpus},
                 {"cpu_available", cpus},
                 {"unavailable", unavailable},
                 {"saturation_entries", saturation.entries().size()},
                 {"warnings", catalog.warnings()}}
                .dump(2)
         << '\n';
    } else {
      os << "catalog OK: " << catalog.size() << " instances (" << gpus << " gpu, " << cpus
         << " cpu available; " << unavailable << " unavailable); saturation table has "
         << saturation.entries().size() << " entries\n";
    }
  });
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spot/On-Demand cluster planner for data-parallel training", "spotplan"};
  app.require_subcommand(1);

  CommonOptions plan_common, sim_common, fit_common, val_common;
  RequestOptions plan_req, sim_req;
  bool with_baselines = false;
  std::string pw_min = "0", pw_max = "10", pw_step = "0.1";
  std::vector<std::string> policies;
  std::vector<std::string> fit_files;
  bool fit_average = false;

  auto* plan = app.add_subcommand("plan", "Recommend the top cluster configurations for a budget");
  add_common(*plan, plan_common);
  add_request(*plan, plan_req, true);
  plan->add_option("--top-k", plan_req.top_k, "Number of ranked plans")->capture_default_str();
  plan->add_flag("--with-baselines", with_baselines, "Also report the comparison policies");
  plan->add_option("--threads", plan_common.threads, "OpenMP threads (0: runtime default)");

  auto* simulate = app.add_subcommand("simulate", "Sweep pricing willingness across policies");
  sim_common.format = Format::Csv;
  add_common(*simulate, sim_common);
  add_request(*simulate, sim_req, false);
  simulate->add_option("--pw-min", pw_min, "Sweep start")->capture_default_str();
  simulate->add_option("--pw-max", pw_max, "Sweep end (inclusive)")->capture_default_str();
  simulate->add_option("--pw-step", pw_step, "Sweep increment")->capture_default_str();
  simulate->add_option("--policies", policies, "Subset of deepvm,noscale,cost_first,performance_first")
      ->delimiter(',');
  simulate->add_option("--threads", sim_common.threads, "OpenMP threads (0: runtime default)");

  auto* fit = app.add_subcommand("fit", "Fit logistic speedup curves to n,speedup CSV files");
  fit_common.format = Format::Json;
  fit->add_option("--out", fit_common.out, "Write the report here instead of standard output");
  add_format(*fit, fit_common.format);
  fit->add_flag("--average", fit_average, "Also report the component-wise mean of all fits");
  fit->add_option("files", fit_files, "Speedup CSV files")->required()->check(CLI::ExistingFile);

  auto* validate = app.add_subcommand("validate-catalog", "Load and validate a catalog");
  add_common(*validate, val_common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (*plan) return cmd_plan(plan_common, plan_req, with_baselines, out, err);
    if (*simulate) return cmd_simulate(sim_common, sim_req, pw_min, pw_max, pw_step, policies, out, err);
    if (*fit) return cmd_fit(fit_common, fit_files, fit_average, out, err);
    if (*validate) return cmd_validate(val_common, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace spotplan
