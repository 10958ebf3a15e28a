// causalfrac command line: causality checks, fraction reports, parameter
// sweeps, and causal-function enumeration over the shared-library C API.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "causalfrac/causalfrac.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exit codes: 0 success, 1 validation/causality failure, 2 solver/budget.
int exit_code_for(cf_status status) {
  switch (status) {
    case CF_OK: return 0;
    case CF_ERROR_BUDGET_EXCEEDED:
    case CF_ERROR_SOLVER: return 2;
    default: return 1;
  }
}

int fail(cf_status status) {
  std::fprintf(stderr, "error (%s): %s\n", cf_status_name(status), cf_last_error());
  return exit_code_for(status);
}

using ScenarioPtr = std::unique_ptr<cf_scenario, decltype(&cf_scenario_free)>;
using OrderPtr = std::unique_ptr<cf_order, decltype(&cf_order_free)>;
using ReportPtr = std::unique_ptr<cf_report, decltype(&cf_report_free)>;

struct CliString {
  char* value = nullptr;
  ~CliString() { cf_string_free(value); }
};

struct ScenarioArgs {
  std::string scenario_path;
  std::string builtin;
  std::string order_file;
  std::string variant = "base";
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  bool degrees = false;
  double tol = -1.0;  // <0: library default
  bool renormalize = false;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
  auto* scenario = cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file");
  auto* builtin = cmd->add_option("--builtin", args.builtin,
                                  "Builtin scenario: interleaved-bell, pr-box, bell-tsirelson");
  scenario->excludes(builtin);
  builtin->excludes(scenario);
  cmd->add_option("--gamma0", args.gamma0, "Measurement angle gamma_0 (radians)");
  cmd->add_option("--gamma1", args.gamma1, "Measurement angle gamma_1 (radians)");
  cmd->add_option("--variant", args.variant, "Interleaved order variant: base or extended")
      ->check(CLI::IsMember({"base", "extended"}));
  cmd->add_flag("--degrees", args.degrees, "Angles are given in degrees");
  cmd->add_option("--order-file", args.order_file,
                  "Check against the order from this JSON file instead of the scenario's");
  cmd->add_option("--tol", args.tol, "Validation tolerance (default 1e-6 for files)");
  cmd->add_flag("--renormalize", args.renormalize, "Renormalize table rows instead of rejecting");
}

double to_radians(double angle, bool degrees) { return degrees ? angle * kPi / 180.0 : angle; }

void warn_angle(const char* name, double radians) {
  if (radians < 0.0 || radians > kPi) {
    std::fprintf(stderr, "warning: %s = %g rad lies outside [0, pi]; measurements are periodic\n",
                 name, radians);
  }
}

cf_status load_scenario(const ScenarioArgs& args, ScenarioPtr& out) {
  cf_scenario* raw = nullptr;
  cf_status status = CF_OK;
  if (!args.builtin.empty()) {
    const double g0 = to_radians(args.gamma0, args.degrees);
    const double g1 = to_radians(args.gamma1, args.degrees);
    if (args.builtin == "interleaved-bell") {
      warn_angle("gamma0", g0);
      warn_angle("gamma1", g1);
    }
    status = cf_scenario_builtin(args.builtin.c_str(), g0, g1, args.variant.c_str(), &raw);
  } else if (!args.scenario_path.empty()) {
    status = cf_scenario_from_file(args.scenario_path.c_str(), args.tol,
                                   args.renormalize ? 1 : 0, &raw);
  } else {
    std::fprintf(stderr, "error: provide --scenario PATH or --builtin NAME\n");
    return CF_ERROR_INVALID_ARGUMENT;
  }
  if (status != CF_OK) return status;
  out.reset(raw);

  if (!args.order_file.empty()) {
    cf_order* order = nullptr;
    status = cf_order_from_file(args.order_file.c_str(), &order);
    if (status != CF_OK) return status;
    OrderPtr order_guard(order, cf_order_free);
    cf_scenario* replaced = nullptr;
    status = cf_scenario_with_order(out.get(), order, &replaced);
    if (status != CF_OK) return status;
    out.reset(replaced);
  }
  return CF_OK;
}

void print_lowerset(const cf_order* order, uint32_t mask) {
  size_t n = 0;
  cf_order_event_count(order, &n);
  std::printf("{");
  bool first = true;
  for (size_t ev = 0; ev < n; ++ev) {
    if (!(mask & (1u << ev))) continue;
    const char* label = nullptr;
    cf_order_label(order, ev, &label);
    std::printf("%s%s", first ? "" : ",", label);
    first = false;
  }
  std::printf("}");
}

int run_check(const ScenarioArgs& args) {
  ScenarioPtr scenario(nullptr, cf_scenario_free);
  if (cf_status s = load_scenario(args, scenario)) return fail(s);

  cf_causality rep{};
  if (cf_status s = cf_check_causality(scenario.get(), args.tol, &rep)) return fail(s);

  std::printf("causal: %s\n", rep.causal ? "yes" : "no");
  std::printf("worst_deviation = %.9g\n", rep.worst_deviation);
  if (!rep.causal) {
    cf_order* order = nullptr;
    if (cf_status s = cf_scenario_order(scenario.get(), &order)) return fail(s);
    OrderPtr order_guard(order, cf_order_free);
    std::printf("violating_lowerset: ");
    print_lowerset(order, rep.lowerset_mask);
    std::printf("\nviolating_inputs: %" PRIu64 " %" PRIu64 "\n", rep.input_a, rep.input_b);
  }
  return rep.causal ? 0 : 1;
}

int run_fractions(const ScenarioArgs& args, uint64_t budget, bool witness) {
  ScenarioPtr scenario(nullptr, cf_scenario_free);
  if (cf_status s = load_scenario(args, scenario)) return fail(s);

  cf_causality rep{};
  if (cf_status s = cf_check_causality(scenario.get(), args.tol, &rep)) return fail(s);
  if (!rep.causal) {
    std::fprintf(stderr,
                 "error: distribution is not causal for the order "
                 "(worst marginal deviation %.3g); run `check` for details\n",
                 rep.worst_deviation);
    return 1;
  }

  cf_fraction_options opts{};
  opts.budget = budget;
  opts.collect_witness = witness ? 1 : 0;
  cf_report* raw = nullptr;
  if (cf_status s = cf_fractions(scenario.get(), &opts, &raw)) return fail(s);
  ReportPtr report(raw, cf_report_free);

  const char* keys[] = {"lf", "nslf", "nsf", "bound_raw", "bound"};
  const char* names[] = {"local_fraction", "ns_local_fraction", "ns_fraction",
                         "signalling_lb_raw", "signalling_lb"};
  for (int k = 0; k < 5; ++k) {
    double v = 0.0;
    cf_report_value(report.get(), keys[k], &v);
    std::printf("%s = %.9g\n", names[k], v);
  }
  for (const char* quantity : {"lf", "nslf", "nsf"}) {
    double seconds = 0.0, iterations = 0.0;
    cf_report_value(report.get(), (std::string(quantity) + "_seconds").c_str(), &seconds);
    cf_report_value(report.get(), (std::string(quantity) + "_iterations").c_str(), &iterations);
    std::printf("%s_solve_seconds = %.3g\n", quantity, seconds);
    std::printf("%s_lp_iterations = %.0f\n", quantity, iterations);
  }

  if (witness) {
    size_t count = 0;
    cf_report_witness_size(report.get(), &count);
    cf_order* order = nullptr;
    if (cf_status s = cf_scenario_order(scenario.get(), &order)) return fail(s);
    OrderPtr order_guard(order, cf_order_free);
    std::printf("witness_size = %zu\n", count);
    for (size_t k = 0; k < count; ++k) {
      uint64_t index = 0;
      double weight = 0.0;
      cf_report_witness_entry(report.get(), k, &index, &weight);
      CliString tables;
      if (cf_status s = cf_function_json(order, index, &tables.value)) return fail(s);
      std::printf("witness %" PRIu64 " %.9g %s\n", index, weight, tables.value);
    }
  }
  return 0;
}

int run_sweep(const std::string& out_dir, int resolution, const std::string& variant,
              const std::vector<std::string>& quantities, bool no_heatmaps, int threads,
              uint64_t budget) {
  unsigned mask = 0;
  for (const auto& q : quantities) {
    if (q == "lf") mask |= CF_QUANTITY_LF;
    else if (q == "nslf") mask |= CF_QUANTITY_NSLF;
    else if (q == "nsf") mask |= CF_QUANTITY_NSF;
    else if (q == "bound") mask |= CF_QUANTITY_BOUND;
    else {
      std::fprintf(stderr, "error: unknown quantity '%s' (lf, nslf, nsf, bound)\n", q.c_str());
      return 1;
    }
  }

  cf_sweep_options opts{};
  opts.resolution = resolution;
  opts.variant = variant.c_str();
  opts.out_dir = out_dir.c_str();
  opts.quantities = mask;  // 0 selects all
  opts.write_heatmaps = no_heatmaps ? 0 : 1;
  opts.threads = threads;
  opts.budget = budget;

  auto progress = [](int done, int total, void*) {
    if (done % 16 == 0 || done == total) {
      std::fprintf(stderr, "\rcells %d/%d", done, total);
      if (done == total) std::fprintf(stderr, "\n");
    }
  };

  int failed = 0;
  if (cf_status s = cf_sweep_run(&opts, progress, nullptr, &failed)) return fail(s);
  std::printf("wrote %s/sweep.csv\n", out_dir.c_str());
  if (!no_heatmaps) std::printf("wrote heatmaps under %s\n", out_dir.c_str());
  if (failed > 0) std::printf("failed_cells = %d (NaN rows in the CSV)\n", failed);
  return 0;
}

int run_enumerate(const std::string& order_file, const std::string& variant, uint64_t budget,
                  bool list) {
  cf_order* raw = nullptr;
  cf_status status = order_file.empty() ? cf_order_builtin(variant.c_str(), &raw)
                                        : cf_order_from_file(order_file.c_str(), &raw);
  if (status != CF_OK) return fail(status);
  OrderPtr order(raw, cf_order_free);

  double log2_count = 0.0;
  uint64_t count = 0;
  int exact = 0;
  if (cf_status s = cf_enumeration_count(order.get(), &log2_count, &count, &exact)) {
    return fail(s);
  }
  if (exact) {
    std::printf("causal_functions = %" PRIu64 "\n", count);
  } else {
    std::printf("causal_functions ~ 10^%.6g\n", log2_count * 0.3010299956639812);
  }
  std::printf("log2_count = %.9g\n", log2_count);

  if (!list) return 0;
  if (!exact || count > budget) {
    std::fprintf(stderr, "error (budget_exceeded): %s functions exceed the budget %" PRIu64 "\n",
                 exact ? std::to_string(count).c_str() : "too many", budget);
    return 2;
  }
  for (uint64_t f = 0; f < count; ++f) {
    CliString tables;
    if (cf_status s = cf_function_json(order.get(), f, &tables.value)) return fail(s);
    std::printf("function %" PRIu64 " %s\n", f, tables.value);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local fraction and no-signalling analysis over static causal orders"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return std::string(cf_version()); });

  ScenarioArgs check_args;
  auto* check = app.add_subcommand("check", "Validate a scenario and test causality");
  add_scenario_options(check, check_args);

  ScenarioArgs frac_args;
  uint64_t budget = 0;  // 0: library default (2^24)
  bool witness = false;
  auto* fractions = app.add_subcommand("fractions", "Compute the fraction report");
  add_scenario_options(fractions, frac_args);
  fractions->add_option("--budget", budget, "Max causal functions for the LP (default 2^24)");
  fractions->add_flag("--witness", witness, "Print the local-fraction witness");

  std::string sweep_out;
  int resolution = 100;
  std::string sweep_variant = "base";
  std::vector<std::string> quantities;
  bool no_heatmaps = false;
  int threads = 0;
  uint64_t sweep_budget = 0;
  auto* sweep = app.add_subcommand("sweep", "Grid sweep of the interleaved Bell tests");
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_option("--resolution", resolution, "Grid points per axis (default 100)")
      ->check(CLI::Range(2, 100000));
  sweep->add_option("--variant", sweep_variant, "Order variant: base or extended")
      ->check(CLI::IsMember({"base", "extended"}));
  sweep->add_option("--quantities", quantities,
                    "Quantities to compute (default all of lf, nslf, nsf, bound)");
  sweep->add_flag("--no-heatmaps", no_heatmaps, "Skip PPM heatmap output");
  sweep->add_option("--threads", threads, "Worker threads (default CAUSALFRAC_THREADS or cores)");
  sweep->add_option("--budget", sweep_budget, "Max causal functions for the LP");

  std::string enum_order_file;
  std::string enum_variant = "base";
  uint64_t enum_budget = uint64_t{1} << 24;
  bool list = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count (or list) causal functions");
  enumerate->add_option("--order-file", enum_order_file, "Order JSON file");
  enumerate->add_option("--variant", enum_variant,
                        "Without --order-file: interleaved order variant")
      ->check(CLI::IsMember({"base", "extended"}));
  enumerate->add_option("--budget", enum_budget, "Listing budget (default 2^24)");
  enumerate->add_flag("--list", list, "Stream the behaviour tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (check->parsed()) return run_check(check_args);
  if (fractions->parsed()) return run_fractions(frac_args, budget, witness);
  if (sweep->parsed()) {
    return run_sweep(sweep_out, resolution, sweep_variant, quantities, no_heatmaps, threads,
                     sweep_budget);
  }
  if (enumerate->parsed()) return run_enumerate(enum_order_file, enum_variant, enum_budget, list);
  return 1;
}
