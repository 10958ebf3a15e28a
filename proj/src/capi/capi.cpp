#include "causalfrac/causalfrac.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "core/distribution.hpp"
#include "core/errors.hpp"
#include "core/fractions.hpp"
#include "core/functions.hpp"
#include "core/order.hpp"
#include "core/quantum.hpp"
#include "core/scenario.hpp"
#include "core/sweep.hpp"

struct cf_order {
  cfrac::StaticCausalOrder::ConstPtr order;
  cfrac::SpaceSpec spec;
};

struct cf_scenario {
  cfrac::Scenario scenario;
};

struct cf_report {
  cfrac::FractionReport report;
};

namespace {

thread_local std::string g_last_error;

cf_status map_code(cfrac::ErrorCode code) {
  using cfrac::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return CF_ERROR_INVALID_ARGUMENT;
    case ErrorCode::duplicate_label: return CF_ERROR_DUPLICATE_LABEL;
    case ErrorCode::cycle: return CF_ERROR_CYCLE;
    case ErrorCode::unknown_event: return CF_ERROR_UNKNOWN_EVENT;
    case ErrorCode::event_mismatch: return CF_ERROR_EVENT_MISMATCH;
    case ErrorCode::out_of_range: return CF_ERROR_OUT_OF_RANGE;
    case ErrorCode::scope: return CF_ERROR_SCOPE;
    case ErrorCode::not_lowerset: return CF_ERROR_NOT_LOWERSET;
    case ErrorCode::not_causal: return CF_ERROR_NOT_CAUSAL;
    case ErrorCode::budget_exceeded: return CF_ERROR_BUDGET_EXCEEDED;
    case ErrorCode::solver: return CF_ERROR_SOLVER;
    case ErrorCode::parse: return CF_ERROR_PARSE;
    case ErrorCode::validation: return CF_ERROR_VALIDATION;
    case ErrorCode::io: return CF_ERROR_IO;
    case ErrorCode::internal: return CF_ERROR_INTERNAL;
  }
  return CF_ERROR_INTERNAL;
}

template <typename Fn>
cf_status guarded(Fn&& fn) {
  try {
    fn();
    return CF_OK;
  } catch (const cfrac::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CF_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CF_ERROR_INTERNAL;
  }
}

cf_status require(bool ok, const char* message) {
  if (ok) return CF_OK;
  g_last_error = message;
  return CF_ERROR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* cf_version(void) { return "0.1.0"; }

const char* cf_status_name(cf_status status) {
  switch (status) {
    case CF_OK: return "ok";
    case CF_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case CF_ERROR_DUPLICATE_LABEL: return "duplicate_label";
    case CF_ERROR_CYCLE: return "cycle";
    case CF_ERROR_UNKNOWN_EVENT: return "unknown_event";
    case CF_ERROR_EVENT_MISMATCH: return "event_mismatch";
    case CF_ERROR_OUT_OF_RANGE: return "out_of_range";
    case CF_ERROR_SCOPE: return "scope";
    case CF_ERROR_NOT_LOWERSET: return "not_lowerset";
    case CF_ERROR_NOT_CAUSAL: return "not_causal";
    case CF_ERROR_BUDGET_EXCEEDED: return "budget_exceeded";
    case CF_ERROR_SOLVER: return "solver";
    case CF_ERROR_PARSE: return "parse";
    case CF_ERROR_VALIDATION: return "validation";
    case CF_ERROR_IO: return "io";
    case CF_ERROR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cf_last_error(void) { return g_last_error.c_str(); }

void cf_string_free(char* s) { delete[] s; }

/* ---- orders ---- */

cf_status cf_order_from_json(const char* json_text, cf_order** out) {
  if (cf_status s = require(json_text && out, "null argument")) return s;
  return guarded([&] {
    auto parsed = cfrac::order_from_json(json_text);
    *out = new cf_order{std::move(parsed.order), std::move(parsed.spec)};
  });
}

cf_status cf_order_from_file(const char* path, cf_order** out) {
  if (cf_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    auto parsed = cfrac::order_from_file(path);
    *out = new cf_order{std::move(parsed.order), std::move(parsed.spec)};
  });
}

cf_status cf_order_builtin(const char* variant, cf_order** out) {
  if (cf_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] {
    const auto v = cfrac::order_variant_from_name(variant ? variant : "base");
    *out = new cf_order{cfrac::interleaved_order(v), cfrac::SpaceSpec::binary(4)};
  });
}

void cf_order_free(cf_order* order) { delete order; }

cf_status cf_order_event_count(const cf_order* order, size_t* out) {
  if (cf_status s = require(order && out, "null argument")) return s;
  *out = order->order->event_count();
  return CF_OK;
}

cf_status cf_order_label(const cf_order* order, size_t index, const char** out) {
  if (cf_status s = require(order && out, "null argument")) return s;
  return guarded([&] { *out = order->order->labels().at(index).c_str(); });
}

cf_status cf_order_leq(const cf_order* order, size_t a, size_t b, int* out) {
  if (cf_status s = require(order && out, "null argument")) return s;
  return guarded([&] {
    const std::size_t n = order->order->event_count();
    if (a >= n || b >= n) throw cfrac::UnknownEventError("event index out of range");
    *out = order->order->leq(a, b) ? 1 : 0;
  });
}

cf_status cf_order_to_json(const cf_order* order, char** out_json) {
  if (cf_status s = require(order && out_json, "null argument")) return s;
  return guarded([&] { *out_json = copy_string(cfrac::order_to_json(*order->order, order->spec)); });
}

/* ---- enumeration ---- */

cf_status cf_enumeration_count(const cf_order* order, double* log2_count, uint64_t* count,
                               int* count_is_exact) {
  if (cf_status s = require(order != nullptr, "null argument")) return s;
  return guarded([&] {
    const cfrac::CausalFunctionSpace space(order->order, order->spec);
    if (log2_count) *log2_count = space.log2_count();
    if (count_is_exact) *count_is_exact = space.count_fits() ? 1 : 0;
    if (count) *count = space.count_fits() ? space.count() : 0;
  });
}

cf_status cf_function_json(const cf_order* order, uint64_t index, char** out_json) {
  if (cf_status s = require(order && out_json, "null argument")) return s;
  return guarded([&] {
    const cfrac::CausalFunctionSpace space(order->order, order->spec);
    const cfrac::CausalFunction f = space.function_at(index);
    nlohmann::json tables = nlohmann::json::array();
    for (const auto& beh : f.behaviours) tables.push_back(beh.table);
    *out_json = copy_string(tables.dump());
  });
}

/* ---- scenarios ---- */

cf_status cf_scenario_from_json(const char* json_text, double tol, int renormalize,
                                cf_scenario** out) {
  if (cf_status s = require(json_text && out, "null argument")) return s;
  return guarded([&] {
    cfrac::ScenarioOptions opts;
    if (tol >= 0) opts.tol = tol;
    opts.renormalize = renormalize != 0;
    *out = new cf_scenario{cfrac::scenario_from_json(json_text, opts)};
  });
}

cf_status cf_scenario_from_file(const char* path, double tol, int renormalize,
                                cf_scenario** out) {
  if (cf_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    cfrac::ScenarioOptions opts;
    if (tol >= 0) opts.tol = tol;
    opts.renormalize = renormalize != 0;
    *out = new cf_scenario{cfrac::scenario_from_file(path, opts)};
  });
}

cf_status cf_scenario_builtin(const char* name, double gamma0, double gamma1,
                              const char* variant, cf_scenario** out) {
  if (cf_status s = require(name && out, "null argument")) return s;
  return guarded([&] {
    cfrac::ScenarioParams params;
    params.gamma0.radians = gamma0;
    params.gamma1.radians = gamma1;
    params.variant = cfrac::order_variant_from_name(variant ? variant : "base");
    *out = new cf_scenario{cfrac::builtin_scenario(name, params)};
  });
}

void cf_scenario_free(cf_scenario* scenario) { delete scenario; }

cf_status cf_scenario_to_json(const cf_scenario* scenario, char** out_json) {
  if (cf_status s = require(scenario && out_json, "null argument")) return s;
  return guarded([&] { *out_json = copy_string(cfrac::scenario_to_json(scenario->scenario)); });
}

cf_status cf_scenario_event_count(const cf_scenario* scenario, size_t* out) {
  if (cf_status s = require(scenario && out, "null argument")) return s;
  *out = scenario->scenario.dist.order().event_count();
  return CF_OK;
}

cf_status cf_scenario_table_size(const cf_scenario* scenario, uint64_t* input_count,
                                 uint64_t* output_count) {
  if (cf_status s = require(scenario != nullptr, "null argument")) return s;
  if (input_count) *input_count = scenario->scenario.dist.input_count();
  if (output_count) *output_count = scenario->scenario.dist.output_count();
  return CF_OK;
}

cf_status cf_scenario_prob(const cf_scenario* scenario, uint64_t input, uint64_t output,
                           double* out) {
  if (cf_status s = require(scenario && out, "null argument")) return s;
  return guarded([&] {
    const auto& d = scenario->scenario.dist;
    if (input >= d.input_count() || output >= d.output_count()) {
      throw cfrac::OutOfRangeError("joint index outside the table");
    }
    *out = d.prob(input, output);
  });
}

cf_status cf_scenario_order(const cf_scenario* scenario, cf_order** out) {
  if (cf_status s = require(scenario && out, "null argument")) return s;
  return guarded([&] {
    *out = new cf_order{scenario->scenario.dist.order_ptr(), scenario->scenario.dist.spec()};
  });
}

cf_status cf_scenario_with_order(const cf_scenario* scenario, const cf_order* order,
                                 cf_scenario** out) {
  if (cf_status s = require(scenario && order && out, "null argument")) return s;
  return guarded([&] {
    cfrac::Scenario replaced{scenario->scenario.dist.with_order(order->order),
                             scenario->scenario.builtin};
    *out = new cf_scenario{std::move(replaced)};
  });
}

/* ---- causality ---- */

cf_status cf_check_causality(const cf_scenario* scenario, double tol, cf_causality* out) {
  if (cf_status s = require(scenario && out, "null argument")) return s;
  return guarded([&] {
    const auto& d = scenario->scenario.dist;
    const auto report = cfrac::is_causal_distribution(
        d, d.order(), tol >= 0 ? std::optional<double>(tol) : std::nullopt);
    out->causal = report.causal ? 1 : 0;
    out->worst_deviation = report.worst_deviation;
    out->lowerset_mask = 0;
    out->input_a = 0;
    out->input_b = 0;
    if (report.violation) {
      out->lowerset_mask = report.violation->lowerset;
      out->input_a = report.violation->input_a;
      out->input_b = report.violation->input_b;
    }
  });
}

/* ---- fractions ---- */

cf_status cf_fractions(const cf_scenario* scenario, const cf_fraction_options* opts,
                       cf_report** out) {
  if (cf_status s = require(scenario && out, "null argument")) return s;
  return guarded([&] {
    cfrac::FractionOptions fopts;
    if (opts) {
      if (opts->budget > 0) fopts.budget = opts->budget;
      fopts.collect_witness = opts->collect_witness != 0;
    }
    const auto& d = scenario->scenario.dist;
    *out = new cf_report{cfrac::full_report(d, d.order_ptr(), fopts)};
  });
}

void cf_report_free(cf_report* report) { delete report; }

cf_status cf_report_value(const cf_report* report, const char* key, double* out) {
  if (cf_status s = require(report && key && out, "null argument")) return s;
  const cfrac::FractionReport& r = report->report;
  const std::string k = key;
  if (k == "lf") *out = r.local_fraction;
  else if (k == "nslf") *out = r.ns_local_fraction;
  else if (k == "nsf") *out = r.ns_fraction;
  else if (k == "bound_raw") *out = r.signalling_lb_raw;
  else if (k == "bound") *out = r.signalling_lb;
  else if (k == "lf_raw") *out = r.lf_raw;
  else if (k == "nslf_raw") *out = r.nslf_raw;
  else if (k == "nsf_raw") *out = r.nsf_raw;
  else if (k == "lf_seconds") *out = r.lf_seconds;
  else if (k == "nslf_seconds") *out = r.nslf_seconds;
  else if (k == "nsf_seconds") *out = r.nsf_seconds;
  else if (k == "lf_iterations") *out = static_cast<double>(r.lf_iterations);
  else if (k == "nslf_iterations") *out = static_cast<double>(r.nslf_iterations);
  else if (k == "nsf_iterations") *out = static_cast<double>(r.nsf_iterations);
  else {
    g_last_error = "unknown report key '" + k + "'";
    return CF_ERROR_INVALID_ARGUMENT;
  }
  return CF_OK;
}

cf_status cf_report_witness_size(const cf_report* report, size_t* out) {
  if (cf_status s = require(report && out, "null argument")) return s;
  *out = report->report.witness.size();
  return CF_OK;
}

cf_status cf_report_witness_entry(const cf_report* report, size_t k, uint64_t* function_index,
                                  double* weight) {
  if (cf_status s = require(report != nullptr, "null argument")) return s;
  if (k >= report->report.witness.size()) {
    g_last_error = "witness index out of range";
    return CF_ERROR_OUT_OF_RANGE;
  }
  if (function_index) *function_index = report->report.witness[k].function_index;
  if (weight) *weight = report->report.witness[k].weight;
  return CF_OK;
}

/* ---- sweeps ---- */

cf_status cf_sweep_run(const cf_sweep_options* opts, cf_sweep_progress progress, void* user,
                       int* failed_cells) {
  if (cf_status s = require(opts && opts->out_dir, "sweep needs options with an out_dir")) return s;
  return guarded([&] {
    cfrac::SweepConfig config;
    if (opts->resolution > 0) config.resolution = opts->resolution;
    config.variant = cfrac::order_variant_from_name(opts->variant ? opts->variant : "base");
    config.quantities = opts->quantities == 0 ? cfrac::kQuantityAll : opts->quantities;
    config.out_dir = opts->out_dir;
    config.write_heatmaps = opts->write_heatmaps != 0;
    config.threads = opts->threads;
    if (opts->budget > 0) config.budget = opts->budget;

    cfrac::SweepProgress cb;
    if (progress) {
      cb = [progress, user](int done, int total) { progress(done, total, user); };
    }
    const cfrac::SweepResult result = cfrac::run_sweep(config, cb);
    if (failed_cells) *failed_cells = result.failed_cells;
  });
}

}  // extern "C"
