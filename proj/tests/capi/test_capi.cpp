// Exercises the public C API end to end through the shared library surface.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "causalfrac/causalfrac.h"

namespace {

struct Str {
  char* value = nullptr;
  ~Str() { cf_string_free(value); }
};

constexpr const char* kExplicitScenario = R"({
  "events": ["A", "B"],
  "covers": [],
  "inputs": [2, 2],
  "outputs": [2, 2],
  "table": [
    ["0.5", "0", "0", "0.5"],
    ["0.5", "0", "0", "0.5"],
    ["0.5", "0", "0", "0.5"],
    ["0", "0.5", "0.5", "0"]
  ]
})";  // the PR box

constexpr const char* kSignallingScenario = R"({
  "events": ["A", "B"],
  "table": [
    ["1", "0", "0", "0"],
    ["1", "0", "0", "0"],
    ["0", "1", "0", "0"],
    ["0", "1", "0", "0"]
  ]
})";  // A's output copies B's input

}  // namespace

TEST_CASE("version and status names") {
  CHECK(cf_version() != nullptr);
  CHECK(std::strcmp(cf_status_name(CF_OK), "ok") == 0);
  CHECK(std::strcmp(cf_status_name(CF_ERROR_CYCLE), "cycle") == 0);
}

TEST_CASE("orders: builtin, JSON, queries, errors") {
  cf_order* order = nullptr;
  REQUIRE(cf_order_builtin("base", &order) == CF_OK);
  size_t n = 0;
  CHECK(cf_order_event_count(order, &n) == CF_OK);
  CHECK(n == 4);
  const char* label = nullptr;
  CHECK(cf_order_label(order, 2, &label) == CF_OK);
  CHECK(std::strcmp(label, "C") == 0);
  int leq = 0;
  CHECK(cf_order_leq(order, 0, 2, &leq) == CF_OK);
  CHECK(leq == 1);
  CHECK(cf_order_leq(order, 0, 1, &leq) == CF_OK);
  CHECK(leq == 0);

  Str json;
  REQUIRE(cf_order_to_json(order, &json.value) == CF_OK);
  cf_order* reparsed = nullptr;
  REQUIRE(cf_order_from_json(json.value, &reparsed) == CF_OK);
  CHECK(cf_order_leq(reparsed, 3, 1, &leq) == CF_OK);
  CHECK(leq == 1);
  cf_order_free(reparsed);
  cf_order_free(order);

  cf_order* bad = nullptr;
  CHECK(cf_order_from_json(R"({"events":["A","B"],"covers":[["A","B"],["B","A"]]})", &bad) ==
        CF_ERROR_CYCLE);
  CHECK(bad == nullptr);
  CHECK(std::strlen(cf_last_error()) > 0);
  CHECK(cf_order_from_json("not json", &bad) == CF_ERROR_PARSE);
  CHECK(cf_order_builtin("weird", &bad) == CF_ERROR_PARSE);
}

TEST_CASE("enumeration counts and function serialization") {
  cf_order* base = nullptr;
  REQUIRE(cf_order_builtin("base", &base) == CF_OK);
  double log2_count = 0.0;
  uint64_t count = 0;
  int exact = 0;
  REQUIRE(cf_enumeration_count(base, &log2_count, &count, &exact) == CF_OK);
  CHECK(exact == 1);
  CHECK(count == 4096);
  CHECK(log2_count == doctest::Approx(12.0));

  Str f0;
  REQUIRE(cf_function_json(base, 0, &f0.value) == CF_OK);
  CHECK(std::string(f0.value) == "[[0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]");
  Str last;
  REQUIRE(cf_function_json(base, 4095, &last.value) == CF_OK);
  CHECK(std::string(last.value) == "[[1,1],[1,1,1,1],[1,1,1,1],[1,1,1,1]]");
  Str oob;
  CHECK(cf_function_json(base, 4096, &oob.value) == CF_ERROR_OUT_OF_RANGE);
  cf_order_free(base);

  cf_order* extended = nullptr;
  REQUIRE(cf_order_builtin("extended", &extended) == CF_OK);
  REQUIRE(cf_enumeration_count(extended, &log2_count, &count, &exact) == CF_OK);
  CHECK(count == 65536);
  cf_order_free(extended);
}

TEST_CASE("scenarios: builtin, JSON round-trip, table access") {
  cf_scenario* scenario = nullptr;
  REQUIRE(cf_scenario_from_json(kExplicitScenario, -1.0, 0, &scenario) == CF_OK);
  uint64_t in_count = 0, out_count = 0;
  CHECK(cf_scenario_table_size(scenario, &in_count, &out_count) == CF_OK);
  CHECK(in_count == 4);
  CHECK(out_count == 4);
  double p = -1.0;
  CHECK(cf_scenario_prob(scenario, 3, 1, &p) == CF_OK);
  CHECK(p == 0.5);
  CHECK(cf_scenario_prob(scenario, 5, 0, &p) == CF_ERROR_OUT_OF_RANGE);

  Str json;
  REQUIRE(cf_scenario_to_json(scenario, &json.value) == CF_OK);
  cf_scenario* reparsed = nullptr;
  REQUIRE(cf_scenario_from_json(json.value, -1.0, 0, &reparsed) == CF_OK);
  CHECK(cf_scenario_prob(reparsed, 0, 3, &p) == CF_OK);
  CHECK(p == 0.5);
  cf_scenario_free(reparsed);
  cf_scenario_free(scenario);

  cf_scenario* bad = nullptr;
  CHECK(cf_scenario_from_json(R"({"events":["A"],"table":[["0.4","0.4"],["1","0"]]})", -1.0, 0,
                              &bad) == CF_ERROR_VALIDATION);
  CHECK(cf_scenario_from_json(R"({"events":["A"],"table":[["0.4","0.4"],["1","0"]]})", -1.0, 1,
                              &bad) == CF_OK);
  cf_scenario_free(bad);
}

TEST_CASE("causality check through the API") {
  cf_scenario* causal = nullptr;
  REQUIRE(cf_scenario_builtin("interleaved-bell", 0.3, 1.2, "base", &causal) == CF_OK);
  cf_causality rep{};
  REQUIRE(cf_check_causality(causal, 1e-9, &rep) == CF_OK);
  CHECK(rep.causal == 1);
  CHECK(rep.worst_deviation < 1e-10);
  cf_scenario_free(causal);

  cf_scenario* signalling = nullptr;
  REQUIRE(cf_scenario_from_json(kSignallingScenario, -1.0, 0, &signalling) == CF_OK);
  REQUIRE(cf_check_causality(signalling, -1.0, &rep) == CF_OK);
  CHECK(rep.causal == 0);
  CHECK(rep.worst_deviation == doctest::Approx(1.0));
  CHECK(rep.lowerset_mask == 1u);  // {A}
  CHECK(rep.input_a == 0);
  CHECK(rep.input_b == 2);
  cf_scenario_free(signalling);
}

TEST_CASE("fractions and witness through the API") {
  cf_scenario* pr = nullptr;
  REQUIRE(cf_scenario_builtin("pr-box", 0.0, 0.0, nullptr, &pr) == CF_OK);
  cf_report* report = nullptr;
  REQUIRE(cf_fractions(pr, nullptr, &report) == CF_OK);
  double lf = -1.0, nsf = -1.0, bound = -1.0;
  CHECK(cf_report_value(report, "lf", &lf) == CF_OK);
  CHECK(cf_report_value(report, "nsf", &nsf) == CF_OK);
  CHECK(cf_report_value(report, "bound", &bound) == CF_OK);
  CHECK(lf == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(nsf == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bound == 0.0);
  double junk = 0.0;
  CHECK(cf_report_value(report, "no_such_key", &junk) == CF_ERROR_INVALID_ARGUMENT);
  cf_report_free(report);
  cf_scenario_free(pr);

  cf_scenario* bell = nullptr;
  REQUIRE(cf_scenario_builtin("bell-tsirelson", 0.0, 0.0, nullptr, &bell) == CF_OK);
  cf_fraction_options opts{};
  opts.collect_witness = 1;
  REQUIRE(cf_fractions(bell, &opts, &report) == CF_OK);
  CHECK(cf_report_value(report, "lf", &lf) == CF_OK);
  CHECK(lf == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-5));
  size_t witness = 0;
  CHECK(cf_report_witness_size(report, &witness) == CF_OK);
  CHECK(witness > 0);
  double weight_sum = 0.0;
  cf_order* order = nullptr;
  REQUIRE(cf_scenario_order(bell, &order) == CF_OK);
  for (size_t k = 0; k < witness; ++k) {
    uint64_t index = 0;
    double weight = 0.0;
    REQUIRE(cf_report_witness_entry(report, k, &index, &weight) == CF_OK);
    weight_sum += weight;
    Str tables;
    CHECK(cf_function_json(order, index, &tables.value) == CF_OK);
    CHECK(tables.value[0] == '[');
  }
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
  cf_order_free(order);
  cf_report_free(report);

  // Budget error surfaces with its own status.
  cf_fraction_options tiny{};
  tiny.budget = 3;
  cf_report* blocked = nullptr;
  CHECK(cf_fractions(bell, &tiny, &blocked) == CF_ERROR_BUDGET_EXCEEDED);
  cf_scenario_free(bell);
}

TEST_CASE("scenario with replacement order") {
  cf_scenario* bell = nullptr;
  REQUIRE(cf_scenario_builtin("interleaved-bell", 0.5, 2.0, "base", &bell) == CF_OK);
  cf_order* extended = nullptr;
  REQUIRE(cf_order_builtin("extended", &extended) == CF_OK);
  cf_scenario* replaced = nullptr;
  REQUIRE(cf_scenario_with_order(bell, extended, &replaced) == CF_OK);
  cf_causality rep{};
  REQUIRE(cf_check_causality(replaced, 1e-9, &rep) == CF_OK);
  CHECK(rep.causal == 1);
  cf_scenario_free(replaced);
  cf_order_free(extended);
  cf_scenario_free(bell);
}

TEST_CASE("sweep through the API") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cfrac_capi_sweep";
  fs::remove_all(dir);

  const std::string dir_str = dir.string();
  cf_sweep_options opts{};
  opts.resolution = 3;
  opts.out_dir = dir_str.c_str();
  opts.write_heatmaps = 1;
  opts.threads = 2;

  int failed = -1;
  REQUIRE(cf_sweep_run(&opts, nullptr, nullptr, &failed) == CF_OK);
  CHECK(failed == 0);
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(fs::exists(dir / "lf.ppm"));
  CHECK(fs::exists(dir / "bound.txt"));

  std::ifstream csv(dir / "sweep.csv");
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 10);  // header + 9 cells

  cf_sweep_options bad{};
  CHECK(cf_sweep_run(&bad, nullptr, nullptr, nullptr) == CF_ERROR_INVALID_ARGUMENT);
}
