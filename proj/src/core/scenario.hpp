#pragma once

#include <optional>
#include <string>

#include "distribution.hpp"
#include "order.hpp"
#include "quantum.hpp"
#include "space.hpp"

namespace cfrac {

/// A fully specified problem instance: the order, the alphabets, and the
/// conditional distribution under analysis.
struct Scenario {
  ConditionalDistribution dist;
  std::optional<std::string> builtin;  // provenance when generated
};

struct ScenarioOptions {
  double tol = kIngestedTol;
  bool renormalize = false;
};

/// Builtins: "interleaved-bell" (uses params), "pr-box", "bell-tsirelson".
Scenario builtin_scenario(const std::string& name, const ScenarioParams& params);

/// JSON scenario form. Explicit scenarios carry events, covers, inputs,
/// outputs and the probability table (rows by joint input index, entries as
/// decimal strings); builtin scenarios carry the builtin name and its
/// parameters.
Scenario scenario_from_json(const std::string& text, const ScenarioOptions& opts = {});
Scenario scenario_from_file(const std::string& path, const ScenarioOptions& opts = {});

/// Serializes in the explicit form, with probabilities printed to 17
/// significant digits so the table round-trips bit-exactly.
std::string scenario_to_json(const Scenario& scenario);
void scenario_to_file(const Scenario& scenario, const std::string& path);

/// Order-only files: {"events": [...], "covers": [["A","C"], ...]} with
/// optional "inputs"/"outputs" cardinality arrays (default binary).
struct OrderSpecFile {
  StaticCausalOrder::ConstPtr order;
  SpaceSpec spec;
};
OrderSpecFile order_from_json(const std::string& text);
OrderSpecFile order_from_file(const std::string& path);
std::string order_to_json(const StaticCausalOrder& order, const SpaceSpec& spec);

}  // namespace cfrac
