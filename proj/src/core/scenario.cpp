#include "scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cfrac {

namespace {

using nlohmann::json;

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

double parse_probability(const json& cell, std::uint64_t row, std::uint64_t col) {
  try {
    if (cell.is_string()) {
      const std::string& s = cell.get_ref<const std::string&>();
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    }
    if (cell.is_number()) return cell.get<double>();
  } catch (const std::exception&) {
    // fall through to the error below
  }
  throw ParseError("table entry at row " + std::to_string(row) + ", column " +
                   std::to_string(col) + " is not a probability");
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

StaticCausalOrder::ConstPtr order_from_fields(const json& j) {
  if (!j.contains("events") || !j["events"].is_array()) {
    throw ParseError("scenario needs an 'events' array of labels");
  }
  std::vector<std::string> labels;
  for (const auto& e : j["events"]) {
    if (!e.is_string()) throw ParseError("event labels must be strings");
    labels.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    for (const auto& pair : j["covers"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw ParseError("covers must be [below, above] label pairs");
      }
      covers.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  return StaticCausalOrder::make_shared(std::move(labels), covers);
}

std::vector<int> cards_from_field(const json& j, const char* key, std::size_t n_events) {
  if (!j.contains(key)) return std::vector<int>(n_events, 2);
  const auto& arr = j[key];
  if (!arr.is_array() || arr.size() != n_events) {
    throw ParseError(std::string("'") + key + "' must list one cardinality per event");
  }
  std::vector<int> cards;
  for (const auto& c : arr) {
    if (!c.is_number_integer() || c.get<int>() < 1) {
      throw ParseError(std::string("'") + key + "' entries must be positive integers");
    }
    cards.push_back(c.get<int>());
  }
  return cards;
}

}  // namespace

Scenario builtin_scenario(const std::string& name, const ScenarioParams& params) {
  if (name == "interleaved-bell") {
    return Scenario{interleaved_distribution(params), name};
  }
  if (name == "pr-box") {
    const auto order = StaticCausalOrder::make_shared({"A", "B"}, {});
    std::vector<double> table(16, 0.0);
    for (std::uint32_t in = 0; in < 4; ++in) {
      const int x = in & 1, y = (in >> 1) & 1;
      for (std::uint32_t out = 0; out < 4; ++out) {
        const int a = out & 1, b = (out >> 1) & 1;
        if ((a ^ b) == (x & y)) table[in * 4 + out] = 0.5;
      }
    }
    return Scenario{
        ConditionalDistribution(order, SpaceSpec::binary(2), std::move(table), kGeneratedTol),
        name};
  }
  if (name == "bell-tsirelson") {
    return Scenario{bipartite_bell_distribution(
                        {Angle{kTsirelsonAnglesA[0]}, Angle{kTsirelsonAnglesA[1]}},
                        {Angle{kTsirelsonAnglesB[0]}, Angle{kTsirelsonAnglesB[1]}}),
                    name};
  }
  throw ParseError("unknown builtin scenario '" + name +
                   "' (expected interleaved-bell, pr-box, or bell-tsirelson)");
}

Scenario scenario_from_json(const std::string& text, const ScenarioOptions& opts) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");

  if (j.contains("builtin")) {
    ScenarioParams params;
    if (j.contains("gamma0")) params.gamma0.radians = j["gamma0"].get<double>();
    if (j.contains("gamma1")) params.gamma1.radians = j["gamma1"].get<double>();
    if (j.contains("variant")) {
      params.variant = order_variant_from_name(j["variant"].get<std::string>());
    }
    return builtin_scenario(j["builtin"].get<std::string>(), params);
  }

  const auto order = order_from_fields(j);
  const std::size_t n = order->event_count();
  SpaceSpec spec{cards_from_field(j, "inputs", n), cards_from_field(j, "outputs", n)};
  spec.validate(n);

  const std::uint64_t in_count = spec.input_count(order->full_set());
  const std::uint64_t out_count = spec.output_count(order->full_set());
  if (!j.contains("table") || !j["table"].is_array() || j["table"].size() != in_count) {
    throw ParseError("'table' must have one row per joint input (" + std::to_string(in_count) +
                     " rows)");
  }
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(in_count * out_count));
  for (std::uint64_t i = 0; i < in_count; ++i) {
    const auto& row = j["table"][static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != out_count) {
      throw ParseError("table row " + std::to_string(i) + " must have " +
                       std::to_string(out_count) + " entries");
    }
    for (std::uint64_t o = 0; o < out_count; ++o) {
      table.push_back(parse_probability(row[static_cast<std::size_t>(o)], i, o));
    }
  }
  try {
    return Scenario{
        ConditionalDistribution(order, std::move(spec), std::move(table), opts.tol,
                                opts.renormalize),
        std::nullopt};
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("scenario table invalid: ") + e.what());
  }
}

Scenario scenario_from_file(const std::string& path, const ScenarioOptions& opts) {
  return scenario_from_json(read_file(path), opts);
}

std::string scenario_to_json(const Scenario& scenario) {
  const ConditionalDistribution& d = scenario.dist;
  json j;
  j["events"] = d.order().labels();
  json covers = json::array();
  for (const auto& [lo, hi] : d.order().cover_pairs()) {
    covers.push_back({d.order().labels()[lo], d.order().labels()[hi]});
  }
  j["covers"] = std::move(covers);
  j["inputs"] = d.spec().in_card;
  j["outputs"] = d.spec().out_card;
  json table = json::array();
  for (std::uint64_t i = 0; i < d.input_count(); ++i) {
    json row = json::array();
    for (std::uint64_t o = 0; o < d.output_count(); ++o) {
      row.push_back(format_probability(d.prob(i, o)));
    }
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  return j.dump(2) + "\n";
}

void scenario_to_file(const Scenario& scenario, const std::string& path) {
  write_file(path, scenario_to_json(scenario));
}

OrderSpecFile order_from_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ParseError("order file must be a JSON object");
  auto order = order_from_fields(j);
  const std::size_t n = order->event_count();
  SpaceSpec spec{cards_from_field(j, "inputs", n), cards_from_field(j, "outputs", n)};
  spec.validate(n);
  return OrderSpecFile{std::move(order), std::move(spec)};
}

OrderSpecFile order_from_file(const std::string& path) {
  return order_from_json(read_file(path));
}

std::string order_to_json(const StaticCausalOrder& order, const SpaceSpec& spec) {
  json j;
  j["events"] = order.labels();
  json covers = json::array();
  for (const auto& [lo, hi] : order.cover_pairs()) {
    covers.push_back({order.labels()[lo], order.labels()[hi]});
  }
  j["covers"] = std::move(covers);
  j["inputs"] = spec.in_card;
  j["outputs"] = spec.out_card;
  return j.dump(2) + "\n";
}

}  // namespace cfrac
