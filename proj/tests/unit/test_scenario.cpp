#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "core/scenario.hpp"
#include "core/sweep.hpp"
#include "test_helpers.hpp"

using namespace cfrac;

namespace {

std::filesystem::path temp_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("builtin scenarios") {
  const Scenario pr = builtin_scenario("pr-box", {});
  CHECK(pr.dist.order().event_count() == 2);
  CHECK(pr.dist.prob(0, 0) == 0.5);
  CHECK(pr.dist.prob(3, 0) == 0.0);
  CHECK(pr.dist.prob(3, 1) == 0.5);

  const Scenario bell = builtin_scenario(
      "interleaved-bell", {Angle{0.4}, Angle{1.1}, OrderVariant::extended});
  CHECK(bell.dist.order().event_count() == 4);
  CHECK(bell.dist.order().leq(0, 1));  // extended: A below B

  CHECK_THROWS_AS(builtin_scenario("nope", {}), ParseError);
}

TEST_CASE("explicit scenario round-trips bit-exactly") {
  std::mt19937 rng(101);
  const auto order = StaticCausalOrder::make_shared({"A", "B", "C"}, {{"A", "C"}});
  const CausalFunctionSpace space(order, SpaceSpec::binary(3));
  const auto d = cfrac::testing::random_causal_mixture(rng, space, 7, 0.21);

  const Scenario original{d, std::nullopt};
  const std::string json = scenario_to_json(original);
  const Scenario parsed = scenario_from_json(json);

  CHECK(parsed.dist.order().labels() == d.order().labels());
  CHECK(parsed.dist.spec().in_card == d.spec().in_card);
  CHECK(parsed.dist.spec().out_card == d.spec().out_card);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) CHECK(parsed.dist.order().leq(a, b) == d.order().leq(a, b));
  }
  for (std::uint64_t i = 0; i < d.input_count(); ++i) {
    for (std::uint64_t o = 0; o < d.output_count(); ++o) {
      CHECK(parsed.dist.prob(i, o) == d.prob(i, o));  // exact, not approximate
    }
  }

  const auto dir = temp_dir("cfrac_scenario_test");
  const std::string path = (dir / "scenario.json").string();
  scenario_to_file(original, path);
  const Scenario from_file = scenario_from_file(path);
  CHECK(scenario_to_json(from_file) == json);
}

TEST_CASE("scenario parse errors carry context") {
  CHECK_THROWS_AS(scenario_from_json("not json"), ParseError);
  CHECK_THROWS_AS(scenario_from_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(scenario_from_json(R"({"events": ["A"], "table": []})"), ParseError);
  CHECK_THROWS_AS(scenario_from_json(R"({"events": ["A","A"],
    "table": [["1","0","0","0"],["1","0","0","0"],["1","0","0","0"],["1","0","0","0"]]})"),
                  DuplicateLabelError);

  // Row sums 0.8: rejected by default, accepted with renormalization.
  const std::string bad_row = R"({"events": ["A"], "inputs": [2], "outputs": [2],
    "table": [["0.4","0.4"], ["0.5","0.5"]]})";
  CHECK_THROWS_AS(scenario_from_json(bad_row), ValidationError);
  ScenarioOptions renorm;
  renorm.renormalize = true;
  const Scenario fixed = scenario_from_json(bad_row, renorm);
  CHECK(fixed.dist.prob(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("order files parse and round-trip") {
  const std::string text = R"({"events": ["A","B","C","D"],
    "covers": [["A","C"],["D","B"]], "inputs": [2,2,2,2], "outputs": [2,2,2,2]})";
  const OrderSpecFile parsed = order_from_json(text);
  CHECK(parsed.order->leq(0, 2));
  CHECK(parsed.order->leq(3, 1));
  CHECK_FALSE(parsed.order->leq(0, 1));
  CHECK(parsed.spec.in_card == std::vector<int>{2, 2, 2, 2});

  const std::string serialized = order_to_json(*parsed.order, parsed.spec);
  const OrderSpecFile again = order_from_json(serialized);
  CHECK(again.order->labels() == parsed.order->labels());
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) CHECK(again.order->leq(a, b) == parsed.order->leq(a, b));
  }

  CHECK_THROWS_AS(order_from_json(R"({"events": ["A"], "inputs": [0]})"), ParseError);
  CHECK_THROWS_AS(order_from_file("/nonexistent/file.json"), IoError);
}

TEST_CASE("small sweep: grid shape, diagonal, symmetry, outputs") {
  const auto dir = temp_dir("cfrac_sweep_test");
  SweepConfig config;
  config.resolution = 3;
  config.out_dir = dir.string();
  config.threads = 2;
  const SweepResult result = run_sweep(config);

  REQUIRE(result.cells.size() == 9);
  CHECK(result.failed_cells == 0);

  auto cell = [&](int i0, int i1) -> const SweepCell& { return result.cells[i0 * 3 + i1]; };
  for (int i0 = 0; i0 < 3; ++i0) {
    for (int i1 = 0; i1 < 3; ++i1) {
      const SweepCell& c = cell(i0, i1);
      CHECK(c.lf >= -1e-9);
      CHECK(c.lf <= 1.0 + 1e-9);
      if (i0 == i1) CHECK(c.lf == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(c.lf == doctest::Approx(cell(i1, i0).lf).epsilon(1e-6));
      CHECK(c.nslf == doctest::Approx(cell(i1, i0).nslf).epsilon(1e-6));
      CHECK(c.nsf == doctest::Approx(cell(i1, i0).nsf).epsilon(1e-6));
      CHECK(c.nslf <= c.lf + 1e-6);
      CHECK(c.nslf <= c.nsf + 1e-6);
      CHECK(c.bound == std::max(0.0, c.bound_raw));
    }
  }

  // CSV: header plus nine rows, row-major in gamma0.
  std::ifstream csv(dir / "sweep.csv");
  REQUIRE(csv.good());
  std::string line;
  std::getline(csv, line);
  CHECK(line == "gamma0,gamma1,lf,nslf,nsf,bound_raw,bound");
  int rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 9);

  for (const char* name : {"lf", "nslf", "nsf", "bound"}) {
    const auto ppm = dir / (std::string(name) + ".ppm");
    REQUIRE(std::filesystem::exists(ppm));
    std::ifstream img(ppm, std::ios::binary);
    std::string magic;
    img >> magic;
    CHECK(magic == "P6");
    int w = 0, h = 0, maxval = 0;
    img >> w >> h >> maxval;
    CHECK(w == 3);
    CHECK(h == 3);
    CHECK(maxval == 255);
    CHECK(std::filesystem::exists(dir / (std::string(name) + ".txt")));
  }
}

TEST_CASE("sweep rejects bad resolutions") {
  SweepConfig config;
  config.resolution = 1;
  CHECK_THROWS_AS(run_sweep(config), InvalidArgumentError);
}
