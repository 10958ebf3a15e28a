#include <doctest.h>

#include <cmath>
#include <random>

#include "core/fractions.hpp"
#include "core/quantum.hpp"
#include "core/scenario.hpp"
#include "test_helpers.hpp"

using namespace cfrac;
using testing::permute_inputs;
using testing::random_causal_mixture;
using testing::random_input_perms;
using testing::random_order;

namespace {

ConditionalDistribution pr_box() { return builtin_scenario("pr-box", {}).dist; }

/// The 24 vertices of the two-party binary no-signalling polytope: 16 local
/// deterministic boxes and 8 PR-box variants (Barrett et al. classification).
/// Each row is a 4x4 table, input index i_A + 2 i_B, output o_A + 2 o_B.
std::vector<std::vector<double>> ns_polytope_vertices() {
  std::vector<std::vector<double>> vertices;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
          std::vector<double> t(16, 0.0);
          const int fa[2] = {a0, a1};
          const int fb[2] = {b0, b1};
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) t[(x + 2 * y) * 4 + (fa[x] + 2 * fb[y])] = 1.0;
          vertices.push_back(std::move(t));
        }
  for (int alpha = 0; alpha < 2; ++alpha)
    for (int beta = 0; beta < 2; ++beta)
      for (int gamma = 0; gamma < 2; ++gamma) {
        std::vector<double> t(16, 0.0);
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int oa = 0; oa < 2; ++oa)
              for (int ob = 0; ob < 2; ++ob) {
                if ((oa ^ ob) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma)) {
                  t[(x + 2 * y) * 4 + (oa + 2 * ob)] = 0.5;
                }
              }
        vertices.push_back(std::move(t));
      }
  return vertices;
}

/// Independent route to the no-signalling fraction for two-party binary
/// distributions: maximize the mass of a mixture of NS polytope vertices
/// dominated by d.
double ns_fraction_by_vertices(const ConditionalDistribution& d) {
  const auto vertices = ns_polytope_vertices();
  LinearProgram lp(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) lp.set_objective(v, 1.0);
  for (std::size_t cell = 0; cell < 16; ++cell) {
    std::vector<std::pair<std::uint32_t, double>> entries;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (vertices[v][cell] != 0.0) {
        entries.emplace_back(static_cast<std::uint32_t>(v), vertices[v][cell]);
      }
    }
    lp.add_row(std::move(entries), Relation::less_equal,
               d.prob(cell / 4, cell % 4));
  }
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  return sol.objective;
}

/// ns_fraction variant with the full subset family of no-signalling
/// equalities instead of the single-event conditions.
double ns_fraction_all_subsets(const ConditionalDistribution& d) {
  const std::uint64_t in_count = d.input_count();
  const std::uint64_t out_count = d.output_count();
  const std::size_t n_cells = static_cast<std::size_t>(in_count * out_count);
  const std::size_t mu = n_cells;
  LinearProgram lp(n_cells + 1);
  lp.set_objective(mu, 1.0);

  for (std::uint64_t i = 0; i < in_count; ++i) {
    std::vector<std::pair<std::uint32_t, double>> entries;
    for (std::uint64_t o = 0; o < out_count; ++o) {
      entries.emplace_back(static_cast<std::uint32_t>(i * out_count + o), 1.0);
    }
    entries.emplace_back(static_cast<std::uint32_t>(mu), -1.0);
    lp.add_row(std::move(entries), Relation::equal, 0.0);
  }

  const EventSet full = d.order().full_set();
  for (EventSet u = 1; u < full; ++u) {  // every proper nonempty subset
    const auto in_proj = projection_table(d.spec().in_card, full, u);
    const auto out_proj = projection_table(d.spec().out_card, full, u);
    const std::uint64_t out_u = joint_count(d.spec().out_card, u);
    std::vector<std::int64_t> rep(static_cast<std::size_t>(joint_count(d.spec().in_card, u)), -1);
    for (std::uint64_t i = 0; i < in_count; ++i) {
      const std::uint32_t g = in_proj[static_cast<std::size_t>(i)];
      if (rep[g] < 0) {
        rep[g] = static_cast<std::int64_t>(i);
        continue;
      }
      const auto base = static_cast<std::uint64_t>(rep[g]);
      for (std::uint64_t ou = 0; ou < out_u; ++ou) {
        std::vector<std::pair<std::uint32_t, double>> entries;
        for (std::uint64_t o = 0; o < out_count; ++o) {
          if (out_proj[static_cast<std::size_t>(o)] == ou) {
            entries.emplace_back(static_cast<std::uint32_t>(base * out_count + o), 1.0);
            entries.emplace_back(static_cast<std::uint32_t>(i * out_count + o), -1.0);
          }
        }
        lp.add_row(std::move(entries), Relation::equal, 0.0);
      }
    }
  }

  for (std::uint64_t i = 0; i < in_count; ++i) {
    for (std::uint64_t o = 0; o < out_count; ++o) {
      lp.add_row({{static_cast<std::uint32_t>(i * out_count + o), 1.0}}, Relation::less_equal,
                 d.prob(i, o));
    }
  }
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  return sol.objective;
}

FractionContext context_for(const ConditionalDistribution& d) {
  return FractionContext(d.order_ptr(), d.spec());
}

}  // namespace

TEST_CASE("delta distributions have local fraction one") {
  std::mt19937 rng(67);
  const auto order = interleaved_order(OrderVariant::base);
  const FractionContext ctx(order, SpaceSpec::binary(4));
  std::uniform_int_distribution<std::uint64_t> pick(0, ctx.causal_space().count() - 1);
  for (int trial = 0; trial < 5; ++trial) {
    const std::uint64_t idx = pick(rng);
    const auto d = ctx.causal_space().delta(ctx.causal_space().function_at(idx));
    const FractionSolve lf = ctx.local_fraction(d);
    CHECK(lf.value == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(lf.witness.size() == 1);
    CHECK(lf.witness[0].function_index == idx);
    CHECK(lf.witness[0].weight == doctest::Approx(1.0));
  }
}

TEST_CASE("PR box: local fraction zero, no-signalling fraction one") {
  const auto d = pr_box();
  const FractionContext ctx = context_for(d);

  // Independent argument: every local deterministic box hits a zero cell of
  // the PR box, so no deterministic mass fits underneath it.
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
          const int fa[2] = {a0, a1};
          const int fb[2] = {b0, b1};
          bool hits_zero = false;
          for (int x = 0; x < 2 && !hits_zero; ++x)
            for (int y = 0; y < 2 && !hits_zero; ++y) {
              hits_zero = ((fa[x] ^ fb[y]) != (x & y));
            }
          CHECK(hits_zero);
        }

  CHECK(ctx.local_fraction(d).value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ctx.ns_local_fraction(d).value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ctx.ns_fraction(d).value == doctest::Approx(1.0).epsilon(1e-9));

  const FractionReport report = ctx.full_report(d);
  CHECK(report.signalling_lb_raw == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(report.signalling_lb == 0.0);
}

TEST_CASE("Tsirelson box reaches local fraction 2 - sqrt(2)") {
  const auto d = builtin_scenario("bell-tsirelson", {}).dist;
  const FractionContext ctx = context_for(d);
  const double lf = ctx.local_fraction(d).value;
  CHECK(lf == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-6));

  // CHSH cross-check: any box with CHSH value S has local fraction at most
  // (4 - S) / 2, and this box sits exactly at the Tsirelson value.
  double chsh = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double e = 0.0;
      for (std::uint64_t o = 0; o < 4; ++o) {
        const int oa = static_cast<int>(o & 1), ob = static_cast<int>((o >> 1) & 1);
        e += ((oa ^ ob) == 0 ? 1.0 : -1.0) * d.prob(x + 2 * y, o);
      }
      chsh += (x == 1 && y == 1) ? -e : e;
    }
  CHECK(chsh == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lf <= (4.0 - chsh) / 2.0 + 1e-9);
}

TEST_CASE("equal angles give full local and no-signalling-local fractions") {
  const auto d = interleaved_distribution({Angle{1.05}, Angle{1.05}, OrderVariant::base});
  const FractionContext ctx = context_for(d);
  CHECK(ctx.local_fraction(d).value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(ctx.ns_local_fraction(d).value == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("ns_fraction special cases") {
  const auto discrete = StaticCausalOrder::make_shared({"A", "B"}, {});
  const ConditionalDistribution uniform(discrete, SpaceSpec::binary(2),
                                        std::vector<double>(16, 0.25));
  CHECK(context_for(uniform).ns_fraction(uniform).value == doctest::Approx(1.0).epsilon(1e-9));

  // delta of a signalling function (B copies i_A on the 2-chain): any
  // no-signalling sub-distribution under it has zero mass.
  const auto chain = StaticCausalOrder::make_shared({"A", "B"}, {{"A", "B"}});
  std::vector<double> copy_table(16, 0.0);
  for (std::uint32_t in = 0; in < 4; ++in) {
    const std::uint32_t ia = in & 1;
    copy_table[in * 4 + (2 * ia)] = 1.0;  // (o_A, o_B) = (0, i_A)
  }
  const ConditionalDistribution copy_d(chain, SpaceSpec::binary(2), std::move(copy_table));
  const double nsf = context_for(copy_d).ns_fraction(copy_d).value;
  CHECK(nsf == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(nsf < 1.0);
  CHECK(ns_fraction_by_vertices(copy_d) == doctest::Approx(nsf).epsilon(1e-9));
}

TEST_CASE("vertex decomposition agrees with the marginal-equality program") {
  std::mt19937 rng(71);
  const auto discrete = StaticCausalOrder::make_shared({"A", "B"}, {});
  const FractionContext ctx(discrete, SpaceSpec::binary(2));
  CHECK(ns_fraction_by_vertices(pr_box()) == doctest::Approx(1.0).epsilon(1e-9));

  for (int trial = 0; trial < 10; ++trial) {
    // Random two-party boxes: local deltas plus uniform noise plus some PR
    // box, so the optimum can sit anywhere between 0 and 1.
    const double w_pr = 0.3 * (trial % 3) / 2.0;
    const auto mix = random_causal_mixture(rng, ctx.discrete_space(), 4, 0.2);
    std::vector<double> table(16);
    const auto pr = pr_box();
    for (std::uint64_t i = 0; i < 4; ++i) {
      for (std::uint64_t o = 0; o < 4; ++o) {
        table[i * 4 + o] = (1.0 - w_pr) * mix.prob(i, o) + w_pr * pr.prob(i, o);
      }
    }
    const ConditionalDistribution d(discrete, SpaceSpec::binary(2), std::move(table));
    const double lp_value = ctx.ns_fraction(d).value;
    CHECK(ns_fraction_by_vertices(d) == doctest::Approx(lp_value).epsilon(1e-7));
  }
}

TEST_CASE("single-event no-signalling conditions suffice") {
  std::mt19937 rng(73);
  for (std::size_t n_events : {2ul, 3ul}) {
    const auto order = StaticCausalOrder::make_shared(testing::letters(n_events), {});
    const FractionContext ctx(order, SpaceSpec::binary(n_events));
    for (int trial = 0; trial < 4; ++trial) {
      const auto d = random_causal_mixture(rng, ctx.discrete_space(), 5, 0.25);
      const double single = ctx.ns_fraction(d).value;
      const double all_subsets = ns_fraction_all_subsets(d);
      CHECK(single == doctest::Approx(all_subsets).epsilon(1e-7));
    }
  }
}

TEST_CASE("fraction ordering chain on random causal distributions") {
  std::mt19937 rng(79);
  const auto order = interleaved_order(OrderVariant::base);
  const FractionContext ctx(order, SpaceSpec::binary(4));
  for (int trial = 0; trial < 3; ++trial) {
    const auto d = random_causal_mixture(rng, ctx.causal_space(), 6, 0.15);
    const FractionReport r = ctx.full_report(d);
    CHECK(r.ns_local_fraction <= r.local_fraction + 1e-6);
    CHECK(r.ns_local_fraction <= r.ns_fraction + 1e-6);
    CHECK(r.local_fraction >= -1e-6);
    CHECK(r.local_fraction <= 1.0 + 1e-6);
    CHECK(r.signalling_lb == std::max(0.0, r.signalling_lb_raw));
  }
}

TEST_CASE("local fraction grows with the order") {
  const auto base = interleaved_order(OrderVariant::base);
  const auto extended = interleaved_order(OrderVariant::extended);
  const FractionContext base_ctx(base, SpaceSpec::binary(4));
  const FractionContext ext_ctx(extended, SpaceSpec::binary(4));
  for (auto [g0, g1] : {std::pair{0.35, 1.9}, {2.2, 0.7}}) {
    const auto d = interleaved_distribution({Angle{g0}, Angle{g1}, OrderVariant::base});
    const double lf_base = base_ctx.local_fraction(d).value;
    const double lf_ext = ext_ctx.local_fraction(d.with_order(extended)).value;
    CHECK(lf_base <= lf_ext + 1e-6);
    // The discrete programs coincide regardless of the order variant.
    const double nslf_base = base_ctx.ns_local_fraction(d).value;
    const double nslf_ext = ext_ctx.ns_local_fraction(d.with_order(extended)).value;
    CHECK(nslf_base == doctest::Approx(nslf_ext).epsilon(1e-9));
  }
}

TEST_CASE("witness reconstructs a dominated sub-distribution of causal deltas") {
  std::mt19937 rng(83);
  const auto order = interleaved_order(OrderVariant::base);
  const FractionContext ctx(order, SpaceSpec::binary(4));
  const auto d = interleaved_distribution({Angle{0.4}, Angle{1.3}, OrderVariant::base});
  const FractionSolve lf = ctx.local_fraction(d);
  REQUIRE(lf.value > 0.0);

  double weight_sum = 0.0;
  std::vector<double> reconstructed(16 * 16, 0.0);
  std::vector<std::uint32_t> outs(16);
  for (const WitnessEntry& entry : lf.witness) {
    CHECK(entry.weight >= 0.0);
    weight_sum += entry.weight;
    const RawFunction raw = ctx.causal_space().to_raw(ctx.causal_space().function_at(entry.function_index));
    CHECK(ctx.causal_space().is_causal(raw));
    for (std::uint64_t i = 0; i < 16; ++i) {
      reconstructed[i * 16 + raw.table[i]] += lf.value * entry.weight;
    }
  }
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
  for (std::uint64_t i = 0; i < 16; ++i) {
    for (std::uint64_t o = 0; o < 16; ++o) {
      CHECK(reconstructed[i * 16 + o] <= d.prob(i, o) + 1e-7);
    }
  }
}

TEST_CASE("local fraction is concave under mixing") {
  std::mt19937 rng(89);
  const auto order = interleaved_order(OrderVariant::base);
  const FractionContext ctx(order, SpaceSpec::binary(4));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const auto d1 = random_causal_mixture(rng, ctx.causal_space(), 5, 0.1);
    const auto d2 = interleaved_distribution(
        {Angle{unit(rng) * 3.14}, Angle{unit(rng) * 3.14}, OrderVariant::base});
    const double t = unit(rng);
    std::vector<double> blend(16 * 16);
    for (std::uint64_t i = 0; i < 16; ++i) {
      for (std::uint64_t o = 0; o < 16; ++o) {
        blend[i * 16 + o] = t * d1.prob(i, o) + (1.0 - t) * d2.prob(i, o);
      }
    }
    const ConditionalDistribution mix(order, SpaceSpec::binary(4), std::move(blend));
    const double lf_mix = ctx.local_fraction(mix).value;
    const double lf1 = ctx.local_fraction(d1).value;
    const double lf2 = ctx.local_fraction(d2).value;
    CHECK(lf_mix >= t * lf1 + (1.0 - t) * lf2 - 1e-6);
  }
}

TEST_CASE("all reported quantities are invariant under input relabelling") {
  std::mt19937 rng(97);
  const auto order = interleaved_order(OrderVariant::base);
  const FractionContext ctx(order, SpaceSpec::binary(4));
  const auto d = interleaved_distribution({Angle{0.6}, Angle{2.0}, OrderVariant::base});
  const FractionReport before = ctx.full_report(d);
  for (int trial = 0; trial < 2; ++trial) {
    const auto perms = random_input_perms(rng, d.spec());
    const auto permuted = permute_inputs(d, perms);
    const FractionReport after = ctx.full_report(permuted);
    CHECK(after.local_fraction == doctest::Approx(before.local_fraction).epsilon(1e-6));
    CHECK(after.ns_local_fraction == doctest::Approx(before.ns_local_fraction).epsilon(1e-6));
    CHECK(after.ns_fraction == doctest::Approx(before.ns_fraction).epsilon(1e-6));
    CHECK(after.signalling_lb == doctest::Approx(before.signalling_lb).epsilon(1e-6));
  }
}

TEST_CASE("signalling lower bound arithmetic") {
  CHECK(signalling_lower_bound_raw(1.0, 0.4, 0.9) == doctest::Approx(-0.5));
  CHECK(signalling_lower_bound_raw(0.0, 0.0, 1.0) == doctest::Approx(0.0));
  CHECK(signalling_lower_bound_raw(0.5, 0.3, 0.6) == doctest::Approx(0.2));
}

TEST_CASE("budget surfaces through local_fraction") {
  const auto order = interleaved_order(OrderVariant::base);
  const auto d = interleaved_distribution({Angle{0.3}, Angle{0.9}, OrderVariant::base});
  CHECK_THROWS_AS(FractionContext(order, SpaceSpec::binary(4), 100), BudgetExceededError);
  FractionOptions opts;
  opts.budget = 100;
  const FractionContext ctx(order, SpaceSpec::binary(4));
  CHECK_THROWS_AS(ctx.local_fraction(d, opts), BudgetExceededError);
}
