#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "core/distribution.hpp"
#include "core/functions.hpp"
#include "core/order.hpp"
#include "core/space.hpp"

namespace cfrac::testing {

inline std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('A' + i));
  return out;
}

/// Random order on n events; covers only go from lower to higher canonical
/// index, so the result is always acyclic.
inline StaticCausalOrder::ConstPtr random_order(std::mt19937& rng, std::size_t n,
                                                double edge_prob = 0.4) {
  std::bernoulli_distribution edge(edge_prob);
  std::vector<std::pair<std::string, std::string>> covers;
  const auto labels = letters(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (edge(rng)) covers.emplace_back(labels[a], labels[b]);
    }
  }
  return StaticCausalOrder::make_shared(labels, covers);
}

/// Random convex mixture of causal deltas, optionally blended with the
/// uniform distribution; causal for the space's order by construction.
inline ConditionalDistribution random_causal_mixture(std::mt19937& rng,
                                                     const CausalFunctionSpace& space,
                                                     int n_terms = 6,
                                                     double uniform_part = 0.0) {
  const std::uint64_t in_count = space.input_count();
  const std::uint64_t out_count = space.output_count();
  std::vector<double> table(static_cast<std::size_t>(in_count * out_count), 0.0);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> pick(0, space.count() - 1);
  std::vector<double> weights(static_cast<std::size_t>(n_terms));
  double total = 0.0;
  for (double& w : weights) {
    w = unit(rng) + 1e-3;
    total += w;
  }
  std::vector<std::uint32_t> outs(static_cast<std::size_t>(in_count));
  for (int t = 0; t < n_terms; ++t) {
    const double w = (1.0 - uniform_part) * weights[static_cast<std::size_t>(t)] / total;
    space.eval_outputs(pick(rng), outs);
    for (std::uint64_t i = 0; i < in_count; ++i) {
      table[static_cast<std::size_t>(i * out_count + outs[static_cast<std::size_t>(i)])] += w;
    }
  }
  if (uniform_part > 0.0) {
    const double u = uniform_part / static_cast<double>(out_count);
    for (double& p : table) p += u;
  }
  return ConditionalDistribution(space.order_ptr(), space.spec(), std::move(table));
}

/// Applies per-event input permutations to a distribution table: row for
/// joint input i comes from the row whose digit at each event ev is
/// perms[ev][digit].
inline ConditionalDistribution permute_inputs(const ConditionalDistribution& d,
                                              const std::vector<std::vector<int>>& perms) {
  const std::uint64_t in_count = d.input_count();
  const std::uint64_t out_count = d.output_count();
  const auto& cards = d.spec().in_card;
  std::vector<double> table(static_cast<std::size_t>(in_count * out_count));
  for (std::uint64_t i = 0; i < in_count; ++i) {
    std::uint64_t rem = i;
    std::uint64_t src = 0;
    std::uint64_t stride = 1;
    for (std::size_t ev = 0; ev < cards.size(); ++ev) {
      const auto card = static_cast<std::uint64_t>(cards[ev]);
      const auto digit = static_cast<std::size_t>(rem % card);
      rem /= card;
      src += stride * static_cast<std::uint64_t>(perms[ev][digit]);
      stride *= card;
    }
    for (std::uint64_t o = 0; o < out_count; ++o) {
      table[static_cast<std::size_t>(i * out_count + o)] = d.prob(src, o);
    }
  }
  return ConditionalDistribution(d.order_ptr(), d.spec(), std::move(table), d.tol());
}

inline std::vector<std::vector<int>> random_input_perms(std::mt19937& rng, const SpaceSpec& spec) {
  std::vector<std::vector<int>> perms;
  for (int card : spec.in_card) {
    std::vector<int> p(static_cast<std::size_t>(card));
    for (int v = 0; v < card; ++v) p[static_cast<std::size_t>(v)] = v;
    std::shuffle(p.begin(), p.end(), rng);
    perms.push_back(std::move(p));
  }
  return perms;
}

}  // namespace cfrac::testing
