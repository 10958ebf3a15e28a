#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "order.hpp"
#include "space.hpp"

namespace cfrac {

inline constexpr double kGeneratedTol = 1e-9;  // internally generated tables
inline constexpr double kIngestedTol = 1e-6;   // empirical tables from files

/// First input pair whose restricted rows disagree, with the largest
/// discrepancy seen anywhere in the scan.
struct MarginalViolation {
  EventSet lowerset = 0;
  std::uint64_t input_a = 0;
  std::uint64_t input_b = 0;
  double deviation = 0.0;  // max |marginal difference| for the named pair
};

struct CausalityReport {
  bool causal = true;
  double worst_deviation = 0.0;
  std::optional<MarginalViolation> violation;
};

/// Table of probabilities over joint outputs conditional on joint inputs.
/// Rows are validated on construction: entries below -tol are rejected,
/// small negatives are clamped to zero, and each row must sum to 1 within
/// tol (or be explicitly renormalized). Immutable afterwards.
class ConditionalDistribution {
 public:
  ConditionalDistribution(StaticCausalOrder::ConstPtr order, SpaceSpec spec,
                          std::vector<double> table, double tol = kGeneratedTol,
                          bool renormalize = false);

  const StaticCausalOrder& order() const { return *order_; }
  StaticCausalOrder::ConstPtr order_ptr() const { return order_; }
  const SpaceSpec& spec() const { return spec_; }
  double tol() const { return tol_; }

  std::uint64_t input_count() const { return in_count_; }
  std::uint64_t output_count() const { return out_count_; }

  double prob(std::uint64_t input, std::uint64_t output) const {
    return table_[static_cast<std::size_t>(input * out_count_ + output)];
  }
  std::span<const double> row(std::uint64_t input) const {
    return {table_.data() + input * out_count_, static_cast<std::size_t>(out_count_)};
  }
  std::span<const double> table() const { return table_; }

  /// Same table viewed against a different order on the same events.
  ConditionalDistribution with_order(StaticCausalOrder::ConstPtr order) const;

 private:
  StaticCausalOrder::ConstPtr order_;
  SpaceSpec spec_;
  std::vector<double> table_;
  std::uint64_t in_count_ = 0;
  std::uint64_t out_count_ = 0;
  double tol_ = kGeneratedTol;
};

/// Marginal of a distribution row over the outputs of `to` (`to` ⊆ `from`,
/// the scope the row lives on).
std::vector<double> marginalize_row(std::span<const double> row, std::span<const int> out_cards,
                                    EventSet from, EventSet to);

struct Restriction {
  std::optional<ConditionalDistribution> dist;  // present iff well defined
  std::optional<MarginalViolation> violation;
  double worst_deviation = 0.0;
};

/// Restriction of `d` to the lowerset `U` per the marginalization rule:
/// groups joint inputs by their restriction to U and checks the group
/// marginals agree within tol. Throws NotLowersetError if U is not a
/// lowerset of d's order.
Restriction restrict_distribution(const ConditionalDistribution& d, EventSet U,
                                  std::optional<double> tol = std::nullopt);

/// Checks the restriction condition on every lowerset of `order` (which must
/// share d's event list). Reports the largest marginal discrepancy found and,
/// if any group disagrees beyond tol, the first violating lowerset/pair.
CausalityReport is_causal_distribution(const ConditionalDistribution& d,
                                       const StaticCausalOrder& order,
                                       std::optional<double> tol = std::nullopt);

}  // namespace cfrac
