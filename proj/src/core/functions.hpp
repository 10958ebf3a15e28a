#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "distribution.hpp"
#include "order.hpp"
#include "space.hpp"

namespace cfrac {

/// Output choice of one event for every joint input over its downset.
struct LocalBehaviour {
  std::size_t event = 0;
  std::vector<int> table;  // indexed by the joint-input index over downset(event)
};

/// One local behaviour per event; the free parametrization of a causal
/// function.
struct CausalFunction {
  std::vector<LocalBehaviour> behaviours;
};

/// Unconstrained joint function as a full lookup table.
struct RawFunction {
  std::vector<std::uint32_t> table;  // joint input index -> joint output index
};

inline constexpr std::uint64_t kDefaultFunctionBudget = std::uint64_t{1} << 24;

/// Enumeration context for the causal functions of one (order, spec) pair.
/// Functions are identified by an index in [0, count()); the stream is
/// deterministic (lexicographic in the concatenated behaviour tables, event 0
/// first, history 0 first) and restartable from any index, so ranges can be
/// consumed in parallel. Immutable after construction.
class CausalFunctionSpace {
 public:
  CausalFunctionSpace(StaticCausalOrder::ConstPtr order, SpaceSpec spec);

  const StaticCausalOrder& order() const { return *order_; }
  StaticCausalOrder::ConstPtr order_ptr() const { return order_; }
  const SpaceSpec& spec() const { return spec_; }

  std::uint64_t input_count() const { return in_count_; }
  std::uint64_t output_count() const { return out_count_; }

  /// |I_{downset(ev)}|: the number of input histories seen by `ev`.
  std::uint64_t history_count(std::size_t ev) const { return history_count_[ev]; }

  /// Count of causal functions, per the product formula. `count()` throws
  /// OutOfRangeError when the count does not fit in 64 bits; log2_count()
  /// always works.
  bool count_fits() const { return count_fits_; }
  std::uint64_t count() const;
  double log2_count() const { return log2_count_; }

  /// Throws BudgetExceededError if count() exceeds `budget`.
  void require_budget(std::uint64_t budget) const;

  CausalFunction function_at(std::uint64_t index) const;
  std::uint64_t index_of(const CausalFunction& f) const;

  /// Joint output index produced by function `index` on each joint input;
  /// `out` must have input_count() slots. The fast path for LP columns.
  void eval_outputs(std::uint64_t index, std::span<std::uint32_t> out) const;

  /// Output assignment on all events, per the downset reconstruction rule.
  JointAssignment evaluate(const CausalFunction& f, const JointAssignment& input) const;

  RawFunction to_raw(const CausalFunction& f) const;

  /// True iff the restriction of `f` to every lowerset is a well-defined
  /// function. Checks the full lowerset family directly.
  bool is_causal(const RawFunction& f) const;

  /// Extracts the behaviour family; throws NotCausalError if is_causal fails.
  CausalFunction from_raw(const RawFunction& f) const;

  /// Point-mass conditional distribution of `f`.
  ConditionalDistribution delta(const CausalFunction& f) const;

  void validate(const CausalFunction& f) const;
  void validate(const RawFunction& f) const;

 private:
  StaticCausalOrder::ConstPtr order_;
  SpaceSpec spec_;
  std::uint64_t in_count_ = 0;
  std::uint64_t out_count_ = 0;

  std::vector<std::uint64_t> history_count_;           // per event
  std::vector<std::uint64_t> behaviour_count_;         // per event, |O|^histories (valid if fits)
  std::vector<std::vector<std::uint32_t>> input_proj_;  // full input idx -> history idx, per event
  std::vector<std::uint64_t> out_stride_;              // mixed-radix strides of the output space

  bool count_fits_ = true;
  std::uint64_t count_ = 0;
  double log2_count_ = 0.0;
};

}  // namespace cfrac
