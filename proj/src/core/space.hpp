#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "order.hpp"

namespace cfrac {

/// Per-event input/output alphabet sizes, aligned with an order's event list.
struct SpaceSpec {
  std::vector<int> in_card;
  std::vector<int> out_card;

  static SpaceSpec binary(std::size_t n_events) {
    return SpaceSpec{std::vector<int>(n_events, 2), std::vector<int>(n_events, 2)};
  }

  std::size_t event_count() const { return in_card.size(); }
  void validate(std::size_t n_events) const;

  std::uint64_t input_count(EventSet scope) const;
  std::uint64_t output_count(EventSet scope) const;
};

/// Symbol choice per event of `scope`; values stored in canonical event order.
struct JointAssignment {
  EventSet scope = 0;
  std::vector<int> values;

  /// Throws ScopeError if `ev` is not in scope.
  int value_at(std::size_t ev) const;
};

/// Product of the cardinalities over `scope`; overflow raises OutOfRangeError.
std::uint64_t joint_count(std::span<const int> cards, EventSet scope);

/// Mixed-radix index of `a` within the joint space over `scope`. The least
/// significant digit is the scope member with the lowest canonical index;
/// this layout is a file-format contract. Throws OutOfRangeError on bad
/// symbol values and ScopeError if the assignment scope differs.
std::uint64_t joint_index(std::span<const int> cards, EventSet scope, const JointAssignment& a);

JointAssignment joint_unindex(std::span<const int> cards, EventSet scope, std::uint64_t index);

/// Restriction of `v` to `subset` (values preserved). Throws ScopeError if
/// `subset` is not contained in the scope of `v`.
JointAssignment restrict_assignment(const JointAssignment& v, EventSet subset);

/// Index-level restriction: table mapping each joint index over `from` to the
/// joint index of its restriction to `to` (`to` ⊆ `from`). The workhorse for
/// marginalization and causality checks.
std::vector<std::uint32_t> projection_table(std::span<const int> cards, EventSet from, EventSet to);

}  // namespace cfrac
