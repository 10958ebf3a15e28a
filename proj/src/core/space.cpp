#include "space.hpp"

#include <limits>
#include <string>

namespace cfrac {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw OutOfRangeError("joint space size overflows 64 bits");
  }
  return a * b;
}

}  // namespace

void SpaceSpec::validate(std::size_t n_events) const {
  if (in_card.size() != n_events || out_card.size() != n_events) {
    throw EventMismatchError("space spec length differs from the event count");
  }
  for (std::size_t i = 0; i < n_events; ++i) {
    if (in_card[i] < 1 || out_card[i] < 1) {
      throw InvalidArgumentError("cardinalities must be positive");
    }
  }
}

std::uint64_t SpaceSpec::input_count(EventSet scope) const { return joint_count(in_card, scope); }
std::uint64_t SpaceSpec::output_count(EventSet scope) const { return joint_count(out_card, scope); }

int JointAssignment::value_at(std::size_t ev) const {
  if (!contains(scope, ev)) throw ScopeError("event not in assignment scope");
  const EventSet below = scope & ((EventSet{1} << ev) - 1);
  return values[static_cast<std::size_t>(set_size(below))];
}

std::uint64_t joint_count(std::span<const int> cards, EventSet scope) {
  std::uint64_t n = 1;
  for (std::size_t ev = 0; ev < cards.size(); ++ev) {
    if (contains(scope, ev)) n = checked_mul(n, static_cast<std::uint64_t>(cards[ev]));
  }
  return n;
}

std::uint64_t joint_index(std::span<const int> cards, EventSet scope, const JointAssignment& a) {
  if (a.scope != scope) throw ScopeError("assignment scope does not match the requested scope");
  if (a.values.size() != static_cast<std::size_t>(set_size(scope))) {
    throw ScopeError("assignment has the wrong number of values");
  }
  std::uint64_t index = 0;
  std::uint64_t stride = 1;
  std::size_t pos = 0;
  for (std::size_t ev = 0; ev < cards.size(); ++ev) {
    if (!contains(scope, ev)) continue;
    const int v = a.values[pos++];
    if (v < 0 || v >= cards[ev]) {
      throw OutOfRangeError("symbol value " + std::to_string(v) + " outside [0," +
                            std::to_string(cards[ev]) + ") at event " + std::to_string(ev));
    }
    index += stride * static_cast<std::uint64_t>(v);
    stride = checked_mul(stride, static_cast<std::uint64_t>(cards[ev]));
  }
  return index;
}

JointAssignment joint_unindex(std::span<const int> cards, EventSet scope, std::uint64_t index) {
  JointAssignment out;
  out.scope = scope;
  out.values.reserve(static_cast<std::size_t>(set_size(scope)));
  std::uint64_t rem = index;
  for (std::size_t ev = 0; ev < cards.size(); ++ev) {
    if (!contains(scope, ev)) continue;
    const auto card = static_cast<std::uint64_t>(cards[ev]);
    out.values.push_back(static_cast<int>(rem % card));
    rem /= card;
  }
  if (rem != 0) throw OutOfRangeError("joint index outside the joint space");
  return out;
}

JointAssignment restrict_assignment(const JointAssignment& v, EventSet subset) {
  if (!subset_of(subset, v.scope)) {
    throw ScopeError("restriction target is not a subset of the assignment scope");
  }
  JointAssignment out;
  out.scope = subset;
  out.values.reserve(static_cast<std::size_t>(set_size(subset)));
  std::size_t pos = 0;
  for (std::size_t ev = 0; ev < 32; ++ev) {
    if (!contains(v.scope, ev)) continue;
    if (contains(subset, ev)) out.values.push_back(v.values[pos]);
    ++pos;
  }
  return out;
}

std::vector<std::uint32_t> projection_table(std::span<const int> cards, EventSet from, EventSet to) {
  if (!subset_of(to, from)) throw ScopeError("projection target is not a subset of the source scope");
  const std::uint64_t n = joint_count(cards, from);
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw OutOfRangeError("projection table source space too large");
  }
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n));
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    std::uint64_t rem = idx;
    std::uint64_t proj = 0;
    std::uint64_t stride = 1;
    for (std::size_t ev = 0; ev < cards.size(); ++ev) {
      if (!contains(from, ev)) continue;
      const auto card = static_cast<std::uint64_t>(cards[ev]);
      const std::uint64_t digit = rem % card;
      rem /= card;
      if (contains(to, ev)) {
        proj += stride * digit;
        stride *= card;
      }
    }
    table[static_cast<std::size_t>(idx)] = static_cast<std::uint32_t>(proj);
  }
  return table;
}

}  // namespace cfrac
