#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cfrac {

/// Subset of events as a bitmask; bit k corresponds to the event with
/// canonical index k (declaration order).
using EventSet = std::uint32_t;

/// Lowerset enumeration walks all 2^n subsets; anything larger is rejected.
inline constexpr std::size_t kMaxEventsForLowersets = 20;

inline int set_size(EventSet s) { return std::popcount(s); }
inline bool contains(EventSet s, std::size_t ev) { return (s >> ev) & 1u; }
inline bool subset_of(EventSet a, EventSet b) { return (a & ~b) == 0; }

struct EventId {
  std::size_t index;
  std::string label;
};

/// Finite set of events with a partial order. `leq(a, b)` reads "a causally
/// precedes or equals b". Immutable after construction.
class StaticCausalOrder {
 public:
  using ConstPtr = std::shared_ptr<const StaticCausalOrder>;

  /// Builds the reflexive-transitive closure of `covers` over `labels`.
  /// Throws DuplicateLabelError, UnknownEventError, or CycleError if the
  /// closure would violate antisymmetry.
  static StaticCausalOrder make(std::vector<std::string> labels,
                                const std::vector<std::pair<std::string, std::string>>& covers);

  static StaticCausalOrder discrete(std::vector<std::string> labels);

  static ConstPtr make_shared(std::vector<std::string> labels,
                              const std::vector<std::pair<std::string, std::string>>& covers) {
    return std::make_shared<const StaticCausalOrder>(make(std::move(labels), covers));
  }

  std::size_t event_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  EventId event(std::size_t index) const;
  /// Throws UnknownEventError.
  std::size_t index_of(std::string_view label) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * labels_.size() + b]; }
  bool is_discrete() const;
  EventSet full_set() const { return full_; }

  /// Causal past of `ev`, including `ev` itself.
  EventSet downset(std::size_t ev) const;

  bool is_lowerset(EventSet candidate) const;

  /// All subsets closed under the past, in ascending bitmask order. Includes
  /// the empty set and the full set. Guarded by kMaxEventsForLowersets.
  std::vector<EventSet> lowersets() const;

  /// Transitive reduction as ordered (below, above) index pairs; the
  /// serialization form of the relation.
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;

  /// Order induced on the events in `members`, labels preserved.
  StaticCausalOrder induced(EventSet members) const;

 private:
  StaticCausalOrder(std::vector<std::string> labels, std::vector<char> leq);

  std::vector<std::string> labels_;
  std::vector<char> leq_;  // dense n*n row-major, closure of the covers
  std::vector<EventSet> downsets_;
  EventSet full_ = 0;
};

/// True iff every leq pair of `coarse` is a leq pair of `fine`. Requires the
/// same event list (EventMismatchError).
bool is_suborder(const StaticCausalOrder& coarse, const StaticCausalOrder& fine);

}  // namespace cfrac
