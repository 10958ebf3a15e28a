#include "order.hpp"

#include <algorithm>
#include <unordered_map>

namespace cfrac {

StaticCausalOrder::StaticCausalOrder(std::vector<std::string> labels, std::vector<char> leq)
    : labels_(std::move(labels)), leq_(std::move(leq)) {
  const std::size_t n = labels_.size();
  full_ = (n >= 32) ? ~EventSet{0} : ((EventSet{1} << n) - 1);
  downsets_.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    EventSet down = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (leq_[a * n + b]) down |= EventSet{1} << a;
    }
    downsets_[b] = down;
  }
}

StaticCausalOrder StaticCausalOrder::make(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::string, std::string>>& covers) {
  if (labels.empty()) throw InvalidArgumentError("order needs at least one event");
  if (labels.size() > 32) throw InvalidArgumentError("at most 32 events supported");

  std::unordered_map<std::string_view, std::size_t> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!by_label.emplace(labels[i], i).second) {
      throw DuplicateLabelError("duplicate event label '" + labels[i] + "'");
    }
  }

  const std::size_t n = labels.size();
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (const auto& [lo, hi] : covers) {
    auto it_lo = by_label.find(lo);
    auto it_hi = by_label.find(hi);
    if (it_lo == by_label.end()) throw UnknownEventError("unknown event label '" + lo + "'");
    if (it_hi == by_label.end()) throw UnknownEventError("unknown event label '" + hi + "'");
    leq[it_lo->second * n + it_hi->second] = 1;
  }

  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!leq[a * n + k]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (leq[k * n + b]) leq[a * n + b] = 1;
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (leq[a * n + b] && leq[b * n + a]) {
        throw CycleError("covers imply a cycle between '" + labels[a] + "' and '" + labels[b] + "'");
      }
    }
  }

  return StaticCausalOrder(std::move(labels), std::move(leq));
}

StaticCausalOrder StaticCausalOrder::discrete(std::vector<std::string> labels) {
  return make(std::move(labels), {});
}

EventId StaticCausalOrder::event(std::size_t index) const {
  if (index >= labels_.size()) throw UnknownEventError("event index out of range");
  return EventId{index, labels_[index]};
}

std::size_t StaticCausalOrder::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw UnknownEventError("unknown event label '" + std::string(label) + "'");
}

bool StaticCausalOrder::is_discrete() const {
  const std::size_t n = labels_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq_[a * n + b]) return false;
    }
  }
  return true;
}

EventSet StaticCausalOrder::downset(std::size_t ev) const {
  if (ev >= labels_.size()) throw UnknownEventError("event index out of range");
  return downsets_[ev];
}

bool StaticCausalOrder::is_lowerset(EventSet candidate) const {
  if (!subset_of(candidate, full_)) return false;
  for (std::size_t ev = 0; ev < labels_.size(); ++ev) {
    if (contains(candidate, ev) && !subset_of(downsets_[ev], candidate)) return false;
  }
  return true;
}

std::vector<EventSet> StaticCausalOrder::lowersets() const {
  const std::size_t n = labels_.size();
  if (n > kMaxEventsForLowersets) {
    throw OutOfRangeError("lowerset enumeration limited to " +
                          std::to_string(kMaxEventsForLowersets) + " events");
  }
  std::vector<EventSet> out;
  for (EventSet s = 0;; ++s) {
    if (is_lowerset(s)) out.push_back(s);
    if (s == full_) break;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> StaticCausalOrder::cover_pairs() const {
  const std::size_t n = labels_.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq_[a * n + b]) continue;
      bool direct = true;
      for (std::size_t c = 0; c < n && direct; ++c) {
        if (c != a && c != b && leq_[a * n + c] && leq_[c * n + b]) direct = false;
      }
      if (direct) out.emplace_back(a, b);
    }
  }
  return out;
}

StaticCausalOrder StaticCausalOrder::induced(EventSet members) const {
  if (!subset_of(members, full_)) throw ScopeError("induced: members outside the event set");
  const std::size_t n = labels_.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (contains(members, i)) keep.push_back(i);
  }
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (std::size_t i : keep) labels.push_back(labels_[i]);
  std::vector<char> leq(keep.size() * keep.size(), 0);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) {
      leq[a * keep.size() + b] = leq_[keep[a] * n + keep[b]];
    }
  }
  return StaticCausalOrder(std::move(labels), std::move(leq));
}

bool is_suborder(const StaticCausalOrder& coarse, const StaticCausalOrder& fine) {
  if (coarse.labels() != fine.labels()) {
    throw EventMismatchError("is_suborder requires identical event lists");
  }
  const std::size_t n = coarse.event_count();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (coarse.leq(a, b) && !fine.leq(a, b)) return false;
    }
  }
  return true;
}

}  // namespace cfrac
