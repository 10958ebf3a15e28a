#include "functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cfrac {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// a*b, saturating to kU64Max on overflow.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kU64Max / a) return kU64Max;
  return a * b;
}

// base^exp, saturating.
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp > 0) {
    if (exp & 1) r = sat_mul(r, base);
    exp >>= 1;
    if (exp) base = sat_mul(base, base);
  }
  return r;
}

std::string approx_count_string(double log2_count) {
  const double log10c = log2_count * 0.30102999566398119521;
  return "~10^" + std::to_string(log10c);
}

}  // namespace

CausalFunctionSpace::CausalFunctionSpace(StaticCausalOrder::ConstPtr order, SpaceSpec spec)
    : order_(std::move(order)), spec_(std::move(spec)) {
  if (!order_) throw InvalidArgumentError("function space needs an order");
  spec_.validate(order_->event_count());
  const std::size_t n = order_->event_count();
  in_count_ = spec_.input_count(order_->full_set());
  out_count_ = spec_.output_count(order_->full_set());

  history_count_.resize(n);
  behaviour_count_.resize(n);
  input_proj_.resize(n);
  out_stride_.resize(n);

  std::uint64_t stride = 1;
  for (std::size_t ev = 0; ev < n; ++ev) {
    out_stride_[ev] = stride;
    stride *= static_cast<std::uint64_t>(spec_.out_card[ev]);

    const EventSet down = order_->downset(ev);
    history_count_[ev] = joint_count(spec_.in_card, down);
    input_proj_[ev] = projection_table(spec_.in_card, order_->full_set(), down);

    const std::uint64_t bc = sat_pow(static_cast<std::uint64_t>(spec_.out_card[ev]),
                                     history_count_[ev]);
    behaviour_count_[ev] = bc;
    log2_count_ += static_cast<double>(history_count_[ev]) *
                   std::log2(static_cast<double>(spec_.out_card[ev]));
    if (bc == kU64Max) count_fits_ = false;
  }
  count_ = 1;
  for (std::size_t ev = 0; ev < n; ++ev) count_ = sat_mul(count_, behaviour_count_[ev]);
  if (count_ == kU64Max) count_fits_ = false;
}

std::uint64_t CausalFunctionSpace::count() const {
  if (!count_fits_) {
    throw OutOfRangeError("causal function count exceeds 64 bits (" +
                          approx_count_string(log2_count_) + ")");
  }
  return count_;
}

void CausalFunctionSpace::require_budget(std::uint64_t budget) const {
  if (!count_fits_ || count_ > budget) {
    throw BudgetExceededError(
        "causal function count " +
            (count_fits_ ? std::to_string(count_) : approx_count_string(log2_count_)) +
            " exceeds the enumeration budget " + std::to_string(budget),
        log2_count_, count_fits_ ? count_ : kU64Max, count_fits_);
  }
}

CausalFunction CausalFunctionSpace::function_at(std::uint64_t index) const {
  if (!count_fits_ || index >= count_) {
    throw OutOfRangeError("function index outside the enumeration");
  }
  const std::size_t n = order_->event_count();
  CausalFunction f;
  f.behaviours.resize(n);

  // Event 0 is the most significant digit block; within an event, history 0
  // is the most significant digit. This makes the stream lexicographic in
  // the concatenated behaviour tables.
  std::uint64_t rem = index;
  for (std::size_t rev = n; rev-- > 0;) {
    const std::uint64_t bc = behaviour_count_[rev];
    std::uint64_t b = rem % bc;
    rem /= bc;
    LocalBehaviour& beh = f.behaviours[rev];
    beh.event = rev;
    beh.table.resize(static_cast<std::size_t>(history_count_[rev]));
    const auto card = static_cast<std::uint64_t>(spec_.out_card[rev]);
    for (std::size_t h = beh.table.size(); h-- > 0;) {
      beh.table[h] = static_cast<int>(b % card);
      b /= card;
    }
  }
  return f;
}

std::uint64_t CausalFunctionSpace::index_of(const CausalFunction& f) const {
  validate(f);
  if (!count_fits_) throw OutOfRangeError("function space too large to index");
  std::uint64_t index = 0;
  for (std::size_t ev = 0; ev < order_->event_count(); ++ev) {
    const auto card = static_cast<std::uint64_t>(spec_.out_card[ev]);
    std::uint64_t b = 0;
    for (int v : f.behaviours[ev].table) b = b * card + static_cast<std::uint64_t>(v);
    index = index * behaviour_count_[ev] + b;
  }
  return index;
}

void CausalFunctionSpace::eval_outputs(std::uint64_t index, std::span<std::uint32_t> out) const {
  const CausalFunction f = function_at(index);
  if (out.size() != in_count_) throw InvalidArgumentError("output span has the wrong length");
  std::fill(out.begin(), out.end(), 0u);
  for (std::size_t ev = 0; ev < order_->event_count(); ++ev) {
    const auto& table = f.behaviours[ev].table;
    const auto& proj = input_proj_[ev];
    const std::uint64_t stride = out_stride_[ev];
    for (std::uint64_t i = 0; i < in_count_; ++i) {
      out[static_cast<std::size_t>(i)] +=
          static_cast<std::uint32_t>(stride * static_cast<std::uint64_t>(table[proj[i]]));
    }
  }
}

JointAssignment CausalFunctionSpace::evaluate(const CausalFunction& f,
                                              const JointAssignment& input) const {
  validate(f);
  if (input.scope != order_->full_set()) {
    throw ScopeError("evaluate needs an input assignment covering all events");
  }
  JointAssignment out;
  out.scope = order_->full_set();
  out.values.reserve(order_->event_count());
  for (std::size_t ev = 0; ev < order_->event_count(); ++ev) {
    const EventSet down = order_->downset(ev);
    const JointAssignment hist = restrict_assignment(input, down);
    const std::uint64_t h = joint_index(spec_.in_card, down, hist);
    out.values.push_back(f.behaviours[ev].table[static_cast<std::size_t>(h)]);
  }
  return out;
}

RawFunction CausalFunctionSpace::to_raw(const CausalFunction& f) const {
  validate(f);
  RawFunction raw;
  raw.table.assign(static_cast<std::size_t>(in_count_), 0u);
  for (std::size_t ev = 0; ev < order_->event_count(); ++ev) {
    const auto& table = f.behaviours[ev].table;
    const auto& proj = input_proj_[ev];
    const std::uint64_t stride = out_stride_[ev];
    for (std::uint64_t i = 0; i < in_count_; ++i) {
      raw.table[static_cast<std::size_t>(i)] +=
          static_cast<std::uint32_t>(stride * static_cast<std::uint64_t>(table[proj[i]]));
    }
  }
  return raw;
}

bool CausalFunctionSpace::is_causal(const RawFunction& f) const {
  validate(f);
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  for (EventSet U : order_->lowersets()) {
    if (U == 0 || U == order_->full_set()) continue;
    const auto in_proj = projection_table(spec_.in_card, order_->full_set(), U);
    const auto out_proj = projection_table(spec_.out_card, order_->full_set(), U);
    std::vector<std::uint32_t> seen(static_cast<std::size_t>(joint_count(spec_.in_card, U)),
                                    kUnseen);
    for (std::uint64_t i = 0; i < in_count_; ++i) {
      const std::uint32_t h = in_proj[static_cast<std::size_t>(i)];
      const std::uint32_t po = out_proj[f.table[static_cast<std::size_t>(i)]];
      if (seen[h] == kUnseen) {
        seen[h] = po;
      } else if (seen[h] != po) {
        return false;
      }
    }
  }
  return true;
}

CausalFunction CausalFunctionSpace::from_raw(const RawFunction& f) const {
  if (!is_causal(f)) {
    throw NotCausalError("raw function violates the no-signalling constraints of the order");
  }
  const std::size_t n = order_->event_count();
  CausalFunction out;
  out.behaviours.resize(n);
  for (std::size_t ev = 0; ev < n; ++ev) {
    out.behaviours[ev].event = ev;
    out.behaviours[ev].table.resize(static_cast<std::size_t>(history_count_[ev]));
  }
  for (std::uint64_t i = 0; i < in_count_; ++i) {
    const std::uint64_t o = f.table[static_cast<std::size_t>(i)];
    for (std::size_t ev = 0; ev < n; ++ev) {
      const auto digit = static_cast<int>((o / out_stride_[ev]) %
                                          static_cast<std::uint64_t>(spec_.out_card[ev]));
      out.behaviours[ev].table[input_proj_[ev][i]] = digit;
    }
  }
  return out;
}

ConditionalDistribution CausalFunctionSpace::delta(const CausalFunction& f) const {
  const RawFunction raw = to_raw(f);
  std::vector<double> table(static_cast<std::size_t>(in_count_ * out_count_), 0.0);
  for (std::uint64_t i = 0; i < in_count_; ++i) {
    table[static_cast<std::size_t>(i * out_count_ + raw.table[static_cast<std::size_t>(i)])] = 1.0;
  }
  return ConditionalDistribution(order_, spec_, std::move(table), kGeneratedTol);
}

void CausalFunctionSpace::validate(const CausalFunction& f) const {
  const std::size_t n = order_->event_count();
  if (f.behaviours.size() != n) throw EventMismatchError("behaviour family size differs from event count");
  for (std::size_t ev = 0; ev < n; ++ev) {
    const auto& beh = f.behaviours[ev];
    if (beh.event != ev) throw EventMismatchError("behaviour family out of canonical order");
    if (beh.table.size() != history_count_[ev]) {
      throw ValidationError("behaviour table at event " + std::to_string(ev) +
                            " has the wrong length");
    }
    for (int v : beh.table) {
      if (v < 0 || v >= spec_.out_card[ev]) {
        throw OutOfRangeError("behaviour output outside the event alphabet");
      }
    }
  }
}

void CausalFunctionSpace::validate(const RawFunction& f) const {
  if (f.table.size() != in_count_) throw ValidationError("raw table must cover every joint input");
  for (std::uint32_t o : f.table) {
    if (o >= out_count_) throw OutOfRangeError("raw output index outside the joint output space");
  }
}

}  // namespace cfrac
