#include "distribution.hpp"

#include <cmath>
#include <string>

namespace cfrac {

ConditionalDistribution::ConditionalDistribution(StaticCausalOrder::ConstPtr order, SpaceSpec spec,
                                                 std::vector<double> table, double tol,
                                                 bool renormalize)
    : order_(std::move(order)), spec_(std::move(spec)), table_(std::move(table)), tol_(tol) {
  if (!order_) throw InvalidArgumentError("distribution needs an order");
  if (tol_ < 0) throw InvalidArgumentError("tolerance must be nonnegative");
  spec_.validate(order_->event_count());
  in_count_ = spec_.input_count(order_->full_set());
  out_count_ = spec_.output_count(order_->full_set());
  if (table_.size() != in_count_ * out_count_) {
    throw ValidationError("table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(in_count_ * out_count_));
  }
  for (std::uint64_t i = 0; i < in_count_; ++i) {
    double sum = 0.0;
    for (std::uint64_t o = 0; o < out_count_; ++o) {
      double& p = table_[static_cast<std::size_t>(i * out_count_ + o)];
      if (!std::isfinite(p)) {
        throw ValidationError("non-finite entry in row " + std::to_string(i));
      }
      if (p < -tol_) {
        throw ValidationError("negative probability " + std::to_string(p) + " in row " +
                              std::to_string(i));
      }
      if (p < 0) p = 0.0;
      sum += p;
    }
    if (renormalize) {
      if (sum <= tol_) {
        throw ValidationError("row " + std::to_string(i) + " has no mass to renormalize");
      }
      for (std::uint64_t o = 0; o < out_count_; ++o) {
        table_[static_cast<std::size_t>(i * out_count_ + o)] /= sum;
      }
    } else if (std::abs(sum - 1.0) > tol_) {
      throw ValidationError("row " + std::to_string(i) + " sums to " + std::to_string(sum) +
                            ", outside tolerance " + std::to_string(tol_));
    }
  }
}

ConditionalDistribution ConditionalDistribution::with_order(StaticCausalOrder::ConstPtr order) const {
  if (!order || order->labels() != order_->labels()) {
    throw EventMismatchError("with_order requires the same event list");
  }
  ConditionalDistribution copy = *this;
  copy.order_ = std::move(order);
  return copy;
}

std::vector<double> marginalize_row(std::span<const double> row, std::span<const int> out_cards,
                                    EventSet from, EventSet to) {
  const auto proj = projection_table(out_cards, from, to);
  if (row.size() != proj.size()) throw ScopeError("row length does not match the scope");
  std::vector<double> out(static_cast<std::size_t>(joint_count(out_cards, to)), 0.0);
  for (std::size_t o = 0; o < row.size(); ++o) out[proj[o]] += row[o];
  return out;
}

namespace {

/// Shared scan for restriction and causality checking. Groups inputs by their
/// projection to U, marginalizes each row to U's outputs, and compares each
/// row against its group's first representative. Inputs are scanned in
/// ascending index order, so a reported pair is the lexicographically first.
struct GroupScan {
  std::vector<double> restricted_table;  // |I_U| x |O_U|, rows from representatives
  std::optional<MarginalViolation> violation;
  double worst = 0.0;
};

GroupScan scan_lowerset(const ConditionalDistribution& d, EventSet U, double tol) {
  const EventSet full = d.order().full_set();
  const auto in_proj = projection_table(d.spec().in_card, full, U);
  const auto out_proj = projection_table(d.spec().out_card, full, U);
  const std::uint64_t in_u = joint_count(d.spec().in_card, U);
  const std::uint64_t out_u = joint_count(d.spec().out_card, U);

  GroupScan scan;
  scan.restricted_table.assign(static_cast<std::size_t>(in_u * out_u), 0.0);
  std::vector<std::int64_t> representative(static_cast<std::size_t>(in_u), -1);
  std::vector<double> marg(static_cast<std::size_t>(out_u));

  for (std::uint64_t i = 0; i < d.input_count(); ++i) {
    std::fill(marg.begin(), marg.end(), 0.0);
    const auto row = d.row(i);
    for (std::size_t o = 0; o < row.size(); ++o) marg[out_proj[o]] += row[o];

    const std::uint32_t g = in_proj[static_cast<std::size_t>(i)];
    double* ref = scan.restricted_table.data() + static_cast<std::uint64_t>(g) * out_u;
    if (representative[g] < 0) {
      representative[g] = static_cast<std::int64_t>(i);
      std::copy(marg.begin(), marg.end(), ref);
      continue;
    }
    double dev = 0.0;
    for (std::uint64_t o = 0; o < out_u; ++o) {
      dev = std::max(dev, std::abs(marg[static_cast<std::size_t>(o)] - ref[o]));
    }
    scan.worst = std::max(scan.worst, dev);
    if (dev > tol && !scan.violation) {
      scan.violation = MarginalViolation{U, static_cast<std::uint64_t>(representative[g]), i, dev};
    }
  }
  return scan;
}

}  // namespace

Restriction restrict_distribution(const ConditionalDistribution& d, EventSet U,
                                  std::optional<double> tol_opt) {
  if (!d.order().is_lowerset(U)) {
    throw NotLowersetError("restriction target is not a lowerset of the order");
  }
  const double tol = tol_opt.value_or(d.tol());
  GroupScan scan = scan_lowerset(d, U, tol);
  Restriction result;
  result.worst_deviation = scan.worst;
  if (scan.violation) {
    result.violation = scan.violation;
    return result;
  }
  SpaceSpec sub_spec;
  for (std::size_t ev = 0; ev < d.order().event_count(); ++ev) {
    if (contains(U, ev)) {
      sub_spec.in_card.push_back(d.spec().in_card[ev]);
      sub_spec.out_card.push_back(d.spec().out_card[ev]);
    }
  }
  result.dist.emplace(std::make_shared<const StaticCausalOrder>(d.order().induced(U)),
                      std::move(sub_spec), std::move(scan.restricted_table),
                      std::max(tol, 1e-12));
  return result;
}

CausalityReport is_causal_distribution(const ConditionalDistribution& d,
                                       const StaticCausalOrder& order,
                                       std::optional<double> tol_opt) {
  if (order.labels() != d.order().labels()) {
    throw EventMismatchError("causality check against an order with a different event list");
  }
  const double tol = tol_opt.value_or(d.tol());
  CausalityReport report;
  for (EventSet U : order.lowersets()) {
    if (U == 0 || U == order.full_set()) continue;  // trivially well defined
    GroupScan scan = scan_lowerset(d, U, tol);
    report.worst_deviation = std::max(report.worst_deviation, scan.worst);
    if (scan.violation && report.causal) {
      report.causal = false;
      report.violation = scan.violation;
    }
  }
  return report;
}

}  // namespace cfrac
