#include "fractions.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace cfrac {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::uint32_t> build_eval_table(const CausalFunctionSpace& space,
                                            std::uint64_t budget) {
  space.require_budget(budget);
  const std::uint64_t count = space.count();
  const std::uint64_t in_count = space.input_count();
  std::vector<std::uint32_t> eval(static_cast<std::size_t>(count * in_count));
  for (std::uint64_t f = 0; f < count; ++f) {
    space.eval_outputs(f, {eval.data() + f * in_count, static_cast<std::size_t>(in_count)});
  }
  return eval;
}

void check_same_events(const ConditionalDistribution& d, const StaticCausalOrder& order) {
  if (d.order().labels() != order.labels()) {
    throw EventMismatchError("distribution and fraction context use different event lists");
  }
}

}  // namespace

double signalling_lower_bound_raw(double lf, double nslf, double nsf) {
  return 1.0 - lf - nsf + nslf;
}

FractionContext::FractionContext(StaticCausalOrder::ConstPtr order, SpaceSpec spec,
                                 std::uint64_t budget)
    : order_(std::move(order)),
      spec_(std::move(spec)),
      causal_(order_, spec_),
      discrete_(std::make_shared<const StaticCausalOrder>(StaticCausalOrder::discrete(order_->labels())),
                spec_),
      causal_eval_(build_eval_table(causal_, budget)),
      discrete_eval_(build_eval_table(discrete_, budget)) {}

FractionSolve FractionContext::deterministic_mass_lp(const ConditionalDistribution& d,
                                                     const CausalFunctionSpace& space,
                                                     const std::vector<std::uint32_t>& eval,
                                                     const FractionOptions& opts) const {
  check_same_events(d, *order_);
  space.require_budget(opts.budget);
  const auto start = std::chrono::steady_clock::now();

  const std::uint64_t n_funcs = space.count();
  const std::uint64_t in_count = d.input_count();
  const std::uint64_t out_count = d.output_count();

  // A column with mass on a zero cell of d is forced to zero by its own
  // constraint, so it can be dropped up front; rows that end up empty go too.
  // Exact zeros only, so the reduction is lossless.
  std::vector<std::uint64_t> keep;
  keep.reserve(static_cast<std::size_t>(n_funcs));
  for (std::uint64_t f = 0; f < n_funcs; ++f) {
    const std::uint32_t* outs = eval.data() + f * in_count;
    bool alive = true;
    for (std::uint64_t i = 0; i < in_count && alive; ++i) {
      alive = d.prob(i, outs[i]) > 0.0;
    }
    if (alive) keep.push_back(f);
  }

  LinearProgram lp(keep.size());
  for (std::size_t v = 0; v < keep.size(); ++v) lp.set_objective(v, 1.0);

  // Bucket the surviving columns by the cell they hit at each joint input.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> cell_entries(
      static_cast<std::size_t>(in_count * out_count));
  for (std::size_t v = 0; v < keep.size(); ++v) {
    const std::uint32_t* outs = eval.data() + keep[v] * in_count;
    for (std::uint64_t i = 0; i < in_count; ++i) {
      cell_entries[static_cast<std::size_t>(i * out_count + outs[i])].emplace_back(
          static_cast<std::uint32_t>(v), 1.0);
    }
  }
  for (std::uint64_t i = 0; i < in_count; ++i) {
    for (std::uint64_t o = 0; o < out_count; ++o) {
      auto& entries = cell_entries[static_cast<std::size_t>(i * out_count + o)];
      if (entries.empty()) continue;
      lp.add_row(std::move(entries), Relation::less_equal, d.prob(i, o));
    }
  }

  const LpSolution sol = solve_lp(lp, opts.lp);
  if (sol.status != LpStatus::optimal) {
    throw SolverError(std::string("local-fraction LP did not solve: ") + to_string(sol.status));
  }

  FractionSolve out;
  out.raw = sol.objective;
  out.value = std::clamp(sol.objective, 0.0, 1.0);
  out.lp_iterations = sol.iterations;
  if (opts.collect_witness && out.raw > 1e-12) {
    for (std::size_t v = 0; v < keep.size(); ++v) {
      if (sol.x[v] > 1e-12) {
        out.witness.push_back(WitnessEntry{keep[v], sol.x[v] / out.raw});
      }
    }
  }
  out.seconds = elapsed_seconds(start);
  return out;
}

FractionSolve FractionContext::local_fraction(const ConditionalDistribution& d,
                                              const FractionOptions& opts) const {
  return deterministic_mass_lp(d, causal_, causal_eval_, opts);
}

FractionSolve FractionContext::ns_local_fraction(const ConditionalDistribution& d,
                                                 const FractionOptions& opts) const {
  return deterministic_mass_lp(d, discrete_, discrete_eval_, opts);
}

FractionSolve FractionContext::ns_fraction(const ConditionalDistribution& d,
                                           const FractionOptions& opts) const {
  check_same_events(d, *order_);
  const auto start = std::chrono::steady_clock::now();

  const std::uint64_t in_count = d.input_count();
  const std::uint64_t out_count = d.output_count();
  const std::size_t n_cells = static_cast<std::size_t>(in_count * out_count);
  const std::size_t mu = n_cells;  // variable layout: y cells, then mu

  LinearProgram lp(n_cells + 1);
  lp.set_objective(mu, 1.0);

  // (a) every row of y carries the same mass mu.
  for (std::uint64_t i = 0; i < in_count; ++i) {
    std::vector<std::pair<std::uint32_t, double>> entries;
    entries.reserve(static_cast<std::size_t>(out_count) + 1);
    for (std::uint64_t o = 0; o < out_count; ++o) {
      entries.emplace_back(static_cast<std::uint32_t>(i * out_count + o), 1.0);
    }
    entries.emplace_back(static_cast<std::uint32_t>(mu), -1.0);
    lp.add_row(std::move(entries), Relation::equal, 0.0);
  }

  // (b) single-event no-signalling: for each event, the marginal over the
  // other events' outputs does not move when only that event's input varies.
  const std::size_t n_events = order_->event_count();
  const EventSet full = order_->full_set();
  for (std::size_t ev = 0; ev < n_events; ++ev) {
    const EventSet others = full & ~(EventSet{1} << ev);
    const auto in_proj = projection_table(spec_.in_card, full, others);
    const auto out_proj = projection_table(spec_.out_card, full, others);
    const std::uint64_t rest_in = joint_count(spec_.in_card, others);
    const std::uint64_t rest_out = joint_count(spec_.out_card, others);

    // Representative input per i_rest group: the one with i_ev = 0.
    std::vector<std::int64_t> rep(static_cast<std::size_t>(rest_in), -1);
    std::vector<std::vector<std::uint64_t>> alternates(static_cast<std::size_t>(rest_in));
    for (std::uint64_t i = 0; i < in_count; ++i) {
      const std::uint32_t g = in_proj[static_cast<std::size_t>(i)];
      if (rep[g] < 0) rep[g] = static_cast<std::int64_t>(i);
      else alternates[g].push_back(i);
    }
    // Outputs of `ev` grouped by the projected rest-output index.
    std::vector<std::vector<std::uint32_t>> out_group(static_cast<std::size_t>(rest_out));
    for (std::uint64_t o = 0; o < out_count; ++o) {
      out_group[out_proj[static_cast<std::size_t>(o)]].push_back(static_cast<std::uint32_t>(o));
    }

    for (std::uint64_t g = 0; g < rest_in; ++g) {
      for (std::uint64_t alt : alternates[static_cast<std::size_t>(g)]) {
        const auto base = static_cast<std::uint64_t>(rep[static_cast<std::size_t>(g)]);
        for (std::uint64_t orest = 0; orest < rest_out; ++orest) {
          std::vector<std::pair<std::uint32_t, double>> entries;
          for (std::uint32_t o : out_group[static_cast<std::size_t>(orest)]) {
            entries.emplace_back(static_cast<std::uint32_t>(base * out_count + o), 1.0);
            entries.emplace_back(static_cast<std::uint32_t>(alt * out_count + o), -1.0);
          }
          lp.add_row(std::move(entries), Relation::equal, 0.0);
        }
      }
    }
  }

  // (c) dominated by d entrywise.
  for (std::uint64_t i = 0; i < in_count; ++i) {
    for (std::uint64_t o = 0; o < out_count; ++o) {
      lp.add_row({{static_cast<std::uint32_t>(i * out_count + o), 1.0}}, Relation::less_equal,
                 d.prob(i, o));
    }
  }

  const LpSolution sol = solve_lp(lp, opts.lp);
  if (sol.status != LpStatus::optimal) {
    throw SolverError(std::string("no-signalling-fraction LP did not solve: ") +
                      to_string(sol.status));
  }
  FractionSolve out;
  out.raw = sol.objective;
  out.value = std::clamp(sol.objective, 0.0, 1.0);
  out.lp_iterations = sol.iterations;
  out.seconds = elapsed_seconds(start);
  return out;
}

FractionReport FractionContext::full_report(const ConditionalDistribution& d,
                                            const FractionOptions& opts) const {
  FractionReport report;
  FractionSolve lf = local_fraction(d, opts);
  FractionOptions no_witness = opts;
  no_witness.collect_witness = false;
  const FractionSolve nslf = ns_local_fraction(d, no_witness);
  const FractionSolve nsf = ns_fraction(d, no_witness);

  report.local_fraction = lf.value;
  report.ns_local_fraction = nslf.value;
  report.ns_fraction = nsf.value;
  report.lf_raw = lf.raw;
  report.nslf_raw = nslf.raw;
  report.nsf_raw = nsf.raw;
  report.signalling_lb_raw = signalling_lower_bound_raw(lf.value, nslf.value, nsf.value);
  report.signalling_lb = std::clamp(report.signalling_lb_raw, 0.0, 1.0);
  report.witness = std::move(lf.witness);
  report.lf_seconds = lf.seconds;
  report.nslf_seconds = nslf.seconds;
  report.nsf_seconds = nsf.seconds;
  report.lf_iterations = lf.lp_iterations;
  report.nslf_iterations = nslf.lp_iterations;
  report.nsf_iterations = nsf.lp_iterations;
  return report;
}

FractionSolve local_fraction(const ConditionalDistribution& d, StaticCausalOrder::ConstPtr order,
                             const FractionOptions& opts) {
  FractionContext ctx(std::move(order), d.spec(), opts.budget);
  return ctx.local_fraction(d, opts);
}

FractionReport full_report(const ConditionalDistribution& d, StaticCausalOrder::ConstPtr order,
                           const FractionOptions& opts) {
  FractionContext ctx(std::move(order), d.spec(), opts.budget);
  return ctx.full_report(d, opts);
}

}  // namespace cfrac
