#pragma once

#include <cstdint>
#include <vector>

#include "distribution.hpp"
#include "functions.hpp"
#include "order.hpp"
#include "simplex.hpp"

namespace cfrac {

struct WitnessEntry {
  std::uint64_t function_index = 0;  // index into the enumeration of the order used
  double weight = 0.0;               // lambda_f = x_f / mu
};

struct FractionOptions {
  std::uint64_t budget = kDefaultFunctionBudget;
  bool collect_witness = true;
  LpOptions lp;
};

struct FractionSolve {
  double value = 0.0;  // clamped to [0,1]
  double raw = 0.0;    // solver objective before clamping
  std::vector<WitnessEntry> witness;
  std::int64_t lp_iterations = 0;
  double seconds = 0.0;
};

/// The four quantities of one distribution against one order, with the
/// local-fraction witness and raw solver diagnostics.
struct FractionReport {
  double local_fraction = 0.0;
  double ns_local_fraction = 0.0;
  double ns_fraction = 0.0;
  double signalling_lb_raw = 0.0;  // 1 - LF - NSF + NSLF
  double signalling_lb = 0.0;      // clipped to [0,1]
  double lf_raw = 0.0, nslf_raw = 0.0, nsf_raw = 0.0;
  std::vector<WitnessEntry> witness;  // of the local-fraction program
  double lf_seconds = 0.0, nslf_seconds = 0.0, nsf_seconds = 0.0;
  std::int64_t lf_iterations = 0, nslf_iterations = 0, nsf_iterations = 0;
};

/// Shared per-(order, spec) data for fraction programs: the causal function
/// enumerations for the order and for the discrete order on the same events,
/// with their evaluation tables. Build once, share read-only across solves.
class FractionContext {
 public:
  FractionContext(StaticCausalOrder::ConstPtr order, SpaceSpec spec,
                  std::uint64_t budget = kDefaultFunctionBudget);

  const StaticCausalOrder& order() const { return *order_; }
  const CausalFunctionSpace& causal_space() const { return causal_; }
  const CausalFunctionSpace& discrete_space() const { return discrete_; }

  /// max sum(x_f) s.t. x >= 0 and sum_f x_f delta^f <= d, one constraint per
  /// (joint input, joint output) cell; witness weights are x_f / mu.
  FractionSolve local_fraction(const ConditionalDistribution& d,
                               const FractionOptions& opts = {}) const;

  /// local_fraction against the discrete order on the same events.
  FractionSolve ns_local_fraction(const ConditionalDistribution& d,
                                  const FractionOptions& opts = {}) const;

  /// Largest mass of d explainable by any no-signalling sub-distribution:
  /// max mu over y >= 0 with equal row sums mu, single-event no-signalling
  /// marginal equalities, and y <= d entrywise.
  FractionSolve ns_fraction(const ConditionalDistribution& d,
                            const FractionOptions& opts = {}) const;

  FractionReport full_report(const ConditionalDistribution& d,
                             const FractionOptions& opts = {}) const;

 private:
  FractionSolve deterministic_mass_lp(const ConditionalDistribution& d,
                                      const CausalFunctionSpace& space,
                                      const std::vector<std::uint32_t>& eval,
                                      const FractionOptions& opts) const;

  StaticCausalOrder::ConstPtr order_;
  SpaceSpec spec_;
  CausalFunctionSpace causal_;
  CausalFunctionSpace discrete_;
  std::vector<std::uint32_t> causal_eval_;    // function-major: outputs per joint input
  std::vector<std::uint32_t> discrete_eval_;
};

/// 1 - lf - nsf + nslf; the no-signalling local mass was subtracted twice.
double signalling_lower_bound_raw(double lf, double nslf, double nsf);

/// One-shot helpers building a context internally.
FractionSolve local_fraction(const ConditionalDistribution& d, StaticCausalOrder::ConstPtr order,
                             const FractionOptions& opts = {});
FractionReport full_report(const ConditionalDistribution& d, StaticCausalOrder::ConstPtr order,
                           const FractionOptions& opts = {});

}  // namespace cfrac
