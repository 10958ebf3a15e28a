#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fractions.hpp"
#include "quantum.hpp"

namespace cfrac {

enum Quantity : unsigned {
  kQuantityLf = 1u << 0,
  kQuantityNslf = 1u << 1,
  kQuantityNsf = 1u << 2,
  kQuantityBound = 1u << 3,
  kQuantityAll = kQuantityLf | kQuantityNslf | kQuantityNsf | kQuantityBound,
};

/// Reads CAUSALFRAC_THREADS, falling back to the hardware concurrency.
int default_thread_count();

struct SweepConfig {
  int resolution = 100;  // grid points per axis over [0, pi], endpoints included
  OrderVariant variant = OrderVariant::base;
  unsigned quantities = kQuantityAll;  // the bound pulls in all three fractions
  std::string out_dir;                 // empty: keep results in memory only
  bool write_heatmaps = true;
  int threads = 0;  // 0: default_thread_count()
  std::uint64_t budget = kDefaultFunctionBudget;
  LpOptions lp;
};

/// One grid cell; quantities that were not computed (or whose solve failed)
/// are NaN.
struct SweepCell {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double lf = 0.0;
  double nslf = 0.0;
  double nsf = 0.0;
  double bound_raw = 0.0;
  double bound = 0.0;
  bool ok = true;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // row-major: gamma0 outer, gamma1 inner
  int resolution = 0;
  int failed_cells = 0;
  std::vector<std::string> files_written;
};

using SweepProgress = std::function<void(int done, int total)>;

/// Runs the interleaved-Bell grid. Cells are computed by a worker pool over
/// shared read-only context; per-cell results are deterministic regardless
/// of scheduling. Solver failures mark the cell NaN without aborting.
SweepResult run_sweep(const SweepConfig& config, const SweepProgress& progress = {});

void write_sweep_csv(const std::string& path, const SweepResult& result);

/// Renders one quantity as a binary PPM raster with a fixed [0,1] color ramp
/// (NaN cells gray) and writes a sidecar text file describing axes, scale,
/// and ramp.
void write_heatmap(const std::string& path_prefix, const std::string& quantity,
                   const SweepResult& result);

}  // namespace cfrac
