#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

namespace cfrac {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Dark-blue-to-yellow ramp (viridis-like anchors), linear between stops.
struct Rgb {
  unsigned char r, g, b;
};
constexpr Rgb kRampAnchors[] = {
    {68, 1, 84},   {71, 44, 122},  {59, 81, 139},  {44, 113, 142}, {33, 144, 141},
    {39, 173, 129}, {92, 200, 99},  {170, 220, 50}, {253, 231, 37},
};
constexpr int kRampSize = static_cast<int>(sizeof(kRampAnchors) / sizeof(kRampAnchors[0]));
constexpr Rgb kNaNColor = {128, 128, 128};

Rgb ramp_color(double v) {
  if (std::isnan(v)) return kNaNColor;
  const double t = std::clamp(v, 0.0, 1.0) * (kRampSize - 1);
  const int lo = std::min(static_cast<int>(t), kRampSize - 2);
  const double f = t - lo;
  const Rgb a = kRampAnchors[lo];
  const Rgb b = kRampAnchors[lo + 1];
  auto mix = [f](unsigned char x, unsigned char y) {
    return static_cast<unsigned char>(std::lround(x + f * (y - x)));
  };
  return Rgb{mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

double cell_value(const SweepCell& cell, const std::string& quantity) {
  if (quantity == "lf") return cell.lf;
  if (quantity == "nslf") return cell.nslf;
  if (quantity == "nsf") return cell.nsf;
  if (quantity == "bound") return cell.bound;
  if (quantity == "bound_raw") return cell.bound_raw;
  throw InvalidArgumentError("unknown sweep quantity '" + quantity + "'");
}

}  // namespace

int default_thread_count() {
  if (const char* env = std::getenv("CAUSALFRAC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult run_sweep(const SweepConfig& config, const SweepProgress& progress) {
  if (config.resolution < 2) throw InvalidArgumentError("sweep resolution must be at least 2");
  unsigned quantities = config.quantities;
  if (quantities & kQuantityBound) quantities |= kQuantityLf | kQuantityNslf | kQuantityNsf;
  const bool want_lf = quantities & kQuantityLf;
  const bool want_nslf = quantities & kQuantityNslf;
  const bool want_nsf = quantities & kQuantityNsf;
  const bool want_bound = quantities & kQuantityBound;

  const int res = config.resolution;
  const int total = res * res;

  const auto order = interleaved_order(config.variant);
  FractionContext ctx(order, SpaceSpec::binary(4), config.budget);

  FractionOptions fopts;
  fopts.budget = config.budget;
  fopts.collect_witness = false;
  fopts.lp = config.lp;

  SweepResult result;
  result.resolution = res;
  result.cells.assign(static_cast<std::size_t>(total), SweepCell{});

  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::atomic<int> failed{0};

  auto worker = [&]() {
    for (;;) {
      const int cell_idx = next.fetch_add(1);
      if (cell_idx >= total) return;
      const int i0 = cell_idx / res;
      const int i1 = cell_idx % res;
      SweepCell cell;
      cell.gamma0 = kPi * i0 / (res - 1);
      cell.gamma1 = kPi * i1 / (res - 1);
      cell.lf = cell.nslf = cell.nsf = cell.bound_raw = cell.bound = kNaN;
      try {
        ScenarioParams params{Angle{cell.gamma0}, Angle{cell.gamma1}, config.variant};
        const ConditionalDistribution d = interleaved_distribution(params);
        if (want_lf) cell.lf = ctx.local_fraction(d, fopts).value;
        if (want_nslf) cell.nslf = ctx.ns_local_fraction(d, fopts).value;
        if (want_nsf) cell.nsf = ctx.ns_fraction(d, fopts).value;
        if (want_bound) {
          cell.bound_raw = signalling_lower_bound_raw(cell.lf, cell.nslf, cell.nsf);
          cell.bound = std::clamp(cell.bound_raw, 0.0, 1.0);
        }
      } catch (const std::exception&) {
        cell.ok = false;
        cell.lf = cell.nslf = cell.nsf = cell.bound_raw = cell.bound = kNaN;
        failed.fetch_add(1);
      }
      result.cells[static_cast<std::size_t>(cell_idx)] = cell;
      const int completed = done.fetch_add(1) + 1;
      if (progress) progress(completed, total);
    }
  };

  const int n_threads = std::max(1, config.threads > 0 ? config.threads : default_thread_count());
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  result.failed_cells = failed.load();

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    const std::string csv_path = config.out_dir + "/sweep.csv";
    write_sweep_csv(csv_path, result);
    result.files_written.push_back(csv_path);
    if (config.write_heatmaps) {
      std::vector<std::string> names;
      if (want_lf) names.push_back("lf");
      if (want_nslf) names.push_back("nslf");
      if (want_nsf) names.push_back("nsf");
      if (want_bound) names.push_back("bound");
      for (const auto& name : names) {
        write_heatmap(config.out_dir + "/" + name, name, result);
        result.files_written.push_back(config.out_dir + "/" + name + ".ppm");
        result.files_written.push_back(config.out_dir + "/" + name + ".txt");
      }
    }
  }
  return result;
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "gamma0,gamma1,lf,nslf,nsf,bound_raw,bound\n";
  for (const auto& cell : result.cells) {
    out << csv_number(cell.gamma0) << ',' << csv_number(cell.gamma1) << ','
        << csv_number(cell.lf) << ',' << csv_number(cell.nslf) << ',' << csv_number(cell.nsf)
        << ',' << csv_number(cell.bound_raw) << ',' << csv_number(cell.bound) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_heatmap(const std::string& path_prefix, const std::string& quantity,
                   const SweepResult& result) {
  const int res = result.resolution;
  const std::string ppm_path = path_prefix + ".ppm";
  std::ofstream out(ppm_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + ppm_path + "' for writing");
  out << "P6\n" << res << " " << res << "\n255\n";
  // Row 0 is the top of the image: gamma1 = pi. Columns run gamma0 = 0..pi.
  for (int row = 0; row < res; ++row) {
    const int i1 = res - 1 - row;
    for (int i0 = 0; i0 < res; ++i0) {
      const SweepCell& cell = result.cells[static_cast<std::size_t>(i0 * res + i1)];
      const Rgb c = ramp_color(cell_value(cell, quantity));
      out.put(static_cast<char>(c.r));
      out.put(static_cast<char>(c.g));
      out.put(static_cast<char>(c.b));
    }
  }
  if (!out) throw IoError("failed writing '" + ppm_path + "'");

  std::ofstream meta(path_prefix + ".txt");
  if (!meta) throw IoError("cannot open '" + path_prefix + ".txt' for writing");
  meta << "quantity: " << quantity << "\n"
       << "format: binary PPM (P6), " << res << "x" << res << "\n"
       << "x axis: gamma0 in [0, pi], left to right, " << res << " samples inclusive\n"
       << "y axis: gamma1 in [0, pi], bottom to top, " << res << " samples inclusive\n"
       << "scale: value 0 -> first ramp stop, value 1 -> last ramp stop (fixed, not data range)\n"
       << "ramp stops (RGB):";
  for (const Rgb& c : kRampAnchors) {
    meta << " (" << int(c.r) << "," << int(c.g) << "," << int(c.b) << ")";
  }
  meta << "\nnan cells: RGB (" << int(kNaNColor.r) << "," << int(kNaNColor.g) << ","
       << int(kNaNColor.b) << ")\n";
}

}  // namespace cfrac
