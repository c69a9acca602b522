// Command-line front end: field generation, covariance estimation, the 1D
// convergence study, and a wall-clock benchmark of the three algorithms.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "grf/field_io.hpp"
#include "grf/spectral.hpp"
#include "grf/stats.hpp"
#include "grf/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCriteria = 2;

struct GridArgs {
  std::vector<std::int64_t> points;
  std::vector<double> lengths;

  grf::GridSpec make(std::vector<double> origin = {}) const {
    std::vector<double> l = lengths;
    if (l.empty()) l.assign(points.size(), 1.0);
    return grf::GridSpec(l, points, std::move(origin));
  }
};

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

grf::Algorithm algorithm_from_flag(const std::string& name) {
  const auto algorithm = grf::parse_algorithm(name);
  if (!algorithm)
    throw CLI::ValidationError("--algorithm", "must be two-fft, one-fft or recursive");
  return *algorithm;
}

double time_synthesis(const grf::GridSpec& grid, const grf::SpectralDensity& density,
                      std::uint64_t seed, grf::Algorithm algorithm) {
  const auto t0 = std::chrono::steady_clock::now();
  const grf::RealField field = grf::synthesize(grid, density, seed, algorithm);
  const auto t1 = std::chrono::steady_clock::now();
  (void)field;
  return std::chrono::duration<double>(t1 - t0).count();
}

int run_generate(const GridArgs& grid_args, const std::string& density_spec,
                 const std::string& algorithm_flag, std::uint64_t seed, const std::string& out,
                 const std::string& format) {
  const grf::GridSpec grid = grid_args.make();
  const auto density = grf::parse_density(density_spec, grid.dim());
  const grf::Algorithm algorithm = algorithm_from_flag(algorithm_flag);
  if (format == "pgm" && grid.dim() != 2)
    throw std::invalid_argument("pgm output requires a 2-dimensional grid");

  const auto t0 = std::chrono::steady_clock::now();
  const grf::RealField field = grf::synthesize(grid, *density, seed, algorithm);
  const auto t1 = std::chrono::steady_clock::now();

  if (format == "grf1") {
    grf::write_grf1(out, field);
  } else if (format == "csv") {
    std::ofstream os(out, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + out + "' for writing");
    grf::write_field_csv(os, field);
  } else if (format == "pgm") {
    grf::write_field_pgm(out, field);
  } else {
    throw std::invalid_argument("unknown format '" + format + "'");
  }
  std::cerr << "generated " << grid.point_count() << " points with " << algorithm_flag << " in "
            << std::chrono::duration<double>(t1 - t0).count() << " s\n";
  return kExitOk;
}

int run_cov(const GridArgs& grid_args, const std::string& density_spec,
            const std::string& algorithm_flag, std::uint64_t seed, std::uint64_t samples,
            std::vector<std::int64_t> ref_index, const std::string& oracle_kind,
            const std::string& out) {
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  const grf::GridSpec grid = grid_args.make();
  const auto density = grf::parse_density(density_spec, grid.dim());
  const grf::Algorithm algorithm = algorithm_from_flag(algorithm_flag);

  if (ref_index.empty()) ref_index.assign(grid.counts().size(), 0);
  if (!grid.valid_index(ref_index)) throw std::invalid_argument("--ref-index out of range");

  const bool closed_form = oracle_kind == "closed-form";
  const bool discrete = oracle_kind == "discrete";
  if (!closed_form && !discrete && oracle_kind != "none")
    throw std::invalid_argument("--oracle must be closed-form, discrete or none");
  if (closed_form && density->spec_string() != "test1d")
    throw std::invalid_argument("closed-form oracle is only available for the test1d density");

  const grf::CovarianceEstimate estimate =
      grf::estimate_covariance(grid, *density, algorithm, samples, ref_index, seed);
  std::vector<double> discrete_oracle;
  if (discrete) discrete_oracle = grf::exact_discrete_covariance_all(grid, *density);

  std::ostringstream csv;
  for (int i = 0; i < grid.dim(); ++i) csv << "lag" << (i + 1) << ",";
  csv << "estimate,oracle,abs_diff\n";
  for (std::int64_t i = 0; i < grid.point_count(); ++i) {
    const grf::MultiIndex k = grid.index_at(i);
    grf::MultiIndex lag(k.size());
    double lag_norm2 = 0.0;
    for (std::size_t a = 0; a < k.size(); ++a) {
      const std::int64_t n = grid.counts()[a];
      lag[a] = (k[a] - ref_index[a] + n) % n;
      const std::int64_t s = (lag[a] <= n / 2) ? lag[a] : lag[a] - n;  // signed torus lag
      const double r = static_cast<double>(s) * grid.spacing(static_cast<int>(a));
      csv << format_value(r) << ",";
      lag_norm2 += r * r;
    }
    const double est = estimate.estimates[static_cast<std::size_t>(i)];
    csv << format_value(est);
    if (closed_form) {
      const double o = grf::closed_form_c1d(std::sqrt(lag_norm2));
      csv << "," << format_value(o) << "," << format_value(std::abs(est - o));
    } else if (discrete) {
      const double o = discrete_oracle[static_cast<std::size_t>(grid.linear_index(lag))];
      csv << "," << format_value(o) << "," << format_value(std::abs(est - o));
    } else {
      csv << ",,";
    }
    csv << "\n";
  }

  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream os(out, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + out + "' for writing");
    os << csv.str();
  }
  return kExitOk;
}

int run_converge(const std::string& levels, std::uint64_t samples,
                 const std::string& algorithm_flag, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  int lo = 0, hi = 0;
  const auto dots = levels.find("..");
  if (dots == std::string::npos) {
    lo = hi = std::stoi(levels);
  } else {
    lo = std::stoi(levels.substr(0, dots));
    hi = std::stoi(levels.substr(dots + 2));
  }
  const grf::Algorithm algorithm = algorithm_from_flag(algorithm_flag);
  const grf::ConvergenceReport report =
      grf::convergence_study(lo, hi, samples, algorithm, seed);

  std::cout << "level,cells,max_error,mc_floor\n";
  for (const auto& row : report.rows)
    std::cout << row.level << "," << row.cells << "," << format_value(row.max_err) << ","
              << format_value(row.mc_floor) << "\n";
  if (report.fitted_slope) {
    std::cout << "# fitted_slope=" << format_value(*report.fitted_slope) << " levels="
              << report.fitted_levels.front() << ".." << report.fitted_levels.back() << "\n";
  } else {
    std::cout << "# warning: fewer than two levels above 3x the Monte Carlo floor; no slope fit\n";
    std::cerr << "warning: no slope fit possible for the requested levels\n";
  }
  return (report.fitted_slope && *report.fitted_slope <= -3.0) ? kExitOk : kExitCriteria;
}

int run_bench(const std::vector<std::vector<std::int64_t>>& point_lists,
              const std::string& density_spec, std::uint64_t seed, int repeat) {
  if (repeat < 5) throw std::invalid_argument("--repeat must be >= 5");

  std::cout << "algorithm,points,P,repeat,median_seconds,draws\n";
  bool criteria_met = true;
  for (const auto& points : point_lists) {
    const grf::GridSpec grid = GridArgs{points, {}}.make();
    const auto density = grf::parse_density(density_spec, grid.dim());

    std::string label;
    for (std::size_t i = 0; i < points.size(); ++i)
      label += (i ? "x" : "") + std::to_string(points[i]);

    double median_two_fft = 0.0;
    std::vector<std::pair<grf::Algorithm, double>> medians;
    for (const grf::Algorithm algorithm : {grf::Algorithm::two_fft, grf::Algorithm::one_fft_overwrite,
                                           grf::Algorithm::one_fft_recursive}) {
      time_synthesis(grid, *density, seed, algorithm);  // warm-up: plan cache, page-in
      std::vector<double> times(static_cast<std::size_t>(repeat));
      for (int r = 0; r < repeat; ++r)
        times[static_cast<std::size_t>(r)] =
            time_synthesis(grid, *density, seed + static_cast<std::uint64_t>(r) + 1, algorithm);
      std::sort(times.begin(), times.end());
      const double median = times[times.size() / 2];
      if (algorithm == grf::Algorithm::two_fft) median_two_fft = median;
      medians.emplace_back(algorithm, median);
      std::cout << grf::algorithm_name(algorithm) << "," << label << "," << grid.point_count()
                << "," << repeat << "," << format_value(median) << ","
                << grf::count_draws(grid, algorithm) << "\n";
    }
    for (const auto& [algorithm, median] : medians)
      if (algorithm != grf::Algorithm::two_fft && median > 0.75 * median_two_fft)
        criteria_met = false;
  }
  return criteria_met ? kExitOk : kExitCriteria;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary Gaussian random fields on rectangular grids via FFT synthesis"};
  app.require_subcommand(1);

  GridArgs grid_args;
  std::string density_spec = "poly:m=1,k=1,l=1,n=2";
  std::string algorithm_flag = "recursive";
  std::uint64_t seed = 0;

  auto add_grid_flags = [&](CLI::App* cmd, bool need_points) {
    auto* points = cmd->add_option("--points", grid_args.points, "grid points per direction, even")
                       ->delimiter(',');
    if (need_points) points->required();
    cmd->add_option("--lengths", grid_args.lengths, "edge lengths per direction (default 1.0)")
        ->delimiter(',');
  };
  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--density", density_spec,
                    "spectral density: poly:m=,k=,l=,n= | test1d | aniso:m=,k1=,...,n=");
    cmd->add_option("--algorithm", algorithm_flag, "two-fft | one-fft | recursive");
    cmd->add_option("--seed", seed, "RNG seed");
  };

  // generate
  auto* generate = app.add_subcommand("generate", "synthesize one field and write it to a file");
  std::string out_path, format = "grf1";
  add_grid_flags(generate, true);
  add_model_flags(generate);
  generate->add_option("--out", out_path, "output path")->required();
  generate->add_option("--format", format, "grf1 | csv | pgm");

  // cov
  auto* cov = app.add_subcommand("cov", "Monte-Carlo covariance estimate as CSV");
  std::uint64_t samples = 10000;
  std::vector<std::int64_t> ref_index;
  std::string oracle_kind = "none";
  std::string cov_out;
  add_grid_flags(cov, true);
  add_model_flags(cov);
  cov->add_option("--samples", samples, "Monte-Carlo sample count (default 1e4)");
  cov->add_option("--ref-index", ref_index, "reference grid index (default 0,...,0)")
      ->delimiter(',');
  cov->add_option("--oracle", oracle_kind, "closed-form | discrete | none");
  cov->add_option("--out", cov_out, "output path (default stdout)");

  // converge
  auto* converge = app.add_subcommand("converge", "1D convergence study of the test density");
  std::string levels = "2..6";
  std::uint64_t converge_samples = 100000;
  converge->add_option("--levels", levels, "level range n1..n2 within 2..12");
  converge->add_option("--samples", converge_samples, "samples per level (default 1e5)");
  converge->add_option("--algorithm", algorithm_flag, "two-fft | one-fft | recursive");
  converge->add_option("--seed", seed, "RNG seed");

  // bench
  auto* bench = app.add_subcommand("bench", "wall-clock comparison of the three algorithms");
  std::vector<std::vector<std::int64_t>> bench_points;
  int repeat = 7;
  bench->add_option("--points", bench_points, "grid points per direction; repeatable")
      ->delimiter(',')
      ->required();
  bench->add_option("--repeat", repeat, "timing repetitions per case, >= 5");
  bench->add_option("--density", density_spec, "spectral density spec");
  bench->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed())
      return run_generate(grid_args, density_spec, algorithm_flag, seed, out_path, format);
    if (cov->parsed())
      return run_cov(grid_args, density_spec, algorithm_flag, seed, samples, ref_index,
                     oracle_kind, cov_out);
    if (converge->parsed()) return run_converge(levels, converge_samples, algorithm_flag, seed);
    if (bench->parsed()) return run_bench(bench_points, density_spec, seed, repeat);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
