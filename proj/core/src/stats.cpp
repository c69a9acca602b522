#include "grf/stats.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "grf/spectral.hpp"

namespace grf {

namespace {

// Fixed chunk size decouples the accumulation layout from the worker count.
constexpr std::uint64_t kChunkSamples = 1024;

std::uint64_t level_seed(std::uint64_t seed, int level) {
  // splitmix64 finalizer over (seed, level) so levels use disjoint streams.
  std::uint64_t z = seed ^ (0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(level + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GRF_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

CovarianceEstimate estimate_covariance(const GridSpec& grid, const SpectralDensity& density,
                                       Algorithm algorithm, std::uint64_t samples,
                                       const MultiIndex& reference, const StreamFactory& streams,
                                       int threads, DftBackend& backend) {
  if (samples < 1) throw std::invalid_argument("estimate_covariance: need at least one sample");
  if (!grid.valid_index(reference))
    throw std::invalid_argument("estimate_covariance: reference index out of range");

  const std::size_t p = static_cast<std::size_t>(grid.point_count());
  const std::size_t ref = static_cast<std::size_t>(grid.linear_index(reference));
  const std::uint64_t chunk_count = (samples + kChunkSamples - 1) / kChunkSamples;

  std::vector<std::vector<double>> partials(static_cast<std::size_t>(chunk_count));
  std::atomic<std::uint64_t> next_chunk{0};

  const int workers =
      static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_threads(threads)),
                                               chunk_count));
  auto work = [&]() {
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= chunk_count) return;
      const std::uint64_t begin = c * kChunkSamples;
      const std::uint64_t end = std::min(begin + kChunkSamples, samples);
      std::vector<double> acc(p, 0.0);
      for (std::uint64_t j = begin; j < end; ++j) {
        const std::unique_ptr<GaussianStream> rng = streams(j);
        const RealField field = synthesize(grid, density, *rng, algorithm, backend);
        const double at_ref = field.values[ref];
        for (std::size_t i = 0; i < p; ++i) acc[i] += at_ref * field.values[i];
      }
      partials[static_cast<std::size_t>(c)] = std::move(acc);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Kahan-compensated merge in chunk order: identical for any worker count.
  CovarianceEstimate estimate{grid, reference, std::vector<double>(p, 0.0), samples, 0};
  std::vector<double> comp(p, 0.0);
  for (const auto& acc : partials) {
    for (std::size_t i = 0; i < p; ++i) {
      const double y = acc[i] - comp[i];
      const double t = estimate.estimates[i] + y;
      comp[i] = (t - estimate.estimates[i]) - y;
      estimate.estimates[i] = t;
    }
  }
  const double inv_m = 1.0 / static_cast<double>(samples);
  for (auto& v : estimate.estimates) v *= inv_m;
  return estimate;
}

CovarianceEstimate estimate_covariance(const GridSpec& grid, const SpectralDensity& density,
                                       Algorithm algorithm, std::uint64_t samples,
                                       const MultiIndex& reference, std::uint64_t seed,
                                       int threads, DftBackend& backend) {
  CovarianceEstimate estimate = estimate_covariance(
      grid, density, algorithm, samples, reference,
      [seed](std::uint64_t j) { return std::make_unique<Xoshiro256Stream>(seed, j); }, threads,
      backend);
  estimate.seed = seed;
  return estimate;
}

double max_error(const CovarianceEstimate& estimate,
                 const std::function<double(std::span<const double>)>& oracle) {
  const GridSpec& grid = estimate.grid;
  double err = 0.0;
  for (std::int64_t i = 0; i < grid.point_count(); ++i) {
    const std::vector<double> x = grid.point(grid.index_at(i));
    err = std::max(err, std::abs(estimate.estimates[static_cast<std::size_t>(i)] - oracle(x)));
  }
  return err;
}

std::optional<double> fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ConvergenceReport convergence_study(int level_min, int level_max, std::uint64_t samples,
                                    Algorithm algorithm, std::uint64_t seed, int threads,
                                    DftBackend& backend) {
  if (level_min < 2 || level_max > 12 || level_min > level_max)
    throw std::invalid_argument("convergence_study: levels must lie within 2..12");

  const Test1dDensity density;
  ConvergenceReport report;
  const double mc_floor = 2.0 / std::sqrt(static_cast<double>(samples));

  for (int n = level_min; n <= level_max; ++n) {
    const std::int64_t cells = std::int64_t{1} << n;
    const GridSpec grid({2.0 * std::numbers::pi}, {cells}, {-std::numbers::pi});
    const MultiIndex reference{cells / 2};  // the grid point at x = 0
    const CovarianceEstimate estimate = estimate_covariance(
        grid, density, algorithm, samples, reference, level_seed(seed, n), threads, backend);
    // |x| <= pi on this grid, which is already the torus distance from 0.
    const double err = max_error(
        estimate, [](std::span<const double> x) { return closed_form_c1d(std::abs(x[0])); });
    report.rows.push_back({n, cells, err, mc_floor});
  }

  std::vector<double> xs, ys;
  for (const auto& row : report.rows) {
    if (row.max_err > 3.0 * row.mc_floor) {
      xs.push_back(std::log2(static_cast<double>(row.cells)));
      ys.push_back(std::log2(row.max_err));
      report.fitted_levels.push_back(row.level);
    }
  }
  report.fitted_slope = fit_slope(xs, ys);
  if (!report.fitted_slope) report.fitted_levels.clear();
  return report;
}

}  // namespace grf
