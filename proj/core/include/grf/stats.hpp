#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "grf/grid.hpp"
#include "grf/synth.hpp"

namespace grf {

/// Sample covariance of the field at a reference point against every grid
/// point: estimates[K] = M^{-1} sum_j field_j[reference] * field_j[K].
/// Fields are centered by construction, so no mean is subtracted.
struct CovarianceEstimate {
  GridSpec grid;
  MultiIndex reference;
  std::vector<double> estimates;  // P entries, row-major
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
};

/// Resolves a worker count: explicit value if > 0, else the GRF_THREADS
/// environment variable, else hardware concurrency.
int resolve_threads(int requested);

/// Produces the independent per-sample stream for a given sample index.
/// Must be a pure function of the index so batches are reproducible for
/// any worker count.
using StreamFactory = std::function<std::unique_ptr<GaussianStream>(std::uint64_t sample)>;

/// Monte-Carlo covariance estimate from M independent synthesized fields.
/// Sample j uses the substream (seed, j), and accumulation runs over
/// fixed-size chunks merged in index order, so the result is bit-identical
/// for any worker count.
CovarianceEstimate estimate_covariance(const GridSpec& grid, const SpectralDensity& density,
                                       Algorithm algorithm, std::uint64_t samples,
                                       const MultiIndex& reference, std::uint64_t seed,
                                       int threads = 0, DftBackend& backend = default_backend());

/// Same estimator with caller-supplied per-sample streams (mainly for
/// rigged-noise tests).
CovarianceEstimate estimate_covariance(const GridSpec& grid, const SpectralDensity& density,
                                       Algorithm algorithm, std::uint64_t samples,
                                       const MultiIndex& reference, const StreamFactory& streams,
                                       int threads = 0, DftBackend& backend = default_backend());

/// max over grid points of |estimates(K) - oracle(x_K)|.
double max_error(const CovarianceEstimate& estimate,
                 const std::function<double(std::span<const double>)>& oracle);

struct ConvergenceRow {
  int level = 0;            // n
  std::int64_t cells = 0;   // 2^n grid cells on [-pi, pi]
  double max_err = 0.0;     // e^n against the closed-form covariance
  double mc_floor = 0.0;    // 2 / sqrt(M)
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log2(e^n) vs log2(cells), restricted to rows
  /// with e^n > 3 * mc_floor; absent when fewer than two rows qualify.
  std::optional<double> fitted_slope;
  std::vector<int> fitted_levels;
};

/// The 1D study: for each level n, synthesizes M fields with the test
/// density on [-pi, pi] with 2^n cells, estimates the covariance against
/// the grid point at x = 0 and measures the max error against the exact
/// closed-form covariance. Levels must lie within [2, 12].
ConvergenceReport convergence_study(int level_min, int level_max, std::uint64_t samples,
                                    Algorithm algorithm, std::uint64_t seed, int threads = 0,
                                    DftBackend& backend = default_backend());

/// Least-squares slope of y against x; nullopt for fewer than 2 points.
std::optional<double> fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace grf
