#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grf/dft.hpp"
#include "grf/grid.hpp"
#include "grf/hermitian.hpp"
#include "grf/random.hpp"
#include "grf/spectral.hpp"

namespace grf {

enum class Algorithm {
  /// White noise -> forward FFT -> multiply by sqrt(g) -> inverse FFT.
  two_fft,
  /// Hermitian spectrum built over a half-lattice with overwrites, one FFT.
  one_fft_overwrite,
  /// Hermitian spectrum built over the exact representative set, one FFT.
  one_fft_recursive,
};

std::string_view algorithm_name(Algorithm algorithm);
/// Accepts "two-fft", "one-fft", "recursive" (the CLI names).
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct FieldProvenance {
  Algorithm algorithm = Algorithm::two_fft;
  std::string density;
  std::uint64_t seed = 0;
};

/// Real-valued sample of the random field on the grid.
struct RealField {
  GridSpec grid;
  std::vector<double> values;  // P entries, row-major
  FieldProvenance provenance;
  /// max |Im| / max |Re| of the final inverse transform (diagnostic; the
  /// synthesis throws if it exceeds 1e-10).
  double imag_residue = 0.0;
};

/// Draws a Gaussian field whose exact second moment is
///   E[B(x_J) B(x_J')] = (2 pi)^d / |A| * sum_K g(w_K) cos(2 pi sum_i k_i (j_i - j'_i) / N_i),
/// the Riemann sum of C(r) = \int e^{-i(w,r)} g(w) dw at the wrapped angular
/// frequencies w_K. All three algorithms realize this same law; they differ
/// in how the Hermitian spectrum is assembled and in draw count.
RealField synthesize(const GridSpec& grid, const SpectralDensity& density, GaussianStream& rng,
                     Algorithm algorithm, DftBackend& backend = default_backend());

/// Convenience overload: derives the stream from the seed and stamps
/// provenance.
RealField synthesize(const GridSpec& grid, const SpectralDensity& density, std::uint64_t seed,
                     Algorithm algorithm, DftBackend& backend = default_backend());

/// Exact discrete covariance at an integer lag, by direct O(P) summation.
double exact_discrete_covariance(const GridSpec& grid, const SpectralDensity& density,
                                 const MultiIndex& lag);

/// Same sum evaluated at an arbitrary physical lag vector r (the integer-lag
/// version is this at r = lag * spacing).
double exact_discrete_covariance(const GridSpec& grid, const SpectralDensity& density,
                                 std::span<const double> physical_lag);

/// Exact discrete covariance at every lag at once via one inverse transform;
/// result is indexed like the grid (lag = multi-index).
std::vector<double> exact_discrete_covariance_all(const GridSpec& grid,
                                                  const SpectralDensity& density,
                                                  DftBackend& backend = default_backend());

/// Exact number of standard-normal draws synthesize() consumes.
std::uint64_t count_draws(const GridSpec& grid, Algorithm algorithm);

}  // namespace grf
