#include "grf/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grf {

namespace {

constexpr double kResidueLimit = 1e-10;

double two_pi_pow(int d) {
  double v = 1.0;
  for (int i = 0; i < d; ++i) v *= 2.0 * std::numbers::pi;
  return v;
}

// Extracts the real field, enforcing the Hermitian-symmetry residue bound.
void extract_real(std::span<const std::complex<double>> buf, double scale, RealField& field) {
  field.values.resize(buf.size());
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const std::complex<double> v = buf[i];
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
    field.values[i] = v.real() * scale;
  }
  field.imag_residue = (max_re > 0.0) ? max_im / max_re : max_im;
  if (field.imag_residue > kResidueLimit)
    throw std::runtime_error("synthesize: imaginary residue " + std::to_string(field.imag_residue) +
                             " exceeds 1e-10; spectrum lost Hermitian symmetry");
}

// Per-thread transform buffers; every entry is overwritten on each use, so
// reuse never leaks state between syntheses.
struct Scratch {
  aligned_vector<std::complex<double>> a, b;
};

Scratch& scratch_for(std::size_t p) {
  thread_local Scratch scratch;
  if (scratch.a.size() < p) {
    scratch.a.resize(p);
    scratch.b.resize(p);
  }
  return scratch;
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::two_fft: return "two-fft";
    case Algorithm::one_fft_overwrite: return "one-fft";
    case Algorithm::one_fft_recursive: return "recursive";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "two-fft") return Algorithm::two_fft;
  if (name == "one-fft") return Algorithm::one_fft_overwrite;
  if (name == "recursive") return Algorithm::one_fft_recursive;
  return std::nullopt;
}

RealField synthesize(const GridSpec& grid, const SpectralDensity& density, GaussianStream& rng,
                     Algorithm algorithm, DftBackend& backend) {
  if (density.dim() != grid.dim())
    throw std::invalid_argument("synthesize: density dimension mismatch");

  const std::size_t p = static_cast<std::size_t>(grid.point_count());
  const int d = grid.dim();
  RealField field{grid, {}, {algorithm, density.spec_string(), 0}, 0.0};

  Scratch& scratch = scratch_for(p);
  const std::span<std::complex<double>> buf_a(scratch.a.data(), p);
  const std::span<std::complex<double>> buf_b(scratch.b.data(), p);

  if (algorithm == Algorithm::two_fft) {
    const std::span<std::complex<double>> noise = buf_a, spectrum = buf_b;
    for (auto& v : noise) v = {rng.next(), 0.0};
    backend.forward(grid, noise, spectrum);

    // Unit draws stand in for variance-1/|cell| white noise; the deferred
    // sqrt(P/|A|) rides along with the (2 pi)^{d/2} Riemann factor so that
    // the inverse transform lands exactly on the normative law.
    const double scale =
        std::sqrt(two_pi_pow(d) * static_cast<double>(grid.point_count()) / grid.domain_volume());
    std::vector<std::vector<double>> omega_table(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      const std::int64_t n = grid.counts()[a];
      omega_table[a].resize(static_cast<std::size_t>(n));
      for (std::int64_t kk = 0; kk < n; ++kk)
        omega_table[a][static_cast<std::size_t>(kk)] =
            2.0 * std::numbers::pi * static_cast<double>(kk <= n / 2 ? kk : kk - n) /
            grid.lengths()[a];
    }
    std::vector<double> omega(static_cast<std::size_t>(d));
    MultiIndex k(static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < p; ++i) {
      for (int a = 0; a < d; ++a) omega[a] = omega_table[a][static_cast<std::size_t>(k[a])];
      const double g = density.eval(omega);
      if (!(g >= 0.0) || std::isnan(g))
        throw std::runtime_error("synthesize: density evaluated to NaN or negative");
      spectrum[i] *= std::sqrt(g) * scale;
      for (int a = d - 1; a >= 0; --a) {
        if (++k[a] < grid.counts()[a]) break;
        k[a] = 0;
      }
    }
    backend.inverse(grid, spectrum, noise);
    extract_real(noise, 1.0, field);
    return field;
  }

  const SpectrumMode mode = (algorithm == Algorithm::one_fft_overwrite) ? SpectrumMode::overwrite
                                                                        : SpectrumMode::exact_set;
  synthesize_spectrum_into(grid, density, rng, mode, buf_a);
  backend.inverse(grid, buf_a, buf_b);
  // field = sqrt((2 pi)^d / |A|) * P * inverse(V)
  const double scale = std::sqrt(two_pi_pow(d) / grid.domain_volume()) *
                       static_cast<double>(grid.point_count());
  extract_real(buf_b, scale, field);
  return field;
}

RealField synthesize(const GridSpec& grid, const SpectralDensity& density, std::uint64_t seed,
                     Algorithm algorithm, DftBackend& backend) {
  Xoshiro256Stream rng(seed);
  RealField field = synthesize(grid, density, rng, algorithm, backend);
  field.provenance.seed = seed;
  return field;
}

double exact_discrete_covariance(const GridSpec& grid, const SpectralDensity& density,
                                 const MultiIndex& lag) {
  if (!grid.valid_index(lag)) throw std::invalid_argument("exact_discrete_covariance: invalid lag");
  if (density.dim() != grid.dim())
    throw std::invalid_argument("exact_discrete_covariance: density dimension mismatch");

  const int d = grid.dim();
  const auto& counts = grid.counts();
  const std::int64_t p = grid.point_count();
  double acc = 0.0;
  MultiIndex k(static_cast<std::size_t>(d), 0);
  for (std::int64_t i = 0; i < p; ++i) {
    // Phase sum_a k_a lag_a / N_a reduced axis-wise in exact integer
    // arithmetic before the cosine.
    double t = 0.0;
    for (int a = 0; a < d; ++a)
      t += static_cast<double>((k[a] * lag[a]) % counts[a]) / static_cast<double>(counts[a]);
    const std::vector<double> w = angular_frequency(k, grid);
    acc += density.eval(w) * std::cos(2.0 * std::numbers::pi * t);
    for (int a = d - 1; a >= 0; --a) {
      if (++k[a] < counts[a]) break;
      k[a] = 0;
    }
  }
  return acc * two_pi_pow(d) / grid.domain_volume();
}

double exact_discrete_covariance(const GridSpec& grid, const SpectralDensity& density,
                                 std::span<const double> physical_lag) {
  if (static_cast<int>(physical_lag.size()) != grid.dim())
    throw std::invalid_argument("exact_discrete_covariance: lag dimension mismatch");
  if (density.dim() != grid.dim())
    throw std::invalid_argument("exact_discrete_covariance: density dimension mismatch");

  const int d = grid.dim();
  const std::int64_t p = grid.point_count();
  double acc = 0.0;
  MultiIndex k(static_cast<std::size_t>(d), 0);
  for (std::int64_t i = 0; i < p; ++i) {
    const std::vector<double> w = angular_frequency(k, grid);
    double phase = 0.0;
    for (int a = 0; a < d; ++a) phase += w[static_cast<std::size_t>(a)] * physical_lag[a];
    acc += density.eval(w) * std::cos(phase);
    for (int a = d - 1; a >= 0; --a) {
      if (++k[a] < grid.counts()[a]) break;
      k[a] = 0;
    }
  }
  return acc * two_pi_pow(d) / grid.domain_volume();
}

std::vector<double> exact_discrete_covariance_all(const GridSpec& grid,
                                                  const SpectralDensity& density,
                                                  DftBackend& backend) {
  if (density.dim() != grid.dim())
    throw std::invalid_argument("exact_discrete_covariance_all: density dimension mismatch");
  const std::size_t p = static_cast<std::size_t>(grid.point_count());
  aligned_vector<std::complex<double>> gamma(p), transformed(p);
  MultiIndex k(static_cast<std::size_t>(grid.dim()), 0);
  for (std::size_t i = 0; i < p; ++i) {
    gamma[i] = {density.eval(angular_frequency(k, grid)), 0.0};
    for (int a = grid.dim() - 1; a >= 0; --a) {
      if (++k[static_cast<std::size_t>(a)] < grid.counts()[a]) break;
      k[static_cast<std::size_t>(a)] = 0;
    }
  }
  backend.inverse(grid, gamma, transformed);
  const double scale =
      two_pi_pow(grid.dim()) / grid.domain_volume() * static_cast<double>(grid.point_count());
  std::vector<double> cov(p);
  for (std::size_t i = 0; i < p; ++i) cov[i] = transformed[i].real() * scale;
  return cov;
}

std::uint64_t count_draws(const GridSpec& grid, Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::two_fft: return static_cast<std::uint64_t>(grid.point_count());
    case Algorithm::one_fft_recursive: return spectrum_draw_count(grid, SpectrumMode::exact_set);
    case Algorithm::one_fft_overwrite: return spectrum_draw_count(grid, SpectrumMode::overwrite);
  }
  throw std::invalid_argument("count_draws: unknown algorithm");
}

}  // namespace grf
