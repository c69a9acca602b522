#pragma once

#include <complex>
#include <span>
#include <string>

#include "grf/grid.hpp"

namespace grf {

/// d-dimensional complex DFT contract. Conventions:
///   forward:  out[K] = sum_J in[J] * exp(+2 pi i sum_i k_i j_i / N_i)
///   inverse:  out[J] = P^{-1} sum_K in[K] * exp(-2 pi i sum_i k_i j_i / N_i)
/// so inverse(forward(x)) == x up to rounding. Input and output must not
/// alias and hold point_count() entries in row-major order.
class DftBackend {
public:
  virtual ~DftBackend() = default;

  virtual void forward(const GridSpec& grid, std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out) = 0;
  virtual void inverse(const GridSpec& grid, std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out) = 0;
  virtual std::string name() const = 0;
};

/// Planner effort for FftwBackend. `estimate` picks plans heuristically and
/// deterministically (same transform values on every run); `measure` times
/// candidate plans for better large-size throughput, at the cost of slower
/// planning and run-to-run rounding differences in the last bits.
enum class PlanRigor { estimate, measure };

/// FFTW-backed transforms. Plans are cached per (counts, direction) and
/// created lazily under a lock; plan execution is concurrency-safe, so one
/// backend instance can serve many worker threads.
class FftwBackend final : public DftBackend {
public:
  explicit FftwBackend(PlanRigor rigor = PlanRigor::estimate);
  ~FftwBackend() override;
  FftwBackend(const FftwBackend&) = delete;
  FftwBackend& operator=(const FftwBackend&) = delete;

  void forward(const GridSpec& grid, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) override;
  void inverse(const GridSpec& grid, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) override;
  std::string name() const override { return "fftw"; }

private:
  struct Impl;
  Impl* impl_;
};

/// Literal evaluation of the DFT sums, O(P^2). Reference oracle for
/// cross-checking the fast backend on small grids; do not use beyond
/// a few thousand points.
class NaiveDftBackend final : public DftBackend {
public:
  void forward(const GridSpec& grid, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) override;
  void inverse(const GridSpec& grid, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) override;
  std::string name() const override { return "naive"; }
};

/// Process-wide FFTW backend.
DftBackend& default_backend();

}  // namespace grf
