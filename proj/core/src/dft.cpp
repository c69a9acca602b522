#include "grf/dft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace grf {

namespace {

void check_buffers(const GridSpec& grid, std::span<const std::complex<double>> in,
                   std::span<std::complex<double>> out) {
  const auto p = static_cast<std::size_t>(grid.point_count());
  if (in.size() != p || out.size() != p)
    throw std::invalid_argument("DftBackend: buffer size does not match grid");
  if (in.data() == out.data())
    throw std::invalid_argument("DftBackend: in-place transform not supported");
}

}  // namespace

struct FftwBackend::Impl {
  // Two plans per key: one for maximally aligned arrays (SIMD kernels), one
  // alignment-agnostic fallback for arbitrary caller buffers.
  struct PlanPair {
    fftw_plan aligned = nullptr;
    fftw_plan unaligned = nullptr;
    int alignment = 0;
  };
  std::map<std::pair<std::vector<int>, int>, PlanPair> plans;
  std::shared_mutex mutex;
  unsigned planner_flags = FFTW_ESTIMATE;

  const PlanPair& get(const GridSpec& grid, int sign) {
    std::vector<int> dims(grid.counts().begin(), grid.counts().end());
    const auto key = std::make_pair(std::move(dims), sign);
    {
      std::shared_lock lock(mutex);
      if (const auto it = plans.find(key); it != plans.end()) return it->second;
    }
    std::unique_lock lock(mutex);
    if (const auto it = plans.find(key); it != plans.end()) return it->second;

    const std::size_t p = static_cast<std::size_t>(grid.point_count());
    fftw_complex* a = fftw_alloc_complex(p);
    fftw_complex* b = fftw_alloc_complex(p);
    if (a == nullptr || b == nullptr) {
      fftw_free(a);
      fftw_free(b);
      throw std::runtime_error("FftwBackend: allocation failed");
    }
    PlanPair pair;
    pair.alignment = fftw_alignment_of(reinterpret_cast<double*>(a));
    pair.aligned = fftw_plan_dft(static_cast<int>(key.first.size()), key.first.data(), a, b, sign,
                                 planner_flags);
    // The fallback path for arbitrary caller buffers stays cheap to plan.
    pair.unaligned = fftw_plan_dft(static_cast<int>(key.first.size()), key.first.data(), a, b,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (pair.aligned == nullptr || pair.unaligned == nullptr)
      throw std::runtime_error("FftwBackend: planning failed");
    return plans.emplace(key, pair).first->second;
  }

  void execute(const GridSpec& grid, int sign, const std::complex<double>* in,
               std::complex<double>* out) {
    const PlanPair& pair = get(grid, sign);
    auto* fin = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
    auto* fout = reinterpret_cast<fftw_complex*>(out);
    const bool aligned =
        fftw_alignment_of(reinterpret_cast<double*>(fin)) == pair.alignment &&
        fftw_alignment_of(reinterpret_cast<double*>(fout)) == pair.alignment;
    fftw_execute_dft(aligned ? pair.aligned : pair.unaligned, fin, fout);
  }

  ~Impl() {
    for (auto& [key, pair] : plans) {
      fftw_destroy_plan(pair.aligned);
      fftw_destroy_plan(pair.unaligned);
    }
  }
};

FftwBackend::FftwBackend(PlanRigor rigor) : impl_(new Impl) {
  impl_->planner_flags = (rigor == PlanRigor::measure) ? FFTW_MEASURE : FFTW_ESTIMATE;
}
FftwBackend::~FftwBackend() { delete impl_; }

void FftwBackend::forward(const GridSpec& grid, std::span<const std::complex<double>> in,
                          std::span<std::complex<double>> out) {
  check_buffers(grid, in, out);
  // exp(+i...) is FFTW's BACKWARD sign.
  impl_->execute(grid, FFTW_BACKWARD, in.data(), out.data());
}

void FftwBackend::inverse(const GridSpec& grid, std::span<const std::complex<double>> in,
                          std::span<std::complex<double>> out) {
  check_buffers(grid, in, out);
  impl_->execute(grid, FFTW_FORWARD, in.data(), out.data());
  const double scale = 1.0 / static_cast<double>(grid.point_count());
  for (auto& v : out) v *= scale;
}

namespace {

// Shared by both naive directions; sign is +1 (forward) or -1 (inverse sum).
void naive_transform(const GridSpec& grid, std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out, double sign) {
  const int d = grid.dim();
  const auto& counts = grid.counts();
  // Per-axis twiddle tables: tw[i][m] = exp(sign * 2 pi i * m / N_i).
  std::vector<std::vector<std::complex<double>>> tw(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const std::int64_t n = counts[i];
    tw[i].resize(static_cast<std::size_t>(n));
    for (std::int64_t m = 0; m < n; ++m) {
      const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
      tw[i][static_cast<std::size_t>(m)] = {std::cos(phase), std::sin(phase)};
    }
  }

  const std::int64_t p = grid.point_count();
  MultiIndex k(static_cast<std::size_t>(d), 0), j(static_cast<std::size_t>(d), 0);
  for (std::int64_t ik = 0; ik < p; ++ik) {
    std::complex<double> acc = 0.0;
    std::fill(j.begin(), j.end(), 0);
    for (std::int64_t ij = 0; ij < p; ++ij) {
      std::complex<double> w{1.0, 0.0};
      for (int i = 0; i < d; ++i)
        w *= tw[i][static_cast<std::size_t>((k[i] * j[i]) % counts[i])];
      acc += in[static_cast<std::size_t>(ij)] * w;
      for (int i = d - 1; i >= 0; --i) {
        if (++j[i] < counts[i]) break;
        j[i] = 0;
      }
    }
    out[static_cast<std::size_t>(ik)] = acc;
    for (int i = d - 1; i >= 0; --i) {
      if (++k[i] < counts[i]) break;
      k[i] = 0;
    }
  }
}

}  // namespace

void NaiveDftBackend::forward(const GridSpec& grid, std::span<const std::complex<double>> in,
                              std::span<std::complex<double>> out) {
  check_buffers(grid, in, out);
  naive_transform(grid, in, out, +1.0);
}

void NaiveDftBackend::inverse(const GridSpec& grid, std::span<const std::complex<double>> in,
                              std::span<std::complex<double>> out) {
  check_buffers(grid, in, out);
  naive_transform(grid, in, out, -1.0);
  const double scale = 1.0 / static_cast<double>(grid.point_count());
  for (auto& v : out) v *= scale;
}

DftBackend& default_backend() {
  static FftwBackend backend;
  return backend;
}

}  // namespace grf
