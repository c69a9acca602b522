#include "grf/hermitian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grf {

namespace {

// Walks the Cartesian product of per-axis value lists in row-major order
// (last axis fastest). Skips the whole block if any list is empty.
template <class OnCell>
void walk_product(const std::vector<std::vector<std::int64_t>>& values, MultiIndex& k,
                  OnCell&& fn) {
  const int d = static_cast<int>(values.size());
  for (const auto& v : values)
    if (v.empty()) return;
  std::vector<std::size_t> pos(values.size(), 0);
  for (int i = 0; i < d; ++i) k[i] = values[i][0];
  for (;;) {
    fn(k);
    int axis = d - 1;
    while (axis >= 0) {
      if (++pos[axis] < values[axis].size()) {
        k[axis] = values[axis][pos[axis]];
        break;
      }
      pos[axis] = 0;
      k[axis] = values[axis][0];
      --axis;
    }
    if (axis < 0) return;
  }
}

// Enumerates the representative set: L0 first, then the partition blocks of
// the appendix construction in lexicographic subset order.
template <class OnRep>
void walk_conjugate_reps(const GridSpec& grid, OnRep&& fn) {
  const int d = grid.dim();
  const auto& counts = grid.counts();
  std::vector<std::int64_t> half(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) half[i] = counts[i] / 2;

  MultiIndex k(counts.size());
  std::vector<std::vector<std::int64_t>> values(counts.size());

  // L0: every component 0 or M_i.
  for (int i = 0; i < d; ++i) values[i] = {0, half[i]};
  walk_product(values, k, [&](const MultiIndex& idx) { fn(idx, true); });

  // Blocks n = 1..d: chosen axes j_1 < ... < j_n, complement fixed to {0, M}.
  std::vector<int> chosen;
  for (int n = 1; n <= d; ++n) {
    chosen.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) chosen[i] = i;
    for (;;) {
      for (int axis = 0, c = 0; axis < d; ++axis) {
        auto& v = values[axis];
        v.clear();
        if (c < n && chosen[c] == axis) {
          // First chosen axis restricted to the lower half keeps exactly one
          // of each {K, -K} pair; further chosen axes take all interior values.
          for (std::int64_t x = 1; x < half[axis]; ++x) v.push_back(x);
          if (c > 0)
            for (std::int64_t x = half[axis] + 1; x < counts[axis]; ++x) v.push_back(x);
          ++c;
        } else {
          v.push_back(0);
          v.push_back(half[axis]);
        }
      }
      walk_product(values, k, [&](const MultiIndex& idx) { fn(idx, false); });

      // next lexicographic n-subset
      int i = n - 1;
      while (i >= 0 && chosen[i] == d - n + i) --i;
      if (i < 0) break;
      ++chosen[i];
      for (int j = i + 1; j < n; ++j) chosen[j] = chosen[j - 1] + 1;
    }
  }
}

}  // namespace

void for_each_conjugate_rep(const GridSpec& grid,
                            const std::function<void(const MultiIndex&, bool)>& fn) {
  walk_conjugate_reps(grid, [&](const MultiIndex& k, bool self) { fn(k, self); });
}

ConjugateRepSet build_conjugate_reps(const GridSpec& grid) {
  ConjugateRepSet set{grid, {}, {}};
  walk_conjugate_reps(grid, [&](const MultiIndex& k, bool self) {
    set.reps.push_back(k);
    if (self) set.self_conjugate.push_back(k);
  });
  return set;
}

namespace {

// Per-axis lookup tables shared by the two synthesis modes.
struct FrequencyTables {
  std::vector<std::vector<double>> omega;  // angular frequency per axis value
  std::vector<std::int64_t> strides;       // row-major linearization strides

  explicit FrequencyTables(const GridSpec& grid) {
    const int d = grid.dim();
    omega.resize(static_cast<std::size_t>(d));
    strides.assign(static_cast<std::size_t>(d), 1);
    for (int i = 0; i < d; ++i) {
      const std::int64_t n = grid.counts()[i];
      omega[i].resize(static_cast<std::size_t>(n));
      for (std::int64_t kk = 0; kk < n; ++kk) {
        const std::int64_t w = (kk <= n / 2) ? kk : kk - n;
        omega[i][static_cast<std::size_t>(kk)] =
            2.0 * std::numbers::pi * static_cast<double>(w) / grid.lengths()[i];
      }
    }
    for (int i = d - 2; i >= 0; --i) strides[i] = strides[i + 1] * grid.counts()[i + 1];
  }
};

}  // namespace

void synthesize_spectrum_into(const GridSpec& grid, const SpectralDensity& density,
                              GaussianStream& rng, SpectrumMode mode,
                              std::span<std::complex<double>> buffer) {
  if (density.dim() != grid.dim())
    throw std::invalid_argument("synthesize_spectrum: density dimension mismatch");
  if (buffer.size() != static_cast<std::size_t>(grid.point_count()))
    throw std::invalid_argument("synthesize_spectrum: buffer size does not match grid");

  const int d = grid.dim();
  const auto& counts = grid.counts();
  std::complex<double>* out = buffer.data();

  const FrequencyTables tables(grid);
  std::vector<double> omega(static_cast<std::size_t>(d));
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  const auto gamma_sqrt = [&](const MultiIndex& k) {
    for (int i = 0; i < d; ++i) omega[i] = tables.omega[i][static_cast<std::size_t>(k[i])];
    const double g = density.eval(omega);
    if (!(g >= 0.0) || std::isnan(g))
      throw std::runtime_error("synthesize_spectrum: density evaluated to NaN or negative");
    return std::sqrt(g);
  };
  const auto linear = [&](const MultiIndex& k) {
    std::int64_t idx = 0;
    for (int i = 0; i < d; ++i) idx += tables.strides[i] * k[i];
    return static_cast<std::size_t>(idx);
  };

  const auto set_pair = [&](const MultiIndex& k) {
    const double gs = gamma_sqrt(k);
    const double re = gs * inv_sqrt2 * rng.next();
    const double im = gs * inv_sqrt2 * rng.next();
    std::int64_t neg = 0;
    for (int i = 0; i < d; ++i)
      neg += tables.strides[i] * (k[i] == 0 ? 0 : counts[i] - k[i]);
    out[linear(k)] = {re, im};
    out[static_cast<std::size_t>(neg)] = {re, -im};
  };
  const auto set_self = [&](const MultiIndex& k) {
    // Self-conjugate entries are real and scaled by 1 instead of 1/sqrt(2).
    const double gs = gamma_sqrt(k);
    out[linear(k)] = {gs * rng.next(), 0.0};
  };

  if (mode == SpectrumMode::exact_set) {
    walk_conjugate_reps(grid, [&](const MultiIndex& k, bool self) {
      if (self) set_self(k);
      else set_pair(k);
    });
  } else {
    // Half-lattice sweep: full range in the first d-1 axes, k_d = 0..N_d/2,
    // row-major. Pairs whose mirror also lies in the half-lattice are drawn
    // twice; the later visit overwrites both entries coherently.
    std::vector<std::vector<std::int64_t>> values(static_cast<std::size_t>(d));
    for (int i = 0; i < d - 1; ++i) {
      values[i].resize(static_cast<std::size_t>(counts[i]));
      for (std::int64_t x = 0; x < counts[i]; ++x) values[i][static_cast<std::size_t>(x)] = x;
    }
    values[d - 1].resize(static_cast<std::size_t>(counts[d - 1] / 2 + 1));
    for (std::int64_t x = 0; x <= counts[d - 1] / 2; ++x)
      values[d - 1][static_cast<std::size_t>(x)] = x;

    MultiIndex cell(static_cast<std::size_t>(d));
    walk_product(values, cell, [&](const MultiIndex& k) {
      bool self = true;
      for (int i = 0; i < d; ++i)
        if (k[i] != 0 && k[i] != counts[i] / 2) {
          self = false;
          break;
        }
      if (self) set_self(k);
      else set_pair(k);
    });
  }
}

HermitianSpectrum synthesize_spectrum(const GridSpec& grid, const SpectralDensity& density,
                                      GaussianStream& rng, SpectrumMode mode) {
  HermitianSpectrum spectrum{
      grid, aligned_vector<std::complex<double>>(static_cast<std::size_t>(grid.point_count()))};
  synthesize_spectrum_into(grid, density, rng, mode, spectrum.values);
  return spectrum;
}

bool verify_hermitian(const HermitianSpectrum& spectrum) {
  const GridSpec& grid = spectrum.grid;
  if (spectrum.values.size() != static_cast<std::size_t>(grid.point_count())) return false;
  const std::int64_t p = grid.point_count();
  for (std::int64_t i = 0; i < p; ++i) {
    const MultiIndex k = grid.index_at(i);
    const std::int64_t j = grid.linear_index(neg_index(k, grid));
    const std::complex<double> v = spectrum.values[static_cast<std::size_t>(i)];
    const std::complex<double> w = spectrum.values[static_cast<std::size_t>(j)];
    if (!(w.real() == v.real() && w.imag() == -v.imag())) return false;
    if (i == j && v.imag() != 0.0) return false;
  }
  return true;
}

std::uint64_t spectrum_draw_count(const GridSpec& grid, SpectrumMode mode) {
  const std::uint64_t p = static_cast<std::uint64_t>(grid.point_count());
  const std::uint64_t self = std::uint64_t{1} << grid.dim();
  if (mode == SpectrumMode::exact_set) return p;  // self + 2 * (p - self) / 2
  std::uint64_t cells = static_cast<std::uint64_t>(grid.counts().back() / 2 + 1);
  for (int i = 0; i + 1 < grid.dim(); ++i)
    cells *= static_cast<std::uint64_t>(grid.counts()[i]);
  return 2 * cells - self;
}

}  // namespace grf
