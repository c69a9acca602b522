#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "grf/aligned.hpp"
#include "grf/grid.hpp"
#include "grf/random.hpp"
#include "grf/spectral.hpp"

namespace grf {

/// Conjugate-representative set L: one index out of each pair {K, -K},
/// with the 2^d self-conjugate indices (K = -K mod N) listed first. The
/// full lattice decomposes as L0 (self-conjugate) + Lhat + (-Lhat) with no
/// overlaps.
struct ConjugateRepSet {
  GridSpec grid;
  /// All representatives; the first self_conjugate.size() entries are L0.
  std::vector<MultiIndex> reps;
  /// The 2^d self-conjugate indices (L0).
  std::vector<MultiIndex> self_conjugate;
};

/// Enumerates the representative set for a grid with all counts even.
///
/// Order is deterministic: L0 first (row-major over {0, M_i} per axis),
/// then for each block size n = 1..d the n-subsets of the axes in
/// lexicographic order; within a block the first chosen axis runs over
/// [1, M-1], the remaining chosen axes over [1, M-1] u [M+1, N-1], and the
/// unchosen axes over {0, M}, row-major. Seeded synthesis draws in exactly
/// this order.
ConjugateRepSet build_conjugate_reps(const GridSpec& grid);

/// Streaming version of build_conjugate_reps: invokes fn(K, self_conjugate)
/// for every representative, in the same order, without materializing the
/// set. The MultiIndex reference points into a reused buffer.
void for_each_conjugate_rep(const GridSpec& grid,
                            const std::function<void(const MultiIndex&, bool)>& fn);

/// Complex spectrum over the full index lattice with V(-K) = conj(V(K))
/// and V real at self-conjugate indices.
struct HermitianSpectrum {
  GridSpec grid;
  aligned_vector<std::complex<double>> values;  // P entries, row-major
};

enum class SpectrumMode {
  /// Draw only for the representative set (minimal: P draws total).
  exact_set,
  /// Loop a half-lattice k_d = 0..N_d/2 and overwrite conjugate-determined
  /// entries as the loop progresses; costs O(N_1...N_{d-1}) surplus draws.
  overwrite,
};

/// Builds V(K) = w(K) * sqrt(g(w_K)) where w is unit-variance Hermitian
/// complex noise: one real N(0,1) draw at self-conjugate K, and
/// (g1 + i*g2)/sqrt(2) at paired K with the mirror entry set to the
/// conjugate. Densities are evaluated at angular frequencies.
HermitianSpectrum synthesize_spectrum(const GridSpec& grid, const SpectralDensity& density,
                                      GaussianStream& rng, SpectrumMode mode);

/// Allocation-free variant: writes the P spectrum entries into out. Every
/// entry is overwritten.
void synthesize_spectrum_into(const GridSpec& grid, const SpectralDensity& density,
                              GaussianStream& rng, SpectrumMode mode,
                              std::span<std::complex<double>> out);

/// Exact check of both spectrum invariants (floating-point equality):
/// V(-K) == conj(V(K)) everywhere and Im V(K) == 0 at self-conjugate K.
bool verify_hermitian(const HermitianSpectrum& spectrum);

/// Standard-normal draws consumed by synthesize_spectrum for this grid/mode.
std::uint64_t spectrum_draw_count(const GridSpec& grid, SpectrumMode mode);

}  // namespace grf
