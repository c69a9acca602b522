#pragma once

#include <cstdint>
#include <vector>

namespace grf {

/// A d-dimensional grid index (k_1, ..., k_d) with 0 <= k_i < N_i.
/// All index arithmetic is modulo N_i in direction i: the grid is a torus.
using MultiIndex = std::vector<std::int64_t>;

/// Rectangular domain [a_1, a_1+l_1] x ... x [a_d, a_d+l_d] carrying an
/// equidistant grid of N_i cells per direction. Every N_i must be even and
/// >= 2; odd counts are rejected at construction because the conjugate index
/// pairing assumes even N.
class GridSpec {
public:
  GridSpec(std::vector<double> lengths, std::vector<std::int64_t> counts,
           std::vector<double> origin = {});

  int dim() const { return static_cast<int>(counts_.size()); }
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const std::vector<double>& origin() const { return origin_; }

  /// Grid spacing l_i / N_i in direction i.
  double spacing(int axis) const { return lengths_[axis] / static_cast<double>(counts_[axis]); }
  /// Cell volume, product of spacings.
  double cell_volume() const;
  /// Domain volume |A|, product of edge lengths.
  double domain_volume() const;
  /// Total number of grid points P.
  std::int64_t point_count() const { return point_count_; }

  bool valid_index(const MultiIndex& k) const;
  /// Row-major linearization (last index fastest); bijection onto [0, P).
  std::int64_t linear_index(const MultiIndex& k) const;
  MultiIndex index_at(std::int64_t linear) const;
  /// Physical coordinates of the grid point x_K.
  std::vector<double> point(const MultiIndex& k) const;

private:
  std::vector<double> lengths_;
  std::vector<std::int64_t> counts_;
  std::vector<double> origin_;
  std::int64_t point_count_;
};

/// The unique L with L = -K (mod N): L_i = (N_i - k_i) mod N_i.
/// Involution: neg_index(neg_index(K)) == K.
MultiIndex neg_index(const MultiIndex& k, const GridSpec& grid);

/// True iff K = -K (mod N), i.e. every k_i is 0 or N_i/2.
/// Exactly 2^d such indices exist; spectra are real there.
bool is_self_conjugate(const MultiIndex& k, const GridSpec& grid);

/// Wrapped frequency in cycles per unit length, DFT array order:
/// k_i/l_i for k_i <= N_i/2, else (k_i - N_i)/l_i.
std::vector<double> frequency(const MultiIndex& k, const GridSpec& grid);

/// 2*pi times frequency(). Spectral densities are evaluated at these
/// points; the matching covariance transform is C(r) = \int e^{-i(w,r)} g(w) dw.
std::vector<double> angular_frequency(const MultiIndex& k, const GridSpec& grid);

}  // namespace grf
