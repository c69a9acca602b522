#include "grf/grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace grf {

GridSpec::GridSpec(std::vector<double> lengths, std::vector<std::int64_t> counts,
                   std::vector<double> origin)
    : lengths_(std::move(lengths)), counts_(std::move(counts)), origin_(std::move(origin)) {
  if (counts_.empty()) throw std::invalid_argument("GridSpec: dimension must be >= 1");
  if (lengths_.size() != counts_.size())
    throw std::invalid_argument("GridSpec: lengths/counts dimension mismatch");
  if (origin_.empty()) origin_.assign(counts_.size(), 0.0);
  if (origin_.size() != counts_.size())
    throw std::invalid_argument("GridSpec: origin dimension mismatch");

  point_count_ = 1;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 2 || counts_[i] % 2 != 0)
      throw std::invalid_argument("GridSpec: point counts must be even and >= 2");
    if (!(lengths_[i] > 0.0) || !std::isfinite(lengths_[i]))
      throw std::invalid_argument("GridSpec: edge lengths must be positive and finite");
    if (point_count_ > std::numeric_limits<std::int64_t>::max() / counts_[i])
      throw std::invalid_argument("GridSpec: total point count overflows");
    point_count_ *= counts_[i];
  }
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= spacing(i);
  return v;
}

double GridSpec::domain_volume() const {
  double v = 1.0;
  for (double l : lengths_) v *= l;
  return v;
}

bool GridSpec::valid_index(const MultiIndex& k) const {
  if (k.size() != counts_.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < 0 || k[i] >= counts_[i]) return false;
  return true;
}

std::int64_t GridSpec::linear_index(const MultiIndex& k) const {
  if (!valid_index(k)) throw std::invalid_argument("GridSpec: index out of range");
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < k.size(); ++i) idx = idx * counts_[i] + k[i];
  return idx;
}

MultiIndex GridSpec::index_at(std::int64_t linear) const {
  if (linear < 0 || linear >= point_count_)
    throw std::invalid_argument("GridSpec: linear index out of range");
  MultiIndex k(counts_.size());
  for (int i = dim() - 1; i >= 0; --i) {
    k[i] = linear % counts_[i];
    linear /= counts_[i];
  }
  return k;
}

std::vector<double> GridSpec::point(const MultiIndex& k) const {
  if (!valid_index(k)) throw std::invalid_argument("GridSpec: index out of range");
  std::vector<double> x(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    x[i] = origin_[i] + static_cast<double>(k[i]) * spacing(static_cast<int>(i));
  return x;
}

MultiIndex neg_index(const MultiIndex& k, const GridSpec& grid) {
  if (!grid.valid_index(k)) throw std::invalid_argument("neg_index: invalid index");
  MultiIndex l(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const std::int64_t n = grid.counts()[i];
    l[i] = (n - k[i]) % n;
  }
  return l;
}

bool is_self_conjugate(const MultiIndex& k, const GridSpec& grid) {
  if (!grid.valid_index(k)) throw std::invalid_argument("is_self_conjugate: invalid index");
  for (std::size_t i = 0; i < k.size(); ++i) {
    const std::int64_t m = grid.counts()[i] / 2;
    if (k[i] != 0 && k[i] != m) return false;
  }
  return true;
}

std::vector<double> frequency(const MultiIndex& k, const GridSpec& grid) {
  if (!grid.valid_index(k)) throw std::invalid_argument("frequency: invalid index");
  std::vector<double> p(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const std::int64_t n = grid.counts()[i];
    const std::int64_t kk = (k[i] <= n / 2) ? k[i] : k[i] - n;
    p[i] = static_cast<double>(kk) / grid.lengths()[i];
  }
  return p;
}

std::vector<double> angular_frequency(const MultiIndex& k, const GridSpec& grid) {
  std::vector<double> p = frequency(k, grid);
  for (double& v : p) v *= 2.0 * std::numbers::pi;
  return p;
}

}  // namespace grf
