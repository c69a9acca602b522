#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grf {

/// Spectral density g of a stationary covariance: even, nonnegative,
/// evaluated at angular frequencies. The paired covariance is
/// C(r) = \int_{R^d} e^{-i(w,r)} g(w) dw.
class SpectralDensity {
public:
  virtual ~SpectralDensity() = default;

  virtual int dim() const = 0;
  /// g(p) >= 0; must satisfy eval(p) == eval(-p) exactly.
  virtual double eval(std::span<const double> p) const = 0;
  /// Canonical CLI spec string ("poly:m=...", "test1d", "aniso:...").
  virtual std::string spec_string() const = 0;

protected:
  void check_dim(std::span<const double> p) const;
};

/// Polynomially decaying family g(p) = (m^{kl} + (sum_i p_i^{2k})^l)^{-n}
/// with m > 0 and integer exponents k, l, n >= 1. The d = 2, k = l = n = 1
/// member is the Euclidean free-field propagator. Densities of total degree
/// -2 have non-integrable tails in d = 2 and give fields of infinite
/// variance; the discrete variance then grows without bound under grid
/// refinement. No integrability check is performed here.
class PolyDecayDensity final : public SpectralDensity {
public:
  PolyDecayDensity(double m, int k, int l, int n, int dim);

  int dim() const override { return dim_; }
  double eval(std::span<const double> p) const override;
  std::string spec_string() const override;

  double m() const { return m_; }
  int k() const { return k_; }
  int l() const { return l_; }
  int n() const { return n_; }

private:
  double m_;
  int k_, l_, n_, dim_;
  double m_pow_kl_;
};

/// Axis-anisotropic variant g(p) = (m + sum_i p_i^{2 k_i})^{-n} with an
/// independent exponent per axis.
class AnisoPolyDensity final : public SpectralDensity {
public:
  AnisoPolyDensity(double m, std::vector<int> ks, int n);

  int dim() const override { return static_cast<int>(ks_.size()); }
  double eval(std::span<const double> p) const override;
  std::string spec_string() const override;

private:
  double m_;
  std::vector<int> ks_;
  int n_;
};

/// 1D test density g(p) = (32e6/pi) * (100 + p^2)^{-4}, scaled so the field
/// variance is 1. Its covariance has the closed form closed_form_c1d.
class Test1dDensity final : public SpectralDensity {
public:
  int dim() const override { return 1; }
  double eval(std::span<const double> p) const override;
  std::string spec_string() const override { return "test1d"; }
};

/// Exact covariance paired with Test1dDensity:
/// C(r) = (200/3 r^3 + 40 r^2 + 10 r + 1) exp(-10 r), r = |x - y| >= 0.
double closed_form_c1d(double r);

/// Parses a CLI density spec: `poly:m=<f>,k=<u>,l=<u>,n=<u>`, `test1d`,
/// `aniso:m=<f>,k1=<u>,...,kd=<u>,n=<u>`. Throws std::invalid_argument on
/// malformed input or dimension mismatch.
std::unique_ptr<SpectralDensity> parse_density(std::string_view spec, int dim);

}  // namespace grf
