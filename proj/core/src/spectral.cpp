#include "grf/spectral.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace grf {

namespace {

// x^n for integer n >= 0 by squaring; exact for the even/odd symmetry
// arguments used here (operates on p*p, never on p).
double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void SpectralDensity::check_dim(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim())
    throw std::invalid_argument("SpectralDensity: argument dimension mismatch");
}

PolyDecayDensity::PolyDecayDensity(double m, int k, int l, int n, int dim)
    : m_(m), k_(k), l_(l), n_(n), dim_(dim) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("PolyDecayDensity: m must be positive");
  if (k < 1 || l < 1 || n < 1)
    throw std::invalid_argument("PolyDecayDensity: k, l, n must be >= 1");
  if (dim < 1) throw std::invalid_argument("PolyDecayDensity: dim must be >= 1");
  m_pow_kl_ = std::pow(m, static_cast<double>(k) * static_cast<double>(l));
}

double PolyDecayDensity::eval(std::span<const double> p) const {
  check_dim(p);
  double s = 0.0;
  for (double pi : p) s += ipow(pi * pi, k_);
  return 1.0 / ipow(m_pow_kl_ + ipow(s, l_), n_);
}

std::string PolyDecayDensity::spec_string() const {
  std::ostringstream os;
  os << "poly:m=" << format_real(m_) << ",k=" << k_ << ",l=" << l_ << ",n=" << n_;
  return os.str();
}

AnisoPolyDensity::AnisoPolyDensity(double m, std::vector<int> ks, int n)
    : m_(m), ks_(std::move(ks)), n_(n) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("AnisoPolyDensity: m must be positive");
  if (ks_.empty()) throw std::invalid_argument("AnisoPolyDensity: needs at least one exponent");
  for (int k : ks_)
    if (k < 1) throw std::invalid_argument("AnisoPolyDensity: exponents must be >= 1");
  if (n < 1) throw std::invalid_argument("AnisoPolyDensity: n must be >= 1");
}

double AnisoPolyDensity::eval(std::span<const double> p) const {
  check_dim(p);
  double s = m_;
  for (std::size_t i = 0; i < ks_.size(); ++i) s += ipow(p[i] * p[i], ks_[i]);
  return 1.0 / ipow(s, n_);
}

std::string AnisoPolyDensity::spec_string() const {
  std::ostringstream os;
  os << "aniso:m=" << format_real(m_);
  for (std::size_t i = 0; i < ks_.size(); ++i) os << ",k" << (i + 1) << "=" << ks_[i];
  os << ",n=" << n_;
  return os.str();
}

double Test1dDensity::eval(std::span<const double> p) const {
  check_dim(p);
  const double q = 100.0 + p[0] * p[0];
  const double q2 = q * q;
  return (32.0e6 / std::numbers::pi) / (q2 * q2);
}

double closed_form_c1d(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("closed_form_c1d: r must be >= 0");
  return (200.0 / 3.0 * r * r * r + 40.0 * r * r + 10.0 * r + 1.0) * std::exp(-10.0 * r);
}

namespace {

// key=value scanner for the density grammar.
struct KvScanner {
  std::string_view rest;

  bool done() const { return rest.empty(); }

  std::pair<std::string_view, std::string_view> next() {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = (comma == std::string_view::npos) ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
      throw std::invalid_argument("density spec: expected key=value, got '" + std::string(item) + "'");
    return {item.substr(0, eq), item.substr(eq + 1)};
  }
};

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("density spec: bad real value '" + std::string(s) + "'");
  return v;
}

int parse_uint(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0)
    throw std::invalid_argument("density spec: bad integer value '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::unique_ptr<SpectralDensity> parse_density(std::string_view spec, int dim) {
  if (spec == "test1d") {
    if (dim != 1) throw std::invalid_argument("density spec: test1d is one-dimensional");
    return std::make_unique<Test1dDensity>();
  }
  const auto colon = spec.find(':');
  const std::string_view family = spec.substr(0, colon);
  KvScanner scan{colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1)};

  if (family == "poly") {
    double m = 0.0;
    int k = 0, l = 0, n = 0;
    while (!scan.done()) {
      const auto [key, value] = scan.next();
      if (key == "m") m = parse_real(value);
      else if (key == "k") k = parse_uint(value);
      else if (key == "l") l = parse_uint(value);
      else if (key == "n") n = parse_uint(value);
      else throw std::invalid_argument("density spec: unknown poly key '" + std::string(key) + "'");
    }
    if (m == 0.0 || k == 0 || l == 0 || n == 0)
      throw std::invalid_argument("density spec: poly needs m, k, l, n");
    return std::make_unique<PolyDecayDensity>(m, k, l, n, dim);
  }

  if (family == "aniso") {
    double m = 0.0;
    int n = 0;
    std::vector<int> ks(static_cast<std::size_t>(dim), 0);
    while (!scan.done()) {
      const auto [key, value] = scan.next();
      if (key == "m") m = parse_real(value);
      else if (key == "n") n = parse_uint(value);
      else if (key.size() > 1 && key[0] == 'k') {
        const int axis = parse_uint(key.substr(1));
        if (axis < 1 || axis > dim)
          throw std::invalid_argument("density spec: aniso axis out of range in '" + std::string(key) + "'");
        ks[static_cast<std::size_t>(axis - 1)] = parse_uint(value);
      } else {
        throw std::invalid_argument("density spec: unknown aniso key '" + std::string(key) + "'");
      }
    }
    if (m == 0.0 || n == 0)
      throw std::invalid_argument("density spec: aniso needs m and n");
    for (int k : ks)
      if (k == 0) throw std::invalid_argument("density spec: aniso needs k1..kd");
    return std::make_unique<AnisoPolyDensity>(m, std::move(ks), n);
  }

  throw std::invalid_argument("density spec: unknown family '" + std::string(family) + "'");
}

}  // namespace grf
