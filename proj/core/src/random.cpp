#include "grf/random.hpp"

#include <cmath>
#include <cstdlib>

namespace grf {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

inline std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Marsaglia-Tsang ziggurat for the standard normal, 256 layers over signed
// 64-bit uniforms. kn: acceptance thresholds, wn: layer widths / 2^63,
// fn: density at the layer boundary.
struct ZigguratTables {
  std::uint64_t kn[256];
  double wn[256];
  double fn[256];
  static constexpr double tail = 3.6541528853610088;

  ZigguratTables() {
    const double vn = 4.928673233974655e-3;  // layer area
    const double m = 9223372036854775808.0;  // 2^63
    double dn = tail, tn = tail;
    const double q = vn / std::exp(-0.5 * dn * dn);
    kn[0] = static_cast<std::uint64_t>((dn / q) * m);
    kn[1] = 0;
    wn[0] = q / m;
    wn[255] = dn / m;
    fn[0] = 1.0;
    fn[255] = std::exp(-0.5 * dn * dn);
    for (int i = 254; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
      kn[i + 1] = static_cast<std::uint64_t>((dn / tn) * m);
      tn = dn;
      fn[i] = std::exp(-0.5 * dn * dn);
      wn[i] = dn / m;
    }
  }
};

const ZigguratTables& ziggurat() {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace

Xoshiro256Stream::Xoshiro256Stream(std::uint64_t seed, std::uint64_t substream) : seed_(seed) {
  // Substream derivation: mix (seed, substream) into one splitmix64 state,
  // then expand to the four xoshiro words.
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ull * (substream + 1));
  for (auto& s : state_) s = splitmix64(x);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;  // xoshiro needs nonzero state
  ziggurat();  // build tables before timing-sensitive callers start drawing
}

std::uint64_t Xoshiro256Stream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Xoshiro256Stream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Xoshiro256Stream::draw() {
  const ZigguratTables& z = ziggurat();
  for (;;) {
    const std::int64_t hz = static_cast<std::int64_t>(next_u64());
    if (hz == INT64_MIN) continue;  // |hz| would overflow
    const std::size_t iz = static_cast<std::size_t>(hz & 255);
    const std::uint64_t mag = static_cast<std::uint64_t>(std::llabs(hz));
    if (mag < z.kn[iz]) return static_cast<double>(hz) * z.wn[iz];

    if (iz == 0) {
      // Tail: sample x with density ~ exp(-tail * x) restricted to the
      // acceptance region beyond the last layer.
      double x, y;
      do {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        double u2 = uniform01();
        while (u2 == 0.0) u2 = uniform01();
        x = -std::log(u1) / ZigguratTables::tail;
        y = -std::log(u2);
      } while (y + y < x * x);
      return hz > 0 ? ZigguratTables::tail + x : -(ZigguratTables::tail + x);
    }

    const double x = static_cast<double>(hz) * z.wn[iz];
    if (z.fn[iz] + uniform01() * (z.fn[iz - 1] - z.fn[iz]) < std::exp(-0.5 * x * x)) return x;
  }
}

}  // namespace grf
