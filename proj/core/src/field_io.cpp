#include "grf/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace grf {

namespace {

void append_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_f64(std::string& buf, double v) { append_u64(buf, std::bit_cast<std::uint64_t>(v)); }

struct Reader {
  std::istream& is;
  std::string context;

  void bytes(char* out, std::size_t n) {
    if (!is.read(out, static_cast<std::streamsize>(n)))
      throw std::runtime_error(context + ": truncated file");
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
};

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void write_grf1(const std::filesystem::path& path, const RealField& field) {
  const GridSpec& grid = field.grid;
  if (field.values.size() != static_cast<std::size_t>(grid.point_count()))
    throw std::invalid_argument("write_grf1: value count does not match grid");

  std::string buf;
  buf.reserve(16 + static_cast<std::size_t>(grid.dim()) * 16 + field.values.size() * 8);
  buf += "GRF1";
  append_u32(buf, 1);
  append_u32(buf, static_cast<std::uint32_t>(grid.dim()));
  for (int i = 0; i < grid.dim(); ++i) {
    append_u64(buf, static_cast<std::uint64_t>(grid.counts()[i]));
    append_f64(buf, grid.lengths()[i]);
  }
  for (double v : field.values) append_f64(buf, v);

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("write_grf1: cannot open '" + path.string() + "' for writing");
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw std::runtime_error("write_grf1: write failed for '" + path.string() + "'");
}

RealField read_grf1(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_grf1: cannot open '" + path.string() + "'");
  Reader r{is, "read_grf1"};

  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, "GRF1", 4) != 0) throw std::runtime_error("read_grf1: bad magic");
  if (r.u32() != 1) throw std::runtime_error("read_grf1: unsupported version");
  const std::uint32_t dim = r.u32();
  if (dim < 1 || dim > 16) throw std::runtime_error("read_grf1: implausible dimension");

  std::vector<std::int64_t> counts(dim);
  std::vector<double> lengths(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    counts[i] = static_cast<std::int64_t>(r.u64());
    lengths[i] = r.f64();
  }
  GridSpec grid(lengths, counts);  // re-validates evenness and positivity

  RealField field{grid, std::vector<double>(static_cast<std::size_t>(grid.point_count())), {}, 0.0};
  for (auto& v : field.values) v = r.f64();
  if (is.peek() != std::char_traits<char>::eof())
    throw std::runtime_error("read_grf1: trailing bytes after payload");
  return field;
}

void write_field_csv(std::ostream& os, const RealField& field) {
  const GridSpec& grid = field.grid;
  for (int i = 0; i < grid.dim(); ++i) os << "x" << (i + 1) << ",";
  os << "value\n";
  for (std::int64_t i = 0; i < grid.point_count(); ++i) {
    const std::vector<double> x = grid.point(grid.index_at(i));
    for (double c : x) os << format_value(c) << ",";
    os << format_value(field.values[static_cast<std::size_t>(i)]) << "\n";
  }
}

void write_field_pgm(const std::filesystem::path& path, const RealField& field) {
  const GridSpec& grid = field.grid;
  if (grid.dim() != 2) throw std::invalid_argument("write_field_pgm: PGM output requires d = 2");

  const auto [lo_it, hi_it] = std::minmax_element(field.values.begin(), field.values.end());
  const double lo = *lo_it, hi = *hi_it;
  const double span = hi - lo;

  std::string buf;
  buf += "P5\n" + std::to_string(grid.counts()[1]) + " " + std::to_string(grid.counts()[0]) +
         "\n255\n";
  for (double v : field.values) {
    const int g = span > 0.0 ? static_cast<int>(std::lround((v - lo) / span * 255.0)) : 0;
    buf.push_back(static_cast<char>(std::clamp(g, 0, 255)));
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("write_field_pgm: cannot open '" + path.string() + "'");
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw std::runtime_error("write_field_pgm: write failed");
}

}  // namespace grf
