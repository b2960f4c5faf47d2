#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "bimeron/grid.hpp"

// Field file layout (little-endian throughout):
//   bytes 0..3   magic "BMF1"
//   bytes 4..7   u32 n (points per side)
//   bytes 8..15  f64 half_width
//   then n*n triples of f64 (x, y, z), row-major.

namespace bimeron {

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; byte swapping is not implemented");

namespace {
constexpr char kMagic[4] = {'B', 'M', 'F', '1'};

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("field file truncated");
  return v;
}
}  // namespace

void write_field(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  write_raw(out, static_cast<std::uint32_t>(f.n()));
  write_raw(out, f.grid().half_width);
  const int n = f.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Director d = f.at(i, j);
      write_raw(out, d.x);
      write_raw(out, d.y);
      write_raw(out, d.z);
    }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Field read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error(path + ": not a BMF1 field file");
  const auto n = read_raw<std::uint32_t>(in);
  const auto half_width = read_raw<double>(in);
  GridSpec g{half_width, static_cast<int>(n)};
  g.validate();
  Field f(g);
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j = 0; j < static_cast<int>(n); ++j) {
      const double x = read_raw<double>(in);
      const double y = read_raw<double>(in);
      const double z = read_raw<double>(in);
      f.set(i, j, Director::normalized(x, y, z));
    }
  return f;
}

void write_field_csv(const std::string& path, const Field& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "x,y,mx,my,mz\n";
  out.precision(17);
  const int n = f.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Director d = f.at(i, j);
      out << f.grid().coord(j) << ',' << f.grid().coord(i) << ',' << d.x << ','
          << d.y << ',' << d.z << '\n';
    }
}

}  // namespace bimeron
