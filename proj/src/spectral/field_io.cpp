#include "hfscatter/spectral/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hfscatter::spectral {

static_assert(std::endian::native == std::endian::little,
              "field format is little-endian; big-endian hosts are unsupported");

namespace {
constexpr char kMagic[4] = {'H', 'F', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void write_field(const std::string& path, const ComplexField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field: cannot open " + path);
  const Grid& g = f.grid();
  const std::uint32_t n = static_cast<std::uint32_t>(g.dim());
  const std::uint32_t M = static_cast<std::uint32_t>(g.points_per_axis());
  const double L = g.half_width();
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&kVersion), 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&M), 4);
  out.write(reinterpret_cast<const char*>(&L), 8);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(Complex)));
  if (!out) throw std::runtime_error("write_field: short write to " + path);
}

ComplexField read_field(const std::string& path, Space space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_field: cannot open " + path);
  char magic[4];
  std::uint32_t version = 0, n = 0, M = 0;
  double L = 0.0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&M), 4);
  in.read(reinterpret_cast<char*>(&L), 8);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_field: bad magic in " + path);
  if (version != kVersion)
    throw std::runtime_error("read_field: unsupported version in " + path);

  GridSpec spec{static_cast<int>(n), static_cast<int>(M), L};
  auto grid = Grid::make(spec);
  std::vector<Complex> values(grid->size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(Complex)));
  if (!in) throw std::runtime_error("read_field: truncated data in " + path);
  return ComplexField(grid, space, std::move(values));
}

}  // namespace hfscatter::spectral
