#include "onsager/field_io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "onsager/error.hpp"
#include "onsager/table.hpp"

namespace onsager {

namespace {

constexpr std::array<char, 8> kMagic{'O', 'N', 'S', 'F', 'L', 'D', '0', '1'};

template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!in) throw InvalidArgument("truncated field file");
  return value;
}

Grid grid_from_header(int dim, int n, int nt, double length, double dt, double t0) {
  return nt > 0 ? make_spacetime_grid(dim, n, length, nt, dt, t0) : make_grid(dim, n, length);
}

}  // namespace

void write_field_binary(const Field& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const Grid& g = field.grid();
  out.write(kMagic.data(), kMagic.size());
  put<std::int32_t>(out, g.dim);
  put<std::int32_t>(out, g.n);
  put<std::int32_t>(out, g.nt);
  put<std::int32_t>(out, field.components());
  put(out, g.length);
  put(out, g.dt);
  put(out, g.t0);
  auto d = field.data();
  out.write(reinterpret_cast<const char*>(d.data()), static_cast<std::streamsize>(d.size_bytes()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Field read_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw InvalidArgument(path.string() + " is not a field file");
  const int dim = get<std::int32_t>(in);
  const int n = get<std::int32_t>(in);
  const int nt = get<std::int32_t>(in);
  const int components = get<std::int32_t>(in);
  const double length = get<double>(in);
  const double dt = get<double>(in);
  const double t0 = get<double>(in);
  const Grid g = grid_from_header(dim, n, nt, length, dt, t0);
  require(components >= 1 && components <= 16, "field file has an invalid component count");
  std::vector<double> data(g.samples() * components);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!in) throw InvalidArgument("truncated field file");
  return Field(g, components, std::move(data));
}

void write_field_csv(const Field& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const Grid& g = field.grid();
  out << "dim,n,nt,components,length,dt,t0\n";
  out << g.dim << ',' << g.n << ',' << g.nt << ',' << field.components() << ','
      << format_double(g.length) << ',' << format_double(g.dt) << ',' << format_double(g.t0) << '\n';
  auto d = field.data();
  const int c = field.components();
  for (std::size_t i = 0; i < d.size(); i += c) {
    for (int k = 0; k < c; ++k) out << (k ? "," : "") << format_double(d[i + k]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Field read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  require(line.rfind("dim,n,nt,components", 0) == 0, path.string() + " lacks a field header");
  std::getline(in, line);
  std::replace(line.begin(), line.end(), ',', ' ');
  std::istringstream meta(line);
  int dim = 0, n = 0, nt = 0, components = 0;
  double length = 0, dt = 0, t0 = 0;
  meta >> dim >> n >> nt >> components >> length >> dt >> t0;
  require(static_cast<bool>(meta), "malformed field header values");
  const Grid g = grid_from_header(dim, n, nt, length, dt, t0);
  std::vector<double> data;
  data.reserve(g.samples() * components);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = line.find(',', pos);
      const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      data.push_back(std::stod(cell));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return Field(g, components, std::move(data));
}

}  // namespace onsager
