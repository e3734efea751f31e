#include <schrodnet/export.hpp>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace schrodnet {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void put_be32(std::string& s, uint32_t v) {
  s.push_back(static_cast<char>((v >> 24) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>(v & 0xff));
}

void write_chunk(std::ofstream& out, const char* type, const std::string& data) {
  std::string head;
  put_be32(head, static_cast<uint32_t>(data.size()));
  head.append(type, 4);
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  uint32_t crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(type), 4);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()),
              static_cast<uInt>(data.size()));
  std::string tail;
  put_be32(tail, crc);
  out.write(tail.data(), 4);
}

// Blue-white-red diverging map on t in [0, 1].
std::array<uint8_t, 3> colormap(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto lerp = [](double a, double b, double s) {
    return static_cast<uint8_t>(std::lround(a + (b - a) * s));
  };
  if (t < 0.5) {
    const double s = 2.0 * t;
    return {lerp(33, 247, s), lerp(102, 247, s), lerp(172, 247, s)};
  }
  const double s = 2.0 * t - 1.0;
  return {lerp(247, 178, s), lerp(247, 24, s), lerp(247, 43, s)};
}

void write_png(const std::string& path, int w, int h,
               const std::vector<uint8_t>& rgb) {
  std::string raw;
  raw.reserve(static_cast<size_t>(h) * (1 + 3 * w));
  for (int y = 0; y < h; ++y) {
    raw.push_back('\0');
    raw.append(reinterpret_cast<const char*>(&rgb[static_cast<size_t>(y) * 3 * w]),
               static_cast<size_t>(3) * w);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string packed(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(packed.data()), &bound,
                reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), 9) != Z_OK)
    throw std::runtime_error("png compression failed");
  packed.resize(bound);

  auto out = open_out(path, true);
  static const char sig[8] = {'\x89', 'P', 'N', 'G', '\r', '\n', '\x1a', '\n'};
  out.write(sig, 8);
  std::string ihdr;
  put_be32(ihdr, static_cast<uint32_t>(w));
  put_be32(ihdr, static_cast<uint32_t>(h));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // truecolor
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  write_chunk(out, "IHDR", ihdr);
  write_chunk(out, "IDAT", packed);
  write_chunk(out, "IEND", "");
}

}  // namespace

void save_field_csv(const DiskGrid& grid, const DiskField& field,
                    const std::string& path) {
  auto out = open_out(path);
  out.precision(17);
  out << "r,theta,value\n";
  for (int c = 0; c < grid.num_cells(); ++c)
    out << grid.cell_r(c) << ',' << grid.cell_theta(c) << ',' << field(c)
        << '\n';
}

void save_field_png(const DiskGrid& grid, const DiskField& field,
                    const std::string& path, int width, double vmin,
                    double vmax) {
  if (vmin == vmax) {
    vmin = field.minCoeff();
    vmax = field.maxCoeff();
    if (vmin == vmax) vmax = vmin + 1.0;
  }
  std::vector<uint8_t> rgb(static_cast<size_t>(width) * width * 3, 255);
  for (int py = 0; py < width; ++py)
    for (int px = 0; px < width; ++px) {
      const double x = 2.0 * (px + 0.5) / width - 1.0;
      const double y = 1.0 - 2.0 * (py + 0.5) / width;
      const double r = std::hypot(x, y);
      if (r >= 1.0) continue;
      double theta = std::atan2(y, x);
      if (theta < 0.0) theta += 2.0 * M_PI;
      int cell;
      const int ring = static_cast<int>(r / grid.dr());
      if (ring == 0) {
        cell = grid.center_cell();
      } else {
        const int i = std::min(ring, grid.nr() - 1);
        const int j = static_cast<int>(theta / grid.dtheta());
        cell = grid.cell(i, j);
      }
      const auto c = colormap((field(cell) - vmin) / (vmax - vmin));
      const size_t at = 3 * (static_cast<size_t>(py) * width + px);
      rgb[at] = c[0];
      rgb[at + 1] = c[1];
      rgb[at + 2] = c[2];
    }
  write_png(path, width, width, rgb);

  nlohmann::json side;
  side["vmin"] = vmin;
  side["vmax"] = vmax;
  side["width"] = width;
  side["colormap"] = "diverging-blue-white-red";
  open_out(path + ".json") << side.dump(2) << '\n';
}

void save_network_json(const CircularNetwork& net, const std::string& path) {
  nlohmann::json j;
  j["num_nodes"] = net.num_nodes;
  j["n_boundary"] = net.n_boundary;
  j["num_layers"] = net.num_layers;
  j["node_r"] = net.node_r;
  j["node_theta"] = net.node_theta;
  nlohmann::json edges = nlohmann::json::array();
  for (int e = 0; e < net.num_edges(); ++e)
    edges.push_back({{"a", net.edges[e][0]},
                     {"b", net.edges[e][1]},
                     {"layer", net.tags[e].layer},
                     {"pos", net.tags[e].pos},
                     {"radial", net.tags[e].radial}});
  j["edges"] = edges;
  open_out(path) << j.dump(2) << '\n';
}

void save_conductivity_csv(const CircularNetwork& net,
                           const Conductivity& gamma, const std::string& path) {
  auto out = open_out(path);
  out.precision(17);
  out << "edge,layer,pos,radial,gamma\n";
  for (int e = 0; e < net.num_edges(); ++e)
    out << e << ',' << net.tags[e].layer << ',' << net.tags[e].pos << ','
        << (net.tags[e].radial ? 1 : 0) << ',' << gamma(e) << '\n';
}

void save_points_csv(const Points2& points, const std::string& path) {
  auto out = open_out(path);
  out.precision(17);
  out << "x,y\n";
  for (int i = 0; i < points.rows(); ++i)
    out << points(i, 0) << ',' << points(i, 1) << '\n';
}

}  // namespace schrodnet
