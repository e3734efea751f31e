#include <schrodnet/phantom.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace schrodnet {

double Phantom::operator()(double x, double y) const {
  double v = 0.0;
  for (const auto& g : gaussians) {
    const double dx = x - g.cx, dy = y - g.cy;
    v += g.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * g.width * g.width));
  }
  for (const auto& d : disks) {
    const double dx = x - d.cx, dy = y - d.cy;
    if (dx * dx + dy * dy <= d.radius * d.radius) v += d.value;
  }
  return std::max(0.0, v);
}

DiskField Phantom::sample(const DiskGrid& grid) const {
  return grid.sample([this](double x, double y) { return (*this)(x, y); });
}

Phantom Phantom::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Phantom p;
  for (const auto& prim : j.at("primitives")) {
    if (prim.contains("gaussian")) {
      const auto& g = prim["gaussian"];
      p.gaussians.push_back({g.at("center")[0], g.at("center")[1],
                             g.at("width"), g.at("amplitude")});
    } else if (prim.contains("disk")) {
      const auto& d = prim["disk"];
      p.disks.push_back({d.at("center")[0], d.at("center")[1], d.at("radius"),
                         d.at("value")});
    } else {
      throw std::runtime_error("phantom: unknown primitive");
    }
  }
  return p;
}

Phantom Phantom::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

std::string Phantom::to_json() const {
  nlohmann::json prims = nlohmann::json::array();
  for (const auto& g : gaussians)
    prims.push_back({{"gaussian",
                      {{"center", {g.cx, g.cy}},
                       {"width", g.width},
                       {"amplitude", g.amplitude}}}});
  for (const auto& d : disks)
    prims.push_back({{"disk",
                      {{"center", {d.cx, d.cy}},
                       {"radius", d.radius},
                       {"value", d.value}}}});
  return nlohmann::json{{"primitives", prims}}.dump(2);
}

Phantom Phantom::smooth_benchmark() {
  Phantom p;
  p.gaussians.push_back({0.3, 0.2, 0.3, 2.0});
  return p;
}

Phantom Phantom::piecewise_benchmark() {
  Phantom p;
  p.disks.push_back({-0.35, 0.25, 0.25, 2.0});
  p.disks.push_back({0.35, -0.3, 0.2, 2.0});
  return p;
}

}  // namespace schrodnet
