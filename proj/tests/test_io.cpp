#include <doctest.h>

#include <schrodnet/export.hpp>
#include <schrodnet/measurement.hpp>
#include <schrodnet/netgraph.hpp>
#include <schrodnet/phantom.hpp>
#include <schrodnet/regularize.hpp>

#include <cstdio>
#include <fstream>
#include <random>

using namespace schrodnet;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("measurement matrices survive a JSON round trip exactly") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 5;
    Matrix off(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) off(i, j) = dist(rng);
    const MeasurementMatrix M = MeasurementMatrix::from_offdiag(off);
    const MeasurementMatrix back = measurements_from_json(measurements_to_json(M));
    CHECK(back.m == M.m);
  }
}

TEST_CASE("measurement file round trip") {
  TempFile tmp("schrodnet_test_meas.json");
  Matrix off(4, 4);
  off.setConstant(-0.25);
  const MeasurementMatrix M = MeasurementMatrix::from_offdiag(off);
  save_measurements(M, tmp.path);
  CHECK(load_measurements(tmp.path).m == M.m);
}

TEST_CASE("malformed measurement JSON is rejected") {
  CHECK_THROWS(measurements_from_json("{\"n\": 3, \"entries\": [1, 2]}"));
  CHECK_THROWS(measurements_from_json("not json"));
}

TEST_CASE("phantoms survive a JSON round trip") {
  Phantom p;
  p.gaussians.push_back({0.1, -0.2, 0.4, 1.5});
  p.disks.push_back({-0.3, 0.0, 0.2, 2.0});
  const Phantom back = Phantom::from_json(p.to_json());
  REQUIRE(back.gaussians.size() == 1);
  REQUIRE(back.disks.size() == 1);
  CHECK(back.gaussians[0].cx == p.gaussians[0].cx);
  CHECK(back.gaussians[0].amplitude == p.gaussians[0].amplitude);
  CHECK(back.disks[0].radius == p.disks[0].radius);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  for (int trial = 0; trial < 25; ++trial) {
    const double x = dist(rng), y = dist(rng);
    CHECK(back(x, y) == p(x, y));
  }
}

TEST_CASE("lumping plans survive a JSON round trip") {
  const LumpingPlan plan = LumpingPlan::uniform(17, 5);
  const LumpingPlan back = LumpingPlan::from_json(plan.to_json());
  CHECK(back.original_n == plan.original_n);
  CHECK(back.target_n == plan.target_n);
  CHECK(back.sets == plan.sets);
  CHECK(back.weights == plan.weights);
}

TEST_CASE("field CSV export writes one row per cell") {
  TempFile tmp("schrodnet_test_field.csv");
  const DiskGrid grid(4, 6);
  save_field_csv(grid, Vector::Ones(grid.num_cells()), tmp.path);
  std::ifstream in(tmp.path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == grid.num_cells() + 1);
}

TEST_CASE("PNG export emits a valid signature and a sidecar") {
  TempFile tmp("schrodnet_test_field.png");
  TempFile side("schrodnet_test_field.png.json");
  const DiskGrid grid(8, 12);
  const DiskField f = grid.sample([](double x, double y) { return x + y; });
  save_field_png(grid, f, tmp.path, 64);

  std::ifstream in(tmp.path, std::ios::binary);
  REQUIRE(in.good());
  unsigned char sig[8];
  in.read(reinterpret_cast<char*>(sig), 8);
  CHECK(sig[0] == 0x89);
  CHECK(sig[1] == 'P');
  CHECK(sig[2] == 'N');
  CHECK(sig[3] == 'G');
  CHECK(std::ifstream(side.path).good());
}

TEST_CASE("network JSON export lists every edge with its tag") {
  TempFile tmp("schrodnet_test_net.json");
  const CircularNetwork net = build_cmn(7);
  save_network_json(net, tmp.path);
  std::ifstream in(tmp.path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"n_boundary\": 7") != std::string::npos);
  size_t count = 0, at = 0;
  while ((at = text.find("\"layer\"", at)) != std::string::npos) {
    ++count;
    ++at;
  }
  CHECK(count == static_cast<size_t>(net.num_edges()));
}
