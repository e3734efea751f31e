#include <doctest.h>

#include <schrodnet/delaunay.hpp>

#include <cmath>
#include <random>
#include <set>

using namespace schrodnet;

TEST_CASE("a single triangle triangulates to itself") {
  Points2 pts(3, 2);
  pts << 0.0, 0.0, 1.0, 0.0, 0.0, 1.0;
  const Triangulation tri = delaunay_triangulate(pts);
  REQUIRE(tri.triangles.size() == 1);
  CHECK(tri.triangles[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("square picks a diagonal and keeps both triangles") {
  Points2 pts(4, 2);
  pts << 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0;
  const Triangulation tri = delaunay_triangulate(pts);
  CHECK(tri.triangles.size() == 2);
}

TEST_CASE("empty circumcircles on random point sets") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Points2 pts(40, 2);
  for (int i = 0; i < 40; ++i) {
    pts(i, 0) = dist(rng);
    pts(i, 1) = dist(rng);
  }
  const Triangulation tri = delaunay_triangulate(pts);
  REQUIRE(!tri.triangles.empty());
  for (const auto& t : tri.triangles) {
    const double ax = pts(t[0], 0), ay = pts(t[0], 1);
    const double bx = pts(t[1], 0), by = pts(t[1], 1);
    const double cx = pts(t[2], 0), cy = pts(t[2], 1);
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const double ux = ((ax * ax + ay * ay) * (by - cy) +
                       (bx * bx + by * by) * (cy - ay) +
                       (cx * cx + cy * cy) * (ay - by)) / d;
    const double uy = ((ax * ax + ay * ay) * (cx - bx) +
                       (bx * bx + by * by) * (ax - cx) +
                       (cx * cx + cy * cy) * (bx - ax)) / d;
    const double r2 = (ax - ux) * (ax - ux) + (ay - uy) * (ay - uy);
    for (int p = 0; p < 40; ++p) {
      if (p == t[0] || p == t[1] || p == t[2]) continue;
      const double d2 =
          (pts(p, 0) - ux) * (pts(p, 0) - ux) + (pts(p, 1) - uy) * (pts(p, 1) - uy);
      CHECK(d2 > r2 * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("triangulation is deterministic") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Points2 pts(25, 2);
  for (int i = 0; i < 25; ++i) {
    pts(i, 0) = dist(rng);
    pts(i, 1) = dist(rng);
  }
  CHECK(delaunay_triangulate(pts).triangles ==
        delaunay_triangulate(pts).triangles);
}

TEST_CASE("interpolation reproduces affine functions inside the hull") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Points2 pts(30, 2);
  for (int i = 0; i < 30; ++i) {
    pts(i, 0) = dist(rng);
    pts(i, 1) = dist(rng);
  }
  const Triangulation tri = delaunay_triangulate(pts);
  Vector vals(30);
  for (int i = 0; i < 30; ++i) vals(i) = 0.7 + 2.0 * pts(i, 0) - pts(i, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = 0.5 * dist(rng), y = 0.5 * dist(rng);
    CHECK(interpolate(tri, vals, x, y) ==
          doctest::Approx(0.7 + 2.0 * x - y).epsilon(1e-9));
  }
}

TEST_CASE("interpolation outside the hull falls back to the nearest node") {
  Points2 pts(3, 2);
  pts << 0.0, 0.0, 1.0, 0.0, 0.0, 1.0;
  const Triangulation tri = delaunay_triangulate(pts);
  Vector vals(3);
  vals << 5.0, -1.0, 2.0;
  CHECK(interpolate(tri, vals, 10.0, 0.0) == doctest::Approx(-1.0));
  CHECK(interpolate(tri, vals, -3.0, -3.0) == doctest::Approx(5.0));
}

TEST_CASE("cocircular ring of points still triangulates") {
  const int n = 12;
  Points2 pts(n + 1, 2);
  for (int i = 0; i < n; ++i) {
    pts(i, 0) = std::cos(2.0 * M_PI * i / n);
    pts(i, 1) = std::sin(2.0 * M_PI * i / n);
  }
  pts(n, 0) = 0.0;
  pts(n, 1) = 0.0;
  const Triangulation tri = delaunay_triangulate(pts);
  CHECK(static_cast<int>(tri.triangles.size()) == n);
  std::set<int> seen;
  for (const auto& t : tri.triangles) seen.insert(t.begin(), t.end());
  CHECK(static_cast<int>(seen.size()) == n + 1);
}
