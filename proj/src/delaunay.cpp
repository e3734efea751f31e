#include <schrodnet/delaunay.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace schrodnet {

namespace {

struct Pt {
  double x, y;
};

// Positive if (a,b,c) is counter-clockwise.
double orient(const Pt& a, const Pt& b, const Pt& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Positive if d lies strictly inside the circumcircle of ccw (a,b,c).
double in_circle(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  const long double ax = a.x - d.x, ay = a.y - d.y;
  const long double bx = b.x - d.x, by = b.y - d.y;
  const long double cx = c.x - d.x, cy = c.y - d.y;
  const long double det =
      (ax * ax + ay * ay) * (bx * cy - by * cx) -
      (bx * bx + by * by) * (ax * cy - ay * cx) +
      (cx * cx + cy * cy) * (ax * by - ay * bx);
  return static_cast<double>(det);
}

}  // namespace

Triangulation delaunay_triangulate(const Points2& points) {
  const int n = static_cast<int>(points.rows());
  if (n < 3) throw std::invalid_argument("delaunay: need at least 3 points");

  std::vector<Pt> pts(n + 3);
  double span = 0.0, cx = 0.0, cy = 0.0;
  for (int i = 0; i < n; ++i) {
    pts[i] = {points(i, 0), points(i, 1)};
    cx += pts[i].x;
    cy += pts[i].y;
  }
  cx /= n;
  cy /= n;
  for (int i = 0; i < n; ++i)
    span = std::max({span, std::abs(pts[i].x - cx), std::abs(pts[i].y - cy)});
  if (span == 0.0) throw std::invalid_argument("delaunay: degenerate points");
  const double big = 64.0 * span;
  pts[n] = {cx - big, cy - big};
  pts[n + 1] = {cx + big, cy - big};
  pts[n + 2] = {cx, cy + big};

  std::vector<std::array<int, 3>> tris{{n, n + 1, n + 2}};
  // slight tolerance keeps cocircular rings from flip-flopping
  const double eps = 1e-12 * span * span * span * span;

  for (int p = 0; p < n; ++p) {
    std::vector<std::array<int, 3>> bad, keep;
    for (const auto& t : tris) {
      if (in_circle(pts[t[0]], pts[t[1]], pts[t[2]], pts[p]) > eps)
        bad.push_back(t);
      else
        keep.push_back(t);
    }
    // boundary of the cavity: edges appearing exactly once among bad triangles
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : bad)
      for (int k = 0; k < 3; ++k) {
        int a = t[k], b = t[(k + 1) % 3];
        if (a > b) std::swap(a, b);
        count[{a, b}]++;
      }
    tris = std::move(keep);
    for (const auto& t : bad)
      for (int k = 0; k < 3; ++k) {
        int a = t[k], b = t[(k + 1) % 3];
        int lo = std::min(a, b), hi = std::max(a, b);
        if (count[{lo, hi}] == 1) {
          std::array<int, 3> nt{a, b, p};
          if (orient(pts[nt[0]], pts[nt[1]], pts[nt[2]]) < 0.0)
            std::swap(nt[0], nt[1]);
          tris.push_back(nt);
        }
      }
  }

  Triangulation out;
  out.points = points;
  for (const auto& t : tris)
    if (t[0] < n && t[1] < n && t[2] < n) {
      std::array<int, 3> s = t;
      // canonical vertex order for determinism
      const int m = static_cast<int>(
          std::min_element(s.begin(), s.end()) - s.begin());
      std::rotate(s.begin(), s.begin() + m, s.end());
      out.triangles.push_back(s);
    }
  std::sort(out.triangles.begin(), out.triangles.end());
  return out;
}

double interpolate(const Triangulation& tri, const Vector& values, double x,
                   double y) {
  const Pt p{x, y};
  for (const auto& t : tri.triangles) {
    const Pt a{tri.points(t[0], 0), tri.points(t[0], 1)};
    const Pt b{tri.points(t[1], 0), tri.points(t[1], 1)};
    const Pt c{tri.points(t[2], 0), tri.points(t[2], 1)};
    const double area = orient(a, b, c);
    if (area == 0.0) continue;
    const double wa = orient(p, b, c) / area;
    const double wb = orient(a, p, c) / area;
    const double wc = orient(a, b, p) / area;
    const double tol = -1e-12;
    if (wa >= tol && wb >= tol && wc >= tol)
      return wa * values(t[0]) + wb * values(t[1]) + wc * values(t[2]);
  }
  // outside the hull: nearest node
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < tri.points.rows(); ++i) {
    const double dx = tri.points(i, 0) - x, dy = tri.points(i, 1) - y;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return values(best);
}

}  // namespace schrodnet
