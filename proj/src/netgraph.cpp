#include <schrodnet/netgraph.hpp>
#include <schrodnet/netops.hpp>

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace schrodnet {

CircularNetwork build_cmn(int n) {
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("build_cmn: n must be odd and >= 5");

  const int m = (n - 1) / 2;
  const int full_rings = m / 2;        // interior rings of n nodes each
  const bool has_center = (m % 2 == 1);

  CircularNetwork g;
  g.n_boundary = n;
  g.num_layers = m;
  g.num_nodes = n + full_rings * n + (has_center ? 1 : 0);

  const double two_pi = 2.0 * std::numbers::pi;
  g.node_r.resize(g.num_nodes);
  g.node_theta.resize(g.num_nodes);
  auto ring_node = [n](int ring, int j) { return ring * n + (j % n + n) % n; };
  const int center = g.num_nodes - 1;  // valid only when has_center

  // ring 0 is the boundary circle; interior rings move inward
  const int ring_count = full_rings + (has_center ? 1 : 0);
  for (int t = 0; t <= full_rings; ++t) {
    const double r = double(ring_count + 1 - t) / double(ring_count + 1);
    for (int j = 0; j < n; ++j) {
      g.node_r[ring_node(t, j)] = r;
      g.node_theta[ring_node(t, j)] = two_pi * j / n;
    }
  }
  if (has_center) {
    g.node_r[center] = 0.0;
    g.node_theta[center] = 0.0;
  }

  auto add_edge = [&](int a, int b, int layer, int pos, bool radial) {
    if (a > b) std::swap(a, b);
    g.edges.push_back({a, b});
    g.tags.push_back({layer, pos, radial});
  };

  for (int layer = 1; layer <= m; ++layer) {
    if (layer % 2 == 1) {
      const int t = (layer + 1) / 2;  // connects ring t-1 to ring t
      const bool to_center = (layer == m) && has_center;
      for (int j = 0; j < n; ++j)
        add_edge(ring_node(t - 1, j), to_center ? center : ring_node(t, j),
                 layer, j, true);
    } else {
      const int t = layer / 2;  // cycle on ring t
      for (int j = 0; j < n; ++j)
        add_edge(ring_node(t, j), ring_node(t, j + 1), layer, j, false);
    }
  }
  return g;
}

LineGraphModel line_graph(const Network& g) {
  LineGraphModel lg;
  lg.num_base_edges = g.num_edges();
  std::vector<std::vector<int>> incident(g.num_nodes);
  for (int e = 0; e < g.num_edges(); ++e) {
    incident[g.edges[e][0]].push_back(e);
    incident[g.edges[e][1]].push_back(e);
  }
  std::set<std::array<int, 2>> seen;
  for (const auto& inc : incident)
    for (size_t a = 0; a < inc.size(); ++a)
      for (size_t b = a + 1; b < inc.size(); ++b) {
        std::array<int, 2> le{std::min(inc[a], inc[b]), std::max(inc[a], inc[b])};
        if (seen.insert(le).second) lg.edges.push_back(le);
      }
  std::sort(lg.edges.begin(), lg.edges.end());
  return lg;
}

bool criticality_check(const Network& g) {
  const int nut = upper_tri_count(g.n_boundary);
  if (g.num_edges() != nut) return false;
  const Conductivity gamma = Vector::Ones(g.num_edges());
  const Matrix jac = network_dtn_jacobian(g, gamma);
  Eigen::JacobiSVD<Matrix> svd(jac);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0) return false;
  return sv(0) / sv(sv.size() - 1) < 1e12;
}

int rotated_edge(const CircularNetwork& g, int e) {
  const auto& t = g.tags[e];
  const int n = g.n_boundary;
  for (int f = 0; f < g.num_edges(); ++f)
    if (g.tags[f].layer == t.layer && g.tags[f].pos == (t.pos + 1) % n)
      return f;
  throw std::logic_error("rotated_edge: image not found");
}

}  // namespace schrodnet
