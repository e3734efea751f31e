#pragma once

#include <schrodnet/types.hpp>

namespace schrodnet {

/// Undirected graph with a boundary/interior node partition.
/// Nodes 0..n_boundary-1 are boundary nodes, the rest are interior.
/// Each edge {a,b} is stored with a < b; the sign convention for the
/// discrete gradient is +1 at the smaller node index.
struct Network {
  int num_nodes = 0;
  int n_boundary = 0;
  std::vector<std::array<int, 2>> edges;

  int num_interior() const { return num_nodes - n_boundary; }
  int num_edges() const { return static_cast<int>(edges.size()); }
  bool is_boundary(int v) const { return v < n_boundary; }
};

/// Layered circular planar network with n boundary nodes on the outer
/// circle and alternating radial/angular layers going inward.
struct CircularNetwork : Network {
  struct EdgeTag {
    int layer;    // 1-based, counted from the boundary inward
    int pos;      // angular position 0..n-1
    bool radial;  // radial spoke vs angular ring edge
  };
  int num_layers = 0;
  std::vector<EdgeTag> tags;
  std::vector<double> node_r, node_theta;  // embedding for plotting
};

/// Build the critical network with n odd boundary nodes and
/// m = (n-1)/2 alternating layers, outermost layer radial. The edge
/// count is n(n-1)/2, matching the independent entries of the DtN map.
/// Throws std::invalid_argument for even or too-small n.
CircularNetwork build_cmn(int n);

/// Line graph: one node per edge of the base graph, an edge whenever
/// two base edges share a node. Node ordering follows base-edge indices.
struct LineGraphModel {
  int num_base_edges = 0;
  std::vector<std::array<int, 2>> edges;  // pairs of base-edge indices, a < b
};

LineGraphModel line_graph(const Network& g);

/// Numerical criticality test: true iff |E| equals the number of
/// independent DtN entries and the DtN Jacobian with respect to the
/// conductances at gamma = 1 is nonsingular (condition below 1e12).
bool criticality_check(const Network& g);

/// Index of the image of edge e under the rotation by one boundary step
/// (2*pi/n). Only meaningful for networks from build_cmn.
int rotated_edge(const CircularNetwork& g, int e);

}  // namespace schrodnet
