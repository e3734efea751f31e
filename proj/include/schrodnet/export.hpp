#pragma once

#include <schrodnet/disk_grid.hpp>
#include <schrodnet/netgraph.hpp>
#include <schrodnet/netops.hpp>

#include <string>

namespace schrodnet {

/// CSV with header "r,theta,value", one row per cell.
void save_field_csv(const DiskGrid& grid, const DiskField& field,
                    const std::string& path);

/// Rasterized heatmap of a disk field on a width x width canvas, fixed
/// diverging colormap, cells sampled by nearest polar index, pixels
/// outside the disk white. A JSON sidecar (path + ".json") records the
/// color range so the figure can be regenerated.
void save_field_png(const DiskGrid& grid, const DiskField& field,
                    const std::string& path, int width = 512,
                    double vmin = 0.0, double vmax = 0.0);

/// Network with its embedding and edge tags as JSON.
void save_network_json(const CircularNetwork& net, const std::string& path);

/// CSV with header "edge,layer,pos,radial,gamma".
void save_conductivity_csv(const CircularNetwork& net,
                           const Conductivity& gamma, const std::string& path);

/// CSV with header "x,y", one row per point.
void save_points_csv(const Points2& points, const std::string& path);

}  // namespace schrodnet
