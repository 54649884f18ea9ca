#pragma once
// Network graphs, the all-pairs shortest-path set, and the path/edge
// indicator matrix that the probing designs operate on.

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace netprobe {

struct Edge {
  std::string u;
  std::string v;
  double latency_s = 0.0;
};

// Undirected graph with strictly positive edge latencies. Node ids are
// opaque strings; internally nodes are kept sorted by id, so node indices
// follow lexicographic id order.
class Topology {
 public:
  Topology(std::vector<std::string> nodes, std::vector<Edge> edges,
           std::optional<std::vector<std::vector<std::uint32_t>>>
               path_override = std::nullopt);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::uint32_t node_index(const std::string& id) const;  // throws if unknown
  // Endpoint node indices of edge e, smaller id first.
  std::pair<std::uint32_t, std::uint32_t> edge_endpoints(std::uint32_t e) const;

  struct Neighbor {
    std::uint32_t node;
    std::uint32_t edge;
  };
  const std::vector<Neighbor>& neighbors(std::uint32_t node) const {
    return adjacency_[node];
  }

  bool is_connected() const;

  // Paths supplied by the input file instead of shortest-path enumeration.
  const std::optional<std::vector<std::vector<std::uint32_t>>>& path_override()
      const {
    return path_override_;
  }

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::optional<std::vector<std::vector<std::uint32_t>>> path_override_;
};

// Reads a topology file: {"nodes": [id, ...],
// "edges": [{"u": id, "v": id, "latency_s": seconds}, ...]} plus an
// optional "paths": [[edge index, ...], ...] override.
Topology load_topology(const std::filesystem::path& file);
void save_topology(const Topology& topology, const std::filesystem::path& file);

// Random geometric graph on the unit square: nodes placed uniformly,
// edges between pairs within connection_radius, latency proportional to
// distance and clamped into [0.001 s, 0.036 s]. Placement is retried a
// bounded number of times until the graph is connected.
Topology generate_geometric_topology(int n_nodes, double connection_radius,
                                     std::uint64_t seed);

// One path per unordered node pair; edge indices ordered along the walk
// from source to destination, source id < destination id.
struct PathSet {
  std::vector<std::vector<std::uint32_t>> paths;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints;
  std::size_t edge_count = 0;

  std::size_t size() const { return paths.size(); }
};

// Latency-weighted shortest path for every unordered node pair, ties broken
// by the lexicographically smallest node-id sequence. Honors the topology's
// path override when present. Throws on disconnected topologies.
PathSet enumerate_paths(const Topology& topology);

struct GroundTruth {
  Eigen::VectorXd theta_latency;  // seconds per edge
  Eigen::VectorXd theta_loss;     // log survival probability per edge, <= 0
};

// theta_latency(e) = latency of e; theta_loss(e) = -latency(e) / (10 * max
// edge latency), so the longest edge sits at -0.1 exactly.
GroundTruth ground_truth(const Topology& topology);

// Binary path/edge incidence. Rows hold the sorted edge indices of each
// path; dense() materializes the |paths| x d 0/1 matrix.
struct DesignMatrix {
  std::vector<std::vector<std::uint32_t>> rows;
  std::size_t cols = 0;

  std::size_t row_count() const { return rows.size(); }
  Eigen::MatrixXd dense() const;
};

DesignMatrix design_matrix(const PathSet& paths);

}  // namespace netprobe
