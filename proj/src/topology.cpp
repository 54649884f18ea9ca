#include "netprobe/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "netprobe/rng.hpp"

namespace netprobe {

namespace {

std::string edge_desc(std::size_t index, const Edge& e) {
  std::ostringstream os;
  os << "edge " << index << " (" << e.u << ", " << e.v << ")";
  return os.str();
}

}  // namespace

Topology::Topology(
    std::vector<std::string> nodes, std::vector<Edge> edges,
    std::optional<std::vector<std::vector<std::uint32_t>>> path_override)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw std::invalid_argument("duplicate node id in topology");
  }
  if (nodes_.empty()) throw std::invalid_argument("topology has no nodes");

  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  adjacency_.resize(nodes_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.u > e.v) std::swap(e.u, e.v);
    const auto u_it = std::lower_bound(nodes_.begin(), nodes_.end(), e.u);
    if (u_it == nodes_.end() || *u_it != e.u) {
      throw std::invalid_argument(edge_desc(i, e) + ": unknown node \"" +
                                  e.u + "\"");
    }
    const auto v_it = std::lower_bound(nodes_.begin(), nodes_.end(), e.v);
    if (v_it == nodes_.end() || *v_it != e.v) {
      throw std::invalid_argument(edge_desc(i, e) + ": unknown node \"" +
                                  e.v + "\"");
    }
    if (e.u == e.v) {
      throw std::invalid_argument(edge_desc(i, e) + ": self-loop");
    }
    if (!(e.latency_s > 0.0) || !std::isfinite(e.latency_s)) {
      throw std::invalid_argument(edge_desc(i, e) +
                                  ": latency_s must be positive and finite");
    }
    const std::uint32_t ui =
        static_cast<std::uint32_t>(u_it - nodes_.begin());
    const std::uint32_t vi =
        static_cast<std::uint32_t>(v_it - nodes_.begin());
    if (!seen.insert({ui, vi}).second) {
      throw std::invalid_argument(edge_desc(i, e) + ": duplicate edge");
    }
    const std::uint32_t ei = static_cast<std::uint32_t>(i);
    adjacency_[ui].push_back({vi, ei});
    adjacency_[vi].push_back({ui, ei});
  }

  if (path_override.has_value()) {
    // Validate each override entry as a simple connected path and reject
    // duplicates.
    std::set<std::vector<std::uint32_t>> canonical;
    for (std::size_t p = 0; p < path_override->size(); ++p) {
      const auto& path = (*path_override)[p];
      if (path.empty()) {
        throw std::invalid_argument("path " + std::to_string(p) +
                                    ": empty edge list");
      }
      std::map<std::uint32_t, int> degree;
      std::set<std::uint32_t> distinct;
      for (std::uint32_t e : path) {
        if (e >= edges_.size()) {
          throw std::invalid_argument("path " + std::to_string(p) +
                                      ": edge index " + std::to_string(e) +
                                      " out of range");
        }
        if (!distinct.insert(e).second) {
          throw std::invalid_argument("path " + std::to_string(p) +
                                      ": repeated edge index " +
                                      std::to_string(e));
        }
        const auto [a, b] = edge_endpoints(e);
        degree[a] += 1;
        degree[b] += 1;
      }
      int odd = 0;
      for (const auto& [node, deg] : degree) {
        if (deg > 2) {
          throw std::invalid_argument("path " + std::to_string(p) +
                                      ": node " + nodes_[node] +
                                      " visited more than once");
        }
        if (deg == 1) ++odd;
      }
      if (odd != 2 || degree.size() != path.size() + 1) {
        throw std::invalid_argument("path " + std::to_string(p) +
                                    ": edges do not form a simple path");
      }
      std::vector<std::uint32_t> sorted(path.begin(), path.end());
      std::sort(sorted.begin(), sorted.end());
      if (!canonical.insert(sorted).second) {
        throw std::invalid_argument("path " + std::to_string(p) +
                                    ": duplicate path");
      }
    }
    path_override_ = std::move(path_override);
  }
}

std::uint32_t Topology::node_index(const std::string& id) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) {
    throw std::invalid_argument("unknown node \"" + id + "\"");
  }
  return static_cast<std::uint32_t>(it - nodes_.begin());
}

std::pair<std::uint32_t, std::uint32_t> Topology::edge_endpoints(
    std::uint32_t e) const {
  const Edge& edge = edges_.at(e);
  return {node_index(edge.u), node_index(edge.v)};
}

bool Topology::is_connected() const {
  if (nodes_.empty()) return false;
  std::vector<char> seen(nodes_.size(), 0);
  std::deque<std::uint32_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : adjacency_[u]) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        ++reached;
        queue.push_back(nb.node);
      }
    }
  }
  return reached == nodes_.size();
}

Topology load_topology(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open topology file: " + file.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw std::runtime_error("topology file " + file.string() + ": " +
                             err.what());
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw std::runtime_error("topology file " + file.string() +
                             ": missing \"nodes\" array");
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw std::runtime_error("topology file " + file.string() +
                             ": missing \"edges\" array");
  }
  std::vector<std::string> nodes;
  for (const auto& n : doc["nodes"]) nodes.push_back(n.get<std::string>());
  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    edges.push_back(Edge{e.at("u").get<std::string>(),
                         e.at("v").get<std::string>(),
                         e.at("latency_s").get<double>()});
  }
  std::optional<std::vector<std::vector<std::uint32_t>>> override;
  if (doc.contains("paths")) {
    override = doc["paths"].get<std::vector<std::vector<std::uint32_t>>>();
  }
  try {
    return Topology(std::move(nodes), std::move(edges), std::move(override));
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error("topology file " + file.string() + ": " +
                             err.what());
  }
}

void save_topology(const Topology& topology,
                   const std::filesystem::path& file) {
  nlohmann::json doc;
  doc["nodes"] = topology.nodes();
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : topology.edges()) {
    doc["edges"].push_back(
        {{"u", e.u}, {"v", e.v}, {"latency_s", e.latency_s}});
  }
  if (topology.path_override().has_value()) {
    doc["paths"] = *topology.path_override();
  }
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write topology file: " + file.string());
  }
  out << doc.dump(2) << "\n";
}

Topology generate_geometric_topology(int n_nodes, double connection_radius,
                                     std::uint64_t seed) {
  if (n_nodes < 2) {
    throw std::invalid_argument("generator needs at least 2 nodes");
  }
  if (connection_radius < 0.0) {
    throw std::invalid_argument("connection radius must be nonnegative");
  }
  constexpr int kMaxAttempts = 64;
  constexpr double kMinLatency = 0.001;
  constexpr double kMaxLatency = 0.036;

  int width = 1;
  for (int v = n_nodes - 1; v >= 10; v /= 10) ++width;
  width = std::max(width, 3);

  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<double> xs(n_nodes);
    std::vector<double> ys(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
      xs[i] = rng.uniform();
      ys[i] = rng.uniform();
    }
    struct Candidate {
      int i, j;
      double dist;
    };
    std::vector<Candidate> candidates;
    double max_dist = 0.0;
    const double r2 = connection_radius * connection_radius;
    for (int i = 0; i < n_nodes; ++i) {
      for (int j = i + 1; j < n_nodes; ++j) {
        const double dx = xs[i] - xs[j];
        const double dy = ys[i] - ys[j];
        const double d2 = dx * dx + dy * dy;
        if (d2 <= r2) {
          const double dist = std::sqrt(d2);
          candidates.push_back({i, j, dist});
          max_dist = std::max(max_dist, dist);
        }
      }
    }
    if (candidates.empty()) continue;

    // Connectivity check before building the Topology.
    std::vector<std::vector<int>> adj(n_nodes);
    for (const Candidate& c : candidates) {
      adj[c.i].push_back(c.j);
      adj[c.j].push_back(c.i);
    }
    std::vector<char> seen(n_nodes, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          queue.push_back(v);
        }
      }
    }
    if (reached != n_nodes) continue;

    const double scale = max_dist > 0.0 ? kMaxLatency / max_dist : 0.0;
    auto node_id = [width](int i) {
      std::string digits = std::to_string(i);
      return "n" + std::string(width - digits.size(), '0') + digits;
    };
    std::vector<std::string> nodes;
    nodes.reserve(n_nodes);
    for (int i = 0; i < n_nodes; ++i) nodes.push_back(node_id(i));
    std::vector<Edge> edges;
    edges.reserve(candidates.size());
    for (const Candidate& c : candidates) {
      const double latency =
          std::clamp(c.dist * scale, kMinLatency, kMaxLatency);
      edges.push_back(Edge{node_id(c.i), node_id(c.j), latency});
    }
    return Topology(std::move(nodes), std::move(edges));
  }
  throw std::runtime_error(
      "failed to generate a connected topology after " +
      std::to_string(kMaxAttempts) + " attempts (nodes=" +
      std::to_string(n_nodes) + ", radius=" +
      std::to_string(connection_radius) + ")");
}

namespace {

// Shortest-path labels per node: total latency plus the node-id sequence,
// compared lexicographically on ties. Node indices follow id order, so
// comparing index sequences matches comparing id sequences.
struct PathLabel {
  double dist = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> seq;
};

PathSet paths_from_override(const Topology& topo) {
  const auto& override = *topo.path_override();
  PathSet out;
  out.edge_count = topo.edge_count();
  struct Entry {
    std::uint32_t src, dst;
    std::vector<std::uint32_t> edges;
  };
  std::vector<Entry> entries;
  entries.reserve(override.size());
  for (const auto& path : override) {
    std::map<std::uint32_t, int> degree;
    for (std::uint32_t e : path) {
      const auto [a, b] = topo.edge_endpoints(e);
      degree[a] += 1;
      degree[b] += 1;
    }
    std::vector<std::uint32_t> ends;
    for (const auto& [node, deg] : degree) {
      if (deg == 1) ends.push_back(node);
    }
    entries.push_back(Entry{std::min(ends[0], ends[1]),
                            std::max(ends[0], ends[1]), path});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) {
              return std::tie(a.src, a.dst, a.edges) <
                     std::tie(b.src, b.dst, b.edges);
            });
  for (Entry& e : entries) {
    out.paths.push_back(std::move(e.edges));
    out.endpoints.emplace_back(e.src, e.dst);
  }
  return out;
}

}  // namespace

PathSet enumerate_paths(const Topology& topo) {
  if (topo.path_override().has_value()) return paths_from_override(topo);
  if (!topo.is_connected()) {
    throw std::runtime_error("disconnected topology: cannot enumerate paths");
  }

  const std::size_t n = topo.node_count();
  PathSet out;
  out.edge_count = topo.edge_count();
  out.paths.reserve(n * (n - 1) / 2);
  out.endpoints.reserve(n * (n - 1) / 2);

  std::vector<PathLabel> label(n);
  for (std::uint32_t src = 0; src + 1 < n; ++src) {
    for (PathLabel& l : label) {
      l.dist = std::numeric_limits<double>::infinity();
      l.seq.clear();
    }
    label[src].dist = 0.0;
    label[src].seq = {src};

    // Label-correcting sweeps; converges in at most n rounds since every
    // improvement strictly shrinks (dist, sequence) in a well-founded order.
    bool changed = true;
    std::vector<std::uint32_t> cand_seq;
    while (changed) {
      changed = false;
      for (std::uint32_t u = 0; u < n; ++u) {
        if (!std::isfinite(label[u].dist)) continue;
        for (const Topology::Neighbor& nb : topo.neighbors(u)) {
          const double cand_dist =
              label[u].dist + topo.edges()[nb.edge].latency_s;
          PathLabel& target = label[nb.node];
          bool better = false;
          if (cand_dist < target.dist) {
            better = true;
          } else if (cand_dist == target.dist) {
            cand_seq = label[u].seq;
            cand_seq.push_back(nb.node);
            better = cand_seq < target.seq;
            if (better) {
              target.dist = cand_dist;
              target.seq = cand_seq;
              changed = true;
            }
            continue;
          }
          if (better) {
            target.dist = cand_dist;
            target.seq = label[u].seq;
            target.seq.push_back(nb.node);
            changed = true;
          }
        }
      }
    }

    for (std::uint32_t dst = src + 1; dst < n; ++dst) {
      const PathLabel& l = label[dst];
      if (!std::isfinite(l.dist)) {
        throw std::runtime_error("disconnected topology: no path between " +
                                 topo.nodes()[src] + " and " +
                                 topo.nodes()[dst]);
      }
      std::vector<std::uint32_t> edges;
      edges.reserve(l.seq.size() - 1);
      for (std::size_t i = 0; i + 1 < l.seq.size(); ++i) {
        const std::uint32_t a = l.seq[i];
        const std::uint32_t b = l.seq[i + 1];
        std::uint32_t edge = 0;
        bool found = false;
        for (const Topology::Neighbor& nb : topo.neighbors(a)) {
          if (nb.node == b) {
            edge = nb.edge;
            found = true;
            break;
          }
        }
        if (!found) throw std::logic_error("path references a missing edge");
        edges.push_back(edge);
      }
      out.paths.push_back(std::move(edges));
      out.endpoints.emplace_back(src, dst);
    }
  }
  return out;
}

GroundTruth ground_truth(const Topology& topo) {
  const std::size_t d = topo.edge_count();
  if (d == 0) throw std::invalid_argument("topology has no edges");
  GroundTruth gt;
  gt.theta_latency.resize(d);
  gt.theta_loss.resize(d);
  double max_latency = 0.0;
  for (std::size_t e = 0; e < d; ++e) {
    gt.theta_latency(e) = topo.edges()[e].latency_s;
    max_latency = std::max(max_latency, topo.edges()[e].latency_s);
  }
  for (std::size_t e = 0; e < d; ++e) {
    gt.theta_loss(e) = -gt.theta_latency(e) / (10.0 * max_latency);
  }
  return gt;
}

Eigen::MatrixXd DesignMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows.size(), cols);
  for (std::size_t p = 0; p < rows.size(); ++p) {
    for (std::uint32_t e : rows[p]) m(p, e) = 1.0;
  }
  return m;
}

DesignMatrix design_matrix(const PathSet& paths) {
  if (paths.size() == 0) {
    throw std::invalid_argument("empty path set");
  }
  DesignMatrix m;
  m.cols = paths.edge_count;
  m.rows.reserve(paths.size());
  for (const auto& path : paths.paths) {
    std::vector<std::uint32_t> row(path.begin(), path.end());
    std::sort(row.begin(), row.end());
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace netprobe
