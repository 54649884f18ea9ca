#pragma once
// Feasible region for probing distributions: the simplex over paths,
// optionally intersected with per-source / per-destination probability
// caps, plus the exact linear minimization oracle over that polytope.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netprobe/topology.hpp"

namespace netprobe {

struct CapGroup {
  std::string label;                  // e.g. "src n007"
  std::vector<std::uint32_t> paths;   // member path indices
  double cap = 1.0;                   // in (0, 1]
};

class ConstraintSet {
 public:
  static ConstraintSet simplex(std::size_t n_paths);
  // Groups on each side must be disjoint; paths outside every group of a
  // side are uncapped on that side. When a side's groups cover all paths,
  // the caps must sum to at least 1 or the region is empty.
  static ConstraintSet with_caps(std::size_t n_paths,
                                 std::vector<CapGroup> source_caps,
                                 std::vector<CapGroup> destination_caps);

  std::size_t path_count() const { return n_paths_; }
  bool has_caps() const {
    return !source_caps_.empty() || !destination_caps_.empty();
  }
  const std::vector<CapGroup>& source_caps() const { return source_caps_; }
  const std::vector<CapGroup>& destination_caps() const {
    return destination_caps_;
  }

  // Largest violation of nonnegativity, sum-to-one, or a cap; 0 means
  // exactly feasible.
  double violation(const Eigen::VectorXd& alpha) const;
  bool is_feasible(const Eigen::VectorXd& alpha, double tol = 1e-9) const;

 private:
  ConstraintSet() = default;
  std::size_t n_paths_ = 0;
  std::vector<CapGroup> source_caps_;
  std::vector<CapGroup> destination_caps_;
};

// Caps per source and per destination node: (paths at that endpoint)/|X| +
// excess_budget, clamped to 1. Without an excess budget, just the simplex.
ConstraintSet build_constraints(const PathSet& paths,
                                std::optional<double> excess_budget);

// Exact minimizer of gradient . alpha over the polytope. Simplex-only: all
// mass on the smallest gradient entry (lowest index on ties). With caps:
// solved exactly as a min-cost flow over the source/destination
// transportation structure, one unit of total flow, path arcs priced by the
// gradient.
Eigen::VectorXd lp_oracle(const Eigen::VectorXd& gradient,
                          const ConstraintSet& constraints);

}  // namespace netprobe
