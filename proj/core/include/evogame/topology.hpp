#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace evogame {

using NodeId = std::uint32_t;

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Nodes are dense ids 0..node_count()-1. Every adjacency list is sorted
/// ascending, symmetric, and free of self-loops and duplicates.
class Graph {
 public:
  Graph() = default;

  /// Builds from per-node neighbor lists. Throws InvalidParameter if the lists
  /// are asymmetric, contain self-loops, duplicates or out-of-range ids.
  explicit Graph(std::vector<std::vector<NodeId>> adjacency);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  /// Throws std::out_of_range for an invalid id.
  std::span<const NodeId> neighbors(NodeId node) const;
  std::size_t degree(NodeId node) const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Ring lattice of even degree k with each clockwise edge rewired with
/// probability p to a uniformly chosen endpoint that creates neither a
/// self-loop nor a duplicate edge.
Graph make_watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);

/// side x side torus with von Neumann neighborhoods. Node (row, col) has id
/// row * side + col.
Graph make_square_lattice(std::size_t side);

std::size_t degree(const Graph& graph, NodeId node);

/// Writes `u v` lines with u < v, ordered by u then v.
void write_edge_list(const Graph& graph, std::ostream& out);

}  // namespace evogame
