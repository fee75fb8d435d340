#include "evogame/topology.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "evogame/error.hpp"
#include "evogame/rng.hpp"

namespace evogame {

Graph::Graph(std::vector<std::vector<NodeId>> adjacency) {
  const std::size_t n = adjacency.size();
  offsets_.reserve(n + 1);
  offsets_.push_back(0);
  for (NodeId u = 0; u < n; ++u) {
    auto& adj = adjacency[u];
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) {
      throw InvalidParameter("duplicate neighbor at node " + std::to_string(u));
    }
    for (NodeId v : adj) {
      if (v >= n) throw InvalidParameter("neighbor id out of range at node " + std::to_string(u));
      if (v == u) throw InvalidParameter("self-loop at node " + std::to_string(u));
    }
    targets_.insert(targets_.end(), adj.begin(), adj.end());
    offsets_.push_back(targets_.size());
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : neighbors(u)) {
      const auto back = neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u)) {
        throw InvalidParameter("asymmetric edge " + std::to_string(u) + "-" + std::to_string(v));
      }
    }
  }
}

std::span<const NodeId> Graph::neighbors(NodeId node) const {
  if (node >= node_count()) {
    throw std::out_of_range("node id " + std::to_string(node) + " out of range");
  }
  return {targets_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

std::size_t Graph::degree(NodeId node) const { return neighbors(node).size(); }

std::size_t degree(const Graph& graph, NodeId node) { return graph.degree(node); }

namespace {

bool has_edge(const std::vector<std::vector<NodeId>>& adj, NodeId u, NodeId v) {
  return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

void remove_one(std::vector<NodeId>& list, NodeId v) {
  list.erase(std::find(list.begin(), list.end(), v));
}

}  // namespace

Graph make_watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("watts-strogatz: n must be positive");
  if (k == 0 || k % 2 != 0) throw InvalidParameter("watts-strogatz: k must be even and positive");
  if (k >= n) throw InvalidParameter("watts-strogatz: k must be smaller than n");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("watts-strogatz: p must lie in [0, 1]");

  std::vector<std::vector<NodeId>> adj(n);
  const std::size_t half = k / 2;
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const auto v = static_cast<NodeId>((u + j) % n);
      adj[u].push_back(v);
      adj[v].push_back(static_cast<NodeId>(u));
    }
  }

  Rng rng = make_stream(seed, StreamPurpose::kTopology);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t ui = 0; ui < n; ++ui) {
      if (uniform01(rng) >= p) continue;
      const auto u = static_cast<NodeId>(ui);
      const auto v = static_cast<NodeId>((ui + j) % n);
      if (adj[u].size() >= n - 1) continue;
      NodeId w = pick(rng);
      while (w == u || has_edge(adj, u, w)) w = pick(rng);
      remove_one(adj[u], v);
      remove_one(adj[v], u);
      adj[u].push_back(w);
      adj[w].push_back(u);
    }
  }
  return Graph(std::move(adj));
}

Graph make_square_lattice(std::size_t side) {
  if (side < 3) throw InvalidParameter("square lattice: side must be at least 3");
  std::vector<std::vector<NodeId>> adj(side * side);
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t col = 0; col < side; ++col) {
      auto id = [side](std::size_t r, std::size_t c) {
        return static_cast<NodeId>((r % side) * side + (c % side));
      };
      auto& list = adj[id(row, col)];
      list = {id(row + side - 1, col), id(row + 1, col), id(row, col + side - 1), id(row, col + 1)};
    }
  }
  return Graph(std::move(adj));
}

void write_edge_list(const Graph& graph, std::ostream& out) {
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (NodeId v : graph.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

}  // namespace evogame
