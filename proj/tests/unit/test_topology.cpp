#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "evogame/error.hpp"
#include "evogame/topology.hpp"

using namespace evogame;

namespace {

void check_simple_undirected(const Graph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nbrs = g.neighbors(u);
    std::set<NodeId> unique(nbrs.begin(), nbrs.end());
    REQUIRE(unique.size() == nbrs.size());
    REQUIRE(unique.count(u) == 0);
    for (NodeId v : nbrs) {
      const auto back = g.neighbors(v);
      REQUIRE(std::find(back.begin(), back.end(), u) != back.end());
    }
  }
}

std::size_t degree_sum(const Graph& g) {
  std::size_t s = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) s += degree(g, u);
  return s;
}

}  // namespace

TEST_CASE("watts-strogatz with p = 0 is the ring lattice") {
  const Graph g = make_watts_strogatz(10, 4, 0.0, 1);
  CHECK(g.node_count() == 10);
  CHECK(g.edge_count() == 20);
  for (NodeId u = 0; u < 10; ++u) {
    CHECK(degree(g, u) == 4);
    const auto nbrs = g.neighbors(u);
    const std::set<NodeId> got(nbrs.begin(), nbrs.end());
    const std::set<NodeId> want{(u + 1) % 10, (u + 2) % 10, (u + 8) % 10, (u + 9) % 10};
    CHECK(got == want);
  }
  check_simple_undirected(g);
}

TEST_CASE("watts-strogatz keeps n*k/2 edges and stays simple for every p") {
  for (double p : {0.0, 0.1, 0.5, 1.0}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const Graph g = make_watts_strogatz(10, 4, p, seed);
      CHECK(g.edge_count() == 20);
      CHECK(degree_sum(g) == 40);
      check_simple_undirected(g);
    }
  }
  const Graph big = make_watts_strogatz(500, 6, 0.3, 9);
  CHECK(degree_sum(big) == 500 * 6);
  check_simple_undirected(big);
}

TEST_CASE("watts-strogatz is deterministic in its seed") {
  const Graph a = make_watts_strogatz(1000, 4, 0.1, 7);
  const Graph b = make_watts_strogatz(1000, 4, 0.1, 7);
  CHECK(a == b);
  std::ostringstream ea, eb;
  write_edge_list(a, ea);
  write_edge_list(b, eb);
  CHECK(ea.str() == eb.str());
  CHECK_FALSE(a == make_watts_strogatz(1000, 4, 0.1, 8));
}

TEST_CASE("watts-strogatz rejects bad parameters") {
  CHECK_THROWS_AS(make_watts_strogatz(10, 3, 0.1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_watts_strogatz(10, 0, 0.1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_watts_strogatz(4, 4, 0.1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_watts_strogatz(10, 4, -0.1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_watts_strogatz(10, 4, 1.5, 1), InvalidParameter);
}

TEST_CASE("square lattice of side 3") {
  const Graph g = make_square_lattice(3);
  CHECK(g.node_count() == 9);
  CHECK(g.edge_count() == 18);
  for (NodeId u = 0; u < 9; ++u) CHECK(degree(g, u) == 4);
  // (0,1)=1, (0,2)=2, (1,0)=3, (2,0)=6
  const auto n0 = g.neighbors(0);
  CHECK(std::set<NodeId>(n0.begin(), n0.end()) == std::set<NodeId>{1, 2, 3, 6});
  check_simple_undirected(g);
}

TEST_CASE("square lattice is translation invariant") {
  const std::size_t side = 7;
  const Graph g = make_square_lattice(side);
  auto shifted_origin = [&](std::size_t row, std::size_t col) {
    std::multiset<NodeId> out;
    for (NodeId v : g.neighbors(0)) {
      const std::size_t r = (v / side + row) % side, c = (v % side + col) % side;
      out.insert(static_cast<NodeId>(r * side + c));
    }
    return out;
  };
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t col = 0; col < side; ++col) {
      const auto nbrs = g.neighbors(static_cast<NodeId>(row * side + col));
      CHECK(std::multiset<NodeId>(nbrs.begin(), nbrs.end()) == shifted_origin(row, col));
    }
  }
}

TEST_CASE("square lattice sizes and errors") {
  CHECK(make_square_lattice(200).node_count() == 40000);
  const Graph g5 = make_square_lattice(5);
  for (NodeId u = 0; u < 25; ++u) CHECK(degree(g5, u) == 4);
  CHECK(degree_sum(g5) == 2 * g5.edge_count());
  CHECK_THROWS_AS(make_square_lattice(2), InvalidParameter);
}

TEST_CASE("degree on ring and out-of-range ids") {
  const Graph g = make_watts_strogatz(20, 6, 0.0, 1);
  for (NodeId u = 0; u < 20; ++u) CHECK(degree(g, u) == 6);
  CHECK_THROWS_AS(degree(g, 20), std::out_of_range);
}

TEST_CASE("graph construction rejects malformed adjacency") {
  using Adj = std::vector<std::vector<NodeId>>;
  CHECK_THROWS_AS(Graph(Adj{{1}, {}}), InvalidParameter);
  CHECK_THROWS_AS(Graph(Adj{{0}}), InvalidParameter);
  CHECK_THROWS_AS(Graph(Adj{{1, 1}, {0}}), InvalidParameter);
  CHECK_THROWS_AS(Graph(Adj{{2}, {}}), InvalidParameter);
}

TEST_CASE("edge list dump lists each edge once in ascending order") {
  std::ostringstream out;
  write_edge_list(make_watts_strogatz(5, 2, 0.0, 1), out);
  CHECK(out.str() == "0 1\n0 4\n1 2\n2 3\n3 4\n");
}
