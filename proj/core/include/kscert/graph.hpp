#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kscert/catalog.hpp"
#include "kscert/qcore.hpp"
#include "kscert/rational.hpp"

namespace kscert {

// Undirected graph on up to 64 vertices, adjacency kept as bitmasks.
class Graph {
 public:
  explicit Graph(int n);

  int size() const { return n_; }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  std::uint64_t neighbors(int v) const { return adj_[v]; }
  int degree(int v) const;
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;          // u < v, lexicographic
  std::vector<std::pair<int, int>> non_edges() const;      // u < v, lexicographic
  Graph complement() const;
  bool connected() const;

 private:
  int n_;
  std::vector<std::uint64_t> adj_;
};

// Orthogonality graph: vertices are the projectors, edges join pairs with
// tr(P_i P_j) <= tol.
Graph orthogonality_graph(const std::vector<Projector>& projs, double tol = 1e-9);
Graph orthogonality_graph(const VectorSet& set, double tol = 1e-9);

struct IndependenceResult {
  Rational alpha;
  std::vector<int> witness_set;  // a maximum-weight independent set, ascending
};

// Exact maximum-weight independent set by branch and bound with a greedy
// clique-cover bound.  Weights must be positive; the result is deterministic
// for a fixed input.
IndependenceResult independence_number(const Graph& g, const std::vector<Rational>& weights);

// All maximal cliques, each sorted ascending, the list in lexicographic order.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

// Maximal cliques whose projectors sum to the identity within tol.
std::vector<std::vector<int>> basis_cliques(const Graph& g,
                                            const std::vector<Projector>& projs,
                                            double tol = 1e-9);

// Pairwise penalty weights for the default witness shape; keyed by edge in
// (u < v) order.  CliqueSum sets have no pairwise terms and yield an error.
std::vector<Rational> edge_penalties(const VectorSet& set, const Graph& g);

}  // namespace kscert
