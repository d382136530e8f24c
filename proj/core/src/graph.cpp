#include "kscert/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace kscert {

Graph::Graph(int n) : n_(n), adj_(n, 0) {
  if (n < 1 || n > 64) throw InvalidInput("Graph: vertex count must be in 1..64");
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidInput("Graph: vertex out of range");
  if (u == v) throw InvalidInput("Graph: self loops not allowed");
  adj_[u] |= (1ULL << v);
  adj_[v] |= (1ULL << u);
}

bool Graph::adjacent(int u, int v) const { return (adj_[u] >> v) & 1ULL; }

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

int Graph::edge_count() const {
  int total = 0;
  for (int v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<int, int>> Graph::non_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

Graph Graph::complement() const {
  Graph c(n_);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) c.add_edge(u, v);
  return c;
}

bool Graph::connected() const {
  std::uint64_t seen = 1ULL;
  std::uint64_t frontier = 1ULL;
  while (frontier) {
    std::uint64_t next = 0;
    for (int v = 0; v < n_; ++v)
      if ((frontier >> v) & 1ULL) next |= adj_[v];
    frontier = next & ~seen;
    seen |= frontier;
  }
  std::uint64_t all = (n_ == 64) ? ~0ULL : ((1ULL << n_) - 1);
  return seen == all;
}

Graph orthogonality_graph(const std::vector<Projector>& projs, double tol) {
  if (projs.empty()) throw InvalidInput("orthogonality_graph: no projectors");
  const int n = static_cast<int>(projs.size());
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (are_orthogonal(projs[i], projs[j], tol)) g.add_edge(i, j);
  return g;
}

Graph orthogonality_graph(const VectorSet& set, double tol) {
  return orthogonality_graph(set.projectors(), tol);
}

namespace {

struct BranchState {
  const std::vector<std::uint64_t>* adj;
  const std::vector<std::int64_t>* w;
  std::vector<int> order;  // branching order: heavy first, then low index
  std::int64_t best = -1;
  std::uint64_t best_set = 0;

  // Greedy clique-cover upper bound on the candidate mask.
  std::int64_t bound(std::uint64_t mask) const {
    // Vertices are scanned heaviest first, so a clique's opener carries
    // its maximum weight.
    std::int64_t total = 0;
    std::vector<std::uint64_t> cliques;
    for (int v : order) {
      if (!((mask >> v) & 1ULL)) continue;
      bool placed = false;
      for (std::size_t c = 0; c < cliques.size(); ++c) {
        if ((cliques[c] & ~(*adj)[v]) == 0) {
          cliques[c] |= (1ULL << v);
          placed = true;
          break;
        }
      }
      if (!placed) {
        cliques.push_back(1ULL << v);
        total += (*w)[v];
      }
    }
    return total;
  }

  void run(std::uint64_t mask, std::int64_t current, std::uint64_t chosen) {
    if (mask == 0) {
      if (current > best) {
        best = current;
        best_set = chosen;
      }
      return;
    }
    if (current + bound(mask) <= best) return;
    int v = -1;
    for (int u : order)
      if ((mask >> u) & 1ULL) {
        v = u;
        break;
      }
    // include v
    run(mask & ~(*adj)[v] & ~(1ULL << v), current + (*w)[v], chosen | (1ULL << v));
    // exclude v
    run(mask & ~(1ULL << v), current, chosen);
  }
};

}  // namespace

IndependenceResult independence_number(const Graph& g, const std::vector<Rational>& weights) {
  const int n = g.size();
  if (static_cast<int>(weights.size()) != n)
    throw InvalidInput("independence_number: weight count mismatch");
  for (const auto& w : weights)
    if (w.num <= 0) throw InvalidInput("independence_number: weights must be positive");

  // Common denominator keeps the search in exact integer arithmetic.
  std::int64_t lcm = 1;
  for (const auto& w : weights) lcm = std::lcm(lcm, w.den);
  std::vector<std::int64_t> iw(n);
  std::vector<std::uint64_t> adj(n);
  for (int v = 0; v < n; ++v) {
    iw[v] = weights[v].num * (lcm / weights[v].den);
    adj[v] = g.neighbors(v);
  }

  BranchState st;
  st.adj = &adj;
  st.w = &iw;
  st.order.resize(n);
  std::iota(st.order.begin(), st.order.end(), 0);
  std::sort(st.order.begin(), st.order.end(), [&](int a, int b) {
    if (iw[a] != iw[b]) return iw[a] > iw[b];
    return a < b;
  });

  std::uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  st.run(all, 0, 0);

  IndependenceResult res;
  res.alpha = Rational(st.best, lcm);
  for (int v = 0; v < n; ++v)
    if ((st.best_set >> v) & 1ULL) res.witness_set.push_back(v);
  return res;
}

namespace {

void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p,
                   std::uint64_t x, std::vector<std::uint64_t>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  // pivot: vertex of P|X with most neighbors in P
  std::uint64_t px = p | x;
  int pivot = -1, best_cover = -1;
  for (int v = 0; v < 64; ++v) {
    if (!((px >> v) & 1ULL)) continue;
    int cover = std::popcount(p & adj[v]);
    if (cover > best_cover) {
      best_cover = cover;
      pivot = v;
    }
  }
  std::uint64_t candidates = p & ~adj[pivot];
  for (int v = 0; v < 64; ++v) {
    if (!((candidates >> v) & 1ULL)) continue;
    std::uint64_t bit = 1ULL << v;
    bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  const int n = g.size();
  std::vector<std::uint64_t> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  std::uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  std::vector<std::uint64_t> masks;
  bron_kerbosch(adj, 0, all, 0, masks);

  std::vector<std::vector<int>> cliques;
  cliques.reserve(masks.size());
  for (std::uint64_t m : masks) {
    std::vector<int> c;
    for (int v = 0; v < n; ++v)
      if ((m >> v) & 1ULL) c.push_back(v);
    cliques.push_back(std::move(c));
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

std::vector<std::vector<int>> basis_cliques(const Graph& g, const std::vector<Projector>& projs,
                                            double tol) {
  if (static_cast<int>(projs.size()) != g.size())
    throw InvalidInput("basis_cliques: projector count mismatch");
  const int d = projs.empty() ? 0 : projs[0].dim();
  std::vector<std::vector<int>> out;
  for (const auto& clique : maximal_cliques(g)) {
    Matrix acc = Matrix::Zero(d, d);
    for (int v : clique) acc += projs[v].matrix();
    if (max_abs(Matrix(acc - Matrix::Identity(d, d))) <= tol) out.push_back(clique);
  }
  return out;
}

std::vector<Rational> edge_penalties(const VectorSet& set, const Graph& g) {
  if (set.edge_weight_rule == EdgeWeightRule::CliqueSum)
    throw InvalidInput("edge_penalties: clique_sum witnesses carry no pairwise terms");
  std::vector<Rational> out;
  for (const auto& [u, v] : g.edges()) {
    Rational m = std::max(set.weights[u], set.weights[v]);
    if (set.edge_weight_rule == EdgeWeightRule::TwiceMaxPlusOne)
      out.push_back(Rational(2) * m + Rational(1));
    else
      out.push_back(m + Rational(1));
  }
  return out;
}

}  // namespace kscert
