#include "kscert/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "kscert/sdp_programs.hpp"

namespace kscert {

namespace {

double re_trace(const Matrix& m) { return m.trace().real(); }

// Clique frequency of every vertex over the given contexts.
std::vector<std::int64_t> clique_counts(int n, const std::vector<std::vector<int>>& cliques) {
  std::vector<std::int64_t> freq(n, 0);
  for (const auto& c : cliques)
    for (int v : c) {
      if (v < 0 || v >= n) throw InvalidInput("witness: clique vertex out of range");
      ++freq[v];
    }
  return freq;
}

}  // namespace

std::string to_string(WitnessForm f) {
  switch (f) {
    case WitnessForm::Pairwise: return "pairwise";
    case WitnessForm::OperatorSquare: return "operator_square";
    case WitnessForm::CliqueSum: return "clique_sum";
  }
  throw InvalidInput("unknown witness form");
}

void Witness::validate() const {
  const int n = graph.size();
  if (form == WitnessForm::OperatorSquare) {
    if (n != 9 || !w.empty() || !w_edge.empty())
      throw InvalidInput("operator-square witness must have 9 bare vertices");
    if (cliques.size() != 6 || clique_signs.size() != 6)
      throw InvalidInput("operator-square witness must have six signed contexts");
    for (int s : clique_signs)
      if (s != 1 && s != -1) throw InvalidInput("context signs must be +1 or -1");
    for (const auto& c : cliques) {
      if (c.size() != 3) throw InvalidInput("operator-square contexts are triples");
      for (size_t a = 0; a < c.size(); ++a)
        for (size_t b = a + 1; b < c.size(); ++b)
          if (!graph.adjacent(c[a], c[b]))
            throw InvalidInput("operator-square context is not a clique");
    }
    return;
  }
  if (static_cast<int>(w.size()) != n)
    throw InvalidInput("witness needs one weight per vertex");
  for (const auto& r : w)
    if (r <= Rational(0)) throw InvalidInput("witness weights must be positive");
  if (form == WitnessForm::Pairwise) {
    auto edges = graph.edges();
    if (w_edge.size() != edges.size())
      throw InvalidInput("pairwise witness needs one penalty per edge");
    for (size_t k = 0; k < edges.size(); ++k) {
      auto [u, v] = edges[k];
      if (w_edge[k] < std::max(w[u], w[v]))
        throw InvalidInput("pair penalty below the larger vertex weight on edge (" +
                           std::to_string(u) + "," + std::to_string(v) + ")");
    }
    if (!cliques.empty() || !clique_signs.empty())
      throw InvalidInput("pairwise witness carries no contexts");
    return;
  }
  // clique_sum: the vertex weights are exactly the clique frequencies.
  if (!w_edge.empty() || !clique_signs.empty())
    throw InvalidInput("clique_sum witness has no pair terms or signs");
  if (cliques.empty()) throw InvalidInput("clique_sum witness needs contexts");
  auto freq = clique_counts(n, cliques);
  for (int i = 0; i < n; ++i)
    if (w[i] != Rational(freq[i]))
      throw InvalidInput("clique_sum weight of vertex " + std::to_string(i) +
                         " is " + w[i].str() + ", clique frequency is " +
                         std::to_string(freq[i]));
}

Witness default_witness(const VectorSet& set) {
  set.validate();
  Witness W;
  W.graph = orthogonality_graph(set);
  W.w = set.weights;
  if (set.edge_weight_rule == EdgeWeightRule::CliqueSum) {
    W.form = WitnessForm::CliqueSum;
    W.cliques = basis_cliques(W.graph, set.projectors());
  } else {
    W.form = WitnessForm::Pairwise;
    W.w_edge = edge_penalties(set, W.graph);
  }
  W.validate();
  return W;
}

Witness pm_witness() {
  Witness W;
  W.form = WitnessForm::OperatorSquare;
  W.graph = Graph(9);
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      if (i / 3 == j / 3 || i % 3 == j % 3) W.graph.add_edge(i, j);
  W.cliques = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
  W.clique_signs = {1, 1, 1, 1, 1, -1};
  W.validate();
  return W;
}

Rational nc_bound(const Witness& w) {
  w.validate();
  if (w.form == WitnessForm::OperatorSquare) {
    // Deterministic noncontextual models assign a fixed sign to each of the
    // nine observables; scan all of them.
    std::int64_t best = 0;
    for (int mask = 0; mask < (1 << 9); ++mask) {
      std::int64_t total = 0;
      for (size_t c = 0; c < w.cliques.size(); ++c) {
        int prod = 1;
        for (int v : w.cliques[c]) prod *= ((mask >> v) & 1) ? 1 : -1;
        total += w.clique_signs[c] * prod;
      }
      best = std::max(best, total);
    }
    return Rational(best);
  }
  return independence_number(w.graph, w.w).alpha;
}

WitnessValue quantum_value(const Witness& w, const std::vector<Projector>& projs,
                           const DensityState& rho) {
  w.validate();
  if (w.form == WitnessForm::OperatorSquare)
    throw InvalidInput("operator-square witness takes observables; use pm_value");
  if (static_cast<int>(projs.size()) != w.graph.size())
    throw InvalidInput("quantum_value: got " + std::to_string(projs.size()) +
                       " projectors for " + std::to_string(w.graph.size()) + " vertices");
  for (const auto& p : projs)
    if (p.dim() != rho.dim())
      throw InvalidInput("quantum_value: projector and state dimensions differ");

  WitnessValue out;
  for (size_t i = 0; i < projs.size(); ++i)
    out.vertex_part += w.w[i].to_double() * re_trace(projs[i].matrix() * rho.matrix());
  if (w.form == WitnessForm::Pairwise) {
    auto edges = w.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
      auto [u, v] = edges[k];
      const Matrix& U = projs[u].matrix();
      const Matrix& V = projs[v].matrix();
      double fwd = re_trace(U * V * U * rho.matrix());
      double rev = re_trace(V * U * V * rho.matrix());
      out.edge_part += w.w_edge[k].to_double() * fwd;
      out.order_asymmetry = std::max(out.order_asymmetry, std::abs(fwd - rev));
    }
  }
  out.value = out.vertex_part - out.edge_part;
  return out;
}

EgalitarianCheck egalitarian_check(const VectorSet& set) {
  set.validate();
  EgalitarianCheck out;
  out.Q = set.ideal_value().to_double();
  Matrix sum = Matrix::Zero(set.dim, set.dim);
  auto projs = set.projectors();
  for (int i = 0; i < set.size(); ++i)
    sum += set.weights[i].to_double() * projs[i].matrix();
  sum -= out.Q * Matrix::Identity(set.dim, set.dim);
  out.residual = max_abs(sum);
  return out;
}

double pm_value(const OperatorSquare& sq, const DensityState& rho) {
  if (sq.ops.size() != 9) throw InvalidInput("pm_value needs the 3x3 operator square");
  for (const auto& op : sq.ops)
    if (op.rows() != rho.dim() || op.cols() != rho.dim())
      throw InvalidInput("pm_value: operator and state dimensions differ");
  static const int ctx[6][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
                                {0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
  double total = 0.0;
  for (int c = 0; c < 6; ++c) {
    Matrix prod = sq.ops[ctx[c][0]] * sq.ops[ctx[c][1]] * sq.ops[ctx[c][2]];
    total += (c == 5 ? -1.0 : 1.0) * re_trace(prod * rho.matrix());
  }
  return total;
}

KsWitnessResult ks_witness(const std::vector<Projector>& projs) {
  if (projs.empty()) throw InvalidInput("ks_witness: empty projector list");
  Graph g = orthogonality_graph(projs);
  auto cliques = basis_cliques(g, projs);
  if (cliques.empty())
    throw InvalidInput("ks_witness: set not complete (no basis cliques)");
  auto freq = clique_counts(g.size(), cliques);
  for (int i = 0; i < g.size(); ++i)
    if (freq[i] == 0)
      throw InvalidInput("ks_witness: set not complete (projector " +
                         std::to_string(i) + " lies in no basis)");
  const int m = static_cast<int>(cliques.size());
  const int d = projs.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (size_t i = 0; i < projs.size(); ++i)
    sum += static_cast<double>(freq[i]) * projs[i].matrix();
  sum -= static_cast<double>(m) * Matrix::Identity(d, d);
  if (max_abs(sum) > 1e-9)
    throw InvalidInput("ks_witness: basis-weighted projector sum misses m times "
                       "the identity; set not complete");

  KsWitnessResult out;
  out.m = m;
  out.witness.form = WitnessForm::CliqueSum;
  out.witness.graph = g;
  out.witness.cliques = std::move(cliques);
  out.witness.w.reserve(freq.size());
  for (std::int64_t f : freq) out.witness.w.push_back(Rational(f));
  out.witness.validate();
  return out;
}

KsWitnessResult ks_witness(const VectorSet& set) { return ks_witness(set.projectors()); }

EventGraph exclusivity_graph(const Witness& w) {
  w.validate();
  if (w.form != WitnessForm::Pairwise)
    throw InvalidInput("exclusivity_graph needs the pairwise form");
  const int n = w.graph.size();
  auto edges = w.graph.edges();
  for (size_t k = 0; k < edges.size(); ++k) {
    auto [u, v] = edges[k];
    if (w.w_edge[k] <= std::max(w.w[u], w.w[v]))
      throw InvalidInput("exclusivity_graph needs penalties strictly above the "
                         "vertex weights");
  }

  // An event assigns outcomes to one or two measurements; m2 < 0 marks the
  // single-measurement kind.
  struct Event {
    int m1, o1, m2, o2;
  };
  EventGraph out;
  std::vector<Event> events;
  for (int i = 0; i < n; ++i) {
    events.push_back({i, 1, -1, 0});
    out.weights.push_back(w.w[i].to_double());
    out.labels.push_back("1|" + std::to_string(i));
  }
  static const int pair_outcomes[3][2] = {{0, 0}, {0, 1}, {1, 0}};
  for (size_t k = 0; k < edges.size(); ++k) {
    auto [u, v] = edges[k];
    for (const auto& o : pair_outcomes) {
      events.push_back({u, o[0], v, o[1]});
      out.weights.push_back(w.w_edge[k].to_double());
      out.labels.push_back(std::to_string(o[0]) + std::to_string(o[1]) + "|" +
                           std::to_string(u) + "," + std::to_string(v));
    }
  }
  out.n = static_cast<int>(events.size());

  auto disagrees = [](int m, int o, const Event& e) {
    return (m == e.m1 && o != e.o1) || (e.m2 >= 0 && m == e.m2 && o != e.o2);
  };
  for (int a = 0; a < out.n; ++a)
    for (int b = a + 1; b < out.n; ++b) {
      const Event &ea = events[a], &eb = events[b];
      if (disagrees(ea.m1, ea.o1, eb) || (ea.m2 >= 0 && disagrees(ea.m2, ea.o2, eb)))
        out.edges.emplace_back(a, b);
    }
  return out;
}

double exclusivity_bound(const Witness& w, double tol) {
  EventGraph eg = exclusivity_graph(w);
  Rational penalty(0);
  for (const auto& r : w.w_edge) penalty = penalty + r;
  return lovasz_theta(eg.n, eg.edges, eg.weights, tol) - penalty.to_double();
}

double state_independence_scan(const std::vector<Projector>& projs,
                               const Witness& w, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("state_independence_scan needs at least one trial");
  if (projs.empty()) throw InvalidInput("state_independence_scan: empty projector list");
  const int d = projs.front().dim();
  Rational sum(0);
  for (const auto& r : w.w) sum = sum + r;
  const double Q = (sum * Rational(1, d)).to_double();
  static const StateKind kinds[3] = {StateKind::Pure, StateKind::FullRank,
                                     StateKind::MaxMixed};
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    DensityState rho = random_state(seed + static_cast<std::uint64_t>(t),
                                    kinds[t % 3], d);
    dev = std::max(dev, std::abs(quantum_value(w, projs, rho).value - Q));
  }
  return dev;
}

}  // namespace kscert
