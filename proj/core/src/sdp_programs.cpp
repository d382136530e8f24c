#include "kscert/sdp_programs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace kscert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything the Gram programs need from a set, with weights as doubles and
// all vertex lists 0-indexed.
struct SetData {
  Graph g;
  std::vector<double> w;
  double Q = 0.0;
  std::vector<int> context;                   // first basis clique
  std::vector<std::vector<int>> unit_groups;  // completeness groups
};

SetData set_data(const VectorSet& set, bool need_context) {
  auto projs = set.projectors();
  SetData d{orthogonality_graph(projs), {}, 0.0, {}, {}};
  d.w.reserve(set.size());
  for (const auto& wi : set.weights) d.w.push_back(wi.to_double());
  d.Q = set.ideal_value().to_double();
  if (need_context) {
    auto cliques = basis_cliques(d.g, projs);
    if (cliques.empty())
      throw InvalidInput("set " + set.name + " has no basis context");
    d.context = cliques.front();
  }
  for (const auto& grp : set.extra_constraints) {
    std::vector<int> zero;
    zero.reserve(grp.size());
    for (int v : grp) zero.push_back(v - 1);
    d.unit_groups.push_back(std::move(zero));
  }
  return d;
}

// Entry handles for the (1+n) x (1+n) Gram matrix with the state in row 0.
// In Hermitian mode the matrix lives inside a doubled real block Y and the
// real / imaginary parts of entry (k, l) are read off as
//   Re = (Y_kl + Y_{k+N, l+N}) / 2,   Im = (Y_{l, k+N} - Y_{k, l+N}) / 2,
// which averages over the gauge freedom of the embedding.
class GramSpace {
 public:
  GramSpace(SdpProblem& p, int n, bool hermitian)
      : p_(&p), N_(n + 1), hermitian_(hermitian) {
    block_ = p.add_block(hermitian ? 2 * N_ : N_);
  }

  bool hermitian() const { return hermitian_; }

  std::vector<SdpProblem::Term> re(int k, int l) const {
    if (!hermitian_) return {{block_, k, l, 1.0}};
    return {{block_, k, l, 0.5}, {block_, k + N_, l + N_, 0.5}};
  }
  std::vector<SdpProblem::Term> im(int k, int l) const {
    return {{block_, l, k + N_, 0.5}, {block_, k, l + N_, -0.5}};
  }

  void row_terms(int row, const std::vector<SdpProblem::Term>& ts,
                 double scale = 1.0) const {
    for (const auto& t : ts) p_->row_entry(row, t.block, t.i, t.j, t.coeff * scale);
  }
  void objective_terms(const std::vector<SdpProblem::Term>& ts) const {
    for (const auto& t : ts) p_->objective_entry(t.block, t.i, t.j, t.coeff);
  }

  void pin_re(int k, int l, double value) const {
    row_terms(p_->add_row(value), re(k, l));
  }
  // Diagonal imaginary parts vanish identically and must not become rows.
  void pin_im_zero(int k, int l) const {
    if (!hermitian_ || k == l) return;
    row_terms(p_->add_row(0.0), im(k, l));
  }

 private:
  SdpProblem* p_;
  int N_;
  int block_;
  bool hermitian_;
};

// Rows shared by every Gram program: unit state entry, diagonal linking
// X_kk = X_0k, and one unit-sum row per completeness group.
void add_gram_core(SdpProblem& p, const GramSpace& X, const SetData& d) {
  X.pin_re(0, 0, 1.0);
  for (int k = 0; k < d.g.size(); ++k) {
    int r = p.add_row(0.0);
    X.row_terms(r, X.re(k + 1, k + 1));
    X.row_terms(r, X.re(0, k + 1), -1.0);
    X.pin_im_zero(0, k + 1);
  }
  for (const auto& grp : d.unit_groups) {
    int r = p.add_row(1.0);
    for (int v : grp) X.row_terms(r, X.re(0, v + 1));
  }
}

// Orthogonality residuals: exact zeros when eps == 0, a box otherwise.
void add_edge_bounds(SdpProblem& p, const GramSpace& X, const SetData& d,
                     double eps) {
  for (auto [u, v] : d.g.edges()) {
    if (eps <= 0.0) {
      X.row_terms(p.add_row(0.0), X.re(u + 1, v + 1));
      if (X.hermitian()) X.row_terms(p.add_row(0.0), X.im(u + 1, v + 1));
    } else {
      p.add_box(X.re(u + 1, v + 1), -eps, eps);
      if (X.hermitian()) p.add_box(X.im(u + 1, v + 1), -eps, eps);
    }
  }
}

// Witness value over the diagonal: sum_k w_k X_kk = theta.
void add_value_row(SdpProblem& p, const GramSpace& X, const SetData& d,
                   double theta) {
  int r = p.add_row(theta);
  for (int k = 0; k < d.g.size(); ++k)
    X.row_terms(r, X.re(k + 1, k + 1), d.w[k]);
}

// Programs that pin a unit overlap X_0u = 1 force column u of the Gram
// matrix to coincide with the state column (the 2x2 minor on {0, u} is all
// ones), so vertex u can be merged into row 0.  A zero overlap X_0z = 0
// forces column z to vanish outright, and when the orthogonality residuals
// are exact zeros the same happens to every neighbor of u.  Dropping those
// columns is an exact reformulation and leaves a program with interior
// points, which the interior-point method handles far better.
struct ReducedIndex {
  std::vector<int> col;    // vertex -> matrix column, -1 when eliminated
  std::vector<int> verts;  // surviving vertices in column order
  int n = 0;
};

ReducedIndex reduce_indices(const SetData& d, int unit, int zero,
                            bool drop_unit_neighbors) {
  ReducedIndex r;
  r.col.assign(d.g.size(), -1);
  for (int v = 0; v < d.g.size(); ++v) {
    if (v == unit || v == zero) continue;
    if (drop_unit_neighbors && unit >= 0 && d.g.adjacent(unit, v)) continue;
    r.col[v] = 1 + static_cast<int>(r.verts.size());
    r.verts.push_back(v);
  }
  r.n = static_cast<int>(r.verts.size());
  return r;
}

// State entry, diagonal links and completeness groups over the surviving
// columns.  `unit` still contributes its pinned overlap of one to any group
// containing it; eliminated zero columns contribute nothing.
void add_reduced_core(SdpProblem& p, const GramSpace& X, const SetData& d,
                      const ReducedIndex& rx, int unit) {
  X.pin_re(0, 0, 1.0);
  for (int t = 0; t < rx.n; ++t) {
    int r = p.add_row(0.0);
    X.row_terms(r, X.re(t + 1, t + 1));
    X.row_terms(r, X.re(0, t + 1), -1.0);
    X.pin_im_zero(0, t + 1);
  }
  for (const auto& grp : d.unit_groups) {
    double rhs = 1.0;
    std::vector<int> cols;
    for (int v : grp) {
      if (v == unit) {
        rhs -= 1.0;
      } else if (rx.col[v] > 0) {
        cols.push_back(rx.col[v]);
      }
    }
    if (cols.empty()) {
      if (std::abs(rhs) > 1e-12)
        throw InvalidInput("completeness group eliminated with nonzero sum");
      continue;
    }
    int r = p.add_row(rhs);
    for (int c : cols) X.row_terms(r, X.re(0, c));
  }
}

// Orthogonality residuals among survivors, plus diagonal caps for the
// surviving neighbors of the merged vertex (their off-diagonal entry with it
// equals their own diagonal).
void add_reduced_edges(SdpProblem& p, const GramSpace& X, const SetData& d,
                       const ReducedIndex& rx, int unit, double eps) {
  for (auto [u, v] : d.g.edges()) {
    int cu = rx.col[u], cv = rx.col[v];
    if (cu < 0 || cv < 0) continue;
    if (eps <= 0.0) {
      X.row_terms(p.add_row(0.0), X.re(cu, cv));
      if (X.hermitian()) X.row_terms(p.add_row(0.0), X.im(cu, cv));
    } else {
      p.add_box(X.re(cu, cv), -eps, eps);
      if (X.hermitian()) p.add_box(X.im(cu, cv), -eps, eps);
    }
  }
  if (unit >= 0 && eps > 0.0) {
    for (int v = 0; v < d.g.size(); ++v) {
      if (rx.col[v] > 0 && d.g.adjacent(unit, v))
        p.add_box(X.re(rx.col[v], rx.col[v]),
                  -std::numeric_limits<double>::infinity(), eps);
    }
  }
}

void check_pair(const SetData& d, int i, int j) {
  int n = d.g.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw InvalidInput("vertex pair out of range");
  if (i == j) throw InvalidInput("pair must name two distinct vertices");
  if (d.g.adjacent(i, j))
    throw InvalidInput("pair must not be an edge of the orthogonality graph");
}

[[noreturn]] void fail(const char* what, const SdpSolution& sol) {
  std::ostringstream os;
  os << what << ": solver returned " << to_string(sol.status);
  if (!sol.note.empty()) os << " (" << sol.note << ")";
  os << ", residuals p=" << sol.residuals.primal << " d=" << sol.residuals.dual
     << " gap=" << sol.residuals.gap;
  throw SolverFailure(os.str());
}

// Degenerate instances can stall a hair short of the interior-point target;
// the value is still usable as long as the verified residuals stay far below
// the accuracy the caller needs.
double accept_value(const char* what, const SdpSolution& sol, double accept) {
  if (sol.status == SdpStatus::Optimal) return sol.value;
  if (sol.status == SdpStatus::Inaccurate) {
    double worst = std::max(
        {sol.residuals.primal, sol.residuals.dual, sol.residuals.gap});
    if (worst <= accept) return sol.value;
  }
  fail(what, sol);
}

std::vector<std::pair<int, int>> ordered_non_edges(const Graph& g) {
  std::vector<std::pair<int, int>> pairs;
  for (auto [u, v] : g.non_edges()) {
    pairs.emplace_back(u, v);
    pairs.emplace_back(v, u);
  }
  return pairs;
}

// Shared bisection driver.  `probe` returns the minimum program value at a
// given eps; the critical point is where it stops clearing `cut`.
CriticalEps bisect_critical(const BisectionOptions& opts,
                            const std::function<double(double)>& probe) {
  CriticalEps out;
  auto eval = [&](double eps) {
    double m = probe(eps);
    out.trace.emplace_back(eps, m);
    return m;
  };
  if (eval(0.0) <= opts.cut)
    throw SolverFailure("program value not positive at eps = 0");
  double lo = 0.0;
  double hi = opts.hi;
  while (eval(hi) > opts.cut) {
    lo = hi;
    hi *= 2.0;
    if (hi > 0.2 * (1.0 + 1e-9))
      throw SolverFailure("no upper bracket for the critical eps below 0.2");
  }
  while (hi - lo > opts.width) {
    double mid = 0.5 * (lo + hi);
    (eval(mid) > opts.cut ? lo : hi) = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.eps = 0.5 * (lo + hi);
  return out;
}

}  // namespace

double lovasz_theta(int n, const std::vector<std::pair<int, int>>& edges,
                    const std::vector<double>& weights, double tol) {
  if (n < 1) throw InvalidInput("theta needs at least one vertex");
  if (static_cast<int>(weights.size()) != n)
    throw InvalidInput("theta needs one weight per vertex");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidInput("theta weights must be finite and nonnegative");
  std::vector<char> adj(static_cast<size_t>(n) * n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw InvalidInput("theta edge list has an invalid pair");
    adj[static_cast<size_t>(u) * n + v] = 1;
    adj[static_cast<size_t>(v) * n + u] = 1;
  }

  SdpProblem p;
  int B = p.add_block(n);
  int tr = p.add_row(1.0);
  for (int i = 0; i < n; ++i) p.row_entry(tr, B, i, i, 1.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (adj[static_cast<size_t>(u) * n + v])
        p.row_entry(p.add_row(0.0), B, u, v, 1.0);
      else
        p.objective_entry(B, u, v, 2.0 * std::sqrt(weights[u] * weights[v]));
    }
  for (int i = 0; i < n; ++i) p.objective_entry(B, i, i, weights[i]);
  p.set_maximize(true);

  SdpOptions so;
  so.tol = tol;
  return accept_value("lovasz_theta", p.solve(so), 1e-7);
}

double lovasz_theta(const Graph& g, const std::vector<double>& weights,
                    double tol) {
  return lovasz_theta(g.size(), g.edges(), weights, tol);
}

double lovasz_theta(const Graph& g, double tol) {
  return lovasz_theta(g, std::vector<double>(g.size(), 1.0), tol);
}

double lovasz_theta(const VectorSet& set, double tol) {
  SetData d = set_data(set, false);
  return lovasz_theta(d.g, d.w, tol);
}

FeasibilityReport rank_feasibility(const VectorSet& set, double Q, int i,
                                   int j, const GramOptions& opts) {
  SetData d = set_data(set, false);
  check_pair(d, i, j);

  SdpProblem p;
  GramSpace X(p, d.g.size(), opts.hermitian);
  add_gram_core(p, X, d);
  add_edge_bounds(p, X, d, 0.0);
  X.pin_re(0, j + 1, 1.0);
  X.pin_re(0, i + 1, 0.0);
  int r = p.add_row(Q);
  for (int k = 0; k < d.g.size(); ++k) X.row_terms(r, X.re(0, k + 1), d.w[k]);

  SdpOptions so;
  so.tol = opts.tol;
  FeasibilityReport rep;
  rep.sol = p.solve(so);
  if (rep.sol.status == SdpStatus::PrimalInfeasible)
    rep.cert = p.check_primal_infeasibility(rep.sol);
  return rep;
}

double rank_drop_violation(const VectorSet& set, int i, int j,
                           const GramOptions& opts) {
  SetData d = set_data(set, false);
  check_pair(d, i, j);

  // Vertex j is merged into the state row, vertex i and j's neighbors are
  // forced-zero columns; j's own pinned weight is added back at the end.
  ReducedIndex rx = reduce_indices(d, j, i, true);
  if (rx.n == 0) return d.w[j];

  SdpProblem p;
  GramSpace X(p, rx.n, opts.hermitian);
  add_reduced_core(p, X, d, rx, j);
  add_reduced_edges(p, X, d, rx, j, 0.0);
  for (int t = 0; t < rx.n; ++t) {
    for (const auto& tm : X.re(t + 1, t + 1))
      p.objective_entry(tm.block, tm.i, tm.j, tm.coeff * d.w[rx.verts[t]]);
  }
  p.set_maximize(true);

  SdpOptions so;
  so.tol = opts.tol;
  return d.w[j] + accept_value("rank_drop_violation", p.solve(so), 1e-4);
}

RankDropThreshold rank_drop_threshold(const VectorSet& set,
                                      const GramOptions& opts) {
  SetData d = set_data(set, false);
  RankDropThreshold out{0.0, -kInf, {-1, -1}};
  for (auto [i, j] : ordered_non_edges(d.g)) {
    double m = rank_drop_violation(set, i, j, opts);
    if (m > out.max_violation) {
      out.max_violation = m;
      out.pair = {i, j};
    }
  }
  out.threshold = d.Q - out.max_violation;
  return out;
}

SdpSolution tolerance_tau_program(const VectorSet& set, double theta,
                                  double eps, int i, int j,
                                  const GramOptions& opts) {
  if (eps < 0.0) throw InvalidInput("eps must be nonnegative");
  SetData d = set_data(set, false);
  check_pair(d, i, j);

  // With column i merged into the state row, the minimized entry X_ij turns
  // into the diagonal entry X_jj (nonnegative by itself, so the sign
  // constraint on it is implied), and i's weight leaves the value row.
  ReducedIndex rx = reduce_indices(d, i, -1, eps <= 0.0);
  SdpProblem p;
  GramSpace X(p, rx.n, opts.hermitian);
  add_reduced_core(p, X, d, rx, i);
  int rv = p.add_row(theta - d.w[i]);
  for (int t = 0; t < rx.n; ++t)
    X.row_terms(rv, X.re(t + 1, t + 1), d.w[rx.verts[t]]);
  add_reduced_edges(p, X, d, rx, i, eps);
  int cj = rx.col[j];
  X.objective_terms(X.re(cj, cj));

  SdpOptions so;
  so.tol = opts.tol;
  return p.solve(so);
}

double tolerance_tau(const VectorSet& set, double theta, double eps, int i,
                     int j, const GramOptions& opts) {
  auto sol = tolerance_tau_program(set, theta, eps, i, j, opts);
  if (sol.status == SdpStatus::PrimalInfeasible) return kInf;
  return accept_value("tolerance_tau", sol, 1e-4);
}

SdpSolution completeness_nu_program(const VectorSet& set, double theta,
                                    double eps, const GramOptions& opts) {
  if (eps < 0.0) throw InvalidInput("eps must be nonnegative");
  SetData d = set_data(set, true);

  SdpProblem p;
  GramSpace X(p, d.g.size(), opts.hermitian);
  add_gram_core(p, X, d);
  add_value_row(p, X, d, theta);
  add_edge_bounds(p, X, d, eps);
  for (int v : d.context) X.objective_terms(X.re(0, v + 1));

  SdpOptions so;
  so.tol = opts.tol;
  return p.solve(so);
}

double completeness_nu(const VectorSet& set, double theta, double eps,
                       const GramOptions& opts) {
  auto sol = completeness_nu_program(set, theta, eps, opts);
  if (sol.status == SdpStatus::PrimalInfeasible) return kInf;
  return accept_value("completeness_nu", sol, 1e-4);
}

CriticalEps critical_eps_tau(const VectorSet& set,
                             const BisectionOptions& opts) {
  SetData d = set_data(set, false);
  auto pairs = ordered_non_edges(d.g);
  if (pairs.empty()) throw InvalidInput("orthogonality graph is complete");
  return bisect_critical(opts, [&](double eps) {
    double m = kInf;
    for (auto [i, j] : pairs)
      m = std::min(m, tolerance_tau(set, d.Q - eps, eps, i, j, opts.gram));
    return m;
  });
}

CriticalEps critical_eps_nu(const VectorSet& set,
                            const BisectionOptions& opts) {
  SetData d = set_data(set, true);
  return bisect_critical(opts, [&](double eps) {
    return completeness_nu(set, d.Q - eps, eps, opts.gram);
  });
}

}  // namespace kscert
