#include "kscert/kscolor.hpp"

#include <algorithm>
#include <string>

namespace kscert {

namespace {

constexpr int kUnset = -1;

// One propagation round; returns false on contradiction.  Runs to a fixed
// point because every change only moves entries from unset to set.
bool propagate(const KsInstance& inst, std::vector<int>& val) {
  const int n = inst.graph.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (val[v] != 1) continue;
      for (int u = 0; u < n; ++u) {
        if (!inst.graph.adjacent(v, u)) continue;
        if (val[u] == 1) return false;
        if (val[u] == kUnset) {
          val[u] = 0;
          changed = true;
        }
      }
    }
    for (const auto& basis : inst.bases) {
      int ones = 0, open = 0, last_open = -1;
      for (int v : basis) {
        if (val[v] == 1) ++ones;
        if (val[v] == kUnset) {
          ++open;
          last_open = v;
        }
      }
      if (ones > 1) return false;
      if (ones == 1) {
        for (int v : basis)
          if (val[v] == kUnset) {
            val[v] = 0;
            changed = true;
          }
      } else if (open == 0) {
        return false;
      } else if (open == 1) {
        val[last_open] = 1;
        changed = true;
      }
    }
  }
  return true;
}

// Vertex to branch on: a member of the open basis with the fewest undecided
// entries.  Returns -1 when every basis already holds its 1.
int pick_branch(const KsInstance& inst, const std::vector<int>& val) {
  int best = -1, best_open = 1 << 30;
  for (const auto& basis : inst.bases) {
    int ones = 0, open = 0, candidate = -1;
    for (int v : basis) {
      if (val[v] == 1) ++ones;
      if (val[v] == kUnset) {
        ++open;
        if (candidate < 0) candidate = v;
      }
    }
    if (ones == 0 && open < best_open) {
      best_open = open;
      best = candidate;
    }
  }
  return best;
}

bool search(const KsInstance& inst, std::vector<int> val, std::vector<int>* out) {
  if (!propagate(inst, val)) return false;
  int v = pick_branch(inst, val);
  if (v < 0) {
    for (int& x : val)
      if (x == kUnset) x = 0;
    *out = std::move(val);
    return true;
  }
  for (int x : {1, 0}) {
    std::vector<int> branch = val;
    branch[v] = x;
    if (search(inst, std::move(branch), out)) return true;
  }
  return false;
}

bool same_projector(const Projector& a, const Projector& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) return false;
  Matrix diff = a.matrix() - b.matrix();
  return max_abs(diff) <= 1e-9;
}

// The completion fixed point over a bare projector list.
ProjectorSet close_under_completion(std::vector<Projector> projs) {
  if (projs.empty()) throw InvalidInput("complete_ks: empty projector list");
  const int d = projs.front().dim();
  for (const auto& p : projs)
    if (p.dim() != d) throw InvalidInput("complete_ks: mixed dimensions");

  int added = 0;
  for (int pass = 0;; ++pass) {
    // Each pass adds at least one projector and distinct projectors in C^d
    // are finitely many only up to tolerance, so cap the loop defensively.
    if (pass > 16)
      throw InvalidInput("complete_ks: completion did not close after 16 passes");
    Graph g = orthogonality_graph(projs);
    auto bases = basis_cliques(g, projs);
    std::vector<Projector> fresh;
    for (auto [u, v] : g.edges()) {
      bool covered = false;
      for (const auto& b : bases) {
        bool hu = std::find(b.begin(), b.end(), u) != b.end();
        bool hv = std::find(b.begin(), b.end(), v) != b.end();
        if (hu && hv) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      Matrix m = Matrix::Identity(d, d) - projs[u].matrix() - projs[v].matrix();
      if (max_abs(m) <= 1e-9) continue;  // the pair already resolves the identity
      Projector cand = Projector::from_matrix(m);
      auto dup = [&cand](const Projector& p) { return same_projector(cand, p); };
      if (std::any_of(projs.begin(), projs.end(), dup) ||
          std::any_of(fresh.begin(), fresh.end(), dup))
        continue;
      fresh.push_back(std::move(cand));
    }
    if (fresh.empty()) break;
    added += static_cast<int>(fresh.size());
    for (auto& p : fresh) projs.push_back(std::move(p));
  }

  ProjectorSet out;
  out.dim = d;
  out.projectors = std::move(projs);
  out.added = added;
  return out;
}

}  // namespace

void KsInstance::validate() const {
  const int n = graph.size();
  if (static_cast<int>(ranks.size()) != n)
    throw InvalidInput("KsInstance: need one rank per vertex");
  for (int r : ranks)
    if (r < 1) throw InvalidInput("KsInstance: ranks must be positive");
  for (const auto& basis : bases) {
    if (basis.empty()) throw InvalidInput("KsInstance: empty basis");
    for (int v : basis)
      if (v < 0 || v >= n) throw InvalidInput("KsInstance: basis vertex out of range");
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = a + 1; b < basis.size(); ++b)
        if (!graph.adjacent(basis[a], basis[b]))
          throw InvalidInput("KsInstance: basis is not a clique");
  }
}

KsInstance ks_instance(const VectorSet& set) { return ks_instance(set.projectors()); }

KsInstance ks_instance(const std::vector<Projector>& projs, double tol) {
  if (projs.empty()) throw InvalidInput("ks_instance: empty projector list");
  KsInstance inst;
  inst.graph = orthogonality_graph(projs, tol);
  inst.bases = basis_cliques(inst.graph, projs, tol);
  inst.ranks.reserve(projs.size());
  for (const auto& p : projs) inst.ranks.push_back(p.rank());
  return inst;
}

KsColoring ks_assignments(const KsInstance& inst) {
  inst.validate();
  KsColoring out;
  std::vector<int> assignment;
  if (search(inst, std::vector<int>(inst.graph.size(), kUnset), &assignment)) {
    out.satisfiable = true;
    out.assignment = std::move(assignment);
  }
  return out;
}

std::vector<int> ProjectorSet::ranks() const {
  std::vector<int> out;
  out.reserve(projectors.size());
  for (const auto& p : projectors) out.push_back(p.rank());
  return out;
}

ProjectorSet complete_ks(const VectorSet& set) {
  set.validate();
  return close_under_completion(set.projectors());
}

ProjectorSet complete_ks(const ProjectorSet& set) {
  ProjectorSet out = close_under_completion(set.projectors);
  out.added += set.added;  // keep counting from the original rays
  return out;
}

bool is_complete(const VectorSet& set) { return complete_ks(set).added == 0; }

bool is_complete(const ProjectorSet& set) {
  return close_under_completion(set.projectors).added == 0;
}

}  // namespace kscert
