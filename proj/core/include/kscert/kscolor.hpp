#pragma once

#include <vector>

#include "kscert/catalog.hpp"
#include "kscert/graph.hpp"
#include "kscert/qcore.hpp"

namespace kscert {

// Combinatorial 0/1-assignment instance: orthogonality edges forbid two 1s,
// bases demand exactly one.  Ranks tag the projectors behind the vertices
// (all 1 for ray sets) and are carried for reporting; the constraints do not
// read them.
struct KsInstance {
  Graph graph{1};
  std::vector<std::vector<int>> bases;
  std::vector<int> ranks;

  void validate() const;  // index ranges, every basis a clique
};

KsInstance ks_instance(const VectorSet& set);
KsInstance ks_instance(const std::vector<Projector>& projs, double tol = 1e-9);

struct KsColoring {
  bool satisfiable = false;
  std::vector<int> assignment;  // one 0/1 per vertex when satisfiable, else empty
};

// Backtracking search with constraint propagation: assigning 1 zeroes the
// neighborhood and the rest of any basis through the vertex; a basis whose
// candidates run out forces the last one or fails the branch.  Branching
// picks a vertex from the open basis with the fewest undecided members, so
// exhaustion proofs stay shallow.
KsColoring ks_assignments(const KsInstance& inst);

// A projector set that may mix ranks, as produced by completion.  The
// original projectors come first; `added` counts the appended ones.
struct ProjectorSet {
  int dim = 0;
  std::vector<Projector> projectors;
  int added = 0;

  std::vector<int> ranks() const;
};

// Closes a set under the pair-completion step: every orthogonal pair that
// lies in no basis clique contributes the complement projector of the pair,
// deduplicated by matrix equality within 1e-9.  Passes repeat until nothing
// new appears, so the result is a fixed point.
ProjectorSet complete_ks(const VectorSet& set);
ProjectorSet complete_ks(const ProjectorSet& set);

// True when the completion step adds nothing.
bool is_complete(const VectorSet& set);
bool is_complete(const ProjectorSet& set);

}  // namespace kscert
