#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kscert/catalog.hpp"
#include "kscert/graph.hpp"
#include "kscert/qcore.hpp"

namespace kscert {

// Quantities a unitary change of frame cannot touch: the sorted multiset of
// absolute pairwise overlaps, and the triple products
// delta_ijk = <v_i|v_j><v_j|v_k><v_k|v_i>.  An antiunitary map preserves the
// first family and conjugates the second.
struct InvariantProfile {
  std::vector<double> gram_abs;  // |<v_i|v_j>| for i < j, rounded to 1e-8, sorted
  // One entry per index triple i < j < k, in ascending lexicographic order.
  std::vector<std::pair<std::array<int, 3>, Complex>> bargmann;
};

InvariantProfile invariant_profile(const std::vector<Ket>& kets);

// Structural conditions a candidate realization must satisfy before an
// alignment can exist: every projector has the same rank kappa, and for
// every non-adjacent pair the compression keeps full rank,
// rank(P_j P_i P_j) = rank(P_j).  Ranks count eigenvalues above 1e-7.
struct RankCheck {
  bool ok = false;
  int kappa = 0;
  std::string violation;  // empty when ok; names the offending index or pair
};

RankCheck rank_conditions(const std::vector<Projector>& projs, const Graph& g,
                          double tol = 1e-7);

// Best unitary taking one family of rays onto another, matched by index.
// Relative phases are synchronized over the non-orthogonality pattern, then
// the frame is fitted in the least-squares sense; the residual is the worst
// projector mismatch and is meaningful whenever the overlap pattern is
// connected, which holds for every built-in set.
struct KetAlignment {
  Matrix u;
  double residual = 0.0;
};

KetAlignment ket_align(const std::vector<Ket>& from, const std::vector<Ket>& to);

struct AlignmentResult {
  Matrix U;          // D x D unitary with U P'_i U* = P_i (x) 1_d1 (+) conj(P_i) (x) 1_d2
  int d1 = 0;        // plain-summand multiplicity
  int d2 = 0;        // conjugate-summand multiplicity
  int kappa = 0;     // common candidate rank, d1 + d2
  double residual = 0.0;  // max over i of the worst entry mismatch
  // Range isometry of each candidate in the clique block basis; block row t
  // vanishes exactly when vertex i is orthogonal to clique member t.
  std::vector<Matrix> range_blocks;
  std::vector<std::pair<std::string, double>> steps;  // per-stage residuals
};

// Reconstructs the change of frame taking a candidate realization to the
// block form built on a reference ray set: fixes a complete basis clique,
// block-decomposes every candidate range, splits the commutant of the
// candidate algebra into irreducible dimension-d summands, aligns each
// summand against the reference rays or their conjugates, and assembles the
// unitary.  Throws when the candidate shape rules an alignment out (rank
// conditions, graph mismatch, missing basis clique, singular block); a
// candidate that is merely inequivalent comes back with a large residual.
AlignmentResult align(const std::vector<Projector>& candidate,
                      const VectorSet& reference);

enum class Equivalence { Unitary, Antiunitary, Inequivalent };

std::string to_string(Equivalence e);

// Decides how two equally sized ray families are related, matching vertices
// by position.  Invariant profiles filter first; a candidate surviving the
// filter is confirmed by explicit alignment, trying the unitary direction
// before the antiunitary one.
Equivalence equivalent(const std::vector<Ket>& a, const std::vector<Ket>& b);

}  // namespace kscert
