#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kscert/catalog.hpp"
#include "kscert/graph.hpp"
#include "kscert/sdp.hpp"

namespace kscert {

// Raised when a program that should be solvable comes back from the interior
// point method without an Optimal status.
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weighted Lovasz number: maximize sum_ij sqrt(w_i w_j) X_ij over PSD X with
// unit trace and X_ij = 0 on edges.  Weights must be nonnegative.
double lovasz_theta(const Graph& g, const std::vector<double>& weights,
                    double tol = 1e-8);
double lovasz_theta(const Graph& g, double tol = 1e-8);
// Convenience: orthogonality graph and weights taken from the set.
double lovasz_theta(const VectorSet& set, double tol = 1e-8);
// Edge-list form for graphs beyond the adjacency-mask limit, such as event
// exclusivity graphs.  Duplicate and (u, v)/(v, u) mirrored edges collapse.
double lovasz_theta(int n, const std::vector<std::pair<int, int>>& edges,
                    const std::vector<double>& weights, double tol = 1e-8);

// Options shared by the Gram-matrix programs below.  All of them are stated
// over a real symmetric matrix; setting `hermitian` lifts them to the 2x-size
// real embedding of a complex Hermitian matrix instead.  The two variants
// have identical optimal values (the real part of any Hermitian feasible
// point is feasible with the same objective), so the flag exists for
// cross-checking rather than for correctness.
struct GramOptions {
  bool hermitian = false;
  double tol = 1e-8;
};

struct FeasibilityReport {
  SdpSolution sol;
  // Certificate residuals, filled in when sol.status is PrimalInfeasible;
  // cert.linear and cert.cone near zero with cert.objective near one make
  // the infeasibility independently checkable.
  CertificateCheck cert{};

  bool infeasible() const { return sol.status == SdpStatus::PrimalInfeasible; }
};

// Feasibility relaxation for a hypothetical realization of the set that
// attains witness value Q while some state lies inside projector j's range
// and is annihilated by projector i, for a non-adjacent ordered pair (i, j).
// Variables form the Gram matrix of {s, P_1 s, ..., P_n s}: row/column 0 is
// the state, X_00 = 1, X_0k = X_kk, orthogonal pairs vanish, X_0j = 1,
// X_0i = 0, and sum_k w_k X_0k = Q.  Sets with extra completeness groups get
// one unit-sum row per group.  A PrimalInfeasible status (with its
// certificate) proves no such state exists, which is the rank condition the
// uniqueness argument needs.
FeasibilityReport rank_feasibility(const VectorSet& set, double Q, int i,
                                   int j, const GramOptions& opts = {});

// Largest witness value compatible with the same pinned pair: maximize
// sum_k w_k X_kk over the feasibility system above with the value row
// dropped.  Always solvable; throws SolverFailure otherwise.
double rank_drop_violation(const VectorSet& set, int i, int j,
                           const GramOptions& opts = {});

struct RankDropThreshold {
  double threshold;        // Q - max_violation
  double max_violation;    // largest value over all non-adjacent ordered pairs
  std::pair<int, int> pair;  // (i, j) attaining the maximum
};

// Scans every non-adjacent ordered pair.  Any observed witness value above
// Q - threshold rules out a rank drop across every non-edge.
RankDropThreshold rank_drop_threshold(const VectorSet& set,
                                      const GramOptions& opts = {});

// Noise-tolerance program for a non-adjacent ordered pair (i, j): minimize
// X_ij over Gram matrices with X_00 = X_0i = 1, X_0k = X_kk, witness value
// sum_k w_k X_kk = theta, |X_kt| <= eps on edges, and X_ij >= 0.  The value
// is 0 once theta/eps leave room for a rank drop and strictly positive while
// they do not.
SdpSolution tolerance_tau_program(const VectorSet& set, double theta,
                                  double eps, int i, int j,
                                  const GramOptions& opts = {});
// Value-only variant.  Returns +infinity when the program is infeasible
// (no compatible state at all, so the rank condition holds vacuously);
// throws SolverFailure on any other non-Optimal status.
double tolerance_tau(const VectorSet& set, double theta, double eps, int i,
                     int j, const GramOptions& opts = {});

// Completeness margin of the set's first basis context: minimize
// sum_{k in context} X_0k under the same Gram constraints (without the
// pinned pair).  A strictly positive value means no state compatible with
// witness value theta can be orthogonal to the whole context, which is what
// the block decomposition over that basis needs.
SdpSolution completeness_nu_program(const VectorSet& set, double theta,
                                    double eps, const GramOptions& opts = {});
double completeness_nu(const VectorSet& set, double theta, double eps,
                       const GramOptions& opts = {});

struct CriticalEps {
  double eps;  // midpoint of the final bracket
  double lo;   // largest eps where the predicate still held
  double hi;   // smallest eps where it failed
  // (eps probed, minimum program value over all pairs) in probe order.
  std::vector<std::pair<double, double>> trace;
};

struct BisectionOptions {
  GramOptions gram;
  double width = 1e-4;  // final bracket width
  double cut = 1e-6;    // positivity threshold for the predicate
  double hi = 0.05;     // initial upper bracket, doubled up to 0.2 if needed
};

// Largest eps such that min over non-adjacent ordered pairs of
// tolerance_tau(Q - eps, eps) stays strictly positive, located by bisection.
CriticalEps critical_eps_tau(const VectorSet& set,
                             const BisectionOptions& opts = {});

// Same for completeness_nu(Q - eps, eps) staying strictly positive.
CriticalEps critical_eps_nu(const VectorSet& set,
                            const BisectionOptions& opts = {});

}  // namespace kscert
