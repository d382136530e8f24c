#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kscert/catalog.hpp"
#include "kscert/graph.hpp"
#include "kscert/qcore.hpp"
#include "kscert/rational.hpp"

namespace kscert {

enum class WitnessForm { Pairwise, OperatorSquare, CliqueSum };

std::string to_string(WitnessForm f);

// A contextuality witness over a compatibility graph.
//
// The pairwise form scores sum_i w_i P(Pi_i=1) - sum_(u,v) w_uv P(Pi_u=Pi_v=1)
// with one penalty weight per graph edge.  The clique_sum form adds up the
// outcome probabilities of whole contexts, which folds into vertex weights
// equal to each vertex's clique frequency and has no pair terms.  The
// operator-square form is the fixed six-context square of pm_square(): it
// keeps the contexts with a sign each and is evaluated through pm_value.
struct Witness {
  WitnessForm form = WitnessForm::Pairwise;
  Graph graph{1};
  std::vector<Rational> w;                // one weight per vertex
  std::vector<Rational> w_edge;           // keyed like graph.edges(); pairwise form
  std::vector<std::vector<int>> cliques;  // contexts of the other two forms
  std::vector<int> clique_signs;          // +1/-1 per context; operator square only

  // Form-specific shape checks; the pairwise form additionally requires
  // w_uv >= max(w_u, w_v) on every edge, which is what caps deterministic
  // assignments at the weighted independence number.
  void validate() const;
};

// Evaluation breakdown.  value is exactly vertex_part - edge_part.
struct WitnessValue {
  double value = 0.0;
  double vertex_part = 0.0;      // sum of w_i P(Pi_i = 1)
  double edge_part = 0.0;        // sum of w_uv P(Pi_u = Pi_v = 1)
  double order_asymmetry = 0.0;  // max over edges of |P(u then v) - P(v then u)|
};

// The witness a set ships with: table weights, pair penalties from the set's
// edge rule, or the clique_sum contexts (all basis cliques) when the rule
// says so.  For clique_sum sets the stored weights must equal the clique
// frequencies; a parsed set that breaks this is rejected.
Witness default_witness(const VectorSet& set);

// Six-context operator-square witness: the three rows and three columns of
// pm_square(), the last column entering with a minus sign.
Witness pm_witness();

// Largest value reachable by deterministic outcome assignments: the weighted
// independence number for the projector forms, an exhaustive scan of the 512
// sign assignments for the operator square.
Rational nc_bound(const Witness& w);

// Witness value on a state.  Vertex terms are tr(rho Pi_i); pair terms are
// sequential two-step probabilities in listed (u < v) order, which reduce to
// tr(Pi_u Pi_v rho) when the projectors commute.  The reversed-order
// probabilities are evaluated too and reported as order_asymmetry.
WitnessValue quantum_value(const Witness& w, const std::vector<Projector>& projs,
                           const DensityState& rho);

struct EgalitarianCheck {
  double Q = 0.0;         // weight sum divided by dimension
  double residual = 0.0;  // max-abs deviation of sum w_i Pi_i from Q * identity
};

// Measures how far the realization is from making the witness value
// state-independent; a residual at rounding scale certifies independence.
EgalitarianCheck egalitarian_check(const VectorSet& set);

// Value of the six-context square on a two-qubit state: the five positive
// context products plus the negated last column.
double pm_value(const OperatorSquare& sq, const DensityState& rho);

struct KsWitnessResult {
  Witness witness;  // clique_sum over the basis cliques, frequency weights
  int m = 0;        // number of basis cliques; also the witness value
};

// Witness of a complete projector set: weights count the bases each
// projector appears in, so the total operator is m times the identity and
// the value is m on every state.  Throws when no basis cliques exist, some
// projector sits in none of them, or the identity fails to hold.
KsWitnessResult ks_witness(const std::vector<Projector>& projs);
KsWitnessResult ks_witness(const VectorSet& set);

// Outcome-event graph of a pairwise witness.  One vertex per event "1|i"
// (weight w_i) and per event "ab|uv" with (a,b) in {00, 01, 10} (weight
// w_uv); two events are adjacent when they assign different outcomes to a
// shared measurement.  Vertex ids in labels are 0-based graph indices.
struct EventGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;
  std::vector<std::string> labels;
};

EventGraph exclusivity_graph(const Witness& w);

// Upper bound on the quantum value of a pairwise witness: the weighted
// Lovasz number of the event graph minus the total pair penalty.  Requires
// strict penalties (w_uv > max(w_u, w_v)).
double exclusivity_bound(const Witness& w, double tol = 1e-8);

// Max deviation of the witness value from (sum w_i)/d over seeded states,
// cycling pure, full-rank and maximally mixed kinds.
double state_independence_scan(const std::vector<Projector>& projs,
                               const Witness& w, int trials, std::uint64_t seed);

}  // namespace kscert
