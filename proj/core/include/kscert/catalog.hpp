#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kscert/qcore.hpp"
#include "kscert/rational.hpp"

namespace kscert {

// One component of a catalog vector, kept exact.  The grammar covers every
// entry appearing in the built-in sets and their liftings:
//   coeff * base,  base in { 1, t = sqrt(2), q = exp(2*pi*i/3), g = q^2, i, it }.
// Token forms: "0", "3", "-2", "t", "-t", "2t", "q", "-q", "g", "-g", "i", "-i", "it", "-it".
struct SymbolicEntry {
  enum class Base { One, RootTwo, Omega, OmegaSq, ImagUnit, ImagRootTwo };
  std::int64_t coeff = 0;
  Base base = Base::One;

  Complex value() const;
  std::string token() const;
  bool is_plain_integer() const { return base == Base::One; }

  static SymbolicEntry integer(std::int64_t n) { return SymbolicEntry{n, Base::One}; }
  static SymbolicEntry parse(const std::string& token);

  friend bool operator==(const SymbolicEntry& a, const SymbolicEntry& b) {
    if (a.coeff == 0 && b.coeff == 0) return true;
    return a.coeff == b.coeff && a.base == b.base;
  }
};

enum class EdgeWeightRule { MaxPlusOne, TwiceMaxPlusOne, CliqueSum };

std::string to_string(EdgeWeightRule rule);
EdgeWeightRule edge_weight_rule_from_string(const std::string& s);

// How far the certification pipeline applies to a set.
enum class CfrStatus { Capable, Conditional, NotCapable };

// A weighted set of rays given by exact symbolic coordinates.
struct VectorSet {
  std::string name;
  int dim = 0;
  std::vector<std::vector<SymbolicEntry>> vectors;
  std::vector<Rational> weights;
  EdgeWeightRule edge_weight_rule = EdgeWeightRule::MaxPlusOne;
  // Vertex groups (1-indexed) whose projectors must sum to identity even
  // though the group need not be scanned as a basis elsewhere.
  std::vector<std::vector<int>> extra_constraints;

  int size() const { return static_cast<int>(vectors.size()); }
  Ket ket(int i) const;                  // normalized
  std::vector<Ket> kets() const;
  Projector projector(int i) const;
  std::vector<Projector> projectors() const;
  Rational weight_sum() const;
  // Value of the egalitarian identity sum(w_i P_i) = Q * 1 when it holds.
  Rational ideal_value() const;

  void validate() const;  // throws InvalidInput with a precise message
};

// The two-qubit operator square: rows/columns of pairwise commuting
// dichotomic observables whose row products are +1 and column products
// are +1 except the third, which is -1.
struct OperatorSquare {
  std::vector<std::string> labels;  // 9 entries, row-major
  std::vector<Matrix> ops;          // matching order, 4x4 each

  const Matrix& op(const std::string& label) const;
};

OperatorSquare pm_square();

// The 24 rank-1 event projectors of the operator square, in the fixed
// published order (four events for each of the six contexts).
struct PMEvent {
  std::string context;  // e.g. "ABC"
  int signs[3];         // +1 / -1 outcomes for the three observables
  Projector projector;
};
std::vector<PMEvent> pm_events();

struct CatalogEntry {
  std::string name;
  std::string description;
  bool is_vector_set = true;
  CfrStatus cfr = CfrStatus::Capable;
  std::string cfr_note;
  // Reference values of the built-in realization, cross-checked by the
  // witness and coloring tests and echoed by the report command.
  std::optional<Rational> expected_Q;
  std::optional<int> expected_alpha;
  bool is_ks_expected = false;           // no 0/1 assignment exists
  bool is_complete_ks_expected = false;  // every orthogonal pair lies in a basis
};

const std::vector<CatalogEntry>& catalog_entries();
bool catalog_has(const std::string& name);
const CatalogEntry& catalog_entry(const std::string& name);

// Returns the named built-in ray set; throws InvalidInput for unknown names
// and for "pm0" (which is operator-valued; use pm_square()).
const VectorSet& builtin_set(const std::string& name);

std::vector<std::string> builtin_vector_set_names();

// JSON round-trip for VectorSet (schema documented in the CLI help and README).
VectorSet vector_set_from_json(const std::string& text);
std::string vector_set_to_json(const VectorSet& set, int indent = 2);

}  // namespace kscert
