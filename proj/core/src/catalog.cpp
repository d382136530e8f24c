#include "kscert/catalog.hpp"

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

namespace kscert {

using nlohmann::json;

Complex SymbolicEntry::value() const {
  static const Complex omega = std::polar(1.0, 2.0 * M_PI / 3.0);
  const double c = static_cast<double>(coeff);
  switch (base) {
    case Base::One:
      return Complex(c, 0.0);
    case Base::RootTwo:
      return Complex(c * std::sqrt(2.0), 0.0);
    case Base::Omega:
      return c * omega;
    case Base::OmegaSq:
      return c * omega * omega;
    case Base::ImagUnit:
      return Complex(0.0, c);
    case Base::ImagRootTwo:
      return Complex(0.0, c * std::sqrt(2.0));
  }
  throw InvalidInput("SymbolicEntry: unknown base");
}

std::string SymbolicEntry::token() const {
  if (coeff == 0) return "0";
  std::string suffix;
  switch (base) {
    case Base::One: suffix = ""; break;
    case Base::RootTwo: suffix = "t"; break;
    case Base::Omega: suffix = "q"; break;
    case Base::OmegaSq: suffix = "g"; break;
    case Base::ImagUnit: suffix = "i"; break;
    case Base::ImagRootTwo: suffix = "it"; break;
  }
  if (suffix.empty()) return std::to_string(coeff);
  if (coeff == 1) return suffix;
  if (coeff == -1) return "-" + suffix;
  return std::to_string(coeff) + suffix;
}

SymbolicEntry SymbolicEntry::parse(const std::string& token) {
  if (token.empty()) throw InvalidInput("SymbolicEntry: empty token");
  std::size_t pos = 0;
  std::int64_t sign = 1;
  if (token[pos] == '+' || token[pos] == '-') {
    if (token[pos] == '-') sign = -1;
    ++pos;
  }
  std::int64_t digits = 0;
  bool have_digits = false;
  while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') {
    digits = digits * 10 + (token[pos] - '0');
    have_digits = true;
    ++pos;
  }
  std::string suffix = token.substr(pos);
  Base base;
  if (suffix.empty()) {
    if (!have_digits) throw InvalidInput("SymbolicEntry: bad token '" + token + "'");
    base = Base::One;
  } else if (suffix == "t") {
    base = Base::RootTwo;
  } else if (suffix == "q") {
    base = Base::Omega;
  } else if (suffix == "g") {
    base = Base::OmegaSq;
  } else if (suffix == "i") {
    base = Base::ImagUnit;
  } else if (suffix == "it") {
    base = Base::ImagRootTwo;
  } else {
    throw InvalidInput("SymbolicEntry: bad token '" + token + "'");
  }
  std::int64_t coeff = have_digits ? digits : 1;
  coeff *= sign;
  if (coeff == 0) base = Base::One;
  return SymbolicEntry{coeff, base};
}

std::string to_string(EdgeWeightRule rule) {
  switch (rule) {
    case EdgeWeightRule::MaxPlusOne: return "max_plus_one";
    case EdgeWeightRule::TwiceMaxPlusOne: return "twice_max_plus_one";
    case EdgeWeightRule::CliqueSum: return "clique_sum";
  }
  throw InvalidInput("EdgeWeightRule: unknown value");
}

EdgeWeightRule edge_weight_rule_from_string(const std::string& s) {
  if (s == "max_plus_one") return EdgeWeightRule::MaxPlusOne;
  if (s == "twice_max_plus_one") return EdgeWeightRule::TwiceMaxPlusOne;
  if (s == "clique_sum") return EdgeWeightRule::CliqueSum;
  throw InvalidInput("edge_weight_rule: unknown rule '" + s + "'");
}

Ket VectorSet::ket(int i) const {
  if (i < 0 || i >= size()) throw InvalidInput("VectorSet: vector index out of range");
  Vector v(dim);
  for (int j = 0; j < dim; ++j) v(j) = vectors[i][j].value();
  return Ket(v).normalized();
}

std::vector<Ket> VectorSet::kets() const {
  std::vector<Ket> out;
  out.reserve(vectors.size());
  for (int i = 0; i < size(); ++i) out.push_back(ket(i));
  return out;
}

Projector VectorSet::projector(int i) const { return Projector::onto(ket(i)); }

std::vector<Projector> VectorSet::projectors() const {
  std::vector<Projector> out;
  out.reserve(vectors.size());
  for (int i = 0; i < size(); ++i) out.push_back(projector(i));
  return out;
}

Rational VectorSet::weight_sum() const {
  Rational s(0);
  for (const auto& w : weights) s = s + w;
  return s;
}

Rational VectorSet::ideal_value() const { return weight_sum() * Rational(1, dim); }

void VectorSet::validate() const {
  if (dim < 2) throw InvalidInput("VectorSet '" + name + "': dim must be >= 2");
  if (vectors.empty()) throw InvalidInput("VectorSet '" + name + "': no vectors");
  if (weights.size() != vectors.size())
    throw InvalidInput("VectorSet '" + name + "': weights count (" +
                       std::to_string(weights.size()) + ") != vectors count (" +
                       std::to_string(vectors.size()) + ")");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<int>(vectors[i].size()) != dim)
      throw InvalidInput("VectorSet '" + name + "': vector " + std::to_string(i + 1) +
                         " has " + std::to_string(vectors[i].size()) + " components, expected " +
                         std::to_string(dim));
    bool nonzero = false;
    for (const auto& e : vectors[i]) nonzero = nonzero || e.coeff != 0;
    if (!nonzero)
      throw InvalidInput("VectorSet '" + name + "': vector " + std::to_string(i + 1) + " is zero");
  }
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i].num <= 0)
      throw InvalidInput("VectorSet '" + name + "': weight " + std::to_string(i + 1) +
                         " must be positive");
  for (const auto& group : extra_constraints) {
    for (int v : group)
      if (v < 1 || v > size())
        throw InvalidInput("VectorSet '" + name + "': extra constraint index " +
                           std::to_string(v) + " out of range 1.." + std::to_string(size()));
  }
}

namespace {

std::vector<SymbolicEntry> row(std::initializer_list<const char*> tokens) {
  std::vector<SymbolicEntry> out;
  for (const char* t : tokens) out.push_back(SymbolicEntry::parse(t));
  return out;
}

VectorSet make_bbc21() {
  VectorSet s;
  s.name = "bbc21";
  s.dim = 3;
  s.vectors = {
      row({"0", "1", "-1"}), row({"0", "1", "-q"}), row({"0", "1", "-g"}),
      row({"1", "0", "-1"}), row({"1", "0", "-q"}), row({"1", "0", "-g"}),
      row({"1", "-1", "0"}), row({"1", "-q", "0"}), row({"1", "-g", "0"}),
      row({"1", "0", "0"}),  row({"0", "1", "0"}),  row({"0", "0", "1"}),
      row({"1", "1", "1"}),  row({"1", "q", "g"}),  row({"1", "g", "q"}),
      row({"1", "1", "q"}),  row({"1", "q", "1"}),  row({"1", "g", "g"}),
      row({"1", "1", "g"}),  row({"1", "q", "q"}),  row({"1", "g", "1"}),
  };
  s.weights.assign(9, Rational(4));
  for (int i = 0; i < 12; ++i) s.weights.push_back(Rational(7));
  return s;
}

VectorSet make_ceg18() {
  VectorSet s;
  s.name = "ceg18";
  s.dim = 4;
  s.vectors = {
      row({"1", "0", "0", "0"}),   row({"0", "1", "0", "0"}),  row({"0", "0", "1", "0"}),
      row({"0", "0", "0", "1"}),   row({"1", "1", "0", "0"}),  row({"1", "-1", "t", "0"}),
      row({"-1", "1", "t", "0"}),  row({"1", "1", "0", "t"}),  row({"t", "0", "1", "-1"}),
      row({"0", "t", "-1", "-1"}), row({"t", "0", "-1", "1"}), row({"-1", "1", "0", "t"}),
      row({"1", "1", "t", "0"}),   row({"1", "-1", "0", "t"}), row({"t", "0", "-1", "-1"}),
      row({"0", "t", "-1", "1"}),  row({"0", "t", "1", "-1"}), row({"0", "0", "1", "1"}),
  };
  s.weights.assign(18, Rational(1));
  return s;
}

VectorSet make_peres24() {
  VectorSet s;
  s.name = "peres24";
  s.dim = 4;
  s.vectors = {
      row({"1", "0", "0", "0"}),    row({"0", "1", "0", "0"}),   row({"0", "0", "1", "0"}),
      row({"0", "0", "0", "1"}),    row({"1", "1", "1", "1"}),   row({"1", "1", "-1", "-1"}),
      row({"1", "-1", "1", "-1"}),  row({"1", "-1", "-1", "1"}), row({"1", "1", "1", "-1"}),
      row({"1", "1", "-1", "1"}),   row({"1", "-1", "1", "1"}),  row({"-1", "1", "1", "1"}),
      row({"1", "1", "0", "0"}),    row({"1", "-1", "0", "0"}),  row({"0", "0", "1", "1"}),
      row({"0", "0", "1", "-1"}),   row({"1", "0", "1", "0"}),   row({"1", "0", "-1", "0"}),
      row({"0", "1", "0", "1"}),    row({"0", "1", "0", "-1"}),  row({"1", "0", "0", "1"}),
      row({"1", "0", "0", "-1"}),   row({"0", "1", "1", "0"}),   row({"0", "1", "-1", "0"}),
  };
  s.weights.assign(24, Rational(1));
  return s;
}

VectorSet make_peres39() {
  VectorSet s;
  s.name = "peres39";
  s.dim = 5;
  s.vectors = {
      row({"1", "0", "0", "0", "0"}),     row({"0", "1", "0", "0", "0"}),
      row({"0", "0", "1", "0", "0"}),     row({"0", "0", "0", "1", "0"}),
      row({"1", "1", "1", "1", "0"}),     row({"1", "1", "-1", "-1", "0"}),
      row({"1", "-1", "1", "-1", "0"}),   row({"1", "-1", "-1", "1", "0"}),
      row({"1", "1", "1", "-1", "0"}),    row({"1", "1", "-1", "1", "0"}),
      row({"1", "-1", "1", "1", "0"}),    row({"1", "-1", "-1", "-1", "0"}),
      row({"1", "1", "0", "0", "0"}),     row({"1", "-1", "0", "0", "0"}),
      row({"0", "0", "1", "1", "0"}),     row({"0", "0", "1", "-1", "0"}),
      row({"1", "0", "1", "0", "0"}),     row({"1", "0", "-1", "0", "0"}),
      row({"0", "1", "0", "1", "0"}),     row({"0", "1", "0", "-1", "0"}),
      row({"1", "0", "0", "1", "0"}),     row({"1", "0", "0", "-1", "0"}),
      row({"0", "1", "1", "0", "0"}),     row({"0", "1", "-1", "0", "0"}),
      row({"0", "0", "0", "0", "1"}),     row({"0", "1", "1", "1", "1"}),
      row({"0", "1", "1", "-1", "-1"}),   row({"0", "1", "-1", "1", "-1"}),
      row({"0", "1", "-1", "-1", "1"}),   row({"0", "1", "1", "1", "-1"}),
      row({"0", "1", "1", "-1", "1"}),    row({"0", "1", "-1", "1", "1"}),
      row({"0", "1", "-1", "-1", "-1"}),  row({"0", "0", "0", "1", "1"}),
      row({"0", "0", "0", "1", "-1"}),    row({"0", "0", "1", "0", "1"}),
      row({"0", "0", "1", "0", "-1"}),    row({"0", "1", "0", "0", "1"}),
      row({"0", "1", "0", "0", "-1"}),
  };
  const int w[39] = {24, 8, 8, 8, 4, 4, 4, 4, 4, 4, 4, 4, 6, 6, 7, 7, 6, 6, 7, 7,
                     6,  6, 7, 7, 24, 4, 4, 4, 4, 4, 4, 4, 4, 6, 6, 6, 6, 6, 6};
  for (int i = 0; i < 39; ++i) s.weights.push_back(Rational(w[i]));
  s.edge_weight_rule = EdgeWeightRule::CliqueSum;
  return s;
}

VectorSet make_yo13() {
  VectorSet s;
  s.name = "yo13";
  s.dim = 3;
  s.vectors = {
      row({"1", "0", "0"}),  row({"0", "1", "0"}),  row({"0", "0", "1"}),
      row({"0", "1", "1"}),  row({"0", "1", "-1"}), row({"1", "0", "1"}),
      row({"1", "0", "-1"}), row({"1", "1", "0"}),  row({"1", "-1", "0"}),
      row({"1", "1", "1"}),  row({"1", "1", "-1"}), row({"-1", "1", "1"}),
      row({"1", "-1", "1"}),
  };
  s.weights.assign(9, Rational(3));
  for (int i = 0; i < 4; ++i) s.weights.push_back(Rational(2));
  s.edge_weight_rule = EdgeWeightRule::TwiceMaxPlusOne;
  s.extra_constraints = {{1, 2, 3}, {1, 4, 5}, {2, 6, 7}, {3, 8, 9}};
  return s;
}

VectorSet make_peres33() {
  VectorSet s;
  s.name = "peres33";
  s.dim = 3;
  s.vectors = {
      row({"1", "0", "0"}),   row({"0", "1", "0"}),   row({"0", "0", "1"}),
      row({"0", "1", "-1"}),  row({"0", "1", "1"}),   row({"1", "-1", "0"}),
      row({"1", "1", "0"}),   row({"1", "0", "-1"}),  row({"1", "0", "1"}),
      row({"0", "-1", "t"}),  row({"0", "1", "t"}),   row({"-1", "0", "t"}),
      row({"1", "0", "t"}),   row({"-1", "t", "0"}),  row({"1", "t", "0"}),
      row({"0", "t", "-1"}),  row({"0", "t", "1"}),   row({"t", "0", "-1"}),
      row({"t", "0", "1"}),   row({"t", "-1", "0"}),  row({"t", "1", "0"}),
      row({"-1", "-1", "t"}), row({"-1", "1", "t"}),  row({"1", "-1", "t"}),
      row({"1", "1", "t"}),   row({"-1", "t", "-1"}), row({"-1", "t", "1"}),
      row({"1", "t", "-1"}),  row({"1", "t", "1"}),   row({"t", "-1", "-1"}),
      row({"t", "-1", "1"}),  row({"t", "1", "-1"}),  row({"t", "1", "1"}),
  };
  s.weights.assign(3, Rational(3));
  for (int i = 0; i < 30; ++i) s.weights.push_back(Rational(1));
  return s;
}

Matrix pauli(char which) {
  Matrix m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
    case 'z': m << 1, 0, 0, -1; break;
    default:  m << 1, 0, 0, 1; break;
  }
  return m;
}

}  // namespace

OperatorSquare pm_square() {
  OperatorSquare sq;
  Matrix id = pauli('1');
  sq.labels = {"A", "B", "C", "a", "b", "c", "alpha", "beta", "gamma"};
  sq.ops = {
      tensor(pauli('z'), id),         tensor(id, pauli('z')),         tensor(pauli('z'), pauli('z')),
      tensor(id, pauli('x')),         tensor(pauli('x'), id),         tensor(pauli('x'), pauli('x')),
      tensor(pauli('z'), pauli('x')), tensor(pauli('x'), pauli('z')), tensor(pauli('y'), pauli('y')),
  };
  return sq;
}

const Matrix& OperatorSquare::op(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return ops[i];
  throw InvalidInput("OperatorSquare: unknown label '" + label + "'");
}

std::vector<PMEvent> pm_events() {
  OperatorSquare sq = pm_square();
  // Six contexts in fixed order; the four admissible sign patterns per
  // context are constrained by the row/column product (+1, or -1 for the
  // last column).
  const std::array<std::array<int, 3>, 6> contexts = {{
      {0, 1, 2},  // A B C
      {3, 4, 5},  // a b c
      {6, 7, 8},  // alpha beta gamma
      {0, 3, 6},  // A a alpha
      {1, 4, 7},  // B b beta
      {2, 5, 8},  // C c gamma
  }};
  const std::array<std::string, 6> names = {"ABC", "abc", "alpha beta gamma",
                                            "Aa alpha", "Bb beta", "Cc gamma"};
  const std::array<std::array<int, 3>, 4> plus_patterns = {{
      {+1, +1, +1}, {+1, -1, -1}, {-1, +1, -1}, {-1, -1, +1}}};
  const std::array<std::array<int, 3>, 4> minus_patterns = {{
      {+1, +1, -1}, {+1, -1, +1}, {-1, +1, +1}, {-1, -1, -1}}};

  Matrix id4 = Matrix::Identity(4, 4);
  std::vector<PMEvent> events;
  for (int c = 0; c < 6; ++c) {
    const bool last_column = (c == 5);
    const auto& patterns = last_column ? minus_patterns : plus_patterns;
    for (const auto& p : patterns) {
      Matrix proj = id4;
      for (int k = 0; k < 3; ++k) {
        const Matrix& o = sq.ops[contexts[c][k]];
        proj = proj * (id4 + static_cast<double>(p[k]) * o) / 2.0;
      }
      proj = (proj + proj.adjoint()) / 2.0;
      events.push_back(PMEvent{names[c], {p[0], p[1], p[2]}, Projector::from_matrix(proj)});
    }
  }
  return events;
}

namespace {

struct CatalogData {
  std::vector<CatalogEntry> entries;
  std::map<std::string, VectorSet> sets;
};

const CatalogData& catalog_data() {
  static const CatalogData data = [] {
    CatalogData d;
    auto add = [&d](VectorSet set, std::string desc, CfrStatus cfr, std::string note,
                    Rational Q, int alpha, bool ks, bool complete) {
      set.validate();
      CatalogEntry e;
      e.name = set.name;
      e.description = std::move(desc);
      e.is_vector_set = true;
      e.cfr = cfr;
      e.cfr_note = std::move(note);
      e.expected_Q = Q;
      e.expected_alpha = alpha;
      e.is_ks_expected = ks;
      e.is_complete_ks_expected = complete;
      d.entries.push_back(std::move(e));
      d.sets.emplace(d.entries.back().name, std::move(set));
    };
    add(make_bbc21(), "21 rays in d=3 (complex), weighted witness value 40", CfrStatus::Capable, "",
        Rational(40), 36, false, false);
    add(make_ceg18(), "18 rays in d=4, unit weights, witness value 9/2", CfrStatus::Capable, "",
        Rational(9, 2), 4, true, false);
    add(make_peres24(), "24 rays in d=4, unit weights, witness value 6", CfrStatus::Capable, "",
        Rational(6), 5, true, true);
    add(make_peres33(), "33 rays in d=3, Kochen-Specker set", CfrStatus::NotCapable,
        "admits inequivalent realizations of the same orthogonality graph",
        Rational(13), 12, true, false);
    add(make_peres39(), "39 rays in d=5, clique-frequency weights, witness value 50",
        CfrStatus::Capable, "", Rational(50), 46, true, true);
    add(make_yo13(), "13 rays in d=3, weighted witness value 35/3", CfrStatus::Conditional,
        "requires the four basis normalization constraints",
        Rational(35, 3), 11, false, false);
    CatalogEntry pm;
    pm.name = "pm0";
    pm.description = "two-qubit operator square, six contexts, witness value 6";
    pm.is_vector_set = false;
    pm.cfr = CfrStatus::Capable;
    pm.expected_Q = Rational(6);
    pm.expected_alpha = 4;
    d.entries.push_back(std::move(pm));
    return d;
  }();
  return data;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() { return catalog_data().entries; }

bool catalog_has(const std::string& name) {
  for (const auto& e : catalog_data().entries)
    if (e.name == name) return true;
  return false;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog_data().entries)
    if (e.name == name) return e;
  throw InvalidInput("catalog: unknown set '" + name + "'");
}

const VectorSet& builtin_set(const std::string& name) {
  const auto& sets = catalog_data().sets;
  auto it = sets.find(name);
  if (it == sets.end()) {
    if (name == "pm0")
      throw InvalidInput("catalog: 'pm0' is operator-valued; use pm_square()");
    throw InvalidInput("catalog: unknown set '" + name + "'");
  }
  return it->second;
}

std::vector<std::string> builtin_vector_set_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog_data().entries)
    if (e.is_vector_set) names.push_back(e.name);
  return names;
}

VectorSet vector_set_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw InvalidInput(std::string("VectorSet JSON: ") + ex.what());
  }
  if (!j.is_object()) throw InvalidInput("VectorSet JSON: top level must be an object");

  VectorSet s;
  if (!j.contains("name") || !j["name"].is_string())
    throw InvalidInput("VectorSet JSON: missing string field 'name'");
  s.name = j["name"].get<std::string>();
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw InvalidInput("VectorSet JSON: missing integer field 'dim'");
  s.dim = j["dim"].get<int>();
  if (!j.contains("vectors") || !j["vectors"].is_array())
    throw InvalidInput("VectorSet JSON: missing array field 'vectors'");

  int vi = 0;
  for (const auto& vec : j["vectors"]) {
    ++vi;
    if (!vec.is_array())
      throw InvalidInput("VectorSet JSON: vector " + std::to_string(vi) + " is not an array");
    std::vector<SymbolicEntry> entry_row;
    int ci = 0;
    for (const auto& comp : vec) {
      ++ci;
      if (comp.is_number_integer()) {
        entry_row.push_back(SymbolicEntry::integer(comp.get<std::int64_t>()));
      } else if (comp.is_string()) {
        try {
          entry_row.push_back(SymbolicEntry::parse(comp.get<std::string>()));
        } catch (const InvalidInput& ex) {
          throw InvalidInput("VectorSet JSON: vector " + std::to_string(vi) + ", component " +
                             std::to_string(ci) + ": " + ex.what());
        }
      } else {
        throw InvalidInput("VectorSet JSON: vector " + std::to_string(vi) + ", component " +
                           std::to_string(ci) + ": entries must be integers or tokens");
      }
    }
    s.vectors.push_back(std::move(entry_row));
  }

  if (!j.contains("weights") || !j["weights"].is_array())
    throw InvalidInput("VectorSet JSON: missing array field 'weights'");
  int wi = 0;
  for (const auto& w : j["weights"]) {
    ++wi;
    if (w.is_number_integer()) {
      s.weights.push_back(Rational(w.get<std::int64_t>()));
    } else if (w.is_string()) {
      // "num/den" exact rationals
      std::string str = w.get<std::string>();
      auto slash = str.find('/');
      try {
        if (slash == std::string::npos) {
          s.weights.push_back(Rational(std::stoll(str)));
        } else {
          s.weights.push_back(
              Rational(std::stoll(str.substr(0, slash)), std::stoll(str.substr(slash + 1))));
        }
      } catch (const std::exception&) {
        throw InvalidInput("VectorSet JSON: weight " + std::to_string(wi) + ": bad rational '" +
                           str + "'");
      }
    } else {
      throw InvalidInput("VectorSet JSON: weight " + std::to_string(wi) +
                         ": must be an integer or 'num/den' string");
    }
  }

  if (j.contains("edge_weight_rule")) {
    if (!j["edge_weight_rule"].is_string())
      throw InvalidInput("VectorSet JSON: 'edge_weight_rule' must be a string");
    s.edge_weight_rule = edge_weight_rule_from_string(j["edge_weight_rule"].get<std::string>());
  }

  if (j.contains("extra_constraints")) {
    if (!j["extra_constraints"].is_array())
      throw InvalidInput("VectorSet JSON: 'extra_constraints' must be an array");
    int gi = 0;
    for (const auto& group : j["extra_constraints"]) {
      ++gi;
      if (!group.is_array())
        throw InvalidInput("VectorSet JSON: extra constraint " + std::to_string(gi) +
                           " is not an array");
      std::vector<int> g;
      for (const auto& v : group) {
        if (!v.is_number_integer())
          throw InvalidInput("VectorSet JSON: extra constraint " + std::to_string(gi) +
                             " has a non-integer index");
        g.push_back(v.get<int>());
      }
      s.extra_constraints.push_back(std::move(g));
    }
  }

  s.validate();
  return s;
}

std::string vector_set_to_json(const VectorSet& set, int indent) {
  json j;
  j["name"] = set.name;
  j["dim"] = set.dim;
  json vecs = json::array();
  for (const auto& v : set.vectors) {
    json vec = json::array();
    for (const auto& e : v) {
      if (e.is_plain_integer())
        vec.push_back(e.coeff);
      else
        vec.push_back(e.token());
    }
    vecs.push_back(std::move(vec));
  }
  j["vectors"] = std::move(vecs);
  json ws = json::array();
  for (const auto& w : set.weights) {
    if (w.den == 1)
      ws.push_back(w.num);
    else
      ws.push_back(w.str());
  }
  j["weights"] = std::move(ws);
  j["edge_weight_rule"] = to_string(set.edge_weight_rule);
  if (!set.extra_constraints.empty()) j["extra_constraints"] = set.extra_constraints;
  return j.dump(indent);
}

}  // namespace kscert
