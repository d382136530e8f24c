#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "kscert/kscolor.hpp"

using namespace kscert;

namespace {

// Exhaustive reference: scans every 0/1 assignment.  Only for small n.
bool brute_force_sat(const KsInstance& inst) {
  const int n = inst.graph.size();
  REQUIRE(n <= 20);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if ((mask >> v) & 1ULL)
        if (inst.graph.neighbors(v) & mask & ~(1ULL << v)) ok = false;
    for (const auto& basis : inst.bases) {
      if (!ok) break;
      int ones = 0;
      for (int v : basis) ones += (mask >> v) & 1ULL;
      if (ones != 1) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

void check_valid(const KsInstance& inst, const std::vector<int>& a) {
  REQUIRE(a.size() == static_cast<size_t>(inst.graph.size()));
  for (int x : a) REQUIRE((x == 0 || x == 1));
  for (auto [u, v] : inst.graph.edges()) REQUIRE(a[u] + a[v] <= 1);
  for (const auto& basis : inst.bases) {
    int ones = 0;
    for (int v : basis) ones += a[v];
    REQUIRE(ones == 1);
  }
}

// Induced sub-instance on vertices 0..keep-1; only bases that survive whole.
KsInstance induced(const KsInstance& full, int keep) {
  keep = std::min(keep, full.graph.size());
  KsInstance out;
  out.graph = Graph(keep);
  for (auto [u, v] : full.graph.edges())
    if (u < keep && v < keep) out.graph.add_edge(u, v);
  for (const auto& basis : full.bases)
    if (std::all_of(basis.begin(), basis.end(), [keep](int v) { return v < keep; }))
      out.bases.push_back(basis);
  out.ranks.assign(full.ranks.begin(), full.ranks.begin() + keep);
  return out;
}

KsInstance random_instance(std::mt19937_64& eng, int n, double p, int nbases) {
  KsInstance inst;
  inst.graph = Graph(n);
  std::uniform_real_distribution<double> unif(0, 1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unif(eng) < p) inst.graph.add_edge(u, v);
  inst.ranks.assign(n, 1);
  std::uniform_int_distribution<int> pick(0, n - 1);
  // Pair mode turns random edges into two-element bases, which collide often
  // enough to exercise the unsatisfiable side of the search.
  bool pair_mode = unif(eng) < 0.5;
  auto edges = inst.graph.edges();
  std::uniform_int_distribution<size_t> epick(0, edges.empty() ? 0 : edges.size() - 1);
  for (int b = 0; b < nbases; ++b) {
    if (pair_mode && !edges.empty()) {
      auto [u, v] = edges[epick(eng)];
      inst.bases.push_back({u, v});
      continue;
    }
    // Otherwise grow a random clique greedily; it plays the role of a context.
    std::vector<int> clique = {pick(eng)};
    for (int v = 0; v < n; ++v) {
      bool fits = std::all_of(clique.begin(), clique.end(), [&](int u) {
        return u != v && inst.graph.adjacent(u, v);
      });
      if (fits && unif(eng) < 0.8) clique.push_back(v);
    }
    inst.bases.push_back(std::move(clique));
  }
  return inst;
}

// Completion candidates counted straight from the Gram data, independently
// of the clique and graph machinery under test.
int oracle_completion_count(const VectorSet& set) {
  const int n = set.size();
  const int d = set.dim;
  auto kets = set.kets();
  auto orth = [&](int i, int j) {
    return std::abs(kets[i].amps().dot(kets[j].amps())) <= 1e-9;
  };
  // Bases: d-subsets of pairwise orthogonal rays.
  std::vector<std::vector<int>> bases;
  std::vector<int> pick;
  auto extend = [&](auto&& self, int from) -> void {
    if (static_cast<int>(pick.size()) == d) {
      bases.push_back(pick);
      return;
    }
    for (int v = from; v < n; ++v) {
      if (std::all_of(pick.begin(), pick.end(), [&](int u) { return orth(u, v); })) {
        pick.push_back(v);
        self(self, v + 1);
        pick.pop_back();
      }
    }
  };
  extend(extend, 0);

  std::vector<Matrix> fresh;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!orth(u, v)) continue;
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
      Matrix m = Matrix::Identity(d, d) - set.projector(u).matrix() -
                 set.projector(v).matrix();
      if (max_abs(m) <= 1e-9) continue;
      bool dup = false;
      for (const auto& f : fresh) {
        Matrix diff = f - m;
        if (max_abs(diff) <= 1e-9) {
          dup = true;
          break;
        }
      }
      if (!dup) fresh.push_back(std::move(m));
    }
  return static_cast<int>(fresh.size());
}

}  // namespace

TEST_CASE("catalog coloring verdicts") {
  for (const char* name : {"bbc21", "yo13"}) {
    CAPTURE(name);
    KsInstance inst = ks_instance(builtin_set(name));
    KsColoring col = ks_assignments(inst);
    REQUIRE(col.satisfiable);
    check_valid(inst, col.assignment);
  }
  for (const char* name : {"ceg18", "peres24", "peres33", "peres39"}) {
    CAPTURE(name);
    KsColoring col = ks_assignments(ks_instance(builtin_set(name)));
    CHECK_FALSE(col.satisfiable);
    CHECK(col.assignment.empty());
  }
  for (const auto& entry : catalog_entries())
    if (entry.is_vector_set) {
      CAPTURE(entry.name);
      CHECK(ks_assignments(ks_instance(builtin_set(entry.name))).satisfiable ==
            !entry.is_ks_expected);
    }
}

TEST_CASE("random instances agree with exhaustive search") {
  std::mt19937_64 eng(321321);
  std::uniform_int_distribution<int> size(4, 16);
  std::uniform_real_distribution<double> dens(0.3, 0.8);
  std::uniform_int_distribution<int> nbases(3, 12);
  int sat_seen = 0, unsat_seen = 0;
  for (int t = 0; t < 150; ++t) {
    KsInstance inst = random_instance(eng, size(eng), dens(eng), nbases(eng));
    KsColoring col = ks_assignments(inst);
    CAPTURE(t);
    REQUIRE(col.satisfiable == brute_force_sat(inst));
    if (col.satisfiable) {
      check_valid(inst, col.assignment);
      ++sat_seen;
    } else {
      ++unsat_seen;
    }
  }
  // The generator must exercise both verdicts for the comparison to mean much.
  CHECK(sat_seen > 20);
  CHECK(unsat_seen > 20);
}

TEST_CASE("shrunk catalog instances agree with exhaustive search") {
  for (const char* name : {"ceg18", "peres24", "yo13", "peres33"}) {
    KsInstance full = ks_instance(builtin_set(name));
    for (int keep : {8, 12, 16}) {
      CAPTURE(name);
      CAPTURE(keep);
      KsInstance small = induced(full, keep);
      KsColoring col = ks_assignments(small);
      REQUIRE(col.satisfiable == brute_force_sat(small));
      if (col.satisfiable) check_valid(small, col.assignment);
    }
  }
}

TEST_CASE("completion leaves complete sets alone") {
  ProjectorSet done = complete_ks(builtin_set("peres24"));
  CHECK(done.added == 0);
  CHECK(done.projectors.size() == 24);
  CHECK(is_complete(builtin_set("peres24")));
  CHECK(is_complete(builtin_set("peres39")));

  for (const auto& entry : catalog_entries())
    if (entry.is_vector_set) {
      CAPTURE(entry.name);
      CHECK(is_complete(builtin_set(entry.name)) == entry.is_complete_ks_expected);
    }
}

TEST_CASE("completion of ceg18") {
  const VectorSet& set = builtin_set("ceg18");
  ProjectorSet done = complete_ks(set);
  int expect = oracle_completion_count(set);
  CHECK(expect >= 1);
  CHECK(done.added == expect);
  CHECK(done.projectors.size() == 18 + static_cast<size_t>(expect));
  for (size_t i = 18; i < done.projectors.size(); ++i)
    CHECK(done.projectors[i].rank() == 2);
  CHECK_FALSE(is_complete(set));
  CHECK_FALSE(is_complete(builtin_set("peres33")));

  // Closure: a second run changes nothing.
  ProjectorSet again = complete_ks(done);
  CHECK(again.projectors.size() == done.projectors.size());
  CHECK(again.added == done.added);

  // The enlarged instance keeps the original constraints, so the verdict
  // stays unsatisfiable, now with rank-2 vertices present.
  KsInstance inst = ks_instance(done.projectors);
  CHECK(std::count(inst.ranks.begin(), inst.ranks.end(), 2) == expect);
  CHECK_FALSE(ks_assignments(inst).satisfiable);
}

TEST_CASE("completion trivia") {
  // No orthogonal pairs at all: nothing to add.
  VectorSet slanted;
  slanted.name = "slanted";
  slanted.dim = 3;
  slanted.vectors = {
      {SymbolicEntry::integer(1), SymbolicEntry::integer(0), SymbolicEntry::integer(0)},
      {SymbolicEntry::integer(1), SymbolicEntry::integer(1), SymbolicEntry::integer(0)},
      {SymbolicEntry::integer(1), SymbolicEntry::integer(1), SymbolicEntry::integer(1)}};
  slanted.weights = {Rational(1), Rational(1), Rational(1)};
  ProjectorSet done = complete_ks(slanted);
  CHECK(done.added == 0);
  CHECK(is_complete(slanted));

  VectorSet basis = slanted;
  basis.name = "triad";
  basis.vectors = {
      {SymbolicEntry::integer(1), SymbolicEntry::integer(0), SymbolicEntry::integer(0)},
      {SymbolicEntry::integer(0), SymbolicEntry::integer(1), SymbolicEntry::integer(0)},
      {SymbolicEntry::integer(0), SymbolicEntry::integer(0), SymbolicEntry::integer(1)}};
  CHECK(is_complete(basis));

  // One orthogonal pair in d=3 completes to the missing third ray.
  VectorSet pair = slanted;
  pair.name = "pair";
  pair.vectors = {
      {SymbolicEntry::integer(1), SymbolicEntry::integer(0), SymbolicEntry::integer(0)},
      {SymbolicEntry::integer(0), SymbolicEntry::integer(1), SymbolicEntry::integer(0)}};
  pair.weights = {Rational(1), Rational(1)};
  ProjectorSet fixed = complete_ks(pair);
  CHECK(fixed.added == 1);
  CHECK(fixed.projectors.back().rank() == 1);
  Matrix expect = Matrix::Zero(3, 3);
  expect(2, 2) = 1.0;
  Matrix diff = fixed.projectors.back().matrix() - expect;
  CHECK(max_abs(diff) <= 1e-12);
}

TEST_CASE("instance validation") {
  KsInstance inst = ks_instance(builtin_set("yo13"));
  CHECK(inst.bases.size() == 4);

  KsInstance bad = inst;
  bad.bases.push_back({0, 10});  // not an edge in yo13's graph
  if (!bad.graph.adjacent(0, 10)) CHECK_THROWS_AS(ks_assignments(bad), InvalidInput);

  KsInstance short_ranks = inst;
  short_ranks.ranks.pop_back();
  CHECK_THROWS_AS(ks_assignments(short_ranks), InvalidInput);
}
