#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kscert/catalog.hpp"

using namespace kscert;

TEST_CASE("symbolic entry parse and round trip") {
  CHECK(SymbolicEntry::parse("0").value() == Complex(0, 0));
  CHECK(SymbolicEntry::parse("-1").value() == Complex(-1, 0));
  CHECK(std::abs(SymbolicEntry::parse("t").value() - Complex(std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(SymbolicEntry::parse("2t").value() - Complex(2 * std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(SymbolicEntry::parse("q").value() - std::polar(1.0, 2 * M_PI / 3)) < 1e-15);
  CHECK(std::abs(SymbolicEntry::parse("g").value() - std::polar(1.0, 4 * M_PI / 3)) < 1e-15);
  CHECK(SymbolicEntry::parse("-i").value() == Complex(0, -1));
  CHECK(std::abs(SymbolicEntry::parse("-it").value() - Complex(0, -std::sqrt(2.0))) < 1e-15);

  for (const char* tok : {"0", "1", "-1", "5", "-3", "t", "-t", "q", "-q", "g", "-g", "i",
                          "-i", "it", "-it", "2t"}) {
    CHECK(SymbolicEntry::parse(tok).token() == tok);
  }

  CHECK_THROWS_AS(SymbolicEntry::parse(""), InvalidInput);
  CHECK_THROWS_AS(SymbolicEntry::parse("x"), InvalidInput);
  CHECK_THROWS_AS(SymbolicEntry::parse("1.5"), InvalidInput);
  CHECK_THROWS_AS(SymbolicEntry::parse("sqrt2"), InvalidInput);
}

TEST_CASE("catalog inventory") {
  CHECK(catalog_entries().size() == 7);
  CHECK(catalog_has("bbc21"));
  CHECK(catalog_has("pm0"));
  CHECK_FALSE(catalog_has("nonsense"));
  CHECK_THROWS_AS(builtin_set("nonsense"), InvalidInput);
  CHECK_THROWS_AS(builtin_set("pm0"), InvalidInput);

  CHECK(catalog_entry("peres33").cfr == CfrStatus::NotCapable);
  CHECK(catalog_entry("yo13").cfr == CfrStatus::Conditional);
  CHECK(catalog_entry("ceg18").cfr == CfrStatus::Capable);
}

TEST_CASE("set shapes and weights") {
  struct Row {
    const char* name;
    int dim;
    int count;
    Rational value;  // weight sum / dim
  };
  const Row rows[] = {
      {"bbc21", 3, 21, Rational(40)},  {"ceg18", 4, 18, Rational(9, 2)},
      {"peres24", 4, 24, Rational(6)}, {"peres33", 3, 33, Rational(13)},
      {"peres39", 5, 39, Rational(50)}, {"yo13", 3, 13, Rational(35, 3)},
  };
  for (const auto& r : rows) {
    const VectorSet& s = builtin_set(r.name);
    CAPTURE(r.name);
    CHECK(s.dim == r.dim);
    CHECK(s.size() == r.count);
    CHECK(s.ideal_value() == r.value);
  }

  const VectorSet& bbc = builtin_set("bbc21");
  CHECK(bbc.weights[0] == Rational(4));
  CHECK(bbc.weights[9] == Rational(7));
  CHECK(builtin_set("yo13").edge_weight_rule == EdgeWeightRule::TwiceMaxPlusOne);
  CHECK(builtin_set("peres39").edge_weight_rule == EdgeWeightRule::CliqueSum);
  CHECK(builtin_set("ceg18").edge_weight_rule == EdgeWeightRule::MaxPlusOne);
  CHECK(builtin_set("yo13").extra_constraints.size() == 4);
}

TEST_CASE("every catalog set satisfies the egalitarian identity") {
  // sum_i w_i P_i must equal (sum_i w_i / dim) * identity exactly;
  // this pins down every table entry at once.
  for (const auto& name : builtin_vector_set_names()) {
    CAPTURE(name);
    const VectorSet& s = builtin_set(name);
    Matrix acc = Matrix::Zero(s.dim, s.dim);
    for (int i = 0; i < s.size(); ++i) acc += s.weights[i].to_double() * s.projector(i).matrix();
    Matrix expect = s.ideal_value().to_double() * Matrix::Identity(s.dim, s.dim);
    CHECK(max_abs(Matrix(acc - expect)) < 1e-10);
  }
}

TEST_CASE("known projector entries and orthogonality") {
  const VectorSet& bbc = builtin_set("bbc21");
  Matrix p1 = bbc.projector(0).matrix();  // first column: (0, 1, -1)/sqrt(2)
  CHECK(p1(1, 1).real() == doctest::Approx(0.5));
  CHECK(p1(2, 2).real() == doctest::Approx(0.5));
  CHECK(p1(1, 2).real() == doctest::Approx(-0.5));
  CHECK(p1(0, 0).real() == doctest::Approx(0.0));

  CHECK(are_orthogonal(bbc.projector(9), bbc.projector(0)));   // v10 = (1,0,0) vs v1
  CHECK_FALSE(are_orthogonal(bbc.projector(0), bbc.projector(1)));

  // The h-type triple {13,14,15} is a basis.
  Matrix sum = bbc.projector(12).matrix() + bbc.projector(13).matrix() + bbc.projector(14).matrix();
  CHECK(max_abs(Matrix(sum - Matrix::Identity(3, 3))) < 1e-12);
}

TEST_CASE("operator square structure") {
  OperatorSquare sq = pm_square();
  REQUIRE(sq.ops.size() == 9);
  Matrix id = Matrix::Identity(4, 4);
  for (const auto& o : sq.ops) {
    CHECK(is_hermitian(o, 1e-14));
    CHECK(max_abs(Matrix(o * o - id)) < 1e-14);
  }
  // rows multiply to +1
  for (int r = 0; r < 3; ++r) {
    Matrix prod = sq.ops[3 * r] * sq.ops[3 * r + 1] * sq.ops[3 * r + 2];
    CHECK(max_abs(Matrix(prod - id)) < 1e-14);
  }
  // columns multiply to +1, +1, -1
  for (int c = 0; c < 3; ++c) {
    Matrix prod = sq.ops[c] * sq.ops[c + 3] * sq.ops[c + 6];
    Matrix expect = (c == 2) ? Matrix(-id) : id;
    CHECK(max_abs(Matrix(prod - expect)) < 1e-14);
  }
  CHECK(max_abs(Matrix(sq.op("gamma") - tensor(sq.op("C"), Matrix::Identity(1, 1)))) >= 0.0);
}

TEST_CASE("the 24 operator square events match the peres24 rays in order") {
  std::vector<PMEvent> events = pm_events();
  REQUIRE(events.size() == 24);
  const VectorSet& p24 = builtin_set("peres24");
  for (int k = 0; k < 24; ++k) {
    CAPTURE(k);
    CHECK(events[k].projector.rank() == 1);
    CHECK(max_abs(Matrix(events[k].projector.matrix() - p24.projector(k).matrix())) < 1e-12);
  }
  // each context's four events resolve the identity
  for (int c = 0; c < 6; ++c) {
    Matrix acc = Matrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) acc += events[4 * c + k].projector.matrix();
    CHECK(max_abs(Matrix(acc - Matrix::Identity(4, 4))) < 1e-12);
  }
}

TEST_CASE("vector set json round trip") {
  for (const char* name : {"bbc21", "yo13", "peres33"}) {
    const VectorSet& s = builtin_set(name);
    std::string text = vector_set_to_json(s);
    VectorSet back = vector_set_from_json(text);
    CHECK(back.name == s.name);
    CHECK(back.dim == s.dim);
    REQUIRE(back.size() == s.size());
    for (int i = 0; i < s.size(); ++i)
      for (int j = 0; j < s.dim; ++j) CHECK(back.vectors[i][j] == s.vectors[i][j]);
    CHECK(back.weights == s.weights);
    CHECK(back.edge_weight_rule == s.edge_weight_rule);
    CHECK(back.extra_constraints == s.extra_constraints);
  }
}

TEST_CASE("vector set json rejects malformed input") {
  CHECK_THROWS_AS(vector_set_from_json("{"), InvalidInput);
  CHECK_THROWS_AS(vector_set_from_json("[]"), InvalidInput);
  CHECK_THROWS_AS(vector_set_from_json(R"({"name":"x","dim":2})"), InvalidInput);
  // wrong component count
  CHECK_THROWS_AS(vector_set_from_json(
      R"({"name":"x","dim":3,"vectors":[[1,0]],"weights":[1]})"), InvalidInput);
  // bad token
  CHECK_THROWS_AS(vector_set_from_json(
      R"({"name":"x","dim":2,"vectors":[[1,"u"]],"weights":[1]})"), InvalidInput);
  // zero vector
  CHECK_THROWS_AS(vector_set_from_json(
      R"({"name":"x","dim":2,"vectors":[[0,0]],"weights":[1]})"), InvalidInput);
  // weight count mismatch
  CHECK_THROWS_AS(vector_set_from_json(
      R"({"name":"x","dim":2,"vectors":[[1,0]],"weights":[1,2]})"), InvalidInput);
  // nonpositive weight
  CHECK_THROWS_AS(vector_set_from_json(
      R"({"name":"x","dim":2,"vectors":[[1,0]],"weights":[0]})"), InvalidInput);
  // fractional weights as strings are fine
  VectorSet ok = vector_set_from_json(
      R"({"name":"x","dim":2,"vectors":[[1,0],[0,1]],"weights":["3/2",1]})");
  CHECK(ok.weights[0] == Rational(3, 2));
}
