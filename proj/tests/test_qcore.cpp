#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kscert/qcore.hpp"

using namespace kscert;

TEST_CASE("Ket validation and normalization") {
  Vector v(2);
  v << Complex(3, 0), Complex(0, 4);
  Ket k(v);
  CHECK(k.dim() == 2);
  CHECK(k.norm() == doctest::Approx(5.0));
  CHECK(k.normalized().norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(Ket(Vector::Zero(3)), InvalidInput);
  Vector bad(1);
  bad << Complex(std::numeric_limits<double>::quiet_NaN(), 0);
  CHECK_THROWS_AS(Ket{bad}, InvalidInput);
}

TEST_CASE("Projector validation") {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  Projector p = Projector::from_matrix(m);
  CHECK(p.rank() == 1);
  CHECK(p.complement().rank() == 1);

  // not idempotent
  Matrix bad = 0.7 * m;
  CHECK_THROWS_AS(Projector::from_matrix(bad), InvalidInput);

  // not Hermitian
  Matrix nh(2, 2);
  nh << 1, Complex(0, 1e-3), 0, 0;
  CHECK_THROWS_AS(Projector::from_matrix(nh), InvalidInput);

  Vector v(3);
  v << 1, Complex(0, 1), 0;
  Projector q = Projector::onto(Ket(v));
  CHECK(q.rank() == 1);
  CHECK(max_abs(Matrix(q.matrix() * q.matrix() - q.matrix())) < 1e-14);
}

TEST_CASE("orthogonality predicate") {
  Vector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  CHECK(are_orthogonal(Projector::onto(Ket(a)), Projector::onto(Ket(b))));
  CHECK_FALSE(are_orthogonal(Projector::onto(Ket(a)), Projector::onto(Ket(a))));
  CHECK_THROWS_AS(are_orthogonal(Projector::identity(2), Projector::identity(3)), InvalidInput);
}

TEST_CASE("Luders update") {
  Vector plus(2);
  plus << 1, 1;
  DensityState rho = DensityState::pure(Ket(plus));
  Vector zero(2);
  zero << 1, 0;
  Projector p0 = Projector::onto(Ket(zero));

  LudersResult r = luders_update(rho, p0);
  CHECK(r.prob == doctest::Approx(0.5));
  CHECK(r.post.matrix()(0, 0).real() == doctest::Approx(1.0));

  // impossible outcome
  Vector one(2);
  one << 0, 1;
  DensityState rho0 = DensityState::pure(Ket(zero));
  CHECK_THROWS_AS(luders_update(rho0, Projector::onto(Ket(one))), OutcomeImpossible);
}

TEST_CASE("Hermitian eigendecomposition is ascending and reconstructs") {
  Matrix h = random_hermitian_direction(7, 5);
  HermitianEig eig = eig_hermitian(h);
  for (int i = 0; i + 1 < 5; ++i) CHECK(eig.values(i) <= eig.values(i + 1));
  Matrix rebuilt = eig.vectors * eig.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                   eig.vectors.adjoint();
  CHECK(max_abs(Matrix(rebuilt - h)) < 1e-12);

  Matrix nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(eig_hermitian(nh), InvalidInput);
}

TEST_CASE("tensor and direct sum") {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  Matrix t = tensor(a, b);
  CHECK(t.rows() == 4);
  CHECK(t(0, 1) == Complex(1, 0));
  CHECK(t(1, 2) == Complex(2, 0));

  Matrix d = direct_sum(a, b);
  CHECK(d.rows() == 4);
  CHECK(d(0, 1) == Complex(2, 0));
  CHECK(d(2, 3) == Complex(1, 0));
  CHECK(d(0, 2) == Complex(0, 0));
}

TEST_CASE("maximally entangled ket ricochet identity") {
  // (A (x) 1)|phi+> = (1 (x) A^T)|phi+> for any A
  int d = 3;
  Ket phi = max_entangled(d);
  Matrix a = random_unitary(11, d);
  Matrix id = Matrix::Identity(d, d);
  Vector lhs = tensor(a, id) * phi.amps();
  Vector rhs = tensor(id, a.transpose()) * phi.amps();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("seeded randomness is deterministic") {
  DensityState s1 = random_state(42, StateKind::FullRank, 4);
  DensityState s2 = random_state(42, StateKind::FullRank, 4);
  CHECK(max_abs(Matrix(s1.matrix() - s2.matrix())) == 0.0);
  DensityState s3 = random_state(43, StateKind::FullRank, 4);
  CHECK(max_abs(Matrix(s1.matrix() - s3.matrix())) > 1e-6);

  Matrix u1 = random_unitary(9, 6);
  Matrix u2 = random_unitary(9, 6);
  CHECK(max_abs(Matrix(u1 - u2)) == 0.0);
  CHECK(max_abs(Matrix(u1 * u1.adjoint() - Matrix::Identity(6, 6))) < 1e-12);
}

TEST_CASE("random state kinds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    DensityState full = random_state(seed, StateKind::FullRank, 5);
    CHECK(full.min_eigenvalue() >= 1e-4);
    CHECK(full.full_rank());

    DensityState pure = random_state(seed, StateKind::Pure, 5);
    double purity = (pure.matrix() * pure.matrix()).trace().real();
    CHECK(purity == doctest::Approx(1.0).epsilon(1e-10));
  }
  DensityState mm = random_state(0, StateKind::MaxMixed, 4);
  CHECK(mm.matrix()(0, 0).real() == doctest::Approx(0.25));
}
