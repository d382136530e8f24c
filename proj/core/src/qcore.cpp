#include "kscert/qcore.hpp"

#include <cmath>
#include <random>

namespace kscert {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const RealMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double spectral_norm_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(Matrix(m - m.adjoint())) <= tol;
}

Ket::Ket(Vector amps) : amps_(std::move(amps)) {
  if (amps_.size() < 1) throw InvalidInput("Ket: dimension must be >= 1");
  if (!amps_.allFinite()) throw InvalidInput("Ket: non-finite amplitude");
  if (amps_.norm() == 0.0) throw InvalidInput("Ket: zero vector");
}

Ket Ket::normalized() const { return Ket(amps_ / amps_.norm()); }

Projector Projector::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("Projector: matrix not square");
  if (!is_hermitian(m, 1e-10)) throw InvalidInput("Projector: not Hermitian within 1e-10");
  if (max_abs(Matrix(m * m - m)) > 1e-9) throw InvalidInput("Projector: not idempotent within 1e-9");
  double tr = m.trace().real();
  int rank = static_cast<int>(std::lround(tr));
  if (std::abs(tr - rank) > 1e-9) throw InvalidInput("Projector: trace not integral");
  return Projector(m, rank);
}

Projector Projector::onto(const Ket& k) {
  Vector v = k.amps() / k.norm();
  Matrix m = v * v.adjoint();
  // Symmetrize away the last bits of rounding so validation is exact enough.
  m = (m + m.adjoint()) / 2.0;
  return Projector(m, 1);
}

Projector Projector::identity(int dim) {
  if (dim < 1) throw InvalidInput("Projector: dimension must be >= 1");
  return Projector(Matrix::Identity(dim, dim), dim);
}

Projector Projector::zero(int dim) {
  if (dim < 1) throw InvalidInput("Projector: dimension must be >= 1");
  return Projector(Matrix::Zero(dim, dim), 0);
}

Projector Projector::complement() const {
  return Projector(Matrix::Identity(dim(), dim()) - mat_, dim() - rank_);
}

Projector Projector::conj() const { return Projector(mat_.conjugate(), rank_); }

DensityState::DensityState(const Matrix& rho) : rho_(rho) {
  if (rho.rows() != rho.cols()) throw InvalidInput("DensityState: matrix not square");
  if (!is_hermitian(rho, 1e-10)) throw InvalidInput("DensityState: not Hermitian within 1e-10");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw InvalidInput("DensityState: trace != 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues().minCoeff();
  if (min_eig_ < -1e-10) throw InvalidInput("DensityState: negative eigenvalue");
}

DensityState DensityState::pure(const Ket& k) {
  Vector v = k.amps() / k.norm();
  Matrix m = v * v.adjoint();
  return DensityState((m + m.adjoint()) / 2.0);
}

DensityState DensityState::max_mixed(int dim) {
  return DensityState(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

bool are_orthogonal(const Projector& p, const Projector& q, double tol) {
  if (p.dim() != q.dim()) throw InvalidInput("are_orthogonal: dimension mismatch");
  return std::abs((p.matrix() * q.matrix()).trace()) <= tol;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  Vector out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      out(i * b.dim() + j) = a.amps()(i) * b.amps()(j);
  return Ket(out);
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Ket max_entangled(int d) {
  if (d < 1) throw InvalidInput("max_entangled: dimension must be >= 1");
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return Ket(v);
}

LudersResult luders_update(const DensityState& rho, const Projector& p) {
  if (rho.dim() != p.dim()) throw InvalidInput("luders_update: dimension mismatch");
  double prob = (p.matrix() * rho.matrix()).trace().real();
  if (prob < 1e-12) throw OutcomeImpossible("luders_update: outcome probability below 1e-12");
  Matrix post = p.matrix() * rho.matrix() * p.matrix() / prob;
  post = (post + post.adjoint()) / 2.0;
  return LudersResult{prob, DensityState(post)};
}

HermitianEig eig_hermitian(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) throw InvalidInput("eig_hermitian: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  return HermitianEig{es.eigenvalues(), es.eigenvectors()};
}

namespace {

Matrix ginibre(std::mt19937_64& eng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double re = gauss(eng);
      double im = gauss(eng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

Matrix haar_unitary(std::mt19937_64& eng, int dim) {
  Matrix g = ginibre(eng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar and the result is
  // a deterministic function of the engine state.
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    Complex phase = (a > 0) ? d / a : Complex(1, 0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace

DensityState random_state(std::uint64_t seed, StateKind kind, int dim) {
  if (dim < 1) throw InvalidInput("random_state: dimension must be >= 1");
  std::mt19937_64 eng(seed);
  switch (kind) {
    case StateKind::MaxMixed:
      return DensityState::max_mixed(dim);
    case StateKind::Pure: {
      Matrix g = ginibre(eng, dim, 1);
      return DensityState::pure(Ket(g.col(0)));
    }
    case StateKind::FullRank: {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      RealVector p(dim);
      double total = 0.0;
      for (int i = 0; i < dim; ++i) {
        p(i) = unif(eng) + 0.05;  // floor keeps every eigenvalue >= 1e-4 for dim <= 400
        total += p(i);
      }
      p /= total;
      Matrix u = haar_unitary(eng, dim);
      Matrix rho = u * p.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
      return DensityState((rho + rho.adjoint()) / 2.0);
    }
  }
  throw InvalidInput("random_state: unknown kind");
}

Matrix random_unitary(std::uint64_t seed, int dim) {
  if (dim < 1) throw InvalidInput("random_unitary: dimension must be >= 1");
  std::mt19937_64 eng(seed);
  return haar_unitary(eng, dim);
}

Matrix random_hermitian_direction(std::uint64_t seed, int dim) {
  std::mt19937_64 eng(seed);
  Matrix g = ginibre(eng, dim, dim);
  Matrix h = (g + g.adjoint()) / 2.0;
  return h / spectral_norm_hermitian(h);
}

}  // namespace kscert
