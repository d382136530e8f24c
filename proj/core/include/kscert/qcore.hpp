#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kscert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutcomeImpossible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Largest absolute entry.  Used for cheap residual and invariant checks.
double max_abs(const Matrix& m);
double max_abs(const RealMatrix& m);

// Largest singular value of a Hermitian matrix (largest |eigenvalue|).
double spectral_norm_hermitian(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = 1e-10);

// A state vector.  Not necessarily normalized on construction; normalized()
// rescales to unit norm.
class Ket {
 public:
  explicit Ket(Vector amps);
  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  double norm() const { return amps_.norm(); }
  Ket normalized() const;
  Ket conj() const { return Ket(amps_.conjugate()); }

 private:
  Vector amps_;
};

// An orthogonal projector: Hermitian, idempotent, with integer rank.
class Projector {
 public:
  static Projector from_matrix(const Matrix& m);
  static Projector onto(const Ket& k);  // rank-1 projector |k><k| / <k|k>
  static Projector identity(int dim);
  static Projector zero(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  int rank() const { return rank_; }
  const Matrix& matrix() const { return mat_; }
  Projector complement() const;  // 1 - P
  Projector conj() const;

 private:
  Projector(Matrix m, int rank) : mat_(std::move(m)), rank_(rank) {}
  Matrix mat_;
  int rank_;
};

// Density operator: Hermitian, positive semidefinite, unit trace.
class DensityState {
 public:
  explicit DensityState(const Matrix& rho);
  static DensityState pure(const Ket& k);
  static DensityState max_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double min_eigenvalue() const { return min_eig_; }
  bool full_rank(double tol = 1e-9) const { return min_eig_ > tol; }

 private:
  Matrix rho_;
  double min_eig_;
};

// True when tr(P Q) <= tol, i.e. the ranges are orthogonal.
bool are_orthogonal(const Projector& p, const Projector& q, double tol = 1e-9);

Matrix tensor(const Matrix& a, const Matrix& b);
Ket tensor(const Ket& a, const Ket& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

// Maximally entangled ket (1/sqrt(d)) sum_i |ii> on C^d (x) C^d.
Ket max_entangled(int d);

struct LudersResult {
  double prob;        // outcome probability tr(rho P)
  DensityState post;  // P rho P / prob
};

// Projective state update.  Throws OutcomeImpossible when prob < 1e-12.
LudersResult luders_update(const DensityState& rho, const Projector& p);

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // columns, matching order
};

// Eigendecomposition of a Hermitian matrix.  Validates hermiticity first;
// ordering is ascending and deterministic for a fixed input.
HermitianEig eig_hermitian(const Matrix& m, double tol = 1e-9);

enum class StateKind { Pure, FullRank, MaxMixed };

// Deterministic seeded random states and unitaries (mt19937_64 driven).
DensityState random_state(std::uint64_t seed, StateKind kind, int dim);
Matrix random_unitary(std::uint64_t seed, int dim);

// Hermitian perturbation direction with unit spectral norm.
Matrix random_hermitian_direction(std::uint64_t seed, int dim);

}  // namespace kscert
