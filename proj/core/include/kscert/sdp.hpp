#pragma once

#include <string>
#include <vector>

#include "kscert/qcore.hpp"

namespace kscert {

// Conic program in standard equality form,
//
//   minimize   <C, X>
//   subject to <A_r, X> = b_r  for every row r,
//              X in K,
//
// where X collects one or more real symmetric PSD blocks plus a bank of
// nonnegative scalar variables and <.,.> is the blockwise Frobenius inner
// product. A coefficient added at (i, j) with i != j contributes
// coeff * X_ij, with X_ji understood to be the same entry. Complex
// Hermitian data enters through the usual 2x-real embedding built by the
// callers. Range constraints lo <= f(X) <= hi are stored as equality rows
// with fresh slack variables.

enum class SdpStatus { Optimal, PrimalInfeasible, DualInfeasible, Inaccurate };

std::string to_string(SdpStatus s);

struct SdpResiduals {
  double primal = 0.0;  // ||A x - b|| / (1 + ||b||) at x scaled by 1/tau
  double dual = 0.0;    // ||A' y + s - c|| / (1 + ||c||)
  double gap = 0.0;     // |c'x - b'y| / (1 + |c'x| + |b'y|)
};

struct SdpSolution {
  SdpStatus status = SdpStatus::Inaccurate;
  double value = 0.0;               // objective in the requested sense
  std::vector<RealMatrix> X;        // primal PSD blocks
  std::vector<double> nonneg;       // primal nonnegative variables
  std::vector<double> y;            // one multiplier per equality row
  std::vector<RealMatrix> S;        // dual slack blocks
  std::vector<double> nonneg_dual;  // dual slacks of the nonnegative bank
  int iterations = 0;
  SdpResiduals residuals;
  std::string note;  // diagnostic detail for Inaccurate outcomes

  // PrimalInfeasible: (y, S, nonneg_dual) hold a Farkas ray normalized to
  // b'y = 1 with S = -A'y in the cone; no finite X satisfies the equalities.
  // DualInfeasible: (X, nonneg) hold an improving ray normalized to unit
  // objective rate, A x = 0 and x in K; the objective is unbounded.
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iter = 200;
  bool verbose = false;
};

// Residuals of a claimed infeasibility certificate, recomputed from the
// problem data and the candidate ray alone.
struct CertificateCheck {
  double cone = 0.0;       // largest eigenvalue violation of cone membership
  double linear = 0.0;     // ||A'y + S|| (primal cert) or ||A x|| (dual cert)
  double objective = 0.0;  // b'y, or the unit objective-improvement rate
};

class SdpProblem {
 public:
  struct Term {
    int block = 0;
    int i = 0;
    int j = 0;
    double coeff = 0.0;
  };

  // Variable space.
  int add_block(int dim);         // appends a PSD block, returns its index
  int add_nonneg(int count = 1);  // appends scalars, returns the first index

  // Equality rows <A_r, X> = rhs.
  int add_row(double rhs);
  void row_entry(int row, int block, int i, int j, double coeff);
  void row_nonneg(int row, int var, double coeff);

  // Objective, minimized unless set_maximize(true).
  void objective_entry(int block, int i, int j, double coeff);
  void objective_nonneg(int var, double coeff);
  void set_maximize(bool maximize) { maximize_ = maximize; }

  // lo <= sum of terms <= hi. An infinite bound drops that side.
  void add_box(const std::vector<Term>& terms, double lo, double hi);

  int block_count() const { return static_cast<int>(block_dims_.size()); }
  int block_dim(int b) const { return block_dims_.at(b); }
  int nonneg_count() const { return nonneg_; }
  int row_count() const { return static_cast<int>(rows_.size()); }

  SdpSolution solve(const SdpOptions& opts = {}) const;

  // Recomputations from problem data, for independent verification.
  double eval_row(int row, const std::vector<RealMatrix>& X,
                  const std::vector<double>& nonneg) const;
  double eval_objective(const std::vector<RealMatrix>& X,
                        const std::vector<double>& nonneg) const;
  CertificateCheck check_primal_infeasibility(const SdpSolution& sol) const;
  CertificateCheck check_dual_infeasibility(const SdpSolution& sol) const;

  // SDPA sparse text ("*.dat-s"): row 0 is the objective matrix, rows
  // 1..m are the equality coefficient matrices with the rhs vector on the
  // values line. The nonnegative bank becomes a trailing diagonal block.
  std::string sdpa_sparse() const;

 private:
  struct RowData {
    std::vector<Term> entries;
    std::vector<std::pair<int, double>> lin;  // nonnegative-variable terms
    double rhs = 0.0;
  };

  void check_entry(int block, int i, int j, double coeff) const;

  std::vector<int> block_dims_;
  int nonneg_ = 0;
  std::vector<RowData> rows_;
  RowData objective_;  // rhs unused
  bool maximize_ = false;

  friend struct SdpCompiled;
};

}  // namespace kscert
