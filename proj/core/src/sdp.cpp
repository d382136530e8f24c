#include "kscert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

// The solver embeds the primal-dual pair into the homogeneous self-dual
// model
//
//     A x - b tau           = 0
//    -A'y + c tau - s       = 0
//     b'y - c'x       - kap = 0,   x, s in K,  tau, kap >= 0,
//
// and follows the central path with a Mehrotra predictor-corrector under
// Nesterov-Todd scaling. A solution with tau > 0 recovers an optimal pair;
// kap > 0 exposes an infeasibility certificate. Symmetric matrix blocks
// travel in scaled vector form ("svec": upper triangle, off-diagonal
// entries times sqrt(2)) so that the Frobenius product becomes the plain
// dot product. Each Newton step reduces to a dense Cholesky solve with the
// Schur matrix A H A', where H is the scaling operator V -> P V P per PSD
// block and multiplication by x_i/s_i on the nonnegative bank.

namespace kscert {

namespace {

constexpr double kRoot2 = 1.41421356237309504880;

struct MatTerm {
  int block;
  int i;
  int j;
  double v;  // value of the symmetric coefficient matrix at (i, j)
};

struct CompiledRow {
  std::vector<std::pair<int, double>> coords;  // svec coordinates, merged
  std::vector<MatTerm> terms;                  // both mirror copies listed
  std::vector<std::pair<int, double>> lin;     // nonnegative-variable terms
  double rhs = 0.0;
};

struct Layout {
  std::vector<int> dim;
  std::vector<int> off;
  int svec_total = 0;
  int p = 0;
  int total = 0;

  int coord(int b, int i, int j) const {  // requires i <= j
    return off[b] + j * (j + 1) / 2 + i;
  }
};

struct BlockScaling {
  RealMatrix L;     // Cholesky factor of the X block
  RealMatrix R;     // Cholesky factor of the S block
  RealMatrix N;     // X = N diag(lam) N',  S = N'^{-1} diag(lam) N^{-1}
  RealMatrix Ninv;
  RealMatrix P;     // N N'
  RealVector lam;
};

double lambda_min(const RealMatrix& sym) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es;
  es.compute(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal:
      return "Optimal";
    case SdpStatus::PrimalInfeasible:
      return "PrimalInfeasible";
    case SdpStatus::DualInfeasible:
      return "DualInfeasible";
    case SdpStatus::Inaccurate:
      return "Inaccurate";
  }
  return "Unknown";
}

// Compiled view of a problem: canonical sparse rows over svec coordinates
// plus the expanded matrix terms used by the Schur assembly.
struct SdpCompiled {
  Layout lay;
  std::vector<CompiledRow> rows;
  CompiledRow obj;
  RealVector c;  // internal minimize sense
  RealVector b;
  std::vector<std::vector<std::pair<int, double>>> var_rows;

  explicit SdpCompiled(const SdpProblem& p) {
    lay.dim = p.block_dims_;
    lay.off.resize(lay.dim.size());
    int off = 0;
    for (size_t b2 = 0; b2 < lay.dim.size(); ++b2) {
      lay.off[b2] = off;
      off += lay.dim[b2] * (lay.dim[b2] + 1) / 2;
    }
    lay.svec_total = off;
    lay.p = p.nonneg_;
    lay.total = off + lay.p;

    rows.reserve(p.rows_.size());
    for (const auto& rd : p.rows_) rows.push_back(compile_row(rd));
    obj = compile_row(p.objective_);

    b.resize(static_cast<int>(p.rows_.size()));
    for (size_t r = 0; r < p.rows_.size(); ++r)
      b[static_cast<int>(r)] = p.rows_[r].rhs;

    c = RealVector::Zero(lay.total);
    for (const auto& [idx, val] : obj.coords) c[idx] += val;
    if (p.maximize_) c = -c;

    var_rows.assign(lay.p, {});
    for (size_t r = 0; r < rows.size(); ++r)
      for (const auto& [var, coeff] : rows[r].lin)
        var_rows[var].push_back({static_cast<int>(r), coeff});
  }

  CompiledRow compile_row(const SdpProblem::RowData& rd) const {
    std::map<std::tuple<int, int, int>, double> acc;
    for (const auto& t : rd.entries) {
      int i = std::min(t.i, t.j), j = std::max(t.i, t.j);
      acc[{t.block, i, j}] += t.coeff;
    }
    std::map<int, double> linacc;
    for (const auto& [var, coeff] : rd.lin) linacc[var] += coeff;

    CompiledRow out;
    out.rhs = rd.rhs;
    for (const auto& [key, v] : acc) {
      if (v == 0.0) continue;
      auto [b2, i, j] = key;
      if (i == j) {
        out.coords.push_back({lay.coord(b2, i, j), v});
        out.terms.push_back({b2, i, i, v});
      } else {
        out.coords.push_back({lay.coord(b2, i, j), v / kRoot2});
        out.terms.push_back({b2, i, j, 0.5 * v});
        out.terms.push_back({b2, j, i, 0.5 * v});
      }
    }
    for (const auto& [var, v] : linacc) {
      if (v == 0.0) continue;
      out.coords.push_back({lay.svec_total + var, v});
      out.lin.push_back({var, v});
    }
    return out;
  }
};

void SdpProblem::check_entry(int block, int i, int j, double coeff) const {
  if (block < 0 || block >= block_count())
    throw InvalidInput("sdp: block index out of range");
  int k = block_dims_[block];
  if (i < 0 || i >= k || j < 0 || j >= k)
    throw InvalidInput("sdp: matrix entry out of range");
  if (!std::isfinite(coeff)) throw InvalidInput("sdp: coefficient not finite");
}

int SdpProblem::add_block(int dim) {
  if (dim < 1) throw InvalidInput("sdp: block dimension must be positive");
  block_dims_.push_back(dim);
  return block_count() - 1;
}

int SdpProblem::add_nonneg(int count) {
  if (count < 1) throw InvalidInput("sdp: variable count must be positive");
  int first = nonneg_;
  nonneg_ += count;
  return first;
}

int SdpProblem::add_row(double rhs) {
  if (!std::isfinite(rhs)) throw InvalidInput("sdp: right-hand side not finite");
  rows_.push_back(RowData{{}, {}, rhs});
  return row_count() - 1;
}

void SdpProblem::row_entry(int row, int block, int i, int j, double coeff) {
  if (row < 0 || row >= row_count()) throw InvalidInput("sdp: row out of range");
  check_entry(block, i, j, coeff);
  rows_[row].entries.push_back({block, i, j, coeff});
}

void SdpProblem::row_nonneg(int row, int var, double coeff) {
  if (row < 0 || row >= row_count()) throw InvalidInput("sdp: row out of range");
  if (var < 0 || var >= nonneg_)
    throw InvalidInput("sdp: nonnegative variable out of range");
  if (!std::isfinite(coeff)) throw InvalidInput("sdp: coefficient not finite");
  rows_[row].lin.push_back({var, coeff});
}

void SdpProblem::objective_entry(int block, int i, int j, double coeff) {
  check_entry(block, i, j, coeff);
  objective_.entries.push_back({block, i, j, coeff});
}

void SdpProblem::objective_nonneg(int var, double coeff) {
  if (var < 0 || var >= nonneg_)
    throw InvalidInput("sdp: nonnegative variable out of range");
  if (!std::isfinite(coeff)) throw InvalidInput("sdp: coefficient not finite");
  objective_.lin.push_back({var, coeff});
}

void SdpProblem::add_box(const std::vector<Term>& terms, double lo, double hi) {
  if (terms.empty()) throw InvalidInput("sdp: box needs at least one term");
  bool has_lo = std::isfinite(lo), has_hi = std::isfinite(hi);
  if (!has_lo && !has_hi)
    throw InvalidInput("sdp: box needs at least one finite bound");
  if (has_lo && has_hi && lo > hi) throw InvalidInput("sdp: box bounds cross");
  if (has_lo) {
    int r = add_row(lo);
    for (const auto& t : terms) row_entry(r, t.block, t.i, t.j, t.coeff);
    row_nonneg(r, add_nonneg(), -1.0);
  }
  if (has_hi) {
    int r = add_row(hi);
    for (const auto& t : terms) row_entry(r, t.block, t.i, t.j, t.coeff);
    row_nonneg(r, add_nonneg(), 1.0);
  }
}

double SdpProblem::eval_row(int row, const std::vector<RealMatrix>& X,
                            const std::vector<double>& nonneg) const {
  if (row < 0 || row >= row_count()) throw InvalidInput("sdp: row out of range");
  if (static_cast<int>(X.size()) != block_count() ||
      static_cast<int>(nonneg.size()) != nonneg_)
    throw InvalidInput("sdp: candidate point has wrong shape");
  double acc = 0.0;
  for (const auto& t : rows_[row].entries) {
    const RealMatrix& M = X[t.block];
    acc += (t.i == t.j) ? t.coeff * M(t.i, t.i)
                        : 0.5 * t.coeff * (M(t.i, t.j) + M(t.j, t.i));
  }
  for (const auto& [var, coeff] : rows_[row].lin) acc += coeff * nonneg[var];
  return acc;
}

double SdpProblem::eval_objective(const std::vector<RealMatrix>& X,
                                  const std::vector<double>& nonneg) const {
  if (static_cast<int>(X.size()) != block_count() ||
      static_cast<int>(nonneg.size()) != nonneg_)
    throw InvalidInput("sdp: candidate point has wrong shape");
  double acc = 0.0;
  for (const auto& t : objective_.entries) {
    const RealMatrix& M = X[t.block];
    acc += (t.i == t.j) ? t.coeff * M(t.i, t.i)
                        : 0.5 * t.coeff * (M(t.i, t.j) + M(t.j, t.i));
  }
  for (const auto& [var, coeff] : objective_.lin) acc += coeff * nonneg[var];
  return acc;
}

CertificateCheck SdpProblem::check_primal_infeasibility(
    const SdpSolution& sol) const {
  if (static_cast<int>(sol.y.size()) != row_count() ||
      static_cast<int>(sol.S.size()) != block_count() ||
      static_cast<int>(sol.nonneg_dual.size()) != nonneg_)
    throw InvalidInput("sdp: certificate has wrong shape");

  std::vector<RealMatrix> Z;
  Z.reserve(block_dims_.size());
  for (int d : block_dims_) Z.push_back(RealMatrix::Zero(d, d));
  std::vector<double> zlin(nonneg_, 0.0);
  for (int r = 0; r < row_count(); ++r) {
    double w = sol.y[r];
    for (const auto& t : rows_[r].entries) {
      if (t.i == t.j) {
        Z[t.block](t.i, t.i) += t.coeff * w;
      } else {
        Z[t.block](t.i, t.j) += 0.5 * t.coeff * w;
        Z[t.block](t.j, t.i) += 0.5 * t.coeff * w;
      }
    }
    for (const auto& [var, coeff] : rows_[r].lin) zlin[var] += coeff * w;
  }

  CertificateCheck out;
  double lin2 = 0.0;
  for (int b2 = 0; b2 < block_count(); ++b2)
    lin2 += (Z[b2] + sol.S[b2]).squaredNorm();
  for (int v = 0; v < nonneg_; ++v) {
    double r = zlin[v] + sol.nonneg_dual[v];
    lin2 += r * r;
  }
  out.linear = std::sqrt(lin2);

  double cone = 0.0;
  for (int b2 = 0; b2 < block_count(); ++b2)
    cone = std::max(cone, -std::min(0.0, lambda_min(sol.S[b2])));
  for (int v = 0; v < nonneg_; ++v)
    cone = std::max(cone, -std::min(0.0, sol.nonneg_dual[v]));
  out.cone = cone;

  double by = 0.0;
  for (int r = 0; r < row_count(); ++r) by += rows_[r].rhs * sol.y[r];
  out.objective = by;
  return out;
}

CertificateCheck SdpProblem::check_dual_infeasibility(
    const SdpSolution& sol) const {
  CertificateCheck out;
  double lin2 = 0.0;
  for (int r = 0; r < row_count(); ++r) {
    double v = eval_row(r, sol.X, sol.nonneg);
    lin2 += v * v;
  }
  out.linear = std::sqrt(lin2);

  double cone = 0.0;
  for (const auto& M : sol.X)
    cone = std::max(cone, -std::min(0.0, lambda_min(M)));
  for (double v : sol.nonneg) cone = std::max(cone, -std::min(0.0, v));
  out.cone = cone;

  double rate = eval_objective(sol.X, sol.nonneg);
  out.objective = maximize_ ? rate : -rate;
  return out;
}

SdpSolution SdpProblem::solve(const SdpOptions& opts) const {
  if (rows_.empty())
    throw InvalidInput("sdp: at least one equality row is required");
  if (block_dims_.empty() && nonneg_ == 0)
    throw InvalidInput("sdp: empty variable space");
  for (const auto& rd : rows_)
    if (rd.entries.empty() && rd.lin.empty())
      throw InvalidInput("sdp: equality row has no coefficients");

  const SdpCompiled pc(*this);
  const Layout& lay = pc.lay;
  const int m = row_count();
  const int nb = block_count();
  const int total = lay.total;
  double nu = lay.p;
  for (int d : lay.dim) nu += d;

  const RealVector& b = pc.b;
  const RealVector& c = pc.c;
  const double bnorm = b.norm();
  const double cnorm = c.norm();

  // State: x, s interior, y free, tau and kap positive.
  RealVector x = RealVector::Zero(total), s = RealVector::Zero(total);
  for (int b2 = 0; b2 < nb; ++b2)
    for (int i = 0; i < lay.dim[b2]; ++i) {
      x[lay.coord(b2, i, i)] = 1.0;
      s[lay.coord(b2, i, i)] = 1.0;
    }
  for (int t = 0; t < lay.p; ++t) {
    x[lay.svec_total + t] = 1.0;
    s[lay.svec_total + t] = 1.0;
  }
  RealVector y = RealVector::Zero(m);
  double tau = 1.0, kap = 1.0;

  auto unpack = [&lay](const RealVector& v, int b2) {
    int k = lay.dim[b2];
    RealMatrix M(k, k);
    int idx = lay.off[b2];
    for (int j = 0; j < k; ++j)
      for (int i = 0; i <= j; ++i, ++idx) {
        if (i == j) {
          M(i, i) = v[idx];
        } else {
          double t = v[idx] / kRoot2;
          M(i, j) = t;
          M(j, i) = t;
        }
      }
    return M;
  };
  auto pack_into = [&lay](RealVector& v, int b2, const RealMatrix& M) {
    int idx = lay.off[b2];
    for (int j = 0; j < lay.dim[b2]; ++j)
      for (int i = 0; i <= j; ++i, ++idx)
        v[idx] = (i == j) ? M(i, i) : 0.5 * kRoot2 * (M(i, j) + M(j, i));
  };
  auto applyA = [&](const RealVector& v) {
    RealVector out(m);
    for (int r = 0; r < m; ++r) {
      double acc = 0.0;
      for (const auto& [idx, val] : pc.rows[r].coords) acc += val * v[idx];
      out[r] = acc;
    }
    return out;
  };
  auto applyAt = [&](const RealVector& yy) {
    RealVector out = RealVector::Zero(total);
    for (int r = 0; r < m; ++r) {
      double w = yy[r];
      if (w == 0.0) continue;
      for (const auto& [idx, val] : pc.rows[r].coords) out[idx] += val * w;
    }
    return out;
  };

  std::vector<BlockScaling> scal(nb);
  std::vector<double> w2(lay.p), wlin(lay.p), lamlin(lay.p);

  auto compute_scalings = [&]() -> bool {
    // Rounding can push an iterate a hair outside the cone even though the
    // step rule kept it interior; a tiny diagonal shift recovers the factor.
    auto chol = [](RealMatrix M2, RealMatrix* L) -> bool {
      double shift = 1e-14 * (std::abs(M2.trace()) / M2.rows() + 1.0);
      for (int attempt = 0; attempt < 3; ++attempt, shift *= 100.0) {
        Eigen::LLT<RealMatrix> f(M2);
        if (f.info() == Eigen::Success) {
          *L = f.matrixL();
          return true;
        }
        M2.diagonal().array() += shift;
      }
      return false;
    };
    for (int b2 = 0; b2 < nb; ++b2) {
      int k = lay.dim[b2];
      RealMatrix X = unpack(x, b2), S = unpack(s, b2);
      BlockScaling& sc = scal[b2];
      if (!chol(X, &sc.L) || !chol(S, &sc.R)) return false;
      Eigen::BDCSVD<RealMatrix> svd(sc.R.transpose() * sc.L,
                                    Eigen::ComputeFullU | Eigen::ComputeFullV);
      sc.lam = svd.singularValues();
      if (sc.lam(k - 1) <= 0.0 || !std::isfinite(sc.lam(0))) return false;
      RealVector isq = sc.lam.cwiseSqrt().cwiseInverse();
      sc.N = sc.L * svd.matrixV() * isq.asDiagonal();
      RealMatrix Linv =
          sc.L.triangularView<Eigen::Lower>().solve(RealMatrix::Identity(k, k));
      sc.Ninv =
          sc.lam.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * Linv;
      sc.P = sc.N * sc.N.transpose();
    }
    for (int t = 0; t < lay.p; ++t) {
      double xi = x[lay.svec_total + t], si = s[lay.svec_total + t];
      if (xi <= 0.0 || si <= 0.0) return false;
      w2[t] = xi / si;
      wlin[t] = std::sqrt(xi / si);
      lamlin[t] = std::sqrt(xi * si);
    }
    return true;
  };

  auto applyH = [&](const RealVector& v) {
    RealVector out(total);
    for (int b2 = 0; b2 < nb; ++b2) {
      RealMatrix M = unpack(v, b2);
      RealMatrix R = scal[b2].P * M * scal[b2].P;
      pack_into(out, b2, R);
    }
    for (int t = 0; t < lay.p; ++t)
      out[lay.svec_total + t] = w2[t] * v[lay.svec_total + t];
    return out;
  };

  // Largest step to the cone boundary from v along dv; PSD blocks use the
  // Cholesky factors of the current point.
  auto max_step = [&](const RealVector& v, const RealVector& dv, bool xside) {
    double a = std::numeric_limits<double>::infinity();
    for (int b2 = 0; b2 < nb; ++b2) {
      const RealMatrix& L = xside ? scal[b2].L : scal[b2].R;
      RealMatrix D = unpack(dv, b2);
      RealMatrix T1 = L.triangularView<Eigen::Lower>().solve(D);
      RealMatrix T2 =
          L.triangularView<Eigen::Lower>().solve(T1.transpose());
      RealMatrix sym = 0.5 * (T2 + T2.transpose());
      double lm = lambda_min(sym);
      if (lm < 0.0) a = std::min(a, -1.0 / lm);
    }
    for (int t = 0; t < lay.p; ++t) {
      double vv = v[lay.svec_total + t], dd = dv[lay.svec_total + t];
      if (dd < 0.0) a = std::min(a, -vv / dd);
    }
    return a;
  };

  RealMatrix M(m, m), Ms;
  RealVector mscale(m);
  Eigen::LLT<RealMatrix> llt;
  auto assemble_schur = [&]() {
    M.setZero();
    for (int u = 0; u < m; ++u) {
      const auto& tu = pc.rows[u].terms;
      if (tu.empty()) continue;
      for (int v = u; v < m; ++v) {
        const auto& tv = pc.rows[v].terms;
        if (tv.empty()) continue;
        double acc = 0.0;
        for (const auto& a : tu) {
          const RealMatrix& P = scal[a.block].P;
          for (const auto& bb : tv) {
            if (bb.block != a.block) continue;
            acc += a.v * bb.v * P(a.i, bb.i) * P(bb.j, a.j);
          }
        }
        if (acc != 0.0) M(u, v) += acc;
      }
    }
    for (int var = 0; var < lay.p; ++var) {
      const auto& inc = pc.var_rows[var];
      double h = w2[var];
      for (size_t a = 0; a < inc.size(); ++a)
        for (size_t b2 = a; b2 < inc.size(); ++b2) {
          int r1 = inc[a].first, r2 = inc[b2].first;
          double add = h * inc[a].second * inc[b2].second;
          if (r1 <= r2)
            M(r1, r2) += add;
          else
            M(r2, r1) += add;
        }
    }
    for (int u = 0; u < m; ++u)
      for (int v = u + 1; v < m; ++v) M(v, u) = M(u, v);
  };
  // The Schur matrix is factored after symmetric Jacobi scaling, which
  // makes the regularization ladder scale-free; refinement runs against
  // the unscaled matrix.
  auto factor_schur = [&]() -> bool {
    mscale = M.diagonal().cwiseMax(1e-300).cwiseSqrt();
    Ms = mscale.cwiseInverse().asDiagonal() * M *
         mscale.cwiseInverse().asDiagonal();
    llt.compute(Ms);
    if (llt.info() == Eigen::Success) return true;
    double reg = 1e-14;
    for (int attempt = 0; attempt < 6; ++attempt, reg *= 1000.0) {
      Ms.diagonal().array() += reg;
      llt.compute(Ms);
      if (llt.info() == Eigen::Success) return true;
    }
    return false;
  };
  auto solveM = [&](const RealVector& rhs) {
    auto scaled_solve = [&](const RealVector& r) -> RealVector {
      RealVector t = llt.solve((r.array() / mscale.array()).matrix());
      return (t.array() / mscale.array()).matrix();
    };
    RealVector z = scaled_solve(rhs);
    for (int it = 0; it < 3; ++it) {
      RealVector r = rhs - M * z;
      if (r.norm() <= 1e-13 * (1.0 + rhs.norm())) break;
      z += scaled_solve(r);
    }
    return z;
  };

  RealVector res_p(m), res_d(total);
  double res_g = 0.0;
  RealVector Hc, u2, v2;

  struct Dir {
    RealVector dx, dy, ds;
    double dtau = 0.0, dkap = 0.0;
  };
  Dir aff, dir;

  // Builds a search direction for centering weight sigma*mu and residual
  // reduction factor eta, optionally with Mehrotra correction terms.
  auto make_dir = [&](double eta, double sigmu,
                      const std::vector<RealMatrix>* corrM,
                      const std::vector<double>* corrLin, double corr_tau,
                      Dir* out) -> bool {
    RealVector base(total);
    for (int b2 = 0; b2 < nb; ++b2) {
      const BlockScaling& sc = scal[b2];
      int k = lay.dim[b2];
      RealMatrix D = RealMatrix::Zero(k, k);
      for (int i = 0; i < k; ++i) D(i, i) = sigmu - sc.lam(i) * sc.lam(i);
      if (corrM) D -= (*corrM)[b2];
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) D(i, j) = 2.0 * D(i, j) / (sc.lam(i) + sc.lam(j));
      RealMatrix B = sc.N * D * sc.N.transpose();
      pack_into(base, b2, B);
    }
    for (int t = 0; t < lay.p; ++t) {
      double d = sigmu - lamlin[t] * lamlin[t];
      if (corrLin) d -= (*corrLin)[t];
      base[lay.svec_total + t] = wlin[t] * (d / lamlin[t]);
    }

    RealVector Hrd = applyH(res_d);
    RealVector ry = -eta * res_p + eta * applyA(Hrd) - applyA(base);
    RealVector u1 = solveM(ry);
    RealVector v1 = base + applyH(applyAt(u1)) - eta * Hrd;
    double dkt = sigmu - tau * kap - corr_tau;
    double num = -eta * res_g + dkt / tau - b.dot(u1) + c.dot(v1);
    // The data part of the denominator is a projection residual, so it is
    // nonnegative in exact arithmetic; clamping guards against cancellation
    // when the Schur system turns ill-conditioned near convergence.
    double den = std::max(b.dot(u2) - c.dot(v2), 0.0) + kap / tau;
    if (!(den > 1e-300) || !std::isfinite(num) || !std::isfinite(den))
      return false;
    out->dtau = num / den;
    out->dy = u1 + out->dtau * u2;
    out->dx = v1 + out->dtau * v2;
    out->ds = -applyAt(out->dy) + out->dtau * c + eta * res_d;
    out->dkap = (dkt - kap * out->dtau) / tau;
    return true;
  };

  auto step_to_boundary = [&](const Dir& d2) {
    return std::min(
        {max_step(x, d2.dx, true), max_step(s, d2.ds, false),
         d2.dtau < 0.0 ? -tau / d2.dtau : std::numeric_limits<double>::infinity(),
         d2.dkap < 0.0 ? -kap / d2.dkap : std::numeric_limits<double>::infinity()});
  };

  SdpStatus status = SdpStatus::Inaccurate;
  SdpResiduals rep;
  std::string note;
  int iter = 0;
  double mu = 1.0;
  int centerings_left = 3;

  // Best iterate seen, by worst normalized residual; reported if the
  // endgame stalls short of the tolerance.
  double best_score = std::numeric_limits<double>::infinity();
  RealVector best_x, best_y, best_s;
  double best_tau = 1.0;
  SdpResiduals best_rep;

  for (iter = 0; iter <= opts.max_iter; ++iter) {
    res_p = applyA(x) - tau * b;
    res_d = -applyAt(y) + tau * c - s;
    res_g = b.dot(y) - c.dot(x) - kap;
    mu = (x.dot(s) + tau * kap) / (nu + 1.0);

    RealVector xhat = x / tau, shat = s / tau, yhat = y / tau;
    double pres = (applyA(xhat) - b).norm() / (1.0 + bnorm);
    double dres = (applyAt(yhat) + shat - c).norm() / (1.0 + cnorm);
    double pobj = c.dot(xhat), dobj = b.dot(yhat);
    double gapr =
        std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    rep = SdpResiduals{pres, dres, gapr};
    double score = std::max({pres, dres, gapr});
    if (score < best_score) {
      best_score = score;
      best_x = x;
      best_y = y;
      best_s = s;
      best_tau = tau;
      best_rep = rep;
    }
    if (opts.verbose)
      std::fprintf(stderr,
                   "iter %3d  mu %9.2e  pres %9.2e  dres %9.2e  gap %9.2e  "
                   "tau %9.2e  kap %9.2e\n",
                   iter, mu, pres, dres, gapr, tau, kap);

    if (pres <= opts.tol && dres <= opts.tol && gapr <= opts.tol) {
      status = SdpStatus::Optimal;
      break;
    }
    if (mu <= 1e-4) {
      double by = b.dot(y);
      if (by > 0.0 &&
          (applyAt(y) + s).norm() <= opts.tol * by * (1.0 + cnorm)) {
        status = SdpStatus::PrimalInfeasible;
        break;
      }
      double cx = c.dot(x);
      if (cx < 0.0 && applyA(x).norm() <= opts.tol * (-cx) * (1.0 + bnorm)) {
        status = SdpStatus::DualInfeasible;
        break;
      }
    }
    if (iter == opts.max_iter) {
      note = "iteration limit reached";
      break;
    }

    if (!compute_scalings()) {
      note = "cone factorization failed";
      break;
    }
    assemble_schur();
    if (!factor_schur()) {
      note = "kkt factorization failed";
      break;
    }
    Hc = applyH(c);
    u2 = solveM(b + applyA(Hc));
    v2 = applyH(applyAt(u2)) - Hc;

    if (!make_dir(1.0, 0.0, nullptr, nullptr, 0.0, &aff)) {
      note = "singular step system";
      break;
    }
    double amax_aff = step_to_boundary(aff);
    double a_aff = std::min(1.0, amax_aff);
    double mu_aff = ((x + a_aff * aff.dx).dot(s + a_aff * aff.ds) +
                     (tau + a_aff * aff.dtau) * (kap + a_aff * aff.dkap)) /
                    (nu + 1.0);
    double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

    std::vector<RealMatrix> corrM(nb);
    for (int b2 = 0; b2 < nb; ++b2) {
      const BlockScaling& sc = scal[b2];
      RealMatrix U = sc.Ninv * unpack(aff.dx, b2) * sc.Ninv.transpose();
      RealMatrix V = sc.N.transpose() * unpack(aff.ds, b2) * sc.N;
      corrM[b2] = 0.5 * (U * V + V * U);
    }
    std::vector<double> corrLin(lay.p);
    for (int t = 0; t < lay.p; ++t)
      corrLin[t] =
          aff.dx[lay.svec_total + t] * aff.ds[lay.svec_total + t];

    if (!make_dir(1.0 - sigma, sigma * mu, &corrM, &corrLin,
                  aff.dtau * aff.dkap, &dir)) {
      note = "singular step system";
      break;
    }
    double amax = step_to_boundary(dir);
    if (!(amax > 1e-7)) {
      // Near the end the combined direction can be corrupted by the
      // ill-conditioned step system; a pure centering step usually restores
      // room to move.  Give up only when centering stalls too.
      bool recovered = false;
      if (centerings_left > 0 && make_dir(0.0, mu, nullptr, nullptr, 0.0, &dir)) {
        amax = step_to_boundary(dir);
        if (amax > 1e-7) {
          recovered = true;
          --centerings_left;
        }
      }
      if (!recovered) {
        note = "step length collapsed";
        break;
      }
    } else {
      centerings_left = 3;
    }
    double a = std::min(1.0, 0.99 * amax);
    x += a * dir.dx;
    s += a * dir.ds;
    y += a * dir.dy;
    tau += a * dir.dtau;
    kap += a * dir.dkap;
  }

  if (status == SdpStatus::Inaccurate &&
      best_score < std::max({rep.primal, rep.dual, rep.gap})) {
    x = best_x;
    y = best_y;
    s = best_s;
    tau = best_tau;
    rep = best_rep;
  }

  SdpSolution sol;
  sol.status = status;
  sol.iterations = iter;
  sol.residuals = rep;
  sol.note = note;

  auto fill_blocks = [&](const RealVector& v, double denom,
                         std::vector<RealMatrix>* out_m,
                         std::vector<double>* out_lin) {
    out_m->clear();
    out_lin->clear();
    for (int b2 = 0; b2 < nb; ++b2) out_m->push_back(unpack(v, b2) / denom);
    for (int t = 0; t < lay.p; ++t)
      out_lin->push_back(v[lay.svec_total + t] / denom);
  };

  if (status == SdpStatus::PrimalInfeasible) {
    double by = b.dot(y);
    fill_blocks(x, 1.0, &sol.X, &sol.nonneg);
    fill_blocks(s, by, &sol.S, &sol.nonneg_dual);
    sol.y.assign(m, 0.0);
    for (int r = 0; r < m; ++r) sol.y[r] = y[r] / by;
    sol.value = 0.0;
  } else if (status == SdpStatus::DualInfeasible) {
    double rate = -c.dot(x);
    fill_blocks(x, rate, &sol.X, &sol.nonneg);
    fill_blocks(s, 1.0, &sol.S, &sol.nonneg_dual);
    sol.y.assign(m, 0.0);
    sol.value = 0.0;
  } else {
    fill_blocks(x, tau, &sol.X, &sol.nonneg);
    fill_blocks(s, tau, &sol.S, &sol.nonneg_dual);
    sol.y.assign(m, 0.0);
    double flip = maximize_ ? -1.0 : 1.0;
    for (int r = 0; r < m; ++r) sol.y[r] = flip * y[r] / tau;
    sol.value = flip * c.dot(x) / tau;
  }
  return sol;
}

std::string SdpProblem::sdpa_sparse() const {
  std::ostringstream os;
  os.precision(17);
  os << "\"kscert export: minimize <F0,X>, subject to <Fr,X> = b_r, X psd";
  if (maximize_) os << " (objective negated: original sense was maximize)";
  os << "\n";
  int nblocks = block_count() + (nonneg_ > 0 ? 1 : 0);
  os << row_count() << "\n" << nblocks << "\n";
  for (int b2 = 0; b2 < block_count(); ++b2) {
    if (b2) os << " ";
    os << block_dims_[b2];
  }
  if (nonneg_ > 0) {
    if (block_count()) os << " ";
    os << -nonneg_;
  }
  os << "\n";
  for (int r = 0; r < row_count(); ++r) {
    if (r) os << " ";
    os << rows_[r].rhs;
  }
  os << "\n";

  double flip = maximize_ ? -1.0 : 1.0;
  auto emit = [&](int matno, const RowData& rd, double sign) {
    std::map<std::tuple<int, int, int>, double> acc;
    for (const auto& t : rd.entries) {
      int i = std::min(t.i, t.j), j = std::max(t.i, t.j);
      acc[{t.block, i, j}] += t.coeff;
    }
    for (const auto& [key, v] : acc) {
      if (v == 0.0) continue;
      auto [b2, i, j] = key;
      double entry = (i == j) ? v : 0.5 * v;
      os << matno << " " << b2 + 1 << " " << i + 1 << " " << j + 1 << " "
         << sign * entry << "\n";
    }
    std::map<int, double> linacc;
    for (const auto& [var, coeff] : rd.lin) linacc[var] += coeff;
    for (const auto& [var, v] : linacc) {
      if (v == 0.0) continue;
      os << matno << " " << block_count() + 1 << " " << var + 1 << " "
         << var + 1 << " " << sign * v << "\n";
    }
  };
  emit(0, objective_, flip);
  for (int r = 0; r < row_count(); ++r) emit(r + 1, rows_[r], 1.0);
  return os.str();
}

}  // namespace kscert
