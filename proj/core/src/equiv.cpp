#include "kscert/equiv.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <utility>

#include <Eigen/SVD>

#include "kscert/constructor.hpp"

namespace kscert {

namespace {

Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Orthonormal basis of the top-k eigenspace; eig_hermitian sorts ascending,
// so the range of a projector sits in the last columns.
Matrix range_isometry(const Matrix& m, int k) {
  const HermitianEig eig = eig_hermitian(m);
  return eig.vectors.rightCols(k);
}

int spectral_rank(const Matrix& m, double tol) {
  const HermitianEig eig = eig_hermitian(m);
  int r = 0;
  for (Eigen::Index a = 0; a < eig.values.size(); ++a)
    if (eig.values(a) > tol) ++r;
  return r;
}

Ket top_eigvec(const Matrix& m) {
  const HermitianEig eig = eig_hermitian(m);
  return Ket(eig.vectors.col(eig.vectors.cols() - 1)).normalized();
}

}  // namespace

InvariantProfile invariant_profile(const std::vector<Ket>& kets) {
  if (kets.size() < 2) throw InvalidInput("invariant_profile: need at least two vectors");
  const int n = static_cast<int>(kets.size());
  std::vector<Vector> v;
  v.reserve(n);
  for (const Ket& k : kets) v.push_back(k.normalized().amps());

  InvariantProfile p;
  p.gram_abs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      p.gram_abs.push_back(std::round(std::abs(v[i].dot(v[j])) * 1e8) / 1e8);
  std::sort(p.gram_abs.begin(), p.gram_abs.end());

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Complex delta = v[i].dot(v[j]) * v[j].dot(v[k]) * v[k].dot(v[i]);
        p.bargmann.push_back({{i, j, k}, delta});
      }
  return p;
}

RankCheck rank_conditions(const std::vector<Projector>& projs, const Graph& g,
                          double tol) {
  if (projs.empty()) throw InvalidInput("rank_conditions: empty projector list");
  if (static_cast<int>(projs.size()) != g.size())
    throw InvalidInput("rank_conditions: projector count differs from graph size");

  RankCheck out;
  const int n = g.size();
  std::vector<int> ranks(n);
  for (int i = 0; i < n; ++i) ranks[i] = spectral_rank(projs[i].matrix(), tol);
  for (int i = 1; i < n; ++i) {
    if (ranks[i] != ranks[0]) {
      out.violation = "projector " + std::to_string(i) + " has rank " +
                      std::to_string(ranks[i]) + " while projector 0 has rank " +
                      std::to_string(ranks[0]);
      return out;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      const Matrix m = projs[j].matrix() * projs[i].matrix() * projs[j].matrix();
      const int r = spectral_rank(m, tol);
      if (r < ranks[j]) {
        out.violation = "compressing projector " + std::to_string(i) +
                        " by projector " + std::to_string(j) + " drops the rank to " +
                        std::to_string(r) + ", below " + std::to_string(ranks[j]);
        return out;
      }
    }
  }
  out.ok = true;
  out.kappa = ranks[0];
  return out;
}

KetAlignment ket_align(const std::vector<Ket>& from, const std::vector<Ket>& to) {
  if (from.size() != to.size()) throw InvalidInput("ket_align: family sizes differ");
  if (from.empty()) throw InvalidInput("ket_align: empty families");
  const int n = static_cast<int>(from.size());
  const int d = from[0].dim();
  if (to[0].dim() != d) throw InvalidInput("ket_align: families live in different dimensions");
  for (int i = 0; i < n; ++i)
    if (from[i].dim() != d || to[i].dim() != d)
      throw InvalidInput("ket_align: mixed dimensions within a family");

  std::vector<Vector> a, b;
  a.reserve(n);
  b.reserve(n);
  for (int i = 0; i < n; ++i) {
    a.push_back(from[i].normalized().amps());
    b.push_back(to[i].normalized().amps());
  }

  // Breadth-first phase synchronization: after rephasing, the off-diagonal
  // Gram entries of the source match the target's along a spanning forest
  // of the common overlap pattern.
  std::vector<double> phase(n, 0.0);
  std::vector<char> done(n, 0);
  for (int root = 0; root < n; ++root) {
    if (done[root]) continue;
    done[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (done[j]) continue;
        const Complex ga = a[i].dot(a[j]);
        const Complex gb = b[i].dot(b[j]);
        if (std::abs(ga) < 1e-8 || std::abs(gb) < 1e-8) continue;
        phase[j] = phase[i] + std::arg(gb) - std::arg(ga);
        done[j] = 1;
        q.push(j);
      }
    }
  }

  Matrix src(d, n), dst(d, n);
  for (int i = 0; i < n; ++i) {
    src.col(i) = std::exp(Complex(0.0, phase[i])) * a[i];
    dst.col(i) = b[i];
  }
  KetAlignment out;
  out.u = polar_unitary(dst * src.adjoint());
  for (int i = 0; i < n; ++i) {
    const Vector ua = out.u * a[i];
    Matrix diff = ua * ua.adjoint() - b[i] * b[i].adjoint();
    out.residual = std::max(out.residual, max_abs(diff));
  }
  return out;
}

AlignmentResult align(const std::vector<Projector>& candidate,
                      const VectorSet& reference) {
  if (static_cast<int>(candidate.size()) != reference.size())
    throw InvalidInput("align: candidate and reference sizes differ");
  const int n = reference.size();
  const int d = reference.dim;
  const int D = candidate[0].dim();
  for (const Projector& p : candidate)
    if (p.dim() != D) throw InvalidInput("align: candidate dimensions are mixed");
  if (D % d != 0)
    throw InvalidInput("align: candidate dimension " + std::to_string(D) +
                       " is not a multiple of the reference dimension " +
                       std::to_string(d));

  AlignmentResult out;
  const std::vector<Projector> ref_projs = reference.projectors();
  const Graph g = orthogonality_graph(ref_projs);
  const Graph gc = orthogonality_graph(candidate);
  if (gc.edges() != g.edges())
    throw InvalidInput("align: candidate orthogonality graph differs from the reference's");

  const RankCheck rc = rank_conditions(candidate, g);
  if (!rc.ok) throw InvalidInput("align: rank conditions fail: " + rc.violation);
  out.kappa = rc.kappa;
  if (rc.kappa * d != D)
    throw InvalidInput("align: common rank " + std::to_string(rc.kappa) +
                       " does not tile dimension " + std::to_string(D));
  const int kappa = rc.kappa;

  const std::vector<std::vector<int>> bases = basis_cliques(g, ref_projs);
  if (bases.empty()) throw InvalidInput("align: reference has no complete basis clique");
  const std::vector<int>& clique = bases.front();
  if (static_cast<int>(clique.size()) != d)
    throw InvalidInput("align: reference basis clique does not have dimension many members");

  // Stage 1: orthonormal frame from the candidate ranges over the clique.
  Matrix stacked(D, D);
  {
    Matrix sum = Matrix::Zero(D, D);
    for (int t = 0; t < d; ++t) {
      const Matrix& pm = candidate[clique[t]].matrix();
      sum += pm;
      stacked.middleCols(t * kappa, kappa) = range_isometry(pm, kappa);
    }
    sum -= Matrix::Identity(D, D);
    out.steps.push_back({"clique completeness", max_abs(sum)});
  }
  {
    Matrix defect = stacked.adjoint() * stacked - Matrix::Identity(D, D);
    out.steps.push_back({"clique frame orthonormality", max_abs(defect)});
  }
  const Matrix w0 = polar_unitary(stacked);

  // Stage 2: block decomposition of every candidate range in that frame.
  std::vector<Matrix> rotated(n);
  double zero_defect = 0.0;
  out.range_blocks.reserve(n);
  for (int i = 0; i < n; ++i) {
    rotated[i] = w0.adjoint() * candidate[i].matrix() * w0;
    Matrix li = range_isometry(rotated[i], kappa);
    for (int t = 0; t < d; ++t) {
      if (i == clique[t]) continue;
      const Matrix block = li.middleRows(t * kappa, kappa);
      if (g.adjacent(i, clique[t])) {
        zero_defect = std::max(zero_defect, max_abs(block));
      } else {
        Eigen::JacobiSVD<Matrix> svd(block);
        if (svd.singularValues().minCoeff() < 1e-6)
          throw InvalidInput("align: singular block for vertex " + std::to_string(i) +
                             " against clique member " + std::to_string(clique[t]));
      }
    }
    out.range_blocks.push_back(std::move(li));
  }
  out.steps.push_back({"orthogonal block suppression", zero_defect});

  // Stage 3: commutant of the algebra the candidate generates, vectorized.
  const int DD = D * D;
  Matrix big = Matrix::Zero(DD, DD);
  const Matrix idD = Matrix::Identity(D, D);
  for (int i = 0; i < n; ++i) {
    const Matrix a = tensor(idD, rotated[i]) - tensor(rotated[i].transpose(), idD);
    big += a.adjoint() * a;
  }
  const HermitianEig keig = eig_hermitian(big, 1e-6);
  int null_dim = 0;
  while (null_dim < DD && keig.values(null_dim) < 1e-9) ++null_dim;
  if (null_dim == 0) throw InvalidInput("align: commutant is empty");
  out.steps.push_back({"commutant closure", keig.values(null_dim - 1)});

  // Stage 4: eigenspaces of a random self-adjoint commutant element give the
  // irreducible dimension-d summands.
  std::vector<Matrix> summands;
  bool split_ok = false;
  for (int attempt = 0; attempt < 8 && !split_ok; ++attempt) {
    std::mt19937_64 rng(0x616c69676eULL + attempt);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix x = Matrix::Zero(D, D);
    for (int k = 0; k < null_dim; ++k) {
      const Complex c(gauss(rng), gauss(rng));
      Matrix xk(D, D);
      for (int col = 0; col < D; ++col) xk.col(col) = keig.vectors.col(k).segment(col * D, D);
      x += c * xk;
    }
    Matrix h = (x + x.adjoint()) / 2.0;
    const double norm = spectral_norm_hermitian(h);
    if (norm < 1e-12) continue;
    h /= norm;
    const HermitianEig heig = eig_hermitian(h);
    summands.clear();
    bool ok = true;
    int start = 0;
    for (int a = 1; a <= D; ++a) {
      if (a == D || heig.values(a) - heig.values(a - 1) > 1e-6) {
        if (a - start != d) {
          ok = false;
          break;
        }
        summands.push_back(heig.vectors.middleCols(start, d));
        start = a;
      }
    }
    split_ok = ok && static_cast<int>(summands.size()) == kappa;
  }
  if (!split_ok)
    throw InvalidInput("align: commutant does not split into dimension-" +
                       std::to_string(d) + " summands");

  // Stage 5: align each summand against the reference rays or their
  // conjugates, whichever fits.
  const std::vector<Ket> ref_kets = reference.kets();
  std::vector<Ket> conj_kets;
  conj_kets.reserve(n);
  for (const Ket& k : ref_kets) conj_kets.push_back(k.conj());

  struct SummandFit {
    Matrix frame;  // D x d isometry in original candidate coordinates
    Matrix g;      // d x d unitary onto the reference rays (or conjugates)
    bool conjugate = false;
    double residual = 0.0;
  };
  std::vector<SummandFit> fits;
  fits.reserve(kappa);
  for (int j = 0; j < kappa; ++j) {
    std::vector<Ket> block_kets;
    block_kets.reserve(n);
    for (int i = 0; i < n; ++i)
      block_kets.push_back(top_eigvec(summands[j].adjoint() * rotated[i] * summands[j]));
    const KetAlignment plain = ket_align(block_kets, ref_kets);
    const KetAlignment conj = ket_align(block_kets, conj_kets);
    SummandFit fit;
    fit.frame = w0 * summands[j];
    fit.conjugate = conj.residual < plain.residual;
    fit.g = fit.conjugate ? conj.u : plain.u;
    fit.residual = std::min(plain.residual, conj.residual);
    out.steps.push_back({"summand " + std::to_string(j) + " alignment", fit.residual});
    fits.push_back(std::move(fit));
  }
  for (const SummandFit& f : fits) (f.conjugate ? out.d2 : out.d1)++;

  // Stage 6: assemble the unitary, plain summands first.
  Matrix u = Matrix::Zero(D, D);
  int plus_seen = 0;
  int minus_seen = 0;
  for (const SummandFit& f : fits) {
    Matrix embed = Matrix::Zero(D, d);
    for (int t = 0; t < d; ++t) {
      const int row = f.conjugate ? d * out.d1 + t * out.d2 + minus_seen : t * out.d1 + plus_seen;
      embed(row, t) = 1.0;
    }
    (f.conjugate ? minus_seen : plus_seen)++;
    u += embed * f.g * f.frame.adjoint();
  }
  out.U = polar_unitary(u);

  const std::vector<Projector> targets = embed_realization(ref_projs, out.d1, out.d2);
  for (int i = 0; i < n; ++i) {
    Matrix diff = out.U * candidate[i].matrix() * out.U.adjoint() - targets[i].matrix();
    out.residual = std::max(out.residual, max_abs(diff));
  }
  return out;
}

std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Unitary:
      return "unitary";
    case Equivalence::Antiunitary:
      return "antiunitary";
    default:
      return "inequivalent";
  }
}

Equivalence equivalent(const std::vector<Ket>& a, const std::vector<Ket>& b) {
  if (a.size() != b.size()) throw InvalidInput("equivalent: families differ in size");
  if (a.size() < 2) throw InvalidInput("equivalent: need at least two vectors");
  if (a[0].dim() != b[0].dim()) return Equivalence::Inequivalent;

  const InvariantProfile pa = invariant_profile(a);
  const InvariantProfile pb = invariant_profile(b);
  for (std::size_t k = 0; k < pa.gram_abs.size(); ++k)
    if (std::abs(pa.gram_abs[k] - pb.gram_abs[k]) > 1e-7) return Equivalence::Inequivalent;

  if (ket_align(a, b).residual <= 1e-6) return Equivalence::Unitary;
  std::vector<Ket> ac;
  ac.reserve(a.size());
  for (const Ket& k : a) ac.push_back(k.conj());
  if (ket_align(ac, b).residual <= 1e-6) return Equivalence::Antiunitary;
  return Equivalence::Inequivalent;
}

}  // namespace kscert
