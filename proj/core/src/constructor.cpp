#include "kscert/constructor.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "kscert/graph.hpp"

namespace kscert {

namespace {

// Unit kets a, b are collinear when |<a|b>| = 1.
bool collinear(const Ket& a, const Ket& b, double tol) {
  const Complex ip = a.amps().dot(b.amps());
  return std::abs(std::abs(ip) - 1.0) <= tol;
}

// Multiplication by the imaginary unit within the symbolic coordinate
// grammar.  Third roots of unity have no representable product.
SymbolicEntry times_imag(const SymbolicEntry& e) {
  SymbolicEntry out = e;
  switch (e.base) {
    case SymbolicEntry::Base::One:
      out.base = SymbolicEntry::Base::ImagUnit;
      break;
    case SymbolicEntry::Base::ImagUnit:
      out.base = SymbolicEntry::Base::One;
      out.coeff = -e.coeff;
      break;
    case SymbolicEntry::Base::RootTwo:
      out.base = SymbolicEntry::Base::ImagRootTwo;
      break;
    case SymbolicEntry::Base::ImagRootTwo:
      out.base = SymbolicEntry::Base::RootTwo;
      out.coeff = -e.coeff;
      break;
    default:
      throw InvalidInput("times_imag: entry has no representable product with i");
  }
  if (out.coeff == 0) out = SymbolicEntry::integer(0);
  return out;
}

std::vector<Rational> frequencies_of(const std::vector<Projector>& projs, int n) {
  Graph g = orthogonality_graph(projs);
  const std::vector<std::vector<int>> cliques = basis_cliques(g, projs);
  std::vector<Rational> w(n, Rational(0));
  for (const std::vector<int>& c : cliques) {
    for (int v : c) w[v] = w[v] + Rational(1);
  }
  return w;
}

}  // namespace

VectorSet lift_peres(int d) {
  if (d < 4) throw InvalidInput("lift_peres: target dimension must be at least 4");
  const VectorSet& base = builtin_set("peres24");
  if (d == 4) return base;

  VectorSet out;
  out.name = "peres24_lift" + std::to_string(d);
  out.dim = d;
  std::vector<Ket> kept;
  for (int k = 0; k + 4 <= d; ++k) {
    for (int i = 0; i < base.size(); ++i) {
      std::vector<SymbolicEntry> padded(d, SymbolicEntry::integer(0));
      Vector amps = Vector::Zero(d);
      for (int c = 0; c < 4; ++c) {
        padded[k + c] = base.vectors[i][c];
        amps(k + c) = padded[k + c].value();
      }
      const Ket ket = Ket(amps).normalized();
      bool duplicate = false;
      for (const Ket& seen : kept) {
        if (collinear(ket, seen, 1e-12)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        out.vectors.push_back(std::move(padded));
        kept.push_back(ket);
      }
    }
  }

  if (out.size() <= 64) {
    std::vector<Projector> projs;
    projs.reserve(kept.size());
    for (const Ket& ket : kept) projs.push_back(Projector::onto(ket));
    out.weights = frequencies_of(projs, out.size());
    out.edge_weight_rule = EdgeWeightRule::CliqueSum;
  } else {
    out.weights.assign(out.size(), Rational(1));
    out.edge_weight_rule = EdgeWeightRule::MaxPlusOne;
  }
  out.validate();
  return out;
}

std::vector<Rational> clique_frequency_weights(const VectorSet& set) {
  return frequencies_of(set.projectors(), set.size());
}

VectorSet peres33_alternate() {
  VectorSet s = builtin_set("peres33");
  s.name = "peres33_alt";
  // 1-indexed rows of the two rephased 13-ray copies; the shared axes 1..3
  // belong to neither list.
  static const int kThirdTimesI[] = {8, 9, 26, 29, 27, 28, 20, 11, 21, 10};
  static const int kSecondTimesMinusI[] = {6, 7, 22, 25, 23, 24, 18, 17, 19, 16};
  for (int i : kThirdTimesI) {
    s.vectors[i - 1][2] = times_imag(s.vectors[i - 1][2]);
  }
  for (int i : kSecondTimesMinusI) {
    SymbolicEntry e = times_imag(s.vectors[i - 1][1]);
    e.coeff = -e.coeff;
    if (e.coeff == 0) e = SymbolicEntry::integer(0);
    s.vectors[i - 1][1] = e;
  }
  s.validate();
  return s;
}

std::vector<Projector> embed_realization(const std::vector<Projector>& projs,
                                         int d1, int d2) {
  if (d1 < 0 || d2 < 0) {
    throw InvalidInput("embed_realization: block multiplicities must be nonnegative");
  }
  if (d1 + d2 < 1) {
    throw InvalidInput("embed_realization: at least one block multiplicity must be positive");
  }
  std::vector<Projector> out;
  out.reserve(projs.size());
  for (const Projector& p : projs) {
    const Matrix& m = p.matrix();
    Matrix big;
    if (d1 > 0 && d2 > 0) {
      big = direct_sum(tensor(m, Matrix::Identity(d1, d1)),
                       tensor(m.conjugate(), Matrix::Identity(d2, d2)));
    } else if (d1 > 0) {
      big = tensor(m, Matrix::Identity(d1, d1));
    } else {
      big = tensor(m.conjugate(), Matrix::Identity(d2, d2));
    }
    out.push_back(Projector::from_matrix(big));
  }
  return out;
}

std::vector<Projector> embed_realization(const VectorSet& set, int d1, int d2) {
  return embed_realization(set.projectors(), d1, d2);
}

std::vector<Projector> perturb_realization(const std::vector<Projector>& projs,
                                           double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) {
    throw InvalidInput("perturb_realization: magnitude must be nonnegative");
  }
  if (sigma == 0.0) return projs;
  std::vector<Projector> out;
  out.reserve(projs.size());
  for (std::size_t i = 0; i < projs.size(); ++i) {
    const int d = projs[i].dim();
    const std::uint64_t sub_seed =
        seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1);
    const Matrix h = random_hermitian_direction(sub_seed, d);
    const HermitianEig eig = eig_hermitian(h);
    Vector phases(d);
    for (int a = 0; a < d; ++a) {
      phases(a) = std::exp(Complex(0.0, sigma * eig.values(a)));
    }
    const Matrix u = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
    out.push_back(Projector::from_matrix(u * projs[i].matrix() * u.adjoint()));
  }
  return out;
}

std::vector<Projector> perturb_realization(const VectorSet& set, double sigma,
                                           std::uint64_t seed) {
  return perturb_realization(set.projectors(), sigma, seed);
}

}  // namespace kscert
