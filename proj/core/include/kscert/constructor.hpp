#pragma once

#include <cstdint>
#include <vector>

#include "kscert/catalog.hpp"
#include "kscert/qcore.hpp"
#include "kscert/rational.hpp"

namespace kscert {

// Dimension ladder grown from the 24-ray set in d = 4: the lift to dimension
// d places d - 3 shifted copies side by side, copy k occupying coordinates
// k..k+3, and merges rays that are collinear within 1e-12.  d = 4 returns the
// built-in 24-ray set unchanged; d = 5 lands on the 39-ray set.  Lifted sets
// small enough for clique search carry clique-frequency weights; beyond the
// 64-vertex graph limit the weights fall back to 1.
VectorSet lift_peres(int d);

// w_i = number of basis cliques (orthogonal cliques summing to identity)
// that contain vertex i.  Zero entries are possible and left as is.
std::vector<Rational> clique_frequency_weights(const VectorSet& set);

// A second realization of the 33-ray orthogonality graph: one embedded
// 13-ray copy has its third components multiplied by i, another has its
// second components multiplied by -i, and the remaining rays (the first
// copy, including the three shared axes) stay untouched.  Same graph as
// builtin_set("peres33"), but the absolute Gram entries differ, so no
// unitary or antiunitary carries one realization to the other.
VectorSet peres33_alternate();

// Block embedding P -> P (x) 1_{d1} (+) conj(P) (x) 1_{d2} on the space of
// dimension dim * (d1 + d2).  A zero multiplicity drops that block; (1, 0)
// reproduces the input.
std::vector<Projector> embed_realization(const std::vector<Projector>& projs,
                                         int d1, int d2);
std::vector<Projector> embed_realization(const VectorSet& set, int d1, int d2);

// Conjugates each projector by its own unitary exp(i * sigma * H), with H a
// seeded Hermitian direction of unit spectral norm.  sigma = 0 returns the
// input unchanged; outputs are exact projectors for every sigma.
std::vector<Projector> perturb_realization(const std::vector<Projector>& projs,
                                           double sigma, std::uint64_t seed);
std::vector<Projector> perturb_realization(const VectorSet& set, double sigma,
                                           std::uint64_t seed);

}  // namespace kscert
