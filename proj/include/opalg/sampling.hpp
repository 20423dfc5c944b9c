/**
 * @file  sampling.hpp
 * @brief Deterministic random operators for verification campaigns.
 *
 * All samplers draw from an explicit Rng stream, so a (seed, suite, dim,
 * trial) address fully determines every instance regardless of threading.
 * Spectra are sampled directly (random basis + random eigenvalues), which
 * gives exact control of the admissible set each type demands.
 */
#pragma once

#include "opalg/algebra.hpp"
#include "opalg/rng.hpp"

namespace opalg {

/// Haar-like random unitary: Gram-Schmidt of a complex Gaussian matrix
/// (with one re-orthogonalization pass).
Mat random_unitary(Rng& rng, int n);

/// V diag(u) V* with u ~ U[0,1]: a random positive contraction.
PosContraction random_pos_contraction(Rng& rng, int n);

/// V diag(u) V* with u ~ U[-1,1]: a random Hermitian contraction.
Mat random_herm_contraction(Rng& rng, int n);

/// GUE-style Hermitian matrix scaled to ‖a‖ <= scale.
Mat random_herm(Rng& rng, int n, double scale = 1.0);

/// Random rank-r projection (r uniform over 0..n when unspecified).
Projection random_projection(Rng& rng, int n, int rank = -1);

/// Random quasistate: density matrix scaled by a uniform total mass.
Quasistate random_quasistate(Rng& rng, int n);

/// Pair of commuting positive contractions (shared eigenbasis).
std::pair<PosContraction, PosContraction> random_commuting_pair(Rng& rng, int n);

/// Positive contraction renormalized to operator norm exactly 1.
PosContraction normalized_to_sphere(const PosContraction& a);

}  // namespace opalg
