#pragma once

#include "minent/matrix.hpp"
#include "minent/rng.hpp"

namespace minent {

struct PureState {
  CVec amplitudes;
  std::vector<int> dims;
};

// Throws std::invalid_argument if rho is not Hermitian-PSD within tol, or if
// its trace exceeds 1 + tol (require_normalized additionally pins Tr to 1).
void assert_density(const CMat& rho, double tol = kHermTol, bool require_normalized = false);

double state_trace(const CMat& rho);

// Ginibre-induced state G G^dag / Tr with G of shape (dim x rank).
CMat random_density(const std::vector<int>& dims, int rank, uint64_t seed);

// Haar unitary via Householder QR with the R-diagonal phase fix.
CMat random_unitary(int dim, uint64_t seed);

// Canonical purification sum_i sqrt(lambda_i) |v_i>|i>_R with R of dimension
// rank(rho); dims of the result are {dim, rank}.
PureState purify(const CMat& rho, double rank_tol = kRankTol);

CMat outer(const CVec& psi);

}  // namespace minent
