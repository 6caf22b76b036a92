#pragma once

#include "minent/matrix.hpp"

namespace minent {

struct EigResult {
  RVec values;   // non-increasing
  CMat vectors;  // unitary columns matching values
};

// Hermitizes the input, sorts eigenvalues non-increasing, breaks exact ties by
// descending lexicographic order of the phase-fixed eigenvector columns, and
// fixes each column's phase so its largest-magnitude entry is real positive.
EigResult eig_hermitian(const CMat& m);

RVec eigvals_hermitian(const CMat& m);  // non-increasing
double min_eigval(const CMat& m);
double op_norm_inf(const CMat& m);  // max |eigenvalue| of the hermitized input

int support_rank(const RVec& values_desc, double rank_tol = kRankTol);
CMat support_projector(const CMat& rho, double rank_tol = kRankTol);

CMat mat_sqrt_psd(const CMat& m);  // negative eigenvalues clamped to 0

}  // namespace minent
