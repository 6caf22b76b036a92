#pragma once

#include "minent/matrix.hpp"
#include "minent/state.hpp"

namespace minent {

struct DistanceValue {
  double value;  // clamped to [0, 1]
  double raw;    // unclamped, for tolerance forensics
};

// F(rho, sigma) = || sqrt(rho) sqrt(sigma) ||_1 via singular values.
DistanceValue fidelity(const CMat& rho, const CMat& sigma);

// F padded with sqrt((1 - Tr rho)(1 - Tr sigma)); equals F when either
// argument is normalized.
DistanceValue generalized_fidelity(const CMat& rho, const CMat& sigma);

// P = sqrt(1 - generalized_fidelity^2).
DistanceValue purified_distance(const CMat& rho, const CMat& sigma);

// D = (1/2) || rho - sigma ||_1.
double trace_distance(const CMat& rho, const CMat& sigma);

struct UhlmannPair {
  CVec phi;  // purification of rho on H (x) H
  CVec psi;  // purification of sigma on H (x) H
  double overlap;
};

// Purifications with |<psi|phi>| = F(rho, sigma), built from the polar
// decomposition of sqrt(sigma) sqrt(rho).
UhlmannPair uhlmann_pair(const CMat& rho, const CMat& sigma);

// sigma's sorted spectrum placed on rho's sorted eigenvectors.
CMat reorder_to_eigenbasis(const CMat& rho, const CMat& sigma);

}  // namespace minent
