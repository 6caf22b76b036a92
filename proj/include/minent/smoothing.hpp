#pragma once

#include "minent/matrix.hpp"
#include "minent/spectrum.hpp"

namespace minent {

// Eigenvalue multiset of a density operator (negatives clamped away).
Spectrum spectrum_of(const CMat& rho);

// Matrix-level overloads of the spectral smoothing constructions.
double smooth_hmin_unconditional(const CMat& rho, double eps);
double smooth_h0(const CMat& rho, double eps);
double smooth_h0_exactified(const CMat& rho, double eps);

// Weight-exact truncation of a normalized state in its own eigenbasis; the
// result is subnormalized with trace target_fidelity and purified distance
// sqrt(1 - target_fidelity^2) from rho at most.
CMat truncate_state(const CMat& rho, double target_fidelity,
                    TruncationDirection direction);

// smooth_entropy_iid(base, n, eps, measure): smoothed entropy of the n-fold
// tensor power via type classes, eps in (0, 1).
double smooth_entropy_iid(const Spectrum& base, long n, double eps,
                          SmoothMeasure measure);

struct ConditionalHminBounds {
  double lower;   // certified for smoothing level 3*eps
  double upper;   // best conditional-entropy candidate within the eps ball
  double exact0;  // unsmoothed SDP value
};

// lower = smooth_hmin_unconditional(AB, eps) - smooth_h0_exactified(B, eps);
// upper = max of conditional_vn_subnormalized over the candidates {rho,
// cut_large truncation of rho at sqrt(1 - eps^2)}; eps in (0, 1/3).
ConditionalHminBounds smooth_hmin_conditional_bounds(const CMat& rho, int d_a,
                                                     int d_b, double eps);

struct ChainRuleWitness {
  CMat rho_hat;      // subnormalized state within purified distance 3*eps
  double lambda;     // -log2 of the largest eigenvalue of the truncated state
  double log2_rank;  // log2 rank of the truncated marginal support
  CMat projector_b;  // marginal support projector
  double value;      // lambda - log2_rank, certified min-entropy of rho_hat
  double distance;   // purified distance from rho_hat to rho
};

// Explicit witness state certifying a conditional min-entropy lower bound:
// truncate the joint state's spectrum at sqrt(1 - eps^2) from the large end,
// project B onto the marginal support kept by a small-end cut at the same
// fidelity. Then rho_hat <= 2^{-lambda} (1_A tensor projector_b), so the
// min-entropy of rho_hat is at least lambda - log2_rank.
ChainRuleWitness chain_rule_witness(const CMat& rho, int d_a, int d_b,
                                    double eps);

}  // namespace minent
