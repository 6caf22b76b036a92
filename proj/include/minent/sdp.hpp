#pragma once

#include "minent/matrix.hpp"

namespace minent {

enum class SdpStatus { optimal, max_iter, infeasible_numerics };

struct SdpSolution {
  double optimal_value = 0.0;  // Tr sigma_b at the optimum
  CMat sigma_b;                // exactly feasible primal: 1 (x) sigma_b >= rho
  CMat dual_certificate;       // exactly feasible dual: Y >= 0, Tr_A Y = 1_B
  double gap = 0.0;            // certified duality gap Tr sigma_b - <rho, Y>
  double primal_residual = 0.0;  // residual feasibility error of sigma_b
  double dual_residual = 0.0;    // residual marginal error of Y
  int iterations = 0;
  SdpStatus status = SdpStatus::infeasible_numerics;
};

struct HminResult {
  double value = 0.0;  // -log2 optimal_value, bits
  SdpSolution witness;
};

// min Tr sigma over Hermitian sigma_B with 1_A (x) sigma_B >= rho_AB, solved
// by a Nesterov-Todd scaled primal-dual path-following iteration. Each
// iterate is repaired to an exactly feasible primal/dual pair and the solve
// stops once the certified duality gap falls below tol * (1 + ||rho||); the
// returned value therefore carries a weak-duality optimality certificate.
SdpSolution sdp_solve(const CMat& rho, int d_a, int d_b, double tol = 3e-8,
                      int max_iter = 200);

// H_min(A|B) = -log2 of the optimum; accepts subnormalized inputs.
HminResult hmin_conditional(const CMat& rho, int d_a, int d_b, double tol = 3e-8,
                            int max_iter = 200);

struct CertificateReport {
  double primal_slack;    // min eig of 1 (x) sigma_b - rho
  double dual_min_eig;    // min eig of Y
  double dual_marginal;   // max abs of Tr_A Y - 1_B
  double gap;             // Tr sigma_b - <rho, Y>
  double value_mismatch;  // |Tr sigma_b - optimal_value|
  bool pass;
};

CertificateReport verify_certificate(const CMat& rho, int d_a, int d_b,
                                     const SdpSolution& sol,
                                     double slack_tol = 1e-7, double gap_tol = 1e-6);

}  // namespace minent
