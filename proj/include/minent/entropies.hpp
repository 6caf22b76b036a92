#pragma once

#include "minent/matrix.hpp"

namespace minent {

// eta(x) = -x log2 x with eta(0) = 0; domain [0, 1].
double eta(double x);

double shannon(const RVec& spectrum_desc);

double von_neumann(const CMat& rho);

// H(A'|cond) = H(full) - H(marginal on cond_on), base-2 bits.
double conditional_vn(const CMat& rho, const std::vector<int>& dims,
                      const std::vector<int>& cond_on);

// (1/Tr rho) max_sigma Tr(rho (log(1 (x) sigma) - log rho)) over normalized
// sigma_B, evaluated in closed form: H(AB) - H(B) of rho/Tr rho, minus
// log2 Tr rho.
double conditional_vn_subnormalized(const CMat& rho, const std::vector<int>& dims,
                                    const std::vector<int>& cond_on);

// H(rho||sigma); +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const CMat& rho, const CMat& sigma);

// (1/(1-alpha)) log2 Tr rho^alpha, alpha > 0, alpha != 1.
double renyi_alpha(const CMat& rho, double alpha);
double renyi_alpha_spectrum(const RVec& spectrum_desc, double alpha);

double h0(const CMat& rho);    // log2 rank
double hmin(const CMat& rho);  // -log2 largest eigenvalue

}  // namespace minent
