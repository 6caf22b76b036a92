#include "minent/entropies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "minent/eig.hpp"
#include "minent/state.hpp"

namespace minent {

double eta(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("eta domain is [0, 1]");
  if (x <= 0.0) return 0.0;
  return -x * std::log2(x);
}

double shannon(const RVec& spectrum_desc) {
  double h = 0.0;
  for (long i = 0; i < spectrum_desc.size(); ++i) {
    double p = spectrum_desc(i);
    if (p > kZeroEig) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann(const CMat& rho) {
  assert_density(rho);
  return shannon(eigvals_hermitian(rho));
}

double conditional_vn(const CMat& rho, const std::vector<int>& dims,
                      const std::vector<int>& cond_on) {
  if (cond_on.empty()) throw std::invalid_argument("conditioning set must be nonempty");
  if (cond_on.size() >= dims.size()) {
    throw std::invalid_argument("conditioning set must not cover the full system");
  }
  CMat marginal = partial_trace(rho, dims, cond_on);
  return von_neumann(rho) - von_neumann(marginal);
}

double conditional_vn_subnormalized(const CMat& rho, const std::vector<int>& dims,
                                    const std::vector<int>& cond_on) {
  double t = state_trace(rho);
  if (t <= kHermTol) throw std::invalid_argument("zero-trace state");
  CMat normalized = rho / t;
  return conditional_vn(normalized, dims, cond_on) - std::log2(t);
}

double relative_entropy(const CMat& rho, const CMat& sigma) {
  assert_density(rho);
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("dimension mismatch");
  if (!is_hermitian(sigma, kHermTol)) throw std::invalid_argument("second argument not Hermitian");
  EigResult es = eig_hermitian(sigma);
  if (es.values(es.values.size() - 1) < -kHermTol) {
    throw std::invalid_argument("second argument not positive semidefinite");
  }

  // Support check: mass of rho outside supp(sigma).
  double smax = std::max(es.values(0), 0.0);
  double cutoff = std::max(kZeroEig, kRankTol * smax);
  double outside = 0.0;
  double cross = 0.0;
  for (long k = 0; k < es.values.size(); ++k) {
    double w = (es.vectors.col(k).adjoint() * rho * es.vectors.col(k))(0, 0).real();
    if (es.values(k) <= cutoff) {
      outside += std::max(0.0, w);
    } else {
      cross += w * std::log2(es.values(k));
    }
  }
  if (outside > 1e-9) return std::numeric_limits<double>::infinity();

  RVec pr = eigvals_hermitian(rho);
  double tr_rho_log_rho = 0.0;
  for (long i = 0; i < pr.size(); ++i) {
    if (pr(i) > kZeroEig) tr_rho_log_rho += pr(i) * std::log2(pr(i));
  }
  return tr_rho_log_rho - cross;
}

double renyi_alpha_spectrum(const RVec& spectrum_desc, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (alpha == 1.0) throw std::invalid_argument("alpha = 1 is the von Neumann entropy");
  double s = 0.0;
  for (long i = 0; i < spectrum_desc.size(); ++i) {
    double p = spectrum_desc(i);
    if (p > kZeroEig) s += std::pow(p, alpha);
  }
  if (s <= 0.0) throw std::invalid_argument("zero operator");
  return std::log2(s) / (1.0 - alpha);
}

double renyi_alpha(const CMat& rho, double alpha) {
  assert_density(rho);
  return renyi_alpha_spectrum(eigvals_hermitian(rho), alpha);
}

double h0(const CMat& rho) {
  assert_density(rho);
  RVec vals = eigvals_hermitian(rho);
  int rank = support_rank(vals);
  if (rank == 0) throw std::invalid_argument("zero operator");
  return std::log2(static_cast<double>(rank));
}

double hmin(const CMat& rho) {
  assert_density(rho);
  RVec vals = eigvals_hermitian(rho);
  if (vals(0) <= 0.0) throw std::invalid_argument("zero operator");
  return -std::log2(vals(0));
}

}  // namespace minent
