#include "minent/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "minent/eig.hpp"
#include "minent/entropies.hpp"
#include "minent/metrics.hpp"
#include "minent/sdp.hpp"
#include "minent/state.hpp"
#include "minent/typeclass.hpp"

namespace minent {

namespace {

// Weight-exact cut on a non-increasing eigenvalue list; returns the reduced
// values in the original positions.
RVec cut_values(const RVec& values_desc, double target,
                TruncationDirection direction) {
  RVec q = values_desc;
  for (int i = 0; i < q.size(); ++i) q(i) = std::max(q(i), 0.0);
  double b = 1.0 - target;
  const int d = static_cast<int>(q.size());
  for (int step = 0; step < d && b > 0.0; ++step) {
    const int i = direction == TruncationDirection::cut_large ? step
                                                              : d - 1 - step;
    const double v = q(i);
    if (v <= 0.0) continue;
    if (b >= v * (1.0 - 1e-12)) {
      q(i) = 0.0;
      b -= v;
    } else {
      q(i) = v - b;
      b = 0.0;
    }
  }
  return q;
}

void require_normalized_density(const CMat& rho) {
  assert_density(rho, kHermTol, false);
  if (std::abs(state_trace(rho) - 1.0) > 1e-9) {
    throw std::invalid_argument("state must be normalized");
  }
}

}  // namespace

Spectrum spectrum_of(const CMat& rho) {
  assert_density(rho, kHermTol, false);
  return Spectrum::from_values(eigvals_hermitian(rho));
}

double smooth_hmin_unconditional(const CMat& rho, double eps) {
  return smooth_hmin_unconditional(spectrum_of(rho), eps);
}

double smooth_h0(const CMat& rho, double eps) {
  return smooth_h0(spectrum_of(rho), eps);
}

double smooth_h0_exactified(const CMat& rho, double eps) {
  return smooth_h0_exactified(spectrum_of(rho), eps);
}

CMat truncate_state(const CMat& rho, double target_fidelity,
                    TruncationDirection direction) {
  require_normalized_density(rho);
  if (!(target_fidelity > 0.0) || target_fidelity > 1.0) {
    throw std::invalid_argument("target fidelity must lie in (0, 1]");
  }
  const EigResult er = eig_hermitian(rho);
  const RVec q = cut_values(er.values, target_fidelity, direction);
  return hermitize(er.vectors * q.asDiagonal() * er.vectors.adjoint());
}

double smooth_entropy_iid(const Spectrum& base, long n, double eps,
                          SmoothMeasure measure) {
  if (!(eps > 0.0) || eps >= 1.0) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  return measure == SmoothMeasure::hmin ? iid_smooth_hmin(base, n, eps)
                                        : iid_smooth_h0(base, n, eps);
}

ConditionalHminBounds smooth_hmin_conditional_bounds(const CMat& rho, int d_a,
                                                     int d_b, double eps) {
  require_normalized_density(rho);
  if (!(eps > 0.0) || eps >= 1.0 / 3.0) {
    throw std::invalid_argument("epsilon must lie in (0, 1/3)");
  }
  const std::vector<int> dims = {d_a, d_b};
  if (total_dim(dims) != rho.rows()) {
    throw std::invalid_argument("split does not match state dimension");
  }

  ConditionalHminBounds out;
  out.exact0 = hmin_conditional(rho, d_a, d_b).value;

  const Spectrum s_ab = spectrum_of(rho);
  const Spectrum s_b = spectrum_of(partial_trace(rho, dims, {1}));
  out.lower = smooth_hmin_unconditional(s_ab, eps) - smooth_h0_exactified(s_b, eps);

  const double target = std::sqrt(std::max(0.0, 1.0 - eps * eps));
  const CMat cand = truncate_state(rho, target, TruncationDirection::cut_large);
  out.upper = std::max(conditional_vn_subnormalized(rho, dims, {1}),
                       conditional_vn_subnormalized(cand, dims, {1}));
  return out;
}

ChainRuleWitness chain_rule_witness(const CMat& rho, int d_a, int d_b,
                                    double eps) {
  require_normalized_density(rho);
  if (!(eps > 0.0) || eps >= 1.0 / 3.0) {
    throw std::invalid_argument("epsilon must lie in (0, 1/3)");
  }
  const std::vector<int> dims = {d_a, d_b};
  if (total_dim(dims) != rho.rows()) {
    throw std::invalid_argument("split does not match state dimension");
  }
  const double target = std::sqrt(std::max(0.0, 1.0 - eps * eps));

  const EigResult er_ab = eig_hermitian(rho);
  const RVec q_ab = cut_values(er_ab.values, target, TruncationDirection::cut_large);
  const CMat rho_cut =
      hermitize(er_ab.vectors * q_ab.asDiagonal() * er_ab.vectors.adjoint());

  ChainRuleWitness w;
  w.lambda = -std::log2(q_ab.maxCoeff());

  const CMat rho_b = partial_trace(rho, dims, {1});
  const EigResult er_b = eig_hermitian(rho_b);
  const RVec q_b = cut_values(er_b.values, target, TruncationDirection::cut_small);
  int rank = 0;
  for (int i = 0; i < q_b.size(); ++i) {
    if (q_b(i) > 0.0) ++rank;
  }
  if (rank < 1) throw std::runtime_error("marginal truncation removed everything");
  const CMat vk = er_b.vectors.leftCols(rank);
  w.projector_b = hermitize(vk * vk.adjoint());
  w.log2_rank = std::log2(static_cast<double>(rank));

  const CMat ext = tensor(CMat::Identity(d_a, d_a), w.projector_b);
  w.rho_hat = hermitize(ext * rho_cut * ext);
  w.value = w.lambda - w.log2_rank;
  w.distance = purified_distance(w.rho_hat, rho).value;
  return w;
}

}  // namespace minent
