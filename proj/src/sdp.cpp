#include "minent/sdp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "minent/eig.hpp"
#include "minent/state.hpp"

namespace minent {

namespace {

// Orthonormal Hermitian basis of d x d: E_kk, (E_kl + E_lk)/sqrt2,
// i(E_kl - E_lk)/sqrt2. Coordinates in this basis are real.
std::vector<CMat> hermitian_basis(int d) {
  std::vector<CMat> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    CMat e = CMat::Zero(d, d);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      CMat e = CMat::Zero(d, d);
      e(k, l) = inv_sqrt2;
      e(l, k) = inv_sqrt2;
      basis.push_back(e);
      CMat f = CMat::Zero(d, d);
      f(k, l) = std::complex<double>(0, inv_sqrt2);
      f(l, k) = std::complex<double>(0, -inv_sqrt2);
      basis.push_back(f);
    }
  }
  return basis;
}

double hs_inner(const CMat& a, const CMat& b) {
  return (a.adjoint() * b).trace().real();
}

CMat embed_a(const CMat& x, int d_a) {
  return tensor(CMat::Identity(d_a, d_a), x);
}

CMat trace_a(const CMat& m, int d_a, int d_b) {
  CMat out = CMat::Zero(d_b, d_b);
  for (int a = 0; a < d_a; ++a) {
    out += m.block(a * d_b, a * d_b, d_b, d_b);
  }
  return out;
}

// Inverse square root of a positive definite matrix.
CMat inv_sqrt_pd(const CMat& m) {
  EigResult e = eig_hermitian(m);
  if (e.values(e.values.size() - 1) <= 0.0) throw std::runtime_error("matrix not positive definite");
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (long k = 0; k < e.values.size(); ++k) {
    out += (1.0 / std::sqrt(e.values(k))) * (e.vectors.col(k) * e.vectors.col(k).adjoint());
  }
  return out;
}

// Largest step alpha with x + alpha dx staying PSD, via the Cholesky-whitened
// minimum eigenvalue; capped at 1.
double max_step(const CMat& x, const CMat& dx) {
  Eigen::LLT<CMat> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  CMat l = llt.matrixL();
  CMat w = l.triangularView<Eigen::Lower>().solve(dx);
  w = l.triangularView<Eigen::Lower>().solve(w.adjoint()).adjoint();
  double mineig = min_eigval(w);
  if (mineig >= 0.0) return 1.0;
  return std::min(1.0, -1.0 / mineig);
}

}  // namespace

SdpSolution sdp_solve(const CMat& rho_in, int d_a, int d_b, double tol, int max_iter) {
  if (d_a < 1 || d_b < 1) throw std::invalid_argument("subsystem dimensions must be >= 1");
  long d = static_cast<long>(d_a) * d_b;
  if (rho_in.rows() != d || rho_in.cols() != d) {
    throw std::invalid_argument("state dimension does not match d_a * d_b");
  }
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  CMat rho = hermitize(rho_in);

  SdpSolution sol;
  double rho_norm = op_norm_inf(rho);

  // Strictly feasible start; the bump keeps the slack positive definite even
  // for d_a = 1 or rho = 0.
  double bump = std::max(1e-3, 0.1 * rho_norm);
  CMat sigma = (rho_norm * d_a + bump) * CMat::Identity(d_b, d_b);
  CMat s = embed_a(sigma, d_a) - rho;
  CMat y = CMat::Identity(d, d) / static_cast<double>(d_a);

  std::vector<CMat> basis = hermitian_basis(d_b);
  int nb = static_cast<int>(basis.size());
  double scale = 1.0 + rho_norm;

  // Repairs the iterates to exact feasibility: sigma is lifted by the slack
  // deficit; y is conjugated by 1 (x) M^{-1/2} with M = Tr_A y, which keeps
  // it PSD and pins its marginal to the identity. The gap between the
  // repaired pair is a certified optimality bound by weak duality, so
  // termination never depends on raw residuals that double precision cannot
  // drive to zero.
  CMat best_sigma, best_y;
  double best_gap = std::numeric_limits<double>::infinity();
  auto certify = [&](const CMat& sig_cur, const CMat& y_cur) {
    CMat sig_rep = sig_cur;
    double deficit = min_eigval(embed_a(sig_cur, d_a) - rho);
    if (deficit < 0.0) sig_rep -= deficit * CMat::Identity(d_b, d_b);
    CMat c = inv_sqrt_pd(trace_a(y_cur, d_a, d_b));
    CMat y_rep = hermitize(embed_a(c, d_a) * y_cur * embed_a(c, d_a));
    double gap = sig_rep.trace().real() - hs_inner(rho, y_rep);
    if (gap < best_gap) {
      best_gap = gap;
      best_sigma = std::move(sig_rep);
      best_y = std::move(y_rep);
    }
  };

  for (int iter = 1; iter <= max_iter; ++iter) {
    CMat r_p = rho + s - embed_a(sigma, d_a);
    CMat r_d = CMat::Identity(d_b, d_b) - trace_a(y, d_a, d_b);
    double mu = hs_inner(s, y) / d;

    sol.iterations = iter - 1;
    try {
      certify(sigma, y);
    } catch (const std::runtime_error&) {
      sol.status = SdpStatus::infeasible_numerics;
      break;
    }
    if (best_gap <= tol * scale) {
      sol.status = SdpStatus::optimal;
      break;
    }
    if (iter == max_iter) {
      sol.status = SdpStatus::max_iter;
      sol.iterations = iter;
      break;
    }

    // Nesterov-Todd scaling point: W Y W = S.
    CMat w_inv, y_inv;
    try {
      CMat s_half = mat_sqrt_psd(s);
      CMat inner = s_half * y * s_half;
      CMat inner_inv_half = inv_sqrt_pd(inner);
      CMat w = hermitize(s_half * inner_inv_half * s_half);
      w_inv = hermitize(w.inverse());
      y_inv = hermitize(y.inverse());
      if (!w_inv.allFinite() || !y_inv.allFinite()) throw std::runtime_error("non-finite scaling");

      // Schur operator T(x) = Tr_A(W^-1 (1 (x) x) W^-1), SPD on Hermitian d_b.
      Eigen::MatrixXd t_mat(nb, nb);
      std::vector<CMat> t_of_basis(nb);
      for (int b = 0; b < nb; ++b) {
        t_of_basis[b] = trace_a(w_inv * embed_a(basis[b], d_a) * w_inv, d_a, d_b);
      }
      for (int a = 0; a < nb; ++a) {
        for (int b = 0; b < nb; ++b) t_mat(a, b) = hs_inner(basis[a], t_of_basis[b]);
      }
      Eigen::LLT<Eigen::MatrixXd> t_llt(t_mat);
      if (t_llt.info() != Eigen::Success) {
        sol.status = SdpStatus::infeasible_numerics;
        break;
      }

      auto solve_newton = [&](const CMat& r_c, CMat& dsigma, CMat& ds, CMat& dy) {
        CMat lead = trace_a(w_inv * (r_c + r_p) * w_inv, d_a, d_b) - r_d;
        Eigen::VectorXd rhs(nb);
        for (int a = 0; a < nb; ++a) rhs(a) = hs_inner(basis[a], lead);
        Eigen::VectorXd x = t_llt.solve(rhs);
        dsigma = CMat::Zero(d_b, d_b);
        for (int a = 0; a < nb; ++a) dsigma += x(a) * basis[a];
        dsigma = hermitize(dsigma);
        ds = embed_a(dsigma, d_a) - r_p;
        dy = hermitize(w_inv * (r_c - ds) * w_inv);
      };

      // Predictor (affine direction, target 0).
      CMat r_c_aff = -s;
      CMat dsig_a, ds_a, dy_a;
      solve_newton(r_c_aff, dsig_a, ds_a, dy_a);
      double ap_a = max_step(s, ds_a);
      double ad_a = max_step(y, dy_a);
      double mu_aff = hs_inner(s + ap_a * ds_a, y + ad_a * dy_a) / d;
      double sigma_c = std::pow(std::max(0.0, mu_aff / mu), 3.0);

      // Corrector re-uses the factorization with the centered target.
      CMat r_c = sigma_c * mu * y_inv - s;
      CMat dsig, ds, dy;
      solve_newton(r_c, dsig, ds, dy);

      double ap = 0.98 * max_step(s, ds);
      double ad = 0.98 * max_step(y, dy);
      sigma += ap * dsig;
      s += ap * ds;
      y += ad * dy;
      s = hermitize(s);
      y = hermitize(y);
      if (!sigma.allFinite() || !s.allFinite() || !y.allFinite()) {
        sol.status = SdpStatus::infeasible_numerics;
        break;
      }
    } catch (const std::runtime_error&) {
      sol.status = SdpStatus::infeasible_numerics;
      break;
    }
  }

  if (best_sigma.size() == 0) {
    // never reached a certifiable pair; return the raw iterates
    best_sigma = hermitize(sigma);
    best_y = hermitize(y);
    best_gap = best_sigma.trace().real() - hs_inner(rho, best_y);
  }
  sol.sigma_b = best_sigma;
  sol.dual_certificate = best_y;
  sol.optimal_value = sol.sigma_b.trace().real();
  sol.gap = best_gap;
  sol.primal_residual =
      std::max(0.0, -min_eigval(embed_a(sol.sigma_b, d_a) - rho));
  sol.dual_residual =
      max_abs(trace_a(sol.dual_certificate, d_a, d_b) - CMat::Identity(d_b, d_b));
  return sol;
}

HminResult hmin_conditional(const CMat& rho, int d_a, int d_b, double tol, int max_iter) {
  assert_density(rho);
  if (state_trace(rho) <= kHermTol) throw std::invalid_argument("zero-trace state");
  HminResult out;
  out.witness = sdp_solve(rho, d_a, d_b, tol, max_iter);
  out.value = -std::log2(out.witness.optimal_value);
  return out;
}

CertificateReport verify_certificate(const CMat& rho, int d_a, int d_b,
                                     const SdpSolution& sol,
                                     double slack_tol, double gap_tol) {
  long d = static_cast<long>(d_a) * d_b;
  if (rho.rows() != d) throw std::invalid_argument("state dimension does not match d_a * d_b");
  CertificateReport rep;
  // 2^{-lambda} sigma_hat equals sigma_b itself, so the operator inequality
  // is checked directly against the unnormalized optimizer.
  rep.primal_slack = min_eigval(embed_a(sol.sigma_b, d_a) - rho);
  rep.dual_min_eig = min_eigval(sol.dual_certificate);
  rep.dual_marginal = max_abs(trace_a(sol.dual_certificate, d_a, d_b) - CMat::Identity(d_b, d_b));
  rep.gap = sol.sigma_b.trace().real() - hs_inner(hermitize(rho), sol.dual_certificate);
  rep.value_mismatch = std::abs(sol.sigma_b.trace().real() - sol.optimal_value);
  rep.pass = rep.primal_slack >= -slack_tol && rep.dual_min_eig >= -slack_tol &&
             rep.dual_marginal <= gap_tol && rep.gap <= gap_tol &&
             rep.value_mismatch <= gap_tol;
  return rep;
}

}  // namespace minent
