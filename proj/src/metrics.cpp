#include "minent/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "minent/eig.hpp"

namespace minent {

namespace {

double clamp01(double x) {
  return std::min(1.0, std::max(0.0, x));
}

void check_pair(const CMat& rho, const CMat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("dimension mismatch");
  }
  assert_density(rho);
  assert_density(sigma);
}

double trace_norm(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().sum();
}

}  // namespace

DistanceValue fidelity(const CMat& rho, const CMat& sigma) {
  check_pair(rho, sigma);
  double raw = trace_norm(mat_sqrt_psd(rho) * mat_sqrt_psd(sigma));
  return {clamp01(raw), raw};
}

DistanceValue generalized_fidelity(const CMat& rho, const CMat& sigma) {
  check_pair(rho, sigma);
  double tr = state_trace(rho);
  double ts = state_trace(sigma);
  double pad = std::sqrt(std::max(0.0, 1.0 - tr) * std::max(0.0, 1.0 - ts));
  double raw = fidelity(rho, sigma).raw + pad;
  return {clamp01(raw), raw};
}

DistanceValue purified_distance(const CMat& rho, const CMat& sigma) {
  double f = generalized_fidelity(rho, sigma).value;
  double raw = std::sqrt(std::max(0.0, 1.0 - f * f));
  return {clamp01(raw), raw};
}

double trace_distance(const CMat& rho, const CMat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("dimension mismatch");
  }
  RVec vals = eigvals_hermitian(rho - sigma);
  return 0.5 * vals.cwiseAbs().sum();
}

UhlmannPair uhlmann_pair(const CMat& rho, const CMat& sigma) {
  check_pair(rho, sigma);
  long d = rho.rows();
  CMat sr = mat_sqrt_psd(rho);
  CMat ss = mat_sqrt_psd(sigma);
  Eigen::JacobiSVD<CMat> svd(ss * sr, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMat u = svd.matrixU() * svd.matrixV().adjoint();

  // vec(M)(i*d + j) = M(i, j); Tr_R vec(M) vec(M)^dag = M M^dag.
  auto vec = [d](const CMat& m) {
    CVec v(d * d);
    for (long i = 0; i < d; ++i) {
      for (long j = 0; j < d; ++j) v(i * d + j) = m(i, j);
    }
    return v;
  };
  UhlmannPair out;
  out.phi = vec(sr);
  out.psi = vec(ss * u);
  out.overlap = std::abs(out.psi.dot(out.phi));
  return out;
}

CMat reorder_to_eigenbasis(const CMat& rho, const CMat& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("dimension mismatch");
  EigResult er = eig_hermitian(rho);
  RVec s = eigvals_hermitian(sigma);
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (long k = 0; k < s.size(); ++k) {
    out += s(k) * (er.vectors.col(k) * er.vectors.col(k).adjoint());
  }
  return out;
}

}  // namespace minent
