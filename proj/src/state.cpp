#include "minent/state.hpp"

#include <cmath>
#include <stdexcept>

#include "minent/eig.hpp"

namespace minent {

double CounterRng::gauss() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform_pos();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

void assert_density(const CMat& rho, double tol, bool require_normalized) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density operator must be square");
  if (!rho.allFinite()) throw std::invalid_argument("density operator has non-finite entries");
  if (!is_hermitian(rho, tol)) throw std::invalid_argument("density operator not Hermitian within tolerance");
  if (min_eigval(rho) < -tol) throw std::invalid_argument("density operator not positive semidefinite within tolerance");
  double tr = rho.trace().real();
  if (tr > 1.0 + tol) throw std::invalid_argument("density operator trace exceeds 1");
  if (require_normalized && std::abs(tr - 1.0) > tol) {
    throw std::invalid_argument("density operator not normalized");
  }
}

double state_trace(const CMat& rho) {
  return rho.trace().real();
}

CMat random_density(const std::vector<int>& dims, int rank, uint64_t seed) {
  long d = total_dim(dims);
  if (rank < 1 || rank > d) throw std::invalid_argument("rank out of range");
  CounterRng rng(seed);
  CMat g(d, rank);
  for (long i = 0; i < d; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = rng.cgauss();
  }
  CMat m = g * g.adjoint();
  double tr = m.trace().real();
  if (tr <= 0.0) throw std::runtime_error("degenerate random draw");
  return m / tr;
}

CMat random_unitary(int dim, uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  CounterRng rng(seed);
  CMat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.cgauss();
  }
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    std::complex<double> rjj = r(j, j);
    double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

PureState purify(const CMat& rho, double rank_tol) {
  assert_density(rho);
  EigResult e = eig_hermitian(rho);
  int rank = support_rank(e.values, rank_tol);
  if (rank == 0) throw std::invalid_argument("cannot purify the zero operator");
  long d = rho.rows();
  PureState out;
  out.dims = {static_cast<int>(d), rank};
  out.amplitudes = CVec::Zero(d * rank);
  for (int k = 0; k < rank; ++k) {
    double amp = std::sqrt(std::max(e.values(k), 0.0));
    for (long i = 0; i < d; ++i) {
      out.amplitudes(i * rank + k) = amp * e.vectors(i, k);
    }
  }
  return out;
}

CMat outer(const CVec& psi) {
  return psi * psi.adjoint();
}

}  // namespace minent
