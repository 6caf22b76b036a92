#include "minent/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace minent {

namespace {

void phase_fix_column(CMat& vecs, long col) {
  long best = 0;
  double best_abs = 0.0;
  for (long i = 0; i < vecs.rows(); ++i) {
    double a = std::abs(vecs(i, col));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs == 0.0) return;
  std::complex<double> z = vecs(best, col);
  vecs.col(col) *= std::conj(z) / std::abs(z);
}

// Descending lexicographic comparison of phase-fixed columns, real parts
// before imaginary parts, so degenerate spectra get a canonical vector order.
bool column_less_desc(const CMat& vecs, long a, long b) {
  for (long i = 0; i < vecs.rows(); ++i) {
    double ra = vecs(i, a).real(), rb = vecs(i, b).real();
    if (ra != rb) return ra > rb;
    double ia = vecs(i, a).imag(), ib = vecs(i, b).imag();
    if (ia != ib) return ia > ib;
  }
  return false;
}

}  // namespace

EigResult eig_hermitian(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian requires a square matrix");
  CMat h = hermitize(m);
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  long n = h.rows();
  RVec vals = solver.eigenvalues();
  CMat vecs = solver.eigenvectors();
  for (long c = 0; c < n; ++c) phase_fix_column(vecs, c);

  std::vector<long> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
    if (vals(a) != vals(b)) return vals(a) > vals(b);
    return column_less_desc(vecs, a, b);
  });

  EigResult out;
  out.values = RVec(n);
  out.vectors = CMat(n, n);
  for (long c = 0; c < n; ++c) {
    out.values(c) = vals(order[c]);
    out.vectors.col(c) = vecs.col(order[c]);
  }
  return out;
}

RVec eigvals_hermitian(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigvals_hermitian requires a square matrix");
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  RVec vals = solver.eigenvalues();
  return vals.reverse();
}

double min_eigval(const CMat& m) {
  RVec vals = eigvals_hermitian(m);
  return vals(vals.size() - 1);
}

double op_norm_inf(const CMat& m) {
  RVec vals = eigvals_hermitian(m);
  return std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
}

int support_rank(const RVec& values_desc, double rank_tol) {
  if (values_desc.size() == 0) return 0;
  double cutoff = rank_tol * std::max(values_desc(0), 0.0);
  int rank = 0;
  for (long i = 0; i < values_desc.size(); ++i) {
    if (values_desc(i) > cutoff && values_desc(i) > 0.0) ++rank;
  }
  return rank;
}

CMat support_projector(const CMat& rho, double rank_tol) {
  EigResult e = eig_hermitian(rho);
  int rank = support_rank(e.values, rank_tol);
  CMat proj = CMat::Zero(rho.rows(), rho.cols());
  for (int k = 0; k < rank; ++k) {
    proj += e.vectors.col(k) * e.vectors.col(k).adjoint();
  }
  return proj;
}

CMat mat_sqrt_psd(const CMat& m) {
  EigResult e = eig_hermitian(m);
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (long k = 0; k < e.values.size(); ++k) {
    double lam = e.values(k);
    if (lam <= 0.0) continue;
    out += std::sqrt(lam) * (e.vectors.col(k) * e.vectors.col(k).adjoint());
  }
  return out;
}

}  // namespace minent
