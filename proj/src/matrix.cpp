#include "minent/matrix.hpp"

#include <stdexcept>

namespace minent {

long total_dim(const std::vector<int>& dims) {
  long d = 1;
  for (int di : dims) {
    if (di < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    d *= di;
    if (d > kMaxMatrixDim) throw std::invalid_argument("matrix dimension exceeds configured maximum");
  }
  return d;
}

CMat hermitize(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitize requires a square matrix");
  return 0.5 * (m + m.adjoint());
}

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_abs(const CMat& m) {
  return m.cwiseAbs().maxCoeff();
}

CMat tensor(const CMat& a, const CMat& b) {
  long rows = a.rows() * b.rows();
  long cols = a.cols() * b.cols();
  if (rows > kMaxMatrixDim || cols > kMaxMatrixDim) {
    throw std::invalid_argument("tensor product exceeds configured maximum dimension");
  }
  CMat out(rows, cols);
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

// Row-major offsets of every multi-index over the selected subsystems,
// embedded into the full index space.
std::vector<long> subsystem_offsets(const std::vector<int>& dims, const std::vector<int>& subset) {
  std::vector<long> strides(dims.size());
  long s = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    strides[k] = s;
    s *= dims[k];
  }
  long count = 1;
  for (int k : subset) count *= dims[k];
  std::vector<long> offsets(count, 0);
  long repeat = count;
  for (int k : subset) {
    repeat /= dims[k];
    long idx = 0;
    long block = repeat * dims[k];
    for (long i = 0; i < count; i += block) {
      for (int v = 0; v < dims[k]; ++v) {
        for (long r = 0; r < repeat; ++r) offsets[idx++] += v * strides[k];
      }
    }
  }
  return offsets;
}

}  // namespace

CMat partial_trace(const CMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  long d = total_dim(dims);
  if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("state dimension does not match dims");
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size())) throw std::invalid_argument("keep index out of range");
    if (kept[k]) throw std::invalid_argument("duplicate keep index");
    kept[k] = true;
  }
  std::vector<int> drop;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (!kept[k]) drop.push_back(static_cast<int>(k));
  }
  std::vector<long> keep_off = subsystem_offsets(dims, keep);
  std::vector<long> drop_off = drop.empty() ? std::vector<long>{0} : subsystem_offsets(dims, drop);
  long dk = static_cast<long>(keep_off.size());
  CMat out = CMat::Zero(dk, dk);
  for (long r = 0; r < dk; ++r) {
    for (long c = 0; c < dk; ++c) {
      std::complex<double> acc = 0;
      for (long t : drop_off) acc += rho(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

CMat trace_out(const CMat& rho, const std::vector<int>& dims,
               const std::vector<int>& drop) {
  std::vector<bool> dropped(dims.size(), false);
  for (int k : drop) {
    if (k < 0 || k >= static_cast<int>(dims.size())) throw std::invalid_argument("drop index out of range");
    dropped[k] = true;
  }
  std::vector<int> keep;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (!dropped[k]) keep.push_back(static_cast<int>(k));
  }
  return partial_trace(rho, dims, keep);
}

std::vector<int> keep_dims(const std::vector<int>& dims, const std::vector<int>& keep) {
  std::vector<int> out;
  out.reserve(keep.size());
  for (int k : keep) out.push_back(dims[k]);
  return out;
}

}  // namespace minent
