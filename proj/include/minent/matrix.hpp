#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace minent {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

constexpr double kHermTol = 1e-10;
constexpr double kRankTol = 1e-10;
constexpr double kZeroEig = 1e-14;
constexpr int kMaxMatrixDim = 4096;

long total_dim(const std::vector<int>& dims);

CMat hermitize(const CMat& m);
bool is_hermitian(const CMat& m, double tol = kHermTol);
double max_abs(const CMat& m);

// Kronecker product with dims concatenated left-to-right.
CMat tensor(const CMat& a, const CMat& b);

// Reduced state on the kept subsystems (indices into dims, ascending).
CMat partial_trace(const CMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& keep);

// Complement helper: trace out the listed subsystems instead.
CMat trace_out(const CMat& rho, const std::vector<int>& dims,
               const std::vector<int>& drop);

std::vector<int> keep_dims(const std::vector<int>& dims, const std::vector<int>& keep);

}  // namespace minent
