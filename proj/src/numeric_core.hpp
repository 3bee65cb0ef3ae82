#ifndef RELAYIA_NUMERIC_CORE_HPP
#define RELAYIA_NUMERIC_CORE_HPP

#include <Eigen/Dense>
#include <vector>

#include "errors.hpp"

namespace relayia {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Relative singular-value cutoff used by the solvers; double precision with
// problem sizes well under 100 rows/columns.
inline constexpr double kSolverRankTolerance = 1e-8;

struct RankResult {
  int rank = 0;
  std::vector<double> singular_values;  // nonincreasing
  double threshold_used = 0.0;          // absolute: rel_threshold * sigma_max
};

// Minimum-norm u with H u = b, via SVD. For square full-rank H this is the
// exact solve. Throws IllConditionedError when H is not full row rank within
// kSolverRankTolerance; the Monte Carlo layer resamples on that.
ComplexVector least_norm_solve(const ComplexMatrix& matrix, const ComplexVector& rhs);

// Orthonormal basis of the null space of H under the solver rank tolerance.
// Empty when the null space is trivial.
std::vector<ComplexVector> null_space_basis(const ComplexMatrix& matrix);

// Singular values above rel_threshold * sigma_max count toward the rank.
RankResult rank_eps(const ComplexMatrix& matrix, double rel_threshold);

}  // namespace relayia

#endif
