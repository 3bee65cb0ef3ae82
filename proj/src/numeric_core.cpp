#include "numeric_core.hpp"

#include <Eigen/SVD>

namespace relayia {

ComplexVector least_norm_solve(const ComplexMatrix& matrix, const ComplexVector& rhs) {
  if (matrix.rows() != rhs.size())
    throw InvalidArgumentError("least_norm_solve: dimension mismatch");
  if (matrix.rows() > matrix.cols())
    throw IllConditionedError("least_norm_solve: more equations than unknowns");

  Eigen::JacobiSVD<ComplexMatrix> svd(matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  // Full row rank test: the smallest of the rows() singular values decides.
  const double sigma_min = sigma(sigma.size() - 1);
  if (sigma_min <= kSolverRankTolerance * sigma_max || sigma_max == 0.0)
    throw IllConditionedError("least_norm_solve: row-rank deficient system");

  return svd.matrixV() * (svd.matrixU().adjoint() * rhs).cwiseQuotient(sigma.cast<std::complex<double>>());
}

std::vector<ComplexVector> null_space_basis(const ComplexMatrix& matrix) {
  Eigen::JacobiSVD<ComplexMatrix> svd(matrix, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = kSolverRankTolerance * sigma_max;

  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++rank;

  std::vector<ComplexVector> basis;
  for (Eigen::Index i = rank; i < matrix.cols(); ++i) basis.push_back(svd.matrixV().col(i));
  return basis;
}

RankResult rank_eps(const ComplexMatrix& matrix, double rel_threshold) {
  if (rel_threshold <= 0.0 || rel_threshold >= 1.0)
    throw InvalidArgumentError("rank_eps: rel_threshold must be in (0, 1)");

  Eigen::JacobiSVD<ComplexMatrix> svd(matrix);
  const auto& sigma = svd.singularValues();

  RankResult result;
  result.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  result.threshold_used = rel_threshold * sigma_max;
  for (double s : result.singular_values)
    if (s > result.threshold_used) ++result.rank;
  return result;
}

}  // namespace relayia
