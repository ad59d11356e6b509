#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "ddgpce/distributions.hpp"
#include "ddgpce/multiindex.hpp"

namespace ddgpce {

/// Per-coordinate affine map x -> (x - shift) / scale applied before
/// monomials are formed.
struct Standardization {
  Eigen::VectorXd shift;
  Eigen::VectorXd scale;

  static Standardization identity(std::size_t dimension);
  /// Zero mean, unit variance from sample statistics (scale 1 for constant columns).
  static Standardization from_samples(const Eigen::MatrixXd& points);
  /// Zero mean, unit variance from the marginal laws of the model.
  static Standardization from_model(const RandomInputModel& model);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(shift.size()); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& points) const;
};

/// L x K matrix of monomials x^j, one row per point, columns in set order.
Eigen::MatrixXd monomial_matrix(const MultiIndexSet& set, const Eigen::MatrixXd& points);

/// Monomial vector M(x) of length K.
template <typename Derived>
Eigen::VectorXd monomial_vector(const MultiIndexSet& set,
                                const Eigen::MatrixBase<Derived>& point) {
  const Eigen::MatrixXd row = point.derived().transpose().template cast<double>();
  return monomial_matrix(set, row).row(0).transpose();
}

/// (1, y, y^2, ..., y^degree).
Eigen::VectorXd monomial_vector(unsigned degree, double y);

struct MomentMatrix {
  Eigen::MatrixXd values;          // K x K, symmetric, values(0,0) == 1
  std::size_t sample_count = 0;
  double condition_estimate = 1.0;
};

/// Sample average of M(x) M(x)^T over already standardized points. Partial
/// sums over fixed chunks of kSampleChunk rows are combined by a pairwise tree.
MomentMatrix moment_matrix(const MultiIndexSet& set, const Eigen::MatrixXd& standardized);

/// Streams L-bar quasi-random points from the model (scrambled Sobol with the
/// given seed; seed 0 is the plain sequence) through the standardization.
MomentMatrix estimate_moment_matrix(const RandomInputModel& model, const MultiIndexSet& set,
                                    const Standardization& standardization,
                                    std::size_t moment_samples, std::uint64_t seed);

/// Wraps an explicit matrix (symmetrized, leading entry pinned to 1).
MomentMatrix make_moment_matrix(Eigen::MatrixXd values, std::size_t sample_count = 0);

inline constexpr double kIllConditionedThreshold = 1e12;

struct WhiteningReport {
  double jitter = 0.0;            // absolute diagonal shift applied, 0 if none
  double condition_estimate = 1.0;
  bool ill_conditioned = false;
};

struct Whitening {
  Eigen::MatrixXd matrix;         // W, lower triangular, W G W^T = I
  WhiteningReport report;
};

/// W = Q^{-1} from the Cholesky factor G = Q Q^T. On failure the diagonal
/// (except the constant entry) is shifted by eps * max diag(G) with eps
/// escalating 1e-14 ... 1e-10; NotPositiveDefinite after that.
Whitening whiten(const MomentMatrix& moments);

/// Orthonormal polynomials Psi(x) = W M(standardize(x)).
class OrthonormalBasis {
 public:
  OrthonormalBasis(MultiIndexSet index_set, Standardization standardization,
                   Whitening whitening);

  const MultiIndexSet& index_set() const noexcept { return index_set_; }
  const Standardization& standardization() const noexcept { return standardization_; }
  const Eigen::MatrixXd& whitening() const noexcept { return whitening_; }
  const WhiteningReport& report() const noexcept { return report_; }
  std::size_t size() const noexcept { return index_set_.size(); }
  std::size_t dimension() const noexcept { return index_set_.dimension(); }

  /// L x K matrix of Psi_k(x^(l)).
  Eigen::MatrixXd evaluate(const Eigen::MatrixXd& points) const;
  Eigen::VectorXd evaluate_point(const Eigen::VectorXd& point) const;
  /// Monomial matrix of standardized points (the factor the whitening acts on).
  Eigen::MatrixXd monomials(const Eigen::MatrixXd& points) const;

 private:
  MultiIndexSet index_set_;
  Standardization standardization_;
  Eigen::MatrixXd whitening_;
  WhiteningReport report_;
};

/// Basis for the input law: analytic standardization, QMC moment matrix.
OrthonormalBasis build_basis(const RandomInputModel& model, const MultiIndexSet& set,
                             std::size_t moment_samples, std::uint64_t seed);

/// Basis for an empirical law given by points (rows), e.g. surrogate outputs.
OrthonormalBasis build_basis(const MultiIndexSet& set, const Eigen::MatrixXd& points);

/// Gram matrix mean(Psi Psi^T) over the given points.
Eigen::MatrixXd gram_matrix(const OrthonormalBasis& basis, const Eigen::MatrixXd& points);

}  // namespace ddgpce
