#pragma once

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "ddgpce/orthopoly.hpp"

namespace ddgpce {

struct ExperimentalDesign {
  Eigen::MatrixXd inputs;    // L' x N
  Eigen::VectorXd outputs;   // L'
  std::string fidelity = "high";
};

struct FitReport {
  double residual = 0.0;             // mean-squared design residual
  double oversampling_ratio = 0.0;   // L' / K
  double condition_estimate = 1.0;   // of the design matrix
  std::size_t design_size = 0;
  bool undersampled = false;         // ratio below the requested minimum
};

inline constexpr double kDefaultOversampling = 3.0;

/// y_{S,m}(x) = sum_i c_i Psi_i(x).
class DdGpceSurrogate {
 public:
  DdGpceSurrogate(OrthonormalBasis basis, Eigen::VectorXd coefficients, FitReport report = {});

  const OrthonormalBasis& basis() const noexcept { return basis_; }
  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  const FitReport& report() const noexcept { return report_; }

  Eigen::VectorXd evaluate(const Eigen::MatrixXd& points) const;

 private:
  OrthonormalBasis basis_;
  Eigen::VectorXd coefficients_;
  // W^T c, so evaluation is one product with the monomial matrix.
  Eigen::VectorXd monomial_coefficients_;
  FitReport report_;
};

/// Standard least squares by column-pivoted QR of the design matrix A.
/// Requires L' > K; a ratio below ratio_min only sets report().undersampled.
DdGpceSurrogate fit_sls(OrthonormalBasis basis, const ExperimentalDesign& design,
                        double ratio_min = kDefaultOversampling);

inline Eigen::VectorXd evaluate(const DdGpceSurrogate& surrogate, const Eigen::MatrixXd& points) {
  return surrogate.evaluate(points);
}

/// (mean, variance) read off the coefficients: (c_1, sum_{i>=2} c_i^2).
std::pair<double, double> second_moments(const DdGpceSurrogate& surrogate);

}  // namespace ddgpce
