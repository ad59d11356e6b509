#include "ddgpce/surrogate.hpp"

#include <cmath>
#include <string>

#include "ddgpce/error.hpp"

namespace ddgpce {

DdGpceSurrogate::DdGpceSurrogate(OrthonormalBasis basis, Eigen::VectorXd coefficients,
                                 FitReport report)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)), report_(report) {
  require(static_cast<std::size_t>(coefficients_.size()) == basis_.size(),
          ErrorKind::InvalidArgument,
          "coefficient count " + std::to_string(coefficients_.size()) +
              " does not match basis size " + std::to_string(basis_.size()));
  monomial_coefficients_ = basis_.whitening().transpose() * coefficients_;
}

Eigen::VectorXd DdGpceSurrogate::evaluate(const Eigen::MatrixXd& points) const {
  return basis_.monomials(points) * monomial_coefficients_;
}

DdGpceSurrogate fit_sls(OrthonormalBasis basis, const ExperimentalDesign& design,
                        double ratio_min) {
  const Eigen::Index rows = design.inputs.rows();
  const auto k = static_cast<Eigen::Index>(basis.size());
  require(design.outputs.size() == rows, ErrorKind::InvalidArgument,
          "design has " + std::to_string(rows) + " inputs but " +
              std::to_string(design.outputs.size()) + " outputs");
  require(static_cast<std::size_t>(design.inputs.cols()) == basis.dimension(),
          ErrorKind::InvalidArgument, "design input dimension does not match basis");
  require(rows > k, ErrorKind::InvalidArgument,
          "least squares needs L' > K: L' = " + std::to_string(rows) +
              ", K = " + std::to_string(k));
  require(design.inputs.allFinite() && design.outputs.allFinite(), ErrorKind::InvalidArgument,
          "experimental design contains non-finite values");

  const Eigen::MatrixXd a = basis.evaluate(design.inputs);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  require(qr.rank() == k, ErrorKind::RankDeficient,
          "design matrix has numerical rank " + std::to_string(qr.rank()) + " < K = " +
              std::to_string(k) + "; the experimental design is inadequate");
  Eigen::VectorXd c = qr.solve(design.outputs);

  FitReport report;
  report.design_size = static_cast<std::size_t>(rows);
  report.oversampling_ratio = static_cast<double>(rows) / static_cast<double>(k);
  report.undersampled = report.oversampling_ratio < ratio_min;
  report.residual = (design.outputs - a * c).squaredNorm() / static_cast<double>(rows);
  const Eigen::VectorXd r = qr.matrixR().diagonal().cwiseAbs();
  report.condition_estimate = r.maxCoeff() / r.minCoeff();
  return DdGpceSurrogate(std::move(basis), std::move(c), report);
}

std::pair<double, double> second_moments(const DdGpceSurrogate& surrogate) {
  const auto& c = surrogate.coefficients();
  return {c(0), c.tail(c.size() - 1).squaredNorm()};
}

}  // namespace ddgpce
