#include "ddgpce/orthopoly.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ddgpce/error.hpp"

namespace ddgpce {
namespace {

// Pairwise summation of equally weighted chunk partials; the tree shape only
// depends on the number of chunks.
class PairwiseSum {
 public:
  void add(Eigen::MatrixXd partial) {
    std::size_t level = 0;
    while (!stack_.empty() && stack_.back().first == level) {
      partial += stack_.back().second;
      stack_.pop_back();
      ++level;
    }
    stack_.emplace_back(level, std::move(partial));
  }

  Eigen::MatrixXd total() const {
    Eigen::MatrixXd sum = stack_.back().second;
    for (auto it = std::next(stack_.rbegin()); it != stack_.rend(); ++it) sum += it->second;
    return sum;
  }

  bool empty() const { return stack_.empty(); }

 private:
  std::vector<std::pair<std::size_t, Eigen::MatrixXd>> stack_;
};

void check_moment_samples(std::size_t samples, std::size_t k) {
  require(samples >= 10 * k, ErrorKind::InvalidArgument,
          "moment matrix needs at least 10*K = " + std::to_string(10 * k) +
              " samples, got " + std::to_string(samples));
}

MomentMatrix finish(Eigen::MatrixXd sum, std::size_t count) {
  sum /= static_cast<double>(count);
  for (Eigen::Index i = 0; i < sum.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (!std::isfinite(sum(i, j))) {
        fail(ErrorKind::NonFiniteMoment,
             "non-finite monomial moment at index pair (" + std::to_string(i) + ", " +
                 std::to_string(j) + ")");
      }
    }
  }
  return make_moment_matrix(std::move(sum), count);
}

double cholesky_condition(const Eigen::MatrixXd& lower) {
  const Eigen::VectorXd d = lower.diagonal().cwiseAbs();
  const double lo = d.minCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  const double ratio = d.maxCoeff() / lo;
  return ratio * ratio;
}

}  // namespace

Standardization Standardization::identity(std::size_t dimension) {
  const auto n = static_cast<Eigen::Index>(dimension);
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n)};
}

Standardization Standardization::from_samples(const Eigen::MatrixXd& points) {
  require(points.rows() >= 2, ErrorKind::InvalidArgument,
          "standardization needs at least two samples");
  Standardization s;
  s.shift = points.colwise().mean().transpose();
  const Eigen::MatrixXd centered = points.rowwise() - s.shift.transpose();
  s.scale = (centered.colwise().squaredNorm() / static_cast<double>(points.rows() - 1))
                .transpose()
                .cwiseSqrt();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
    if (!(s.scale(j) > 0.0)) s.scale(j) = 1.0;
  }
  return s;
}

Standardization Standardization::from_model(const RandomInputModel& model) {
  return {model.means(), model.stddevs()};
}

Eigen::MatrixXd Standardization::apply(const Eigen::MatrixXd& points) const {
  require(points.cols() == shift.size(), ErrorKind::InvalidArgument,
          "point dimension " + std::to_string(points.cols()) + " does not match basis dimension " +
              std::to_string(shift.size()));
  return ((points.rowwise() - shift.transpose()).array().rowwise() /
          scale.transpose().array())
      .matrix();
}

Eigen::MatrixXd monomial_matrix(const MultiIndexSet& set, const Eigen::MatrixXd& points) {
  require(static_cast<std::size_t>(points.cols()) == set.dimension(),
          ErrorKind::InvalidArgument, "point dimension does not match index set dimension");
  const Eigen::Index rows = points.rows();
  const unsigned degree = set.max_degree();
  const auto dims = static_cast<std::size_t>(points.cols());

  // powers[j] holds x_j^e in column e - 1, e = 1..degree.
  std::vector<Eigen::ArrayXXd> powers(dims);
  std::vector<bool> needed(dims, false);
  for (const auto& index : set) {
    for (const auto& [coord, e] : index.support()) needed[coord] = true;
  }
  for (std::size_t j = 0; j < dims; ++j) {
    if (!needed[j] || degree == 0) continue;
    powers[j].resize(rows, degree);
    powers[j].col(0) = points.col(static_cast<Eigen::Index>(j)).array();
    for (unsigned e = 1; e < degree; ++e) {
      powers[j].col(e) = powers[j].col(e - 1) * powers[j].col(0);
    }
  }

  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(set.size()));
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto& support = set[k].support();
    auto column = out.col(static_cast<Eigen::Index>(k)).array();
    if (support.empty()) {
      column.setOnes();
      continue;
    }
    column = powers[support[0].first].col(support[0].second - 1);
    for (std::size_t t = 1; t < support.size(); ++t) {
      column *= powers[support[t].first].col(support[t].second - 1);
    }
  }
  return out;
}

Eigen::VectorXd monomial_vector(unsigned degree, double y) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(degree) + 1);
  out(0) = 1.0;
  for (Eigen::Index i = 1; i < out.size(); ++i) out(i) = out(i - 1) * y;
  return out;
}

MomentMatrix make_moment_matrix(Eigen::MatrixXd values, std::size_t sample_count) {
  require(values.rows() == values.cols() && values.rows() >= 1, ErrorKind::InvalidArgument,
          "moment matrix must be square and non-empty");
  MomentMatrix m;
  m.values = 0.5 * (values + values.transpose());
  m.values(0, 0) = 1.0;
  m.sample_count = sample_count;
  Eigen::LLT<Eigen::MatrixXd> llt(m.values);
  m.condition_estimate = llt.info() == Eigen::Success
                             ? cholesky_condition(llt.matrixL())
                             : std::numeric_limits<double>::infinity();
  return m;
}

MomentMatrix moment_matrix(const MultiIndexSet& set, const Eigen::MatrixXd& standardized) {
  require(standardized.rows() >= 1, ErrorKind::InvalidArgument, "no moment samples");
  PairwiseSum sum;
  const Eigen::Index chunk = static_cast<Eigen::Index>(kSampleChunk);
  for (Eigen::Index start = 0; start < standardized.rows(); start += chunk) {
    const Eigen::Index take = std::min(chunk, standardized.rows() - start);
    const Eigen::MatrixXd m = monomial_matrix(set, standardized.middleRows(start, take));
    sum.add(m.transpose() * m);
  }
  return finish(sum.total(), static_cast<std::size_t>(standardized.rows()));
}

MomentMatrix estimate_moment_matrix(const RandomInputModel& model, const MultiIndexSet& set,
                                    const Standardization& standardization,
                                    std::size_t moment_samples, std::uint64_t seed) {
  require(set.dimension() == model.dimension(), ErrorKind::InvalidArgument,
          "index set dimension does not match input model");
  check_moment_samples(moment_samples, set.size());
  PairwiseSum sum;
  for (std::size_t start = 0; start < moment_samples; start += kSampleChunk) {
    const std::size_t take = std::min(kSampleChunk, moment_samples - start);
    const Eigen::MatrixXd x = sample_rows(model, SamplingScheme::QMCS, start, take, seed);
    const Eigen::MatrixXd m = monomial_matrix(set, standardization.apply(x));
    sum.add(m.transpose() * m);
  }
  return finish(sum.total(), moment_samples);
}

Whitening whiten(const MomentMatrix& moments) {
  const Eigen::MatrixXd& g = moments.values;
  const Eigen::Index k = g.rows();
  Whitening out;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    const double max_diag = g.diagonal().maxCoeff();
    bool ok = false;
    for (double eps : {1e-14, 1e-13, 1e-12, 1e-11, 1e-10}) {
      Eigen::MatrixXd shifted = g;
      const double jitter = eps * max_diag;
      shifted.diagonal().tail(k - 1).array() += jitter;
      llt.compute(shifted);
      if (llt.info() == Eigen::Success) {
        out.report.jitter = jitter;
        ok = true;
        break;
      }
    }
    require(ok, ErrorKind::NotPositiveDefinite,
            "moment matrix is not positive definite after diagonal jitter up to 1e-10");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  out.matrix = lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(k, k));
  out.report.condition_estimate = cholesky_condition(lower);
  out.report.ill_conditioned = out.report.condition_estimate > kIllConditionedThreshold;
  return out;
}

OrthonormalBasis::OrthonormalBasis(MultiIndexSet index_set, Standardization standardization,
                                   Whitening whitening)
    : index_set_(std::move(index_set)),
      standardization_(std::move(standardization)),
      whitening_(std::move(whitening.matrix)),
      report_(whitening.report) {
  const auto k = static_cast<Eigen::Index>(index_set_.size());
  require(whitening_.rows() == k && whitening_.cols() == k, ErrorKind::InvalidArgument,
          "whitening matrix size does not match index set cardinality");
  require(standardization_.dimension() == index_set_.dimension(), ErrorKind::InvalidArgument,
          "standardization dimension does not match index set");
}

Eigen::MatrixXd OrthonormalBasis::monomials(const Eigen::MatrixXd& points) const {
  return monomial_matrix(index_set_, standardization_.apply(points));
}

Eigen::MatrixXd OrthonormalBasis::evaluate(const Eigen::MatrixXd& points) const {
  return monomials(points) * whitening_.transpose().triangularView<Eigen::Upper>();
}

Eigen::VectorXd OrthonormalBasis::evaluate_point(const Eigen::VectorXd& point) const {
  return evaluate(point.transpose()).row(0).transpose();
}

OrthonormalBasis build_basis(const RandomInputModel& model, const MultiIndexSet& set,
                             std::size_t moment_samples, std::uint64_t seed) {
  auto standardization = Standardization::from_model(model);
  const auto moments = estimate_moment_matrix(model, set, standardization, moment_samples, seed);
  return OrthonormalBasis(set, std::move(standardization), whiten(moments));
}

OrthonormalBasis build_basis(const MultiIndexSet& set, const Eigen::MatrixXd& points) {
  check_moment_samples(static_cast<std::size_t>(points.rows()), set.size());
  auto standardization = Standardization::from_samples(points);
  const auto moments = moment_matrix(set, standardization.apply(points));
  return OrthonormalBasis(set, std::move(standardization), whiten(moments));
}

Eigen::MatrixXd gram_matrix(const OrthonormalBasis& basis, const Eigen::MatrixXd& points) {
  const Eigen::MatrixXd psi = basis.evaluate(points);
  return (psi.transpose() * psi) / static_cast<double>(points.rows());
}

}  // namespace ddgpce
