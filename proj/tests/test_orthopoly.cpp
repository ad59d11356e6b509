#include <gtest/gtest.h>

#include <cmath>

#include "ddgpce/error.hpp"
#include "ddgpce/orthopoly.hpp"

using namespace ddgpce;

namespace {

double factorial(unsigned n) { return n < 2 ? 1.0 : n * factorial(n - 1); }

// E[x^n] for x ~ N(0,1).
double gaussian_moment(unsigned n) {
  if (n % 2 == 1) return 0.0;
  double r = 1.0;
  for (unsigned k = n; k > 1; k -= 2) r *= k - 1;
  return r;
}

// Coefficients (ascending powers) of the probabilists' Hermite polynomials.
std::vector<Eigen::VectorXd> hermite(unsigned degree) {
  std::vector<Eigen::VectorXd> he(degree + 1, Eigen::VectorXd::Zero(degree + 1));
  he[0](0) = 1.0;
  if (degree >= 1) he[1](1) = 1.0;
  for (unsigned k = 1; k < degree; ++k) {
    he[k + 1].tail(degree) = he[k].head(degree);
    he[k + 1] -= k * he[k - 1];
  }
  return he;
}

// Coefficients of the Legendre polynomials on [-1, 1].
std::vector<Eigen::VectorXd> legendre(unsigned degree) {
  std::vector<Eigen::VectorXd> p(degree + 1, Eigen::VectorXd::Zero(degree + 1));
  p[0](0) = 1.0;
  if (degree >= 1) p[1](1) = 1.0;
  for (unsigned k = 1; k < degree; ++k) {
    Eigen::VectorXd shifted = Eigen::VectorXd::Zero(degree + 1);
    shifted.tail(degree) = p[k].head(degree);
    p[k + 1] = ((2.0 * k + 1.0) * shifted - k * p[k - 1]) / (k + 1.0);
  }
  return p;
}

}  // namespace

TEST(Monomials, HandEvaluation) {
  const auto set = generate_reduced(2, 2, 2);
  const Eigen::VectorXd m = monomial_vector(set, Eigen::Vector2d(2.0, 3.0));
  EXPECT_EQ(m, (Eigen::VectorXd(6) << 1, 2, 3, 4, 6, 9).finished());
  EXPECT_EQ(monomial_vector(3, 2.0), Eigen::Vector4d(1, 2, 4, 8));
  const Eigen::MatrixXd points = Eigen::MatrixXd::Random(5, 2);
  EXPECT_TRUE((monomial_matrix(set, points).col(0).array() == 1.0).all());
}

TEST(Whitening, IdentityStaysIdentity) {
  const auto w = whiten(make_moment_matrix(Eigen::MatrixXd::Identity(4, 4)));
  EXPECT_TRUE(w.matrix.isIdentity(0.0));
  EXPECT_EQ(w.report.jitter, 0.0);
  EXPECT_FALSE(w.report.ill_conditioned);
}

TEST(Whitening, TwoByTwoByHand) {
  Eigen::Matrix2d g;
  g << 1, 0.5, 0.5, 1;
  const auto w = whiten(make_moment_matrix(g));
  const double s = std::sqrt(0.75);
  EXPECT_NEAR(w.matrix(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(w.matrix(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(w.matrix(1, 0), -0.5 / s, 1e-14);
  EXPECT_NEAR(w.matrix(1, 1), 1.0 / s, 1e-14);
  EXPECT_TRUE((w.matrix * g * w.matrix.transpose()).isIdentity(1e-14));
}

TEST(Whitening, HermiteOracle) {
  const unsigned degree = 6;
  Eigen::MatrixXd g(degree + 1, degree + 1);
  for (unsigned i = 0; i <= degree; ++i) {
    for (unsigned j = 0; j <= degree; ++j) g(i, j) = gaussian_moment(i + j);
  }
  const auto w = whiten(make_moment_matrix(g));
  const auto he = hermite(degree);
  for (unsigned k = 0; k <= degree; ++k) {
    const Eigen::VectorXd expected = he[k] / std::sqrt(factorial(k));
    EXPECT_LT((w.matrix.row(k).transpose() - expected).cwiseAbs().maxCoeff(), 1e-9) << k;
  }

  OrthonormalBasis basis(generate_univariate(2), Standardization::identity(1),
                         whiten(make_moment_matrix(g.topLeftCorner(3, 3))));
  const Eigen::VectorXd at_zero = basis.evaluate_point(Eigen::VectorXd::Zero(1));
  EXPECT_NEAR(at_zero(0), 1.0, 1e-15);
  EXPECT_NEAR(at_zero(1), 0.0, 1e-15);
  EXPECT_NEAR(at_zero(2), -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Whitening, LegendreOracle) {
  const unsigned degree = 5;
  Eigen::MatrixXd g(degree + 1, degree + 1);
  for (unsigned i = 0; i <= degree; ++i) {
    for (unsigned j = 0; j <= degree; ++j) g(i, j) = (i + j) % 2 ? 0.0 : 1.0 / (i + j + 1.0);
  }
  const auto w = whiten(make_moment_matrix(g));
  const auto p = legendre(degree);
  for (unsigned k = 0; k <= degree; ++k) {
    const Eigen::VectorXd expected = std::sqrt(2.0 * k + 1.0) * p[k];
    EXPECT_LT((w.matrix.row(k).transpose() - expected).cwiseAbs().maxCoeff(), 1e-9) << k;
  }
}

TEST(Whitening, JitterOnSingularMatrix) {
  Eigen::Matrix2d g;
  g << 1, 0, 0, 0;
  const auto w = whiten(make_moment_matrix(g));
  EXPECT_GT(w.report.jitter, 0.0);
  EXPECT_TRUE(w.report.ill_conditioned);
  EXPECT_TRUE(w.matrix.allFinite());

  Eigen::Matrix3d indefinite;
  indefinite << 1, 0, 0, 0, 1, 2, 0, 2, 1;
  try {
    whiten(make_moment_matrix(indefinite));
    FAIL() << "indefinite matrix whitened";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPositiveDefinite);
  }
}

TEST(MomentMatrix, StandardNormalMoments) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1)});
  const auto mm = estimate_moment_matrix(model, generate_univariate(2),
                                         Standardization::identity(1), 1'000'000, 0);
  Eigen::Matrix3d expected;
  expected << 1, 0, 1, 0, 1, 0, 1, 0, 3;
  EXPECT_LT((mm.values - expected).cwiseAbs().maxCoeff(), 0.01);
  EXPECT_EQ(mm.sample_count, 1'000'000u);
}

TEST(MomentMatrix, UniformMoments) {
  const auto model = RandomInputModel::independent({Marginal::uniform(-1, 1)});
  const auto mm = estimate_moment_matrix(model, generate_univariate(1),
                                         Standardization::identity(1), 100'000, 3);
  EXPECT_NEAR(mm.values(0, 0), 1.0, 0.0);
  EXPECT_NEAR(mm.values(0, 1), 0.0, 0.005);
  EXPECT_NEAR(mm.values(1, 1), 1.0 / 3.0, 0.005);
}

TEST(MomentMatrix, ConstantOnlyAndSampleFloor) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1), Marginal::normal(0, 1)});
  const auto set0 = generate_full(2, 0);
  const auto mm = estimate_moment_matrix(model, set0, Standardization::from_model(model), 10, 1);
  EXPECT_EQ(mm.values, Eigen::MatrixXd::Ones(1, 1));
  EXPECT_THROW(estimate_moment_matrix(model, generate_full(2, 2), Standardization::from_model(model),
                                      59, 1),
               Error);
}

TEST(MomentMatrix, PairwiseSumAgreesWithDirectAverage) {
  const auto set = generate_full(2, 3);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(10000, 2);
  const Eigen::MatrixXd m = monomial_matrix(set, x);
  const Eigen::MatrixXd direct = m.transpose() * m / 10000.0;
  EXPECT_LT((moment_matrix(set, x).values - direct).cwiseAbs().maxCoeff(), 1e-13);
}

double gram_deviation(const OrthonormalBasis& basis, const Eigen::MatrixXd& points,
                      double* mean_deviation = nullptr) {
  const Eigen::MatrixXd psi = basis.evaluate(points);
  const auto n = static_cast<double>(points.rows());
  const Eigen::MatrixXd g = psi.transpose() * psi / n;
  if (mean_deviation != nullptr) {
    Eigen::VectorXd mean = psi.colwise().mean().transpose();
    mean(0) -= 1.0;
    *mean_deviation = mean.cwiseAbs().maxCoeff();
  }
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

TEST(Basis, OrthonormalOnIndependentSample) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(6, 6);
  r.bottomRightCorner(3, 3) = equicorrelation(3, 0.5);
  const std::vector<RandomInputModel> models{
      RandomInputModel({Marginal::normal(0, 1), Marginal::normal(10, 2), Marginal::normal(-3, 0.5),
                        Marginal::normal(30, 1.5), Marginal::normal(1, 4)},
                       equicorrelation(5, 0.5)),
      RandomInputModel({Marginal::uniform(35760, 53640), Marginal::uniform(10160, 15240),
                        Marginal::uniform(0.238, 0.356), Marginal::lognormal(0.144, 0.06),
                        Marginal::lognormal(0.144, 0.06), Marginal::lognormal(0.144, 0.06)},
                       r)};
  for (const auto& model : models) {
    const auto basis = build_basis(model, generate_reduced(model.dimension(), 2, 3), 100'000, 17);
    // Scrambled with a seed unrelated to the moment sample.
    const Eigen::MatrixXd fresh = sample(model, SamplingScheme::QMCS, 100'000, 777).points;
    double mean_dev = 0.0;
    EXPECT_LE(gram_deviation(basis, fresh, &mean_dev), 0.02);
    EXPECT_LE(mean_dev, 0.02);
    EXPECT_TRUE((basis.evaluate(fresh.topRows(10)).col(0).array() - 1.0).abs().maxCoeff() < 1e-14);
  }
}

TEST(Basis, HeavyTailedOrthonormalityConverges) {
  // Degree-six moments of a 30% lognormal: only large samples resolve them.
  const auto model = RandomInputModel(
      {Marginal::normal(1, 2), Marginal::uniform(0, 3), Marginal::lognormal(2, 0.3)},
      equicorrelation(3, 0.4));
  const auto basis = build_basis(model, generate_reduced(3, 2, 3), 1'000'000, 17);
  const Eigen::MatrixXd fresh = sample(model, SamplingScheme::MCS, 4'000'000, 5).points;
  EXPECT_LE(gram_deviation(basis, fresh), 0.03);
}

TEST(Basis, EmpiricalBasisIsExactlyOrthonormalOnItsPoints) {
  const Eigen::MatrixXd y = Eigen::MatrixXd::Random(2000, 1).array().exp();
  const auto basis = build_basis(generate_univariate(3), y);
  const Eigen::MatrixXd g = gram_matrix(basis, y);
  EXPECT_TRUE(g.isIdentity(1e-9));
}

TEST(Basis, EvaluatePointMatchesBatch) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1), Marginal::normal(5, 2)});
  const auto basis = build_basis(model, generate_full(2, 3), 20'000, 2);
  const Eigen::MatrixXd x = sample(model, SamplingScheme::MCS, 4, 1).points;
  const Eigen::MatrixXd batch = basis.evaluate(x);
  for (Eigen::Index l = 0; l < 4; ++l) {
    EXPECT_LT((basis.evaluate_point(x.row(l).transpose()) - batch.row(l).transpose())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-13);
  }
}

TEST(Standardization, FromSamplesAndModel) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 7, 2, 7, 3, 7, 4, 7;
  const auto s = Standardization::from_samples(x);
  EXPECT_DOUBLE_EQ(s.shift(0), 2.5);
  EXPECT_DOUBLE_EQ(s.scale(1), 1.0);
  const Eigen::MatrixXd z = s.apply(x);
  EXPECT_NEAR(z.col(0).mean(), 0.0, 1e-15);
  const auto model = RandomInputModel::independent({Marginal::uniform(0, 12)});
  const auto sm = Standardization::from_model(model);
  EXPECT_DOUBLE_EQ(sm.shift(0), 6.0);
  EXPECT_NEAR(sm.scale(0), std::sqrt(12.0), 1e-14);
}
