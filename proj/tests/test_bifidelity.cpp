#include <gtest/gtest.h>

#include <memory>

#include "ddgpce/bifidelity.hpp"
#include "ddgpce/error.hpp"
#include "ddgpce/models.hpp"
#include "ddgpce/streams.hpp"

using namespace ddgpce;

namespace {

RandomInputModel gaussian2() {
  return RandomInputModel({Marginal::normal(1, 0.5), Marginal::normal(-1, 1)}, equicorrelation(2, 0.4));
}

// y_L = x1 + 0.5 x2^2 - x1 x2, inside J_{2,2,2}.
Eigen::VectorXd low_poly(const Eigen::MatrixXd& x) {
  return (x.col(0).array() + 0.5 * x.col(1).array().square() - x.col(0).array() * x.col(1).array())
      .matrix();
}

Algorithm2Settings settings_for(unsigned link_degree) {
  Algorithm2Settings s;
  s.interaction = 2;
  s.degree = 2;
  s.link_degree = link_degree;
  s.risk_samples = 20000;
  s.moment_samples = 100'000;
  s.betas = {0.9, 0.95};
  s.seed = 314;
  return s;
}

}  // namespace

TEST(Link, UniformStandIn) {
  const Eigen::MatrixXd y = sample(RandomInputModel::independent({Marginal::uniform(0, 1)}),
                                   SamplingScheme::QMCS, 1'000'000, 0).points;
  const auto basis = build_basis(generate_univariate(1), y);
  const Eigen::MatrixXd& w = basis.whitening();
  // Psi_2(y) = (y - 1/2) / sqrt(1/12) expressed on the standardized variable.
  const Eigen::VectorXd at = basis.evaluate_point(Eigen::VectorXd::Constant(1, 0.8));
  EXPECT_NEAR(at(1), (0.8 - 0.5) / std::sqrt(1.0 / 12.0), 1e-2);
  EXPECT_NEAR(w(0, 0), 1.0, 1e-12);
}

TEST(Link, IdentityAffineAndSquare) {
  const auto model = RandomInputModel::independent({Marginal::normal(2, 1)});
  const auto basis = build_basis(model, generate_univariate(2), 50'000, 1);
  const DdGpceSurrogate low(basis, Eigen::Vector3d(2, 1, 0.3));
  const Eigen::VectorXd pair_low = low.evaluate(sample(model, SamplingScheme::MCS, 40, 3).points);
  const Eigen::VectorXd held_out = low.evaluate(sample(model, SamplingScheme::MCS, 500, 4).points);

  const auto lb1 = build_link_basis(low, model, 1, 50'000, 5);
  const FourierLink identity = fit_link(lb1, pair_low.head(16), pair_low.head(16));
  EXPECT_LT((identity.evaluate(held_out) - held_out).cwiseAbs().maxCoeff(), 1e-8);

  const Eigen::VectorXd affine = 2.0 * pair_low.array() + 3.0;
  const FourierLink lin = fit_link(lb1, pair_low.head(16), affine.head(16));
  const Eigen::VectorXd expected = 2.0 * held_out.array() + 3.0;
  EXPECT_LT((lin.evaluate(held_out) - expected).norm() / expected.norm(), 1e-8);
  EXPECT_NEAR(lin.evaluate(Eigen::VectorXd::Constant(1, 5.0))(0), 13.0, 1e-10);

  const auto lb2 = build_link_basis(low, model, 2, 50'000, 5);
  const Eigen::VectorXd square = pair_low.array().square();
  const FourierLink quad = fit_link(lb2, pair_low.head(24), square.head(24));
  const Eigen::VectorXd expected_sq = held_out.array().square();
  EXPECT_LT((quad.evaluate(held_out) - expected_sq).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_EQ(quad.degree(), 2u);
  EXPECT_EQ(quad.pair_count(), 24u);
}

TEST(Link, Degeneracy) {
  const auto model = RandomInputModel::independent({Marginal::normal(2, 1)});
  const auto basis = build_basis(model, generate_univariate(1), 10'000, 1);
  const DdGpceSurrogate constant(basis, Eigen::Vector2d(3, 0));
  try {
    build_link_basis(constant, model, 1, 10'000, 1);
    FAIL() << "constant low surrogate accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateLowFidelity);
  }
  const DdGpceSurrogate linear(basis, Eigen::Vector2d(3, 1));
  EXPECT_THROW(build_link_basis(linear, model, 0, 10'000, 1), Error);
}

TEST(LowFidelityFit, ExactRecoveryAndNaNReporting) {
  const auto model = gaussian2();
  const auto basis = build_basis(model, generate_reduced(2, 2, 2), 50'000, 1);
  ExperimentalDesign design;
  const auto s = fit_low_surrogate(basis, low_poly, model, 30, 9, &design);
  EXPECT_LE(s.report().residual, 1e-16);
  EXPECT_EQ(design.inputs.rows(), 30);
  EXPECT_EQ(design.fidelity, "low");

  const BatchFunction nan_at_7 = [](const Eigen::MatrixXd& x) {
    Eigen::VectorXd y = x.col(0);
    y(7) = std::nan("");
    return y;
  };
  try {
    fit_low_surrogate(basis, nan_at_7, model, 30, 9);
    FAIL() << "NaN accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ModelEvaluation);
    EXPECT_NE(std::string(e.what()).find("sample 7"), std::string::npos);
  }
}

TEST(LowFidelityFit, EvaluationCount) {
  const auto model = RandomInputModel(std::vector<Marginal>(28, Marginal::normal(0, 1)),
                                      equicorrelation(28, 0.2));
  const auto basis = build_basis(model, generate_reduced(28, 1, 3), 100'000, 1);
  ASSERT_EQ(basis.size(), 85u);
  auto calls = std::make_shared<std::size_t>(0);
  const BatchFunction low = counted([](const Eigen::MatrixXd& x) { return Eigen::VectorXd(x.rowwise().sum()); },
                                    calls);
  fit_low_surrogate(basis, low, model, 340, 1);
  EXPECT_EQ(*calls, 340u);
}

TEST(Algorithm2, AffineHighFidelityIsExact) {
  const auto model = gaussian2();
  auto high_calls = std::make_shared<std::size_t>(0);
  auto low_calls = std::make_shared<std::size_t>(0);
  const BatchFunction low = counted(low_poly, low_calls);
  const BatchFunction high = counted(
      [](const Eigen::MatrixXd& x) { return Eigen::VectorXd(2.0 * low_poly(x).array() + 3.0); },
      high_calls);
  auto s = settings_for(1);
  s.pair_count = 16;
  const auto result = run_algorithm2(model, low, high, s);
  EXPECT_EQ(*high_calls, 16u);
  EXPECT_EQ(result.high_evaluations, 16u);
  EXPECT_EQ(*low_calls, result.low_evaluations);
  EXPECT_EQ(result.low_evaluations, 18u);  // L' = 3 K, K = 6

  const Eigen::VectorXd exact = 2.0 * sample_outputs(low_poly, model, s.risk_samples,
                                                     stream_seed(s.seed, Stream::Risk)).array() + 3.0;
  for (std::size_t i = 0; i < s.betas.size(); ++i) {
    const auto oracle = var_cvar(exact, s.betas[i]);
    EXPECT_NEAR(result.risk[i].cvar / oracle.cvar, 1.0, 1e-6);
    EXPECT_NEAR(result.risk[i].cvar, 2.0 * result.low_only_risk[i].cvar + 3.0,
                1e-9 * std::abs(oracle.cvar));
  }
}

TEST(Algorithm2, IdenticalFidelitiesReproduceLowPipeline) {
  const auto model = gaussian2();
  const auto result = run_algorithm2(model, low_poly, low_poly, settings_for(1));
  for (std::size_t i = 0; i < result.risk.size(); ++i) {
    EXPECT_NEAR(result.risk[i].cvar, result.low_only_risk[i].cvar,
                1e-12 * std::abs(result.low_only_risk[i].cvar));
  }
}

TEST(Algorithm2, FreshPairsCostExtraLowCalls) {
  const auto model = gaussian2();
  auto s = settings_for(2);
  s.pair_inputs = PairInputs::Fresh;
  s.design_size = 20;
  const auto result = run_algorithm2(model, low_poly, low_poly, s);
  EXPECT_EQ(result.high_evaluations, 24u);
  EXPECT_EQ(result.low_evaluations, 44u);
}

TEST(Algorithm2, ErrorsNameTheStep) {
  const auto model = gaussian2();
  const BatchFunction failing = [](const Eigen::MatrixXd&) -> Eigen::VectorXd {
    throw std::runtime_error("solver crashed");
  };
  try {
    run_algorithm2(model, low_poly, failing, settings_for(1));
    FAIL() << "failure not propagated";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ModelEvaluation);
    EXPECT_NE(std::string(e.what()).find("step 14"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("solver crashed"), std::string::npos);
  }
  auto s = settings_for(1);
  s.pair_count = 50;
  EXPECT_THROW(run_algorithm2(model, low_poly, low_poly, s), Error);
}

TEST(Algorithm2, ScaledGaussianCvar) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1)});
  const BatchFunction low = [](const Eigen::MatrixXd& x) { return Eigen::VectorXd(1.5 * x.col(0)); };
  const BatchFunction high = [](const Eigen::MatrixXd& x) {
    return Eigen::VectorXd(3.0 * x.col(0).array() + 3.0);
  };
  Algorithm2Settings s;
  s.interaction = 1;
  s.degree = 1;
  s.link_degree = 1;
  s.design_size = 32;
  s.risk_samples = 200'000;
  s.moment_samples = 100'000;
  s.betas = {0.95};
  s.seed = 5;
  const auto result = run_algorithm2(model, low, high, s);
  EXPECT_NEAR(result.risk[0].cvar / (2.0 * result.low_only_risk[0].cvar + 3.0), 1.0, 0.01);
  EXPECT_NEAR(result.risk[0].cvar / gaussian_cvar(3.0, 3.0, 0.95), 1.0, 0.01);
}

TEST(Budget, Arithmetic) {
  auto r = check_budget({100, 1, 0.5, 84, 16});
  EXPECT_DOUBLE_EQ(r.low_cost_bound, 1.0);
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(r.low_cost_ok);
  r = check_budget({16, 1, 0.0, 84, 16});
  EXPECT_DOUBLE_EQ(r.low_cost_bound, 0.0);
  EXPECT_TRUE(r.feasible);
  r = check_budget({10, 1, 0.0, 84, 16});
  EXPECT_FALSE(r.feasible);
  EXPECT_FALSE(r.low_cost_ok);
  r = check_budget({100, 1, 2.0, 84, 16});
  EXPECT_FALSE(r.low_cost_ok);
}
