#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "ddgpce/distributions.hpp"
#include "ddgpce/error.hpp"
#include "ddgpce/normal.hpp"

using namespace ddgpce;

namespace {

// Gray-code Sobol generator for the first three coordinates, built directly
// from the primitive polynomials and initial direction numbers (dimension 1:
// van der Corput; dimension 2: x + 1, m = {1}; dimension 3: x^2 + x + 1,
// m = {1, 3}).
class SobolOracle {
 public:
  SobolOracle() {
    direction_.assign(3, std::vector<std::uint64_t>(64));
    for (int k = 0; k < 64; ++k) direction_[0][k] = std::uint64_t{1} << (63 - k);
    set_dimension(1, 1, 0, {1});
    set_dimension(2, 2, 1, {1, 3});
  }

  std::vector<std::array<double, 3>> points(std::size_t count) {
    std::vector<std::array<double, 3>> out;
    std::array<std::uint64_t, 3> x{0, 0, 0};
    for (std::uint64_t n = 0; n < count; ++n) {
      // rightmost zero bit of n
      int c = 0;
      while ((n >> c) & 1) ++c;
      for (int d = 0; d < 3; ++d) x[d] ^= direction_[d][c];
      out.push_back({std::ldexp(static_cast<double>(x[0] >> 11), -53),
                     std::ldexp(static_cast<double>(x[1] >> 11), -53),
                     std::ldexp(static_cast<double>(x[2] >> 11), -53)});
    }
    return out;
  }

 private:
  void set_dimension(int d, int s, unsigned a, std::vector<std::uint64_t> m) {
    for (int k = s; k < 64; ++k) {
      std::uint64_t value = m[k - s] ^ (m[k - s] << s);
      for (int i = 1; i < s; ++i) {
        if ((a >> (s - 1 - i)) & 1) value ^= m[k - i] << i;
      }
      m.push_back(value);
    }
    for (int k = 0; k < 64; ++k) direction_[d][k] = m[k] << (63 - k);
  }

  std::vector<std::vector<std::uint64_t>> direction_;
};

double sample_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::ArrayXd da = a.array() - a.mean();
  const Eigen::ArrayXd db = b.array() - b.mean();
  return (da * db).sum() / std::sqrt(da.square().sum() * db.square().sum());
}

}  // namespace

TEST(Normal, QuantileInvertsCdf) {
  for (double p : {1e-300, 1e-12, 1e-6, 0.01, 0.2, 0.5, 0.7, 0.975, 1 - 1e-9}) {
    const double x = normal_quantile(p);
    const double back = p < 0.5 ? normal_cdf(x) : 1.0 - 0.5 * std::erfc(x / std::sqrt(2.0));
    EXPECT_NEAR(back / p, 1.0, 1e-12) << p;
  }
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
  EXPECT_EQ(normal_quantile(0.5), 0.0);
}

TEST(Marginals, MomentsAndQuantiles) {
  const auto n = Marginal::normal(30.0, 1.5);
  EXPECT_DOUBLE_EQ(n.mean(), 30.0);
  EXPECT_DOUBLE_EQ(n.stddev(), 1.5);
  EXPECT_NEAR(n.quantile(0.975), 30.0 + 1.5 * 1.959963984540054, 1e-12);

  const auto u = Marginal::uniform(2.0, 6.0);
  EXPECT_DOUBLE_EQ(u.mean(), 4.0);
  EXPECT_NEAR(u.stddev(), 4.0 / std::sqrt(12.0), 1e-15);
  EXPECT_DOUBLE_EQ(u.quantile(0.25), 3.0);

  const auto l = Marginal::lognormal(10.0, 0.2);
  EXPECT_NEAR(l.mean(), 10.0, 1e-12);
  EXPECT_NEAR(l.stddev(), 2.0, 1e-12);
  const double s = std::sqrt(std::log(1.04));
  EXPECT_NEAR(l.log_sigma(), s, 1e-15);
  EXPECT_NEAR(l.log_mu(), std::log(10.0) - 0.5 * s * s, 1e-15);
  EXPECT_NEAR(l.cdf(l.quantile(0.3)), 0.3, 1e-12);
}

TEST(Marginals, RejectInvalidParameters) {
  EXPECT_THROW(Marginal::normal(0.0, 0.0), Error);
  EXPECT_THROW(Marginal::uniform(1.0, 1.0), Error);
  EXPECT_THROW(Marginal::lognormal(-1.0, 0.1), Error);
}

TEST(InputModel, ValidatesCorrelation) {
  std::vector<Marginal> m(3, Marginal::normal(0, 1));
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  r(0, 1) = 0.5;  // asymmetric
  EXPECT_THROW(RandomInputModel(m, r), Error);
  r(1, 0) = 0.5;
  EXPECT_NO_THROW(RandomInputModel(m, r));
  Eigen::Matrix3d bad;
  bad << 1, 0.9, -0.9, 0.9, 1, 0.9, -0.9, 0.9, 1;
  try {
    RandomInputModel(m, bad);
    FAIL() << "indefinite matrix accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPositiveDefinite);
  }
}

TEST(Sobol, MatchesDirectionNumberOracle) {
  SobolOracle oracle;
  // Both skip the origin: oracle point 0 is the first nonzero Sobol point.
  const auto expected = oracle.points(1024);
  const Eigen::MatrixXd got = sobol_unit(1024, 3, 0);
  for (std::size_t l = 0; l < 1024; ++l) {
    for (int d = 0; d < 3; ++d) {
      ASSERT_EQ(got(static_cast<Eigen::Index>(l), d), expected[l][d]) << l << "," << d;
    }
  }
  EXPECT_EQ(got(0, 0), 0.5);
  EXPECT_EQ(got(1, 0), 0.75);
  EXPECT_EQ(got(1, 1), 0.25);
}

TEST(Sobol, OffsetsAndScrambling) {
  const Eigen::MatrixXd all = sobol_unit(300, 4, 99);
  const Eigen::MatrixXd tail = sobol_unit(100, 4, 99, 200);
  EXPECT_EQ(all.bottomRows(100), tail);
  const Eigen::MatrixXd plain = sobol_unit(300, 4, 0);
  EXPECT_NE(all, plain);
  EXPECT_GT(all.minCoeff(), 0.0);
  EXPECT_LT(all.maxCoeff(), 1.0);
  EXPECT_GE(sobol_max_dimension(), 1000u);
  EXPECT_THROW(sobol_unit(10, sobol_max_dimension() + 1, 0), Error);
}

TEST(Sampling, McsIsChunkInvariant) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1), Marginal::uniform(0, 1)});
  const Eigen::MatrixXd all = sample(model, SamplingScheme::MCS, 10000, 5).points;
  const Eigen::MatrixXd part = sample_rows(model, SamplingScheme::MCS, 4000, 3000, 5);
  EXPECT_EQ(all.middleRows(4000, 3000), part);
  EXPECT_NE(all, sample(model, SamplingScheme::MCS, 10000, 6).points);
}

TEST(Sampling, IdentityCopulaReproducesUniforms) {
  const auto model = RandomInputModel::independent({Marginal::uniform(0, 1), Marginal::uniform(0, 1)});
  const Eigen::MatrixXd u = unit_samples(SamplingScheme::MCS, 100, 2, 3);
  EXPECT_EQ(transform_unit(model, u), u);
}

TEST(Sampling, LatinHypercubeStrata) {
  const std::size_t n = 50;
  const Eigen::MatrixXd u = unit_samples(SamplingScheme::LHS, n, 3, 11);
  for (int d = 0; d < 3; ++d) {
    std::vector<int> count(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
      ++count[static_cast<std::size_t>(u(static_cast<Eigen::Index>(l), d) * n)];
    }
    for (int c : count) EXPECT_EQ(c, 1);
  }
}

TEST(Sampling, CopulaMomentsMatch) {
  const auto model = RandomInputModel(
      {Marginal::normal(30, 1.5), Marginal::normal(30, 1.5), Marginal::lognormal(5, 0.1)},
      equicorrelation(3, 0.5));
  const Eigen::MatrixXd x = sample(model, SamplingScheme::MCS, 200000, 1).points;
  EXPECT_NEAR(x.col(0).mean(), 30.0, 0.02);
  EXPECT_NEAR(x.col(2).mean(), 5.0, 0.01);
  EXPECT_NEAR(sample_correlation(x.col(0), x.col(1)), 0.5, 0.01);
  const auto stats = empirical_moments(x);
  EXPECT_NEAR(stats.stddev(0), 1.5, 0.01);
  EXPECT_NEAR(stats.stddev(2), 0.5, 0.01);
}

TEST(Sampling, QmcMeanConvergesFaster) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1)});
  const double qmc = sample(model, SamplingScheme::QMCS, 4096, 0).points.mean();
  EXPECT_LT(std::abs(qmc), 1e-3);
}

TEST(Sampling, CsvLayout) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1), Marginal::normal(0, 1)});
  std::ostringstream out;
  write_samples_csv(out, sample(model, SamplingScheme::MCS, 3, 1));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x1,x2,p");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Seeds, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
