#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace ddgpce {

struct NormalLaw {
  double mean = 0.0;
  double std = 1.0;
};

struct UniformLaw {
  double lower = 0.0;
  double upper = 1.0;
};

/// Parameterized by the mean and coefficient of variation of the variable
/// itself; the underlying normal parameters follow by moment matching.
struct LognormalLaw {
  double mean = 1.0;
  double cov = 0.1;
};

class Marginal {
 public:
  using Law = std::variant<NormalLaw, UniformLaw, LognormalLaw>;

  static Marginal normal(double mean, double std);
  static Marginal uniform(double lower, double upper);
  static Marginal lognormal(double mean, double cov);

  const Law& law() const noexcept { return law_; }
  std::string name() const;

  double mean() const;
  double stddev() const;
  double cdf(double x) const;
  double quantile(double u) const;
  /// Maps a standard normal deviate z to this marginal, F^{-1}(Phi(z)),
  /// without the round trip through Phi where a closed form exists.
  double from_standard_normal(double z) const;

  /// sigma_ln and mu_ln of a lognormal marginal.
  double log_sigma() const;
  double log_mu() const;

 private:
  explicit Marginal(Law law) : law_(law) {}
  Law law_;
};

/// Joint law of X: independent marginals coupled through a Gaussian copula
/// with correlation matrix R.
class RandomInputModel {
 public:
  RandomInputModel(std::vector<Marginal> marginals, Eigen::MatrixXd correlation);

  /// R = identity.
  static RandomInputModel independent(std::vector<Marginal> marginals);

  std::size_t dimension() const noexcept { return marginals_.size(); }
  const std::vector<Marginal>& marginals() const noexcept { return marginals_; }
  const Eigen::MatrixXd& correlation() const noexcept { return correlation_; }
  /// Lower Cholesky factor of R.
  const Eigen::MatrixXd& copula_factor() const noexcept { return factor_; }
  bool is_independent() const noexcept { return independent_; }

  Eigen::VectorXd means() const;
  Eigen::VectorXd stddevs() const;

 private:
  std::vector<Marginal> marginals_;
  Eigen::MatrixXd correlation_;
  Eigen::MatrixXd factor_;
  bool independent_ = false;
};

/// Equicorrelated matrix with unit diagonal.
Eigen::MatrixXd equicorrelation(std::size_t n, double rho);

enum class SamplingScheme { MCS, QMCS, LHS };

const char* to_string(SamplingScheme scheme);
SamplingScheme parse_scheme(const std::string& text);

inline constexpr std::size_t kSampleChunk = 4096;

struct SampleBatch {
  SamplingScheme scheme = SamplingScheme::MCS;
  std::uint64_t seed = 0;
  Eigen::MatrixXd points;          // L x N
  Eigen::VectorXd probabilities;   // L, default 1/L

  Eigen::Index count() const noexcept { return points.rows(); }
};

/// Sobol points in (0,1)^N, origin dropped. seed = 0 is the plain sequence;
/// any other seed applies a random digital shift per coordinate.
Eigen::MatrixXd sobol_unit(std::size_t count, std::size_t dimension,
                           std::uint64_t seed, std::size_t offset = 0);

/// Largest dimension the Sobol direction-number table supports.
std::size_t sobol_max_dimension();

/// Unit-cube points for a scheme. MCS and QMCS can be produced in pieces:
/// rows [offset, offset + count) of the infinite stream for that seed. MCS
/// streams are split into fixed chunks of kSampleChunk rows, each with its own
/// engine seeded from (seed, chunk index).
Eigen::MatrixXd unit_samples(SamplingScheme scheme, std::size_t count,
                             std::size_t dimension, std::uint64_t seed,
                             std::size_t offset = 0);

/// Pushes unit-cube points through the Gaussian copula and the marginals.
Eigen::MatrixXd transform_unit(const RandomInputModel& model,
                               const Eigen::MatrixXd& unit);

SampleBatch sample(const RandomInputModel& model, SamplingScheme scheme,
                   std::size_t count, std::uint64_t seed);

/// Rows [offset, offset + count) of sample(model, scheme, ., seed) for MCS/QMCS.
Eigen::MatrixXd sample_rows(const RandomInputModel& model, SamplingScheme scheme,
                            std::size_t offset, std::size_t count, std::uint64_t seed);

struct EmpiricalMoments {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;
  Eigen::MatrixXd correlation;
};

/// Unbiased sample statistics; columns with zero spread get correlation 0
/// off the diagonal.
EmpiricalMoments empirical_moments(const Eigen::MatrixXd& points);

/// CSV with header x1,...,xN,p.
void write_samples_csv(std::ostream& out, const SampleBatch& batch);

/// Independent stream seed derived from a master seed and a stream label.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ddgpce
