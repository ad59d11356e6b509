#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ddgpce/distributions.hpp"

namespace ddgpce {

enum class CvarEstimator {
  Rockafellar,  // VaR + E[(y - VaR)_+] / (1 - beta)
  Indicator,    // E[y 1{y >= VaR}] / (1 - beta)
};

const char* to_string(CvarEstimator estimator);
CvarEstimator parse_estimator(const std::string& text);

struct RiskEstimate {
  double beta = 0.0;
  double var = 0.0;
  double cvar = 0.0;
  std::size_t sample_count = 0;
  std::size_t k_beta = 0;   // 1-based rank of the VaR sample in descending order
  CvarEstimator estimator = CvarEstimator::Rockafellar;
};

/// Sampling-based VaR/CVaR with arbitrary probabilities (summing to 1).
/// Samples are ranked in descending order by a stable sort, so ties keep
/// their original order.
RiskEstimate var_cvar(std::span<const double> samples, std::span<const double> probabilities,
                      double beta, CvarEstimator estimator = CvarEstimator::Rockafellar);

/// Uniform probabilities 1/L; k_beta = floor(L (1 - beta)) + 1.
RiskEstimate var_cvar(std::span<const double> samples, double beta,
                      CvarEstimator estimator = CvarEstimator::Rockafellar);

template <typename Derived>
RiskEstimate var_cvar(const Eigen::DenseBase<Derived>& samples, double beta,
                      CvarEstimator estimator = CvarEstimator::Rockafellar) {
  const Eigen::VectorXd values = samples.derived().template cast<double>();
  return var_cvar(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())),
                  beta, estimator);
}

/// Batch evaluator: L x N points to L outputs.
using BatchFunction = std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>;

inline constexpr std::size_t kDefaultRiskSamples = 10'000;

/// Outputs of `function` on L plain Monte Carlo draws from the model, drawn
/// and evaluated chunk by chunk.
Eigen::VectorXd sample_outputs(const BatchFunction& function, const RandomInputModel& model,
                               std::size_t count, std::uint64_t seed);

/// VaR/CVaR of a surrogate (or any cheap function) on L uniform-weight MCS samples.
RiskEstimate var_cvar_surrogate(const BatchFunction& function, const RandomInputModel& model,
                                std::size_t count, double beta, std::uint64_t seed,
                                CvarEstimator estimator = CvarEstimator::Rockafellar);

/// Mean relative difference (1/K) sum_k |b - t_k| / |b|.
double mrd(double benchmark, std::span<const double> trials);

/// Sorted (value, empirical probability) pairs; probability k/L at the k-th
/// smallest value.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples);

/// Two-sample Kolmogorov distance sup_x |F_a(x) - F_b(x)|.
double kolmogorov_distance(std::span<const double> a, std::span<const double> b);

/// Closed-form CVaR of a Gaussian output.
double gaussian_cvar(double mean, double stddev, double beta);
double gaussian_var(double mean, double stddev, double beta);
/// Closed-form CVaR of a Uniform(a, b) output.
double uniform_cvar(double lower, double upper, double beta);

}  // namespace ddgpce
