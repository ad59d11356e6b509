#include "ddgpce/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ddgpce/error.hpp"
#include "ddgpce/normal.hpp"

namespace ddgpce {
namespace {

constexpr double kMassTolerance = 1e-12;

void check_beta(double beta) {
  require(beta > 0.0 && beta < 1.0, ErrorKind::InvalidArgument,
          "risk level beta must lie in (0,1), got " + std::to_string(beta));
}

std::vector<std::size_t> descending_order(std::span<const double> samples) {
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a] > samples[b]; });
  return order;
}

RiskEstimate finish(std::span<const double> samples, std::span<const double> probabilities,
                    const std::vector<std::size_t>& order, std::size_t k, double beta,
                    CvarEstimator estimator) {
  RiskEstimate r;
  r.beta = beta;
  r.sample_count = samples.size();
  r.k_beta = k;
  r.estimator = estimator;
  r.var = samples[order[k - 1]];
  const double tail = 1.0 - beta;
  if (estimator == CvarEstimator::Rockafellar) {
    double excess = 0.0;
    for (std::size_t i = 0; i < k - 1; ++i) {
      const std::size_t l = order[i];
      excess += probabilities[l] * std::max(samples[l] - r.var, 0.0);
    }
    r.cvar = r.var + excess / tail;
  } else {
    double mass = 0.0;
    for (std::size_t i = 0; i < order.size() && samples[order[i]] >= r.var; ++i) {
      const std::size_t l = order[i];
      mass += probabilities[l] * samples[l];
    }
    r.cvar = mass / tail;
  }
  return r;
}

void check_samples(std::span<const double> samples) {
  require(!samples.empty(), ErrorKind::InvalidArgument, "no samples");
  for (std::size_t l = 0; l < samples.size(); ++l) {
    require(std::isfinite(samples[l]), ErrorKind::InvalidArgument,
            "sample " + std::to_string(l) + " is not finite");
  }
}

}  // namespace

const char* to_string(CvarEstimator estimator) {
  return estimator == CvarEstimator::Rockafellar ? "rockafellar" : "indicator";
}

CvarEstimator parse_estimator(const std::string& text) {
  if (text == "rockafellar") return CvarEstimator::Rockafellar;
  if (text == "indicator") return CvarEstimator::Indicator;
  fail(ErrorKind::InvalidArgument, "unknown CVaR estimator '" + text + "'");
}

RiskEstimate var_cvar(std::span<const double> samples, std::span<const double> probabilities,
                      double beta, CvarEstimator estimator) {
  check_beta(beta);
  check_samples(samples);
  require(probabilities.size() == samples.size(), ErrorKind::InvalidArgument,
          "probability count does not match sample count");
  double total = 0.0;
  for (double p : probabilities) {
    require(std::isfinite(p) && p >= 0.0, ErrorKind::InvalidArgument,
            "probabilities must be finite and non-negative");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-9, ErrorKind::InvalidArgument,
          "probabilities sum to " + std::to_string(total) + ", not 1");

  const double tail = 1.0 - beta;
  const double tail_count = static_cast<double>(samples.size()) * tail;
  require(tail_count >= 1.0 - 1e-9, ErrorKind::InsufficientTail,
          "L(1 - beta) = " + std::to_string(tail_count) +
              " < 1: beta must not exceed 1 - 1/L");
  const auto order = descending_order(samples);
  // Smallest k with sum_{i<k} p <= 1 - beta < sum_{i<=k} p.
  double cumulative = 0.0;
  std::size_t k = order.size();
  for (std::size_t i = 0; i < order.size(); ++i) {
    cumulative += probabilities[order[i]];
    if (cumulative > tail + kMassTolerance) {
      k = i + 1;
      break;
    }
  }
  return finish(samples, probabilities, order, k, beta, estimator);
}

RiskEstimate var_cvar(std::span<const double> samples, double beta, CvarEstimator estimator) {
  check_beta(beta);
  check_samples(samples);
  const std::size_t count = samples.size();
  double tail_count = static_cast<double>(count) * (1.0 - beta);
  const double nearest = std::round(tail_count);
  if (std::abs(tail_count - nearest) <= 1e-9 * std::max(1.0, nearest)) tail_count = nearest;
  require(tail_count >= 1.0, ErrorKind::InsufficientTail,
          "L(1 - beta) = " + std::to_string(tail_count) +
              " < 1: beta must not exceed 1 - 1/L");
  const auto k = static_cast<std::size_t>(std::floor(tail_count)) + 1;
  const std::vector<double> probabilities(count, 1.0 / static_cast<double>(count));
  return finish(samples, probabilities, descending_order(samples), std::min(k, count), beta,
                estimator);
}

Eigen::VectorXd sample_outputs(const BatchFunction& function, const RandomInputModel& model,
                               std::size_t count, std::uint64_t seed) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(count));
  for (std::size_t start = 0; start < count; start += kSampleChunk) {
    const std::size_t take = std::min(kSampleChunk, count - start);
    const Eigen::MatrixXd x = sample_rows(model, SamplingScheme::MCS, start, take, seed);
    const Eigen::VectorXd y = function(x);
    require(y.size() == static_cast<Eigen::Index>(take), ErrorKind::ModelEvaluation,
            "function returned " + std::to_string(y.size()) + " values for " +
                std::to_string(take) + " points");
    out.segment(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(take)) = y;
  }
  return out;
}

RiskEstimate var_cvar_surrogate(const BatchFunction& function, const RandomInputModel& model,
                                std::size_t count, double beta, std::uint64_t seed,
                                CvarEstimator estimator) {
  check_beta(beta);
  return var_cvar(sample_outputs(function, model, count, seed), beta, estimator);
}

double mrd(double benchmark, std::span<const double> trials) {
  require(benchmark != 0.0 && std::isfinite(benchmark), ErrorKind::InvalidArgument,
          "MRD benchmark must be finite and nonzero");
  require(!trials.empty(), ErrorKind::InvalidArgument, "MRD needs at least one trial");
  double sum = 0.0;
  for (double t : trials) sum += std::abs(benchmark - t);
  return sum / static_cast<double>(trials.size()) / std::abs(benchmark);
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out(sorted.size());
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out[i] = {sorted[i], static_cast<double>(i + 1) / n};
  }
  return out;
}

double kolmogorov_distance(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), ErrorKind::InvalidArgument,
          "Kolmogorov distance needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return worst;
}

double gaussian_var(double mean, double stddev, double beta) {
  check_beta(beta);
  return mean + stddev * normal_quantile(beta);
}

double gaussian_cvar(double mean, double stddev, double beta) {
  check_beta(beta);
  return mean + stddev * normal_pdf(normal_quantile(beta)) / (1.0 - beta);
}

double uniform_cvar(double lower, double upper, double beta) {
  check_beta(beta);
  return 0.5 * (lower + beta * (upper - lower) + upper);
}

}  // namespace ddgpce
