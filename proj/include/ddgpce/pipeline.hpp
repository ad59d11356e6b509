#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ddgpce/archive.hpp"
#include "ddgpce/config.hpp"

namespace ddgpce {

/// Command-line overrides applied on top of a loaded configuration.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<CvarEstimator> estimator;
  std::optional<std::filesystem::path> archive;
  bool cdf = false;
};

void apply_overrides(PipelineConfig& config, const RunOptions& options);

struct CommandResult {
  std::string summary;                        // human-readable, printed by the CLI
  nlohmann::json report;
  std::vector<std::filesystem::path> files;   // files written, in order
};

/// Single-fidelity DD-GPCE: basis from the input law, L' Monte Carlo design
/// points, least squares. `evaluations` receives the exact number of model calls.
DdGpceSurrogate fit_single_fidelity(const RandomInputModel& model, const BatchFunction& function,
                                    unsigned interaction, unsigned degree,
                                    std::size_t design_size, std::size_t moment_samples,
                                    std::uint64_t seed, std::size_t* evaluations = nullptr);

/// Risk rows for every beta from L Monte Carlo outputs of the surrogate.
std::vector<RiskEstimate> estimate_risk(const SurrogateArchive& archive,
                                        const RandomInputModel& model,
                                        const std::vector<double>& betas, std::size_t count,
                                        std::uint64_t seed, CvarEstimator estimator,
                                        Eigen::VectorXd* outputs = nullptr);

struct TrialSummary {
  double beta = 0.0;
  double benchmark_var = 0.0;
  double benchmark_cvar = 0.0;
  double mean_cvar = 0.0;
  double mrd = 0.0;
  std::vector<double> cvars;                 // per trial
  std::optional<double> low_only_mean_cvar;  // bi-fidelity mode
  std::optional<double> low_only_mrd;
  std::vector<double> low_only_cvars;
};

struct TrialsResult {
  TrialMode mode = TrialMode::DdGpce;
  std::size_t trials = 0;
  std::size_t pool_size = 0;
  std::size_t design_size = 0;
  std::size_t pair_count = 0;
  std::size_t basis_size = 0;
  std::size_t high_evaluations = 0;   // pool
  std::size_t low_evaluations = 0;    // all trials together
  std::vector<TrialSummary> summary;  // one per beta
};

/// K fits on disjoint random subsets of a shared crude Monte Carlo pool of
/// high-fidelity outputs; CVaR of each fitted surrogate is compared with the
/// CVaR of the whole pool.
TrialsResult run_trials(const PipelineConfig& config);

CommandResult cmd_fit(const PipelineConfig& config);
CommandResult cmd_estimate(const PipelineConfig& config, const std::filesystem::path& archive,
                           bool cdf);
CommandResult cmd_bifit(const PipelineConfig& config, bool cdf);
CommandResult cmd_trials(const PipelineConfig& config);
CommandResult cmd_sample(const PipelineConfig& config);
CommandResult cmd_validate(const PipelineConfig& config);

/// CSV risk report: header beta,var,cvar,L,k_beta,estimator,seed.
std::string risk_csv(const std::vector<RiskEstimate>& rows, std::uint64_t seed);
nlohmann::json risk_json(const std::vector<RiskEstimate>& rows, std::uint64_t seed);
/// value,probability rows of the empirical CDF.
std::string cdf_csv(const Eigen::VectorXd& samples);

}  // namespace ddgpce
