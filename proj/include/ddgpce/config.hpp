#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ddgpce/bifidelity.hpp"
#include "ddgpce/distributions.hpp"
#include "ddgpce/models.hpp"
#include "ddgpce/risk.hpp"
#include "ddgpce/truss.hpp"

namespace ddgpce {

/// Reference to an evaluable model in a pipeline configuration.
struct ModelRef {
  enum class Kind { Truss36, Truss36Low, TrussFile, Linear, Constant, Command };

  Kind kind = Kind::Constant;
  TrussOutput output = TrussOutput::MaxDisplacement;
  std::filesystem::path truss_file;
  std::optional<TrussModel> truss;   // loaded TrussFile
  LinearModel linear;
  double value = 0.0;
  std::string command;
  double timeout_seconds = 0.0;

  std::string describe() const;
  /// Analytic form for Linear and Constant references.
  std::optional<AnalyticModel> analytic() const;
};

BatchFunction make_function(const ModelRef& ref);

enum class TrialMode { DdGpce, BiFidelity };

struct BudgetConfig {
  double total = 0.0;
  double cost_high = 0.0;
  double cost_low = 0.0;
};

struct PipelineConfig {
  std::optional<RandomInputModel> input;
  unsigned interaction = 1;           // S
  unsigned degree = 2;                // m
  unsigned link_degree = 3;           // m-bar
  std::size_t risk_samples = 10'000;  // L
  std::size_t design_size = 0;        // L'; 0 = oversampling * K
  std::size_t pair_count = 0;         // L''; 0 = link_oversampling * (m-bar + 1)
  std::size_t moment_samples = 5'000'000;   // L-bar
  double oversampling = 3.0;
  double link_oversampling = 8.0;
  std::vector<double> betas{0.95};
  std::uint64_t seed = 0;
  CvarEstimator estimator = CvarEstimator::Rockafellar;
  PairInputs pair_inputs = PairInputs::ReuseDesign;
  SamplingScheme sample_scheme = SamplingScheme::MCS;
  std::optional<ModelRef> model;
  std::optional<ModelRef> low_model;
  std::optional<ModelRef> high_model;
  std::size_t trials = 20;            // K
  TrialMode trial_mode = TrialMode::DdGpce;
  std::size_t pool_size = 10'000;
  std::optional<BudgetConfig> budget;
  std::filesystem::path output_dir = "out";

  /// Cardinality K of J_{S,m} for the configured input dimension.
  std::size_t basis_size() const;
  std::size_t resolved_design_size() const;
  std::size_t resolved_pair_count() const;
};

enum class Command { Fit, Estimate, BiFit, Trials, Sample, Validate };

const char* to_string(Command command);

/// Parses a configuration document. Every problem found is collected and
/// reported together in one Config error. Relative file paths resolve
/// against base_dir.
PipelineConfig parse_config(const nlohmann::json& document,
                            const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

/// Size and reference checks for one command; empty when the configuration
/// can run. Performed before any sampling or model evaluation.
std::vector<std::string> validation_errors(const PipelineConfig& config, Command command);
void validate_or_throw(const PipelineConfig& config, Command command);

RandomInputModel input_model_from_json(const nlohmann::json& j);
nlohmann::json input_model_to_json(const RandomInputModel& model);

/// Truss JSON schema: nodes [[x,y,z],...]; elements [[a,b],...] with
/// 1-based node numbers; supports [{"node":n,"fixed":[bx,by,bz]}];
/// loads [{"node":n,"force":[fx,fy,fz]}]; optional areas
/// [{"input":i} | {"fixed":a}] per element (default: element e uses input
/// e); optional youngs_modulus, density, modulus_factors,
/// horizontal_axis / vertical_axis ("x" | "y" | "z").
TrussModel truss_from_json(const nlohmann::json& j);
nlohmann::json truss_to_json(const TrussModel& truss);

}  // namespace ddgpce
