#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "ddgpce/distributions.hpp"
#include "ddgpce/risk.hpp"
#include "ddgpce/truss.hpp"

namespace ddgpce {

enum class TrussOutput { MaxDisplacement, MaxStress };

TrussOutput parse_truss_output(const std::string& text);
const char* to_string(TrussOutput output);

/// Batch evaluator of one truss output; rows of the input are area vectors.
BatchFunction truss_function(TrussModel truss, TrussOutput output);

/// Low-fidelity truss output: the builtin_truss36_low response passed
/// through a smooth relative model error,
///   y_L = y (1 + kLowOutputBias + kLowOutputCurvature (y / y_ref - 1)),
/// where y_ref is the low response at all areas equal to 30.
BatchFunction truss36_low_function(TrussOutput output);

inline constexpr double kLowOutputBias = 0.03;
inline constexpr double kLowOutputCurvature = 0.25;

struct ConstantModel {
  double value = 0.0;
};

/// y = offset + weights . x
struct LinearModel {
  Eigen::VectorXd weights;
  double offset = 0.0;
};

using AnalyticModel = std::variant<ConstantModel, LinearModel>;

BatchFunction analytic_function(const AnalyticModel& model);

/// Mean and standard deviation of a linear model over all-normal inputs
/// (the output is then exactly Gaussian). NoClosedForm otherwise.
std::pair<double, double> linear_gaussian_moments(const LinearModel& model,
                                                  const RandomInputModel& input);

/// Exact CVaR where the output law has a closed form: constant output, a
/// linear model over normal inputs (Gaussian output), or a linear model
/// with a single nonzero weight on a uniform input (uniform output).
double analytic_cvar(const AnalyticModel& model, const RandomInputModel& input, double beta);

/// Wraps `function` so every evaluated row increments `counter`.
BatchFunction counted(BatchFunction function, std::shared_ptr<std::size_t> counter);

}  // namespace ddgpce
