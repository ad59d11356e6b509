#pragma once

#include <string>

#include <Eigen/Dense>

#include "ddgpce/risk.hpp"

namespace ddgpce {

/// Batch protocol for external model executables. The command runs once per
/// batch under /bin/sh. Its standard input receives a CSV header x1,...,xN
/// followed by one row per point; it must print one decimal value per line,
/// in input order, and exit with status 0.
struct ExternalModel {
  std::string command;
  double timeout_seconds = 0.0;   // 0 = wait indefinitely
};

/// Runs one batch. Errors (all ModelEvaluation): spawn failure, timeout,
/// nonzero exit (with captured standard error), malformed line (with its
/// line number) and output count mismatch.
Eigen::VectorXd run_external_model(const ExternalModel& model, const Eigen::MatrixXd& inputs);

BatchFunction external_function(ExternalModel model);

/// True if the first word of the command resolves to an executable, either
/// as a path or through PATH.
bool external_command_available(const std::string& command);

}  // namespace ddgpce
