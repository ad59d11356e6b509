#include "ddgpce/models.hpp"

#include <cmath>

#include "ddgpce/error.hpp"

namespace ddgpce {

TrussOutput parse_truss_output(const std::string& text) {
  if (text == "y1" || text == "displacement") return TrussOutput::MaxDisplacement;
  if (text == "y2" || text == "stress") return TrussOutput::MaxStress;
  fail(ErrorKind::InvalidArgument, "unknown truss output '" + text + "' (expected y1 or y2)");
}

const char* to_string(TrussOutput output) {
  return output == TrussOutput::MaxDisplacement ? "y1" : "y2";
}

namespace {

double pick(const TrussOutputs& o, TrussOutput output) {
  return output == TrussOutput::MaxDisplacement ? o.y1 : o.y2;
}

}  // namespace

BatchFunction truss_function(TrussModel truss, TrussOutput output) {
  truss.validate();
  return [truss = std::move(truss), output](const Eigen::MatrixXd& points) {
    Eigen::VectorXd y(points.rows());
    for (Eigen::Index l = 0; l < points.rows(); ++l) {
      y(l) = pick(truss_outputs_y1_y2(truss, points.row(l).transpose()), output);
    }
    return y;
  };
}

BatchFunction truss36_low_function(TrussOutput output) {
  TrussModel truss = builtin_truss36_low();
  const Eigen::VectorXd nominal = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(truss.input_dimension()), 30.0);
  const double reference = pick(truss_outputs_y1_y2(truss, nominal), output);
  auto raw = truss_function(std::move(truss), output);
  return [raw = std::move(raw), reference](const Eigen::MatrixXd& points) {
    Eigen::VectorXd y = raw(points);
    for (Eigen::Index l = 0; l < y.size(); ++l) {
      y(l) *= 1.0 + kLowOutputBias + kLowOutputCurvature * (y(l) / reference - 1.0);
    }
    return y;
  };
}

BatchFunction analytic_function(const AnalyticModel& model) {
  if (const auto* c = std::get_if<ConstantModel>(&model)) {
    const double value = c->value;
    return [value](const Eigen::MatrixXd& points) {
      return Eigen::VectorXd::Constant(points.rows(), value).eval();
    };
  }
  const auto& linear = std::get<LinearModel>(model);
  return [linear](const Eigen::MatrixXd& points) {
    require(points.cols() == linear.weights.size(), ErrorKind::ModelEvaluation,
            "linear model expects " + std::to_string(linear.weights.size()) + " inputs");
    Eigen::VectorXd y = points * linear.weights;
    y.array() += linear.offset;
    return y;
  };
}

std::pair<double, double> linear_gaussian_moments(const LinearModel& model,
                                                  const RandomInputModel& input) {
  require(static_cast<std::size_t>(model.weights.size()) == input.dimension(),
          ErrorKind::InvalidArgument, "linear model dimension does not match input model");
  for (const auto& m : input.marginals()) {
    require(std::holds_alternative<NormalLaw>(m.law()), ErrorKind::NoClosedForm,
            "linear model output is Gaussian only for all-normal inputs");
  }
  const Eigen::VectorXd scaled = model.weights.cwiseProduct(input.stddevs());
  const double mean = model.offset + model.weights.dot(input.means());
  const double variance = scaled.dot(input.correlation() * scaled);
  return {mean, std::sqrt(variance)};
}

double analytic_cvar(const AnalyticModel& model, const RandomInputModel& input, double beta) {
  if (const auto* c = std::get_if<ConstantModel>(&model)) {
    require(beta > 0.0 && beta < 1.0, ErrorKind::InvalidArgument, "beta must lie in (0,1)");
    return c->value;
  }
  const auto& linear = std::get<LinearModel>(model);
  Eigen::Index nonzero = 0;
  Eigen::Index last = -1;
  for (Eigen::Index i = 0; i < linear.weights.size(); ++i) {
    if (linear.weights(i) != 0.0) {
      ++nonzero;
      last = i;
    }
  }
  if (nonzero == 1) {
    const auto& law = input.marginals()[static_cast<std::size_t>(last)].law();
    if (const auto* u = std::get_if<UniformLaw>(&law)) {
      const double w = linear.weights(last);
      const double a = linear.offset + w * (w > 0 ? u->lower : u->upper);
      const double b = linear.offset + w * (w > 0 ? u->upper : u->lower);
      return uniform_cvar(a, b, beta);
    }
  }
  const auto [mean, stddev] = linear_gaussian_moments(linear, input);
  return gaussian_cvar(mean, stddev, beta);
}

BatchFunction counted(BatchFunction function, std::shared_ptr<std::size_t> counter) {
  return [function = std::move(function), counter](const Eigen::MatrixXd& points) {
    *counter += static_cast<std::size_t>(points.rows());
    return function(points);
  };
}

}  // namespace ddgpce
