#include "ddgpce/bifidelity.hpp"

#include <cmath>
#include <string>

#include "ddgpce/error.hpp"
#include "ddgpce/streams.hpp"

namespace ddgpce {
namespace {

template <typename F>
auto step(int number, const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), "bi-fidelity step " + std::to_string(number) + " (" + what +
                              "): " + e.what());
  }
}

Eigen::VectorXd chunked_evaluate(const DdGpceSurrogate& surrogate,
                                 const RandomInputModel& model, SamplingScheme scheme,
                                 std::size_t count, std::uint64_t seed) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(count));
  for (std::size_t start = 0; start < count; start += kSampleChunk) {
    const std::size_t take = std::min(kSampleChunk, count - start);
    out.segment(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(take)) =
        surrogate.evaluate(sample_rows(model, scheme, start, take, seed));
  }
  return out;
}

}  // namespace

FourierLink::FourierLink(DdGpceSurrogate expansion) : expansion_(std::move(expansion)) {
  require(expansion_.basis().dimension() == 1, ErrorKind::InvalidArgument,
          "a Fourier link is a univariate expansion");
}

Eigen::VectorXd FourierLink::evaluate(const Eigen::VectorXd& low_outputs) const {
  return expansion_.evaluate(low_outputs);
}

const char* to_string(PairInputs pairs) {
  return pairs == PairInputs::ReuseDesign ? "reuse_design" : "fresh";
}

PairInputs parse_pair_inputs(const std::string& text) {
  if (text == "reuse_design") return PairInputs::ReuseDesign;
  if (text == "fresh") return PairInputs::Fresh;
  fail(ErrorKind::InvalidArgument, "unknown pair input policy '" + text + "'");
}

BiFidelitySurrogate::BiFidelitySurrogate(DdGpceSurrogate low, FourierLink link,
                                         Provenance provenance)
    : low_(std::move(low)), link_(std::move(link)), provenance_(provenance) {}

Eigen::VectorXd BiFidelitySurrogate::evaluate(const Eigen::MatrixXd& points) const {
  return link_.evaluate(low_.evaluate(points));
}

Eigen::VectorXd evaluate_checked(const BatchFunction& function, const Eigen::MatrixXd& points,
                                 const std::string& label) {
  Eigen::VectorXd y;
  try {
    y = function(points);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::ModelEvaluation, label + " model failed: " + e.what());
  }
  require(y.size() == points.rows(), ErrorKind::ModelEvaluation,
          label + " model returned " + std::to_string(y.size()) + " values for " +
              std::to_string(points.rows()) + " inputs");
  for (Eigen::Index l = 0; l < y.size(); ++l) {
    require(std::isfinite(y(l)), ErrorKind::ModelEvaluation,
            label + " model returned a non-finite value at sample " + std::to_string(l));
  }
  return y;
}

DdGpceSurrogate fit_low_surrogate(OrthonormalBasis basis, const BatchFunction& low,
                                  const RandomInputModel& model, std::size_t design_size,
                                  std::uint64_t seed, ExperimentalDesign* design_out,
                                  double ratio_min) {
  require(design_size > basis.size(), ErrorKind::InvalidArgument,
          "least squares needs L' > K: L' = " + std::to_string(design_size) +
              ", K = " + std::to_string(basis.size()));
  ExperimentalDesign design;
  design.fidelity = "low";
  design.inputs = sample(model, SamplingScheme::MCS, design_size,
                         stream_seed(seed, Stream::Design)).points;
  design.outputs = evaluate_checked(low, design.inputs, "low-fidelity");
  auto surrogate = fit_sls(std::move(basis), design, ratio_min);
  if (design_out != nullptr) *design_out = std::move(design);
  return surrogate;
}

OrthonormalBasis build_link_basis(const DdGpceSurrogate& low, const RandomInputModel& model,
                                  unsigned link_degree, std::size_t moment_samples,
                                  std::uint64_t seed) {
  require(link_degree >= 1, ErrorKind::InvalidArgument, "link degree must be at least 1");
  require(moment_samples >= 10 * (static_cast<std::size_t>(link_degree) + 1),
          ErrorKind::InvalidArgument, "link moment matrix needs at least 10 (m-bar + 1) samples");
  const Eigen::VectorXd y =
      chunked_evaluate(low, model, SamplingScheme::QMCS, moment_samples, seed);
  const double mean = y.mean();
  const double variance = (y.array() - mean).square().sum() / static_cast<double>(y.size() - 1);
  require(variance > 1e-12 * std::max(mean * mean, std::numeric_limits<double>::min()),
          ErrorKind::DegenerateLowFidelity,
          "low-fidelity surrogate output is nearly constant; raise m or S of the low-fidelity "
          "expansion");
  return build_basis(generate_univariate(link_degree), Eigen::MatrixXd(y));
}

FourierLink fit_link(OrthonormalBasis link_basis, const Eigen::VectorXd& low_outputs,
                     const Eigen::VectorXd& high_outputs) {
  require(link_basis.dimension() == 1, ErrorKind::InvalidArgument,
          "link basis must be univariate");
  require(low_outputs.size() == high_outputs.size(), ErrorKind::InvalidArgument,
          "got " + std::to_string(low_outputs.size()) + " low-fidelity and " +
              std::to_string(high_outputs.size()) + " high-fidelity outputs");
  ExperimentalDesign pairs;
  pairs.inputs = low_outputs;
  pairs.outputs = high_outputs;
  pairs.fidelity = "pairs";
  return FourierLink(fit_sls(std::move(link_basis), pairs, 3.0));
}

Algorithm2Result run_algorithm2(const RandomInputModel& model, const BatchFunction& low,
                                const BatchFunction& high, const Algorithm2Settings& settings) {
  require(!settings.betas.empty(), ErrorKind::InvalidArgument, "no risk levels given");
  const auto index_set = step(1, "monomial vector", [&] {
    return generate_reduced(model.dimension(), settings.interaction, settings.degree);
  });
  const std::size_t k = index_set.size();
  const std::size_t design_size = settings.design_size > 0 ? settings.design_size : 3 * k;
  const std::size_t pair_count = settings.pair_count > 0
                                     ? settings.pair_count
                                     : 8 * (static_cast<std::size_t>(settings.link_degree) + 1);
  if (settings.pair_inputs == PairInputs::ReuseDesign) {
    require(pair_count <= design_size, ErrorKind::InvalidArgument,
            "L'' = " + std::to_string(pair_count) + " exceeds L' = " +
                std::to_string(design_size) + " with reused design inputs");
  }

  auto basis = step(3, "orthonormal polynomials of X", [&] {
    return build_basis(model, index_set, settings.moment_samples,
                       stream_seed(settings.seed, Stream::InputMoments));
  });

  std::size_t low_calls = 0;
  std::size_t high_calls = 0;
  ExperimentalDesign design;
  auto low_surrogate = step(6, "low-fidelity coefficients", [&] {
    auto s = fit_low_surrogate(std::move(basis), low, model, design_size, settings.seed, &design);
    low_calls += design_size;
    return s;
  });

  auto link_basis = step(11, "orthonormal polynomials of Y_L", [&] {
    return build_link_basis(low_surrogate, model, settings.link_degree,
                            settings.moment_samples,
                            stream_seed(settings.seed, Stream::LinkMoments));
  });

  Eigen::VectorXd pair_low;
  Eigen::VectorXd pair_high;
  step(14, "low/high-fidelity pairs", [&] {
    Eigen::MatrixXd inputs;
    if (settings.pair_inputs == PairInputs::ReuseDesign) {
      inputs = design.inputs.topRows(static_cast<Eigen::Index>(pair_count));
      pair_low = design.outputs.head(static_cast<Eigen::Index>(pair_count));
    } else {
      inputs = sample(model, SamplingScheme::MCS, pair_count,
                      stream_seed(settings.seed, Stream::Pairs)).points;
      pair_low = evaluate_checked(low, inputs, "low-fidelity");
      low_calls += pair_count;
    }
    pair_high = evaluate_checked(high, inputs, "high-fidelity");
    high_calls += pair_count;
    return 0;
  });

  auto link = step(15, "Fourier coefficients", [&] {
    return fit_link(std::move(link_basis), pair_low, pair_high);
  });

  Provenance provenance;
  provenance.seed = settings.seed;
  provenance.risk_samples = settings.risk_samples;
  provenance.design_size = design_size;
  provenance.pair_count = pair_count;
  provenance.moment_samples = settings.moment_samples;
  provenance.pair_inputs = settings.pair_inputs;
  provenance.low_evaluations = low_calls;
  provenance.high_evaluations = high_calls;
  BiFidelitySurrogate composite(std::move(low_surrogate), std::move(link), provenance);

  return step(19, "VaR/CVaR estimation", [&] {
    const Eigen::VectorXd low_y = sample_outputs(
        [&](const Eigen::MatrixXd& x) { return composite.low().evaluate(x); }, model,
        settings.risk_samples, stream_seed(settings.seed, Stream::Risk));
    const Eigen::VectorXd high_y = composite.link().evaluate(low_y);
    Algorithm2Result result{composite, {}, {}, low_calls, high_calls};
    for (double beta : settings.betas) {
      result.risk.push_back(var_cvar(high_y, beta, settings.estimator));
      result.low_only_risk.push_back(var_cvar(low_y, beta, settings.estimator));
    }
    return result;
  });
}

BudgetReport check_budget(const BudgetModel& budget) {
  require(budget.total > 0.0 && budget.cost_high > 0.0 && budget.cost_low >= 0.0,
          ErrorKind::InvalidArgument, "budget costs must be positive");
  require(budget.low_count >= 1, ErrorKind::InvalidArgument, "L' must be at least 1");
  BudgetReport report;
  const double remaining = budget.total - static_cast<double>(budget.high_count) * budget.cost_high;
  report.feasible = remaining >= 0.0;
  report.low_cost_bound = remaining / static_cast<double>(budget.low_count);
  report.low_cost_ok = report.feasible && budget.cost_low <= report.low_cost_bound;
  return report;
}

}  // namespace ddgpce
