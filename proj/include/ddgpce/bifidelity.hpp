#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddgpce/distributions.hpp"
#include "ddgpce/orthopoly.hpp"
#include "ddgpce/risk.hpp"
#include "ddgpce/surrogate.hpp"

namespace ddgpce {

/// h(y_L) = sum_i b_i Psi~_i(y_L), orthonormal in the law of the
/// low-fidelity surrogate output.
class FourierLink {
 public:
  explicit FourierLink(DdGpceSurrogate expansion);

  unsigned degree() const noexcept { return expansion_.basis().index_set().max_degree(); }
  const OrthonormalBasis& basis() const noexcept { return expansion_.basis(); }
  const Eigen::VectorXd& coefficients() const noexcept { return expansion_.coefficients(); }
  double residual() const noexcept { return expansion_.report().residual; }
  std::size_t pair_count() const noexcept { return expansion_.report().design_size; }
  const DdGpceSurrogate& expansion() const noexcept { return expansion_; }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& low_outputs) const;

 private:
  DdGpceSurrogate expansion_;
};

enum class PairInputs {
  ReuseDesign,   // first L'' low-fidelity design points
  Fresh,         // L'' new Monte Carlo draws (costs L'' extra low-fidelity runs)
};

const char* to_string(PairInputs pairs);
PairInputs parse_pair_inputs(const std::string& text);

struct Provenance {
  std::uint64_t seed = 0;
  std::size_t risk_samples = 0;       // L
  std::size_t design_size = 0;        // L'
  std::size_t pair_count = 0;         // L''
  std::size_t moment_samples = 0;     // L-bar
  PairInputs pair_inputs = PairInputs::ReuseDesign;
  std::size_t low_evaluations = 0;
  std::size_t high_evaluations = 0;
};

class BiFidelitySurrogate {
 public:
  BiFidelitySurrogate(DdGpceSurrogate low, FourierLink link, Provenance provenance = {});

  const DdGpceSurrogate& low() const noexcept { return low_; }
  const FourierLink& link() const noexcept { return link_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  /// y_H(x) ~ h(y~_L(x)).
  Eigen::VectorXd evaluate(const Eigen::MatrixXd& points) const;

 private:
  DdGpceSurrogate low_;
  FourierLink link_;
  Provenance provenance_;
};

inline Eigen::VectorXd evaluate_bifi(const BiFidelitySurrogate& s, const Eigen::MatrixXd& points) {
  return s.evaluate(points);
}

/// Evaluates `low` on L' Monte Carlo draws (Design stream of `seed`) and fits
/// the low-fidelity DD-GPCE. The design is written to `design_out` if given.
DdGpceSurrogate fit_low_surrogate(OrthonormalBasis basis, const BatchFunction& low,
                                  const RandomInputModel& model, std::size_t design_size,
                                  std::uint64_t seed, ExperimentalDesign* design_out = nullptr,
                                  double ratio_min = kDefaultOversampling);

/// Evaluates `function` on `points`, naming the first non-finite sample.
Eigen::VectorXd evaluate_checked(const BatchFunction& function, const Eigen::MatrixXd& points,
                                 const std::string& label);

/// Orthonormal basis of degree link_degree in the law of y~_L(X), estimated
/// from the low surrogate on L-bar quasi-random inputs.
OrthonormalBasis build_link_basis(const DdGpceSurrogate& low, const RandomInputModel& model,
                                  unsigned link_degree, std::size_t moment_samples,
                                  std::uint64_t seed);

/// Least-squares fit of y_H on Psi~(y_L) over L'' pairs.
FourierLink fit_link(OrthonormalBasis link_basis, const Eigen::VectorXd& low_outputs,
                     const Eigen::VectorXd& high_outputs);

struct Algorithm2Settings {
  unsigned interaction = 1;        // S
  unsigned degree = 3;             // m
  unsigned link_degree = 3;        // m-bar
  std::size_t risk_samples = 10'000;
  std::size_t design_size = 0;     // L'; 0 = 3 K
  std::size_t pair_count = 0;      // L''; 0 = 8 (m-bar + 1)
  std::size_t moment_samples = 5'000'000;
  std::vector<double> betas{0.95};
  std::uint64_t seed = 0;
  CvarEstimator estimator = CvarEstimator::Rockafellar;
  PairInputs pair_inputs = PairInputs::ReuseDesign;
};

struct Algorithm2Result {
  BiFidelitySurrogate surrogate;
  std::vector<RiskEstimate> risk;           // on h(y~_L)
  std::vector<RiskEstimate> low_only_risk;  // on y~_L, same inputs
  std::size_t low_evaluations = 0;
  std::size_t high_evaluations = 0;
};

/// Full bi-fidelity pipeline followed by sampling-based VaR/CVaR.
Algorithm2Result run_algorithm2(const RandomInputModel& model, const BatchFunction& low,
                                const BatchFunction& high, const Algorithm2Settings& settings);

struct BudgetModel {
  double total = 0.0;       // c_T
  double cost_high = 0.0;   // c_H
  double cost_low = 0.0;    // configured c_L'
  std::size_t low_count = 0;    // L'
  std::size_t high_count = 0;   // L''
};

struct BudgetReport {
  double low_cost_bound = 0.0;   // (c_T - L'' c_H) / L'
  bool feasible = true;          // c_T >= L'' c_H
  bool low_cost_ok = true;       // c_L' <= bound
};

BudgetReport check_budget(const BudgetModel& budget);

}  // namespace ddgpce
