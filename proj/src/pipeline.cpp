#include "ddgpce/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include "ddgpce/error.hpp"
#include "ddgpce/streams.hpp"

namespace ddgpce {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Config, "cannot write " + path.string());
  out << text;
  return path;
}

std::string exact(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string brief(double v) {
  std::ostringstream s;
  s << std::setprecision(8) << v;
  return s.str();
}

std::string percent(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * v << "%";
  return s.str();
}

void check_betas(const PipelineConfig& config) {
  for (double beta : config.betas) {
    require(static_cast<double>(config.risk_samples) * (1.0 - beta) >= 1.0 - 1e-9,
            ErrorKind::Config,
            "beta " + exact(beta) + " exceeds 1 - 1/L for L = " +
                std::to_string(config.risk_samples));
  }
}

std::string risk_lines(const std::vector<RiskEstimate>& rows, const std::string& label) {
  std::ostringstream s;
  for (const auto& r : rows) {
    s << label << " beta=" << r.beta << "  VaR=" << brief(r.var) << "  CVaR=" << brief(r.cvar)
      << "  (L=" << r.sample_count << ", k_beta=" << r.k_beta << ", " << to_string(r.estimator)
      << ")\n";
  }
  return s.str();
}

// Fisher-Yates with an unbiased bounded draw, independent of the standard
// library's distribution implementations.
std::vector<std::size_t> shuffled_indices(std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> perm(count);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 engine(seed);
  for (std::size_t i = count; i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = engine();
    } while (r >= limit);
    std::swap(perm[i - 1], perm[r % bound]);
  }
  return perm;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx,
                          std::size_t first, std::size_t count) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(count), m.cols());
  for (std::size_t i = 0; i < count; ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(idx[first + i]));
  }
  return out;
}

Eigen::VectorXd take(const Eigen::VectorXd& v, const std::vector<std::size_t>& idx,
                     std::size_t first, std::size_t count) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(idx[first + i]));
  }
  return out;
}

Eigen::VectorXd surrogate_outputs(const SurrogateArchive& archive, const RandomInputModel& model,
                                  std::size_t count, std::uint64_t seed) {
  return sample_outputs([&](const Eigen::MatrixXd& x) { return archive.evaluate(x); }, model,
                        count, seed);
}

}  // namespace

void apply_overrides(PipelineConfig& config, const RunOptions& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.out) config.output_dir = *options.out;
  if (options.estimator) config.estimator = *options.estimator;
}

std::string risk_csv(const std::vector<RiskEstimate>& rows, std::uint64_t seed) {
  std::ostringstream s;
  s << "beta,var,cvar,L,k_beta,estimator,seed\n";
  for (const auto& r : rows) {
    s << exact(r.beta) << ',' << exact(r.var) << ',' << exact(r.cvar) << ',' << r.sample_count
      << ',' << r.k_beta << ',' << to_string(r.estimator) << ',' << seed << '\n';
  }
  return s.str();
}

json risk_json(const std::vector<RiskEstimate>& rows, std::uint64_t seed) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"beta", r.beta},
                   {"var", r.var},
                   {"cvar", r.cvar},
                   {"L", r.sample_count},
                   {"k_beta", r.k_beta},
                   {"estimator", to_string(r.estimator)},
                   {"seed", seed}});
  }
  return out;
}

std::string cdf_csv(const Eigen::VectorXd& samples) {
  std::ostringstream s;
  s << "value,probability\n";
  for (const auto& [value, p] :
       empirical_cdf(std::span<const double>(samples.data(), static_cast<std::size_t>(samples.size())))) {
    s << exact(value) << ',' << exact(p) << '\n';
  }
  return s.str();
}

DdGpceSurrogate fit_single_fidelity(const RandomInputModel& model, const BatchFunction& function,
                                    unsigned interaction, unsigned degree,
                                    std::size_t design_size, std::size_t moment_samples,
                                    std::uint64_t seed, std::size_t* evaluations) {
  const auto set = generate_reduced(model.dimension(), interaction, degree);
  require(design_size > set.size(), ErrorKind::InvalidArgument,
          "least squares needs L' > L_{N,S,m}: L' = " + std::to_string(design_size) +
              ", L_{N,S,m} = " + std::to_string(set.size()));
  auto basis = build_basis(model, set, moment_samples, stream_seed(seed, Stream::InputMoments));
  ExperimentalDesign design;
  design.inputs = sample(model, SamplingScheme::MCS, design_size,
                         stream_seed(seed, Stream::Design)).points;
  design.outputs = evaluate_checked(function, design.inputs, "model");
  if (evaluations != nullptr) *evaluations = design_size;
  return fit_sls(std::move(basis), design);
}

std::vector<RiskEstimate> estimate_risk(const SurrogateArchive& archive,
                                        const RandomInputModel& model,
                                        const std::vector<double>& betas, std::size_t count,
                                        std::uint64_t seed, CvarEstimator estimator,
                                        Eigen::VectorXd* outputs) {
  require(archive.dimension() == model.dimension(), ErrorKind::Config,
          "archive expects " + std::to_string(archive.dimension()) +
              " inputs but the input model has " + std::to_string(model.dimension()));
  const Eigen::VectorXd y = surrogate_outputs(archive, model, count, stream_seed(seed, Stream::Risk));
  std::vector<RiskEstimate> rows;
  for (double beta : betas) rows.push_back(var_cvar(y, beta, estimator));
  if (outputs != nullptr) *outputs = y;
  return rows;
}

CommandResult cmd_fit(const PipelineConfig& config) {
  validate_or_throw(config, Command::Fit);
  const RandomInputModel& model = *config.input;
  auto calls = std::make_shared<std::size_t>(0);
  const BatchFunction function = counted(make_function(*config.model), calls);
  const std::size_t design_size = config.resolved_design_size();

  DdGpceSurrogate surrogate =
      fit_single_fidelity(model, function, config.interaction, config.degree, design_size,
                          config.moment_samples, config.seed);

  const std::size_t n = model.dimension();
  const std::size_t k = surrogate.basis().size();
  json full = nullptr;
  try {
    full = cardinality_full(n, config.degree);
  } catch (const Error&) {
  }
  SurrogateArchive archive{kArchiveFormatVersion, model, surrogate,
                           {{"command", "fit"},
                            {"seed", config.seed},
                            {"design_size", design_size},
                            {"moment_samples", config.moment_samples},
                            {"model", config.model->describe()},
                            {"evaluations", *calls}}};

  const FitReport& fr = surrogate.report();
  const WhiteningReport& wr = surrogate.basis().report();
  json report{{"N", n},
              {"S", config.interaction},
              {"m", config.degree},
              {"L_N_S_m", k},
              {"L_N_m", full},
              {"L_prime", design_size},
              {"L_bar", config.moment_samples},
              {"oversampling_ratio", fr.oversampling_ratio},
              {"undersampled", fr.undersampled},
              {"residual", fr.residual},
              {"design_condition", fr.condition_estimate},
              {"moment_condition", wr.condition_estimate},
              {"moment_jitter", wr.jitter},
              {"ill_conditioned", wr.ill_conditioned},
              {"model", config.model->describe()},
              {"evaluations", *calls},
              {"seed", config.seed}};

  std::ostringstream text;
  text << "DD-GPCE fit (" << config.model->describe() << ")\n"
       << "  N = " << n << ", S = " << config.interaction << ", m = " << config.degree << "\n"
       << "  L_{N,S,m} = " << k;
  if (!full.is_null()) text << "  (regular L_{N,m} = " << full.get<std::uint64_t>() << ")";
  text << "\n  L' = " << design_size << "  (ratio " << brief(fr.oversampling_ratio) << ")"
       << (fr.undersampled ? "  WARNING: below the requested oversampling" : "") << "\n"
       << "  residual = " << brief(fr.residual) << "\n"
       << "  condition: design " << brief(fr.condition_estimate) << ", moment matrix "
       << brief(wr.condition_estimate) << (wr.ill_conditioned ? "  WARNING: ill-conditioned" : "")
       << "\n"
       << "  model evaluations: " << *calls << "\n";

  CommandResult result{text.str(), report, {}};
  const fs::path& dir = config.output_dir;
  result.files.push_back(write_file(dir, "surrogate.json", dump_archive(archive)));
  result.files.push_back(write_file(dir, "fit_report.json", report.dump(1) + "\n"));
  result.files.push_back(write_file(dir, "fit_report.txt", result.summary));
  return result;
}

CommandResult cmd_estimate(const PipelineConfig& config, const fs::path& archive_path, bool cdf) {
  check_betas(config);
  const SurrogateArchive archive = load_archive(archive_path);
  require(archive.input || config.input, ErrorKind::Config,
          "neither the archive nor the configuration defines the input model");
  const RandomInputModel& model = archive.input ? *archive.input : *config.input;
  Eigen::VectorXd y;
  const auto rows = estimate_risk(archive, model, config.betas, config.risk_samples, config.seed,
                                  config.estimator, &y);
  CommandResult result{risk_lines(rows, archive.is_bifidelity() ? "bi-fidelity" : "DD-GPCE"),
                       {{"archive", archive_path.filename().string()},
                        {"risk", risk_json(rows, config.seed)}},
                       {}};
  const fs::path& dir = config.output_dir;
  result.files.push_back(write_file(dir, "risk.csv", risk_csv(rows, config.seed)));
  result.files.push_back(write_file(dir, "risk.json", result.report.dump(1) + "\n"));
  if (cdf) result.files.push_back(write_file(dir, "cdf.csv", cdf_csv(y)));
  return result;
}

CommandResult cmd_bifit(const PipelineConfig& config, bool cdf) {
  validate_or_throw(config, Command::BiFit);
  const RandomInputModel& model = *config.input;
  auto low_calls = std::make_shared<std::size_t>(0);
  auto high_calls = std::make_shared<std::size_t>(0);
  const BatchFunction low = counted(make_function(*config.low_model), low_calls);
  const BatchFunction high = counted(make_function(*config.high_model), high_calls);

  Algorithm2Settings settings;
  settings.interaction = config.interaction;
  settings.degree = config.degree;
  settings.link_degree = config.link_degree;
  settings.risk_samples = config.risk_samples;
  settings.design_size = config.resolved_design_size();
  settings.pair_count = config.resolved_pair_count();
  settings.moment_samples = config.moment_samples;
  settings.betas = config.betas;
  settings.seed = config.seed;
  settings.estimator = config.estimator;
  settings.pair_inputs = config.pair_inputs;
  const Algorithm2Result run = run_algorithm2(model, low, high, settings);
  require(run.low_evaluations == *low_calls && run.high_evaluations == *high_calls,
          ErrorKind::ModelEvaluation, "evaluation accounting mismatch");

  SurrogateArchive archive{kArchiveFormatVersion, model, run.surrogate,
                           {{"command", "bifit"},
                            {"low_model", config.low_model->describe()},
                            {"high_model", config.high_model->describe()},
                            {"S", config.interaction},
                            {"m", config.degree},
                            {"m_bar", config.link_degree}}};

  const auto& link = run.surrogate.link();
  json report{{"N", model.dimension()},
              {"S", config.interaction},
              {"m", config.degree},
              {"m_bar", config.link_degree},
              {"L_N_S_m", run.surrogate.low().basis().size()},
              {"L_prime", settings.design_size},
              {"L_double_prime", settings.pair_count},
              {"L_bar", config.moment_samples},
              {"pair_inputs", to_string(config.pair_inputs)},
              {"low_fidelity_evaluations", *low_calls},
              {"high_fidelity_evaluations", *high_calls},
              {"low_residual", run.surrogate.low().report().residual},
              {"link_residual", link.residual()},
              {"link_coefficients", std::vector<double>(link.coefficients().data(),
                                                        link.coefficients().data() +
                                                            link.coefficients().size())},
              {"risk", risk_json(run.risk, config.seed)},
              {"low_only_risk", risk_json(run.low_only_risk, config.seed)},
              {"seed", config.seed}};

  std::ostringstream text;
  text << "Bi-fidelity fit (low: " << config.low_model->describe()
       << "; high: " << config.high_model->describe() << ")\n"
       << "  N = " << model.dimension() << ", S = " << config.interaction
       << ", m = " << config.degree << ", m_bar = " << config.link_degree << "\n"
       << "  L_{N,S,m} = " << run.surrogate.low().basis().size() << ", L' = "
       << settings.design_size << ", L'' = " << settings.pair_count << "\n"
       << "  low-fidelity evaluations: " << *low_calls << "\n"
       << "  high-fidelity evaluations: " << *high_calls << "\n"
       << "  residual: low surrogate " << brief(run.surrogate.low().report().residual)
       << ", link " << brief(link.residual()) << "\n";
  if (config.budget) {
    const BudgetReport b = check_budget({config.budget->total, config.budget->cost_high,
                                         config.budget->cost_low, settings.design_size,
                                         settings.pair_count});
    report["budget"] = {{"total", config.budget->total},
                        {"cost_high", config.budget->cost_high},
                        {"cost_low", config.budget->cost_low},
                        {"low_cost_bound", b.low_cost_bound},
                        {"feasible", b.feasible},
                        {"low_cost_ok", b.low_cost_ok}};
    text << "  budget: c_L' <= (c_T - L'' c_H) / L' = " << brief(b.low_cost_bound)
         << "; configured c_L' = " << brief(config.budget->cost_low) << " -> "
         << (b.low_cost_ok ? "within budget" : (b.feasible ? "OVER budget" : "INFEASIBLE")) << "\n";
  }
  text << risk_lines(run.risk, "bi-fidelity") << risk_lines(run.low_only_risk, "low-only   ");

  CommandResult result{text.str(), report, {}};
  const fs::path& dir = config.output_dir;
  result.files.push_back(write_file(dir, "bifidelity.json", dump_archive(archive)));
  result.files.push_back(write_file(dir, "risk.csv", risk_csv(run.risk, config.seed)));
  result.files.push_back(
      write_file(dir, "risk_low_only.csv", risk_csv(run.low_only_risk, config.seed)));
  result.files.push_back(write_file(dir, "bifit_report.json", report.dump(1) + "\n"));
  result.files.push_back(write_file(dir, "bifit_report.txt", result.summary));
  if (cdf) {
    const Eigen::VectorXd low_y = sample_outputs(
        [&](const Eigen::MatrixXd& x) { return run.surrogate.low().evaluate(x); }, model,
        config.risk_samples, stream_seed(config.seed, Stream::Risk));
    result.files.push_back(write_file(dir, "cdf.csv", cdf_csv(link.evaluate(low_y))));
    result.files.push_back(write_file(dir, "cdf_low_only.csv", cdf_csv(low_y)));
  }
  return result;
}

TrialsResult run_trials(const PipelineConfig& config) {
  validate_or_throw(config, Command::Trials);
  check_betas(config);
  const RandomInputModel& model = *config.input;
  const bool bifi = config.trial_mode == TrialMode::BiFidelity;
  const ModelRef& high_ref = bifi ? *config.high_model
                                  : (config.model ? *config.model : *config.high_model);
  const BatchFunction high = make_function(high_ref);
  std::optional<BatchFunction> low;
  if (bifi) low = make_function(*config.low_model);

  TrialsResult out;
  out.mode = config.trial_mode;
  out.trials = config.trials;
  out.pool_size = config.pool_size;
  out.design_size = config.resolved_design_size();
  out.pair_count = bifi ? config.resolved_pair_count() : 0;

  const Eigen::MatrixXd pool_x =
      sample(model, SamplingScheme::MCS, config.pool_size, stream_seed(config.seed, Stream::Pool))
          .points;
  const Eigen::VectorXd pool_y = evaluate_checked(high, pool_x, "high-fidelity");
  out.high_evaluations = config.pool_size;

  for (double beta : config.betas) {
    const RiskEstimate b = var_cvar(pool_y, beta, config.estimator);
    TrialSummary s;
    s.beta = beta;
    s.benchmark_var = b.var;
    s.benchmark_cvar = b.cvar;
    out.summary.push_back(s);
  }

  const auto set = generate_reduced(model.dimension(), config.interaction, config.degree);
  out.basis_size = set.size();
  const OrthonormalBasis basis = build_basis(
      model, set, config.moment_samples, stream_seed(config.seed, Stream::InputMoments));
  const auto perm = shuffled_indices(config.pool_size, stream_seed(config.seed, Stream::TrialShuffle));
  const std::uint64_t risk_seed = stream_seed(config.seed, Stream::Risk);
  const std::uint64_t link_seed = stream_seed(config.seed, Stream::LinkMoments);

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const std::size_t first = trial * out.design_size;
    ExperimentalDesign design;
    design.inputs = take_rows(pool_x, perm, first, out.design_size);
    const Eigen::VectorXd high_y = take(pool_y, perm, first, out.design_size);
    const std::uint64_t trial_risk_seed = derive_seed(risk_seed, trial);
    if (!bifi) {
      design.outputs = high_y;
      const DdGpceSurrogate s = fit_sls(basis, design, config.oversampling);
      const Eigen::VectorXd y = sample_outputs(
          [&](const Eigen::MatrixXd& x) { return s.evaluate(x); }, model, config.risk_samples,
          trial_risk_seed);
      for (auto& summary : out.summary) {
        summary.cvars.push_back(var_cvar(y, summary.beta, config.estimator).cvar);
      }
      continue;
    }
    design.fidelity = "low";
    design.outputs = evaluate_checked(*low, design.inputs, "low-fidelity");
    out.low_evaluations += out.design_size;
    const DdGpceSurrogate low_s = fit_sls(basis, design, config.oversampling);
    auto link_basis = build_link_basis(low_s, model, config.link_degree, config.moment_samples,
                                       derive_seed(link_seed, trial));
    const auto pairs = static_cast<Eigen::Index>(out.pair_count);
    const FourierLink link =
        fit_link(std::move(link_basis), design.outputs.head(pairs), high_y.head(pairs));
    const Eigen::VectorXd low_y = sample_outputs(
        [&](const Eigen::MatrixXd& x) { return low_s.evaluate(x); }, model, config.risk_samples,
        trial_risk_seed);
    const Eigen::VectorXd y = link.evaluate(low_y);
    for (auto& summary : out.summary) {
      summary.cvars.push_back(var_cvar(y, summary.beta, config.estimator).cvar);
      summary.low_only_cvars.push_back(var_cvar(low_y, summary.beta, config.estimator).cvar);
    }
  }

  for (auto& s : out.summary) {
    s.mean_cvar = std::accumulate(s.cvars.begin(), s.cvars.end(), 0.0) /
                  static_cast<double>(s.cvars.size());
    s.mrd = mrd(s.benchmark_cvar, s.cvars);
    if (bifi) {
      s.low_only_mean_cvar =
          std::accumulate(s.low_only_cvars.begin(), s.low_only_cvars.end(), 0.0) /
          static_cast<double>(s.low_only_cvars.size());
      s.low_only_mrd = mrd(s.benchmark_cvar, s.low_only_cvars);
    }
  }
  return out;
}

CommandResult cmd_trials(const PipelineConfig& config) {
  const TrialsResult t = run_trials(config);
  const bool bifi = t.mode == TrialMode::BiFidelity;

  std::ostringstream csv;
  csv << "trial,beta,cvar" << (bifi ? ",low_only_cvar" : "") << "\n";
  for (std::size_t k = 0; k < t.trials; ++k) {
    for (const auto& s : t.summary) {
      csv << k + 1 << ',' << exact(s.beta) << ',' << exact(s.cvars[k]);
      if (bifi) csv << ',' << exact(s.low_only_cvars[k]);
      csv << '\n';
    }
  }

  json rows = json::array();
  std::ostringstream text;
  text << (bifi ? "Bi-fidelity" : "DD-GPCE") << " trials: K = " << t.trials
       << ", L_{N,S,m} = " << t.basis_size << ", L' = " << t.design_size;
  if (bifi) text << ", L'' = " << t.pair_count;
  text << ", crude MCS pool = " << t.pool_size << "\n";
  for (const auto& s : t.summary) {
    json row{{"beta", s.beta},
             {"benchmark_var", s.benchmark_var},
             {"benchmark_cvar", s.benchmark_cvar},
             {"mean_cvar", s.mean_cvar},
             {"mrd", s.mrd}};
    text << "  beta=" << s.beta << "  crude MCS CVaR=" << brief(s.benchmark_cvar)
         << "  mean CVaR=" << brief(s.mean_cvar) << "  MRD=" << percent(s.mrd);
    if (bifi) {
      row["low_only_mean_cvar"] = *s.low_only_mean_cvar;
      row["low_only_mrd"] = *s.low_only_mrd;
      text << "  | low-only mean CVaR=" << brief(*s.low_only_mean_cvar)
           << "  MRD=" << percent(*s.low_only_mrd);
    }
    text << "\n";
    rows.push_back(row);
  }
  text << "  high-fidelity evaluations: " << t.high_evaluations << "\n";
  if (bifi) text << "  low-fidelity evaluations: " << t.low_evaluations << "\n";

  json report{{"mode", bifi ? "bifidelity" : "ddgpce"},
              {"K", t.trials},
              {"pool_size", t.pool_size},
              {"L_N_S_m", t.basis_size},
              {"L_prime", t.design_size},
              {"L_double_prime", t.pair_count},
              {"L", config.risk_samples},
              {"estimator", to_string(config.estimator)},
              {"seed", config.seed},
              {"high_fidelity_evaluations", t.high_evaluations},
              {"low_fidelity_evaluations", t.low_evaluations},
              {"summary", rows}};
  CommandResult result{text.str(), report, {}};
  const fs::path& dir = config.output_dir;
  result.files.push_back(write_file(dir, "trials.csv", csv.str()));
  result.files.push_back(write_file(dir, "trials_report.json", report.dump(1) + "\n"));
  result.files.push_back(write_file(dir, "trials_report.txt", result.summary));
  return result;
}

CommandResult cmd_sample(const PipelineConfig& config) {
  validate_or_throw(config, Command::Sample);
  const SampleBatch batch = sample(*config.input, config.sample_scheme, config.risk_samples,
                                   config.seed);
  std::ostringstream csv;
  write_samples_csv(csv, batch);
  CommandResult result{std::to_string(batch.count()) + " " + to_string(batch.scheme) +
                           " samples of dimension " + std::to_string(config.input->dimension()) +
                           "\n",
                       {{"scheme", to_string(batch.scheme)},
                        {"count", batch.count()},
                        {"dimension", config.input->dimension()},
                        {"seed", config.seed}},
                       {}};
  result.files.push_back(write_file(config.output_dir, "samples.csv", csv.str()));
  return result;
}

CommandResult cmd_validate(const PipelineConfig& config) {
  std::vector<std::string> errors = validation_errors(config, Command::Validate);
  std::vector<std::string> runnable;
  auto consider = [&](Command c, bool present) {
    if (!present) return;
    const auto e = validation_errors(config, c);
    if (e.empty()) runnable.emplace_back(to_string(c));
    for (const auto& line : e) {
      if (std::find(errors.begin(), errors.end(), line) == errors.end()) errors.push_back(line);
    }
  };
  consider(Command::Fit, config.model.has_value());
  consider(Command::BiFit, config.low_model && config.high_model);
  consider(Command::Trials, config.trial_mode == TrialMode::DdGpce
                                ? (config.model || config.high_model)
                                : (config.low_model && config.high_model));
  if (!errors.empty()) {
    std::string message = "configuration is invalid:";
    for (const auto& e : errors) message += "\n  - " + e;
    fail(ErrorKind::Config, message);
  }
  std::ostringstream text;
  text << "configuration valid\n";
  json report{{"valid", true}, {"runnable", runnable}};
  if (config.input) {
    text << "  N = " << config.input->dimension();
    report["N"] = config.input->dimension();
    try {
      const std::size_t k = config.basis_size();
      text << ", L_{N,S,m} = " << k << ", L' = " << config.resolved_design_size()
           << ", L'' = " << config.resolved_pair_count();
      report["L_N_S_m"] = k;
      report["L_prime"] = config.resolved_design_size();
      report["L_double_prime"] = config.resolved_pair_count();
    } catch (const Error&) {
    }
    text << "\n";
  }
  text << "  runnable commands:";
  for (const auto& r : runnable) text << " " << r;
  text << "\n";
  return CommandResult{text.str(), report, {}};
}

}  // namespace ddgpce
