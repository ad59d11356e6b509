#include "ddgpce/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ddgpce/error.hpp"
#include "ddgpce/external.hpp"
#include "ddgpce/multiindex.hpp"

namespace ddgpce {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Collects configuration problems instead of stopping at the first one.
class Problems {
 public:
  void add(std::string message) { messages_.push_back(std::move(message)); }
  const std::vector<std::string>& messages() const { return messages_; }

  template <typename T>
  std::optional<T> get(const json& object, const char* key, const std::string& where) {
    if (!object.contains(key)) return std::nullopt;
    try {
      return object.at(key).get<T>();
    } catch (const json::exception&) {
      add(where + "." + key + " has the wrong type");
      return std::nullopt;
    }
  }

  template <typename T>
  std::optional<T> need(const json& object, const char* key, const std::string& where) {
    if (!object.contains(key)) {
      add(where + "." + key + " is required");
      return std::nullopt;
    }
    return get<T>(object, key, where);
  }

 private:
  std::vector<std::string> messages_;
};

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "\n  - " + l;
  return out;
}

int parse_axis(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto text = j.at(key).get<std::string>();
  if (text == "x") return 0;
  if (text == "y") return 1;
  if (text == "z") return 2;
  fail(ErrorKind::Config, std::string(key) + " must be x, y or z");
}

const char* axis_name(int axis) { return axis == 0 ? "x" : axis == 1 ? "y" : "z"; }

Marginal parse_marginal(const json& m, Problems& problems, const std::string& where) {
  const auto type = problems.need<std::string>(m, "type", where);
  if (!type) return Marginal::normal(0.0, 1.0);
  try {
    if (*type == "normal") {
      return Marginal::normal(m.at("mean").get<double>(), m.at("std").get<double>());
    }
    if (*type == "uniform") {
      return Marginal::uniform(m.at("lower").get<double>(), m.at("upper").get<double>());
    }
    if (*type == "lognormal") {
      return Marginal::lognormal(m.at("mean").get<double>(), m.at("cov").get<double>());
    }
    problems.add(where + ".type '" + *type + "' is not normal, uniform or lognormal");
  } catch (const json::exception&) {
    problems.add(where + " is missing a parameter for a " + *type + " marginal");
  } catch (const Error& e) {
    problems.add(where + ": " + e.what());
  }
  return Marginal::normal(0.0, 1.0);
}

std::optional<RandomInputModel> parse_input(const json& j, Problems& problems) {
  if (!j.is_object() || !j.contains("marginals") || !j.at("marginals").is_array()) {
    problems.add("input.marginals must be an array");
    return std::nullopt;
  }
  std::vector<Marginal> marginals;
  const std::size_t before = problems.messages().size();
  std::size_t entry = 0;
  for (const auto& m : j.at("marginals")) {
    const std::string where = "input.marginals[" + std::to_string(entry++) + "]";
    const auto count = problems.get<std::size_t>(m, "count", where).value_or(1);
    const Marginal marginal = parse_marginal(m, problems, where);
    for (std::size_t c = 0; c < count; ++c) marginals.push_back(marginal);
  }
  if (marginals.empty()) problems.add("input.marginals is empty");
  if (problems.messages().size() != before || marginals.empty()) return std::nullopt;

  const std::size_t n = marginals.size();
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  if (j.contains("correlation")) {
    const json& c = j.at("correlation");
    const std::string type = c.value("type", "identity");
    try {
      if (type == "identity") {
      } else if (type == "equicorrelated") {
        r = equicorrelation(n, c.at("rho").get<double>());
      } else if (type == "blocks") {
        for (const auto& b : c.at("blocks")) {
          const auto first = b.at("first").get<std::size_t>();
          const auto last = b.at("last").get<std::size_t>();
          const double rho = b.at("rho").get<double>();
          if (first < 1 || last > n || first > last) {
            problems.add("input.correlation block [" + std::to_string(first) + ", " +
                         std::to_string(last) + "] is outside 1.." + std::to_string(n));
            continue;
          }
          for (std::size_t a = first - 1; a < last; ++a) {
            for (std::size_t bb = first - 1; bb < last; ++bb) {
              if (a != bb) r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(bb)) = rho;
            }
          }
        }
      } else if (type == "matrix") {
        const auto rows = c.at("values").get<std::vector<std::vector<double>>>();
        if (rows.size() != n) {
          problems.add("input.correlation.values must be " + std::to_string(n) + "x" +
                       std::to_string(n));
        } else {
          for (std::size_t a = 0; a < n; ++a) {
            if (rows[a].size() != n) {
              problems.add("input.correlation.values row " + std::to_string(a + 1) +
                           " has the wrong length");
              break;
            }
            for (std::size_t b = 0; b < n; ++b) {
              r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = rows[a][b];
            }
          }
        }
      } else {
        problems.add("input.correlation.type '" + type + "' is unknown");
      }
    } catch (const json::exception&) {
      problems.add("input.correlation is malformed");
    } catch (const Error& e) {
      problems.add(std::string("input.correlation: ") + e.what());
    }
  }
  try {
    return RandomInputModel(std::move(marginals), r);
  } catch (const Error& e) {
    problems.add(std::string("input: ") + e.what());
    return std::nullopt;
  }
}

std::optional<ModelRef> parse_model(const json& j, const std::string& where, const fs::path& base,
                                    Problems& problems) {
  if (!j.is_object()) {
    problems.add(where + " must be an object");
    return std::nullopt;
  }
  ModelRef ref;
  try {
    if (j.contains("command")) {
      ref.kind = ModelRef::Kind::Command;
      ref.command = j.at("command").get<std::string>();
      ref.timeout_seconds = j.value("timeout_seconds", 0.0);
      return ref;
    }
    if (j.contains("truss_file")) {
      ref.kind = ModelRef::Kind::TrussFile;
      ref.truss_file = (base / j.at("truss_file").get<std::string>()).lexically_normal();
      ref.output = parse_truss_output(j.value("output", "y1"));
      std::ifstream in(ref.truss_file);
      if (!in) {
        problems.add(where + ".truss_file '" + ref.truss_file.string() + "' cannot be read");
        return std::nullopt;
      }
      ref.truss = truss_from_json(json::parse(in));
      return ref;
    }
    const std::string builtin = j.at("builtin").get<std::string>();
    if (builtin == "truss36" || builtin == "truss36_low") {
      ref.kind = builtin == "truss36" ? ModelRef::Kind::Truss36 : ModelRef::Kind::Truss36Low;
      ref.output = parse_truss_output(j.value("output", "y1"));
    } else if (builtin == "linear") {
      ref.kind = ModelRef::Kind::Linear;
      const auto w = j.at("weights").get<std::vector<double>>();
      ref.linear.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
      ref.linear.offset = j.value("offset", 0.0);
    } else if (builtin == "constant") {
      ref.kind = ModelRef::Kind::Constant;
      ref.value = j.at("value").get<double>();
    } else {
      problems.add(where + ".builtin '" + builtin +
                   "' is not one of truss36, truss36_low, linear, constant");
      return std::nullopt;
    }
    return ref;
  } catch (const json::exception& e) {
    problems.add(where + " is malformed: " + e.what());
  } catch (const Error& e) {
    problems.add(where + ": " + e.what());
  }
  return std::nullopt;
}

template <typename T>
void assign(Problems& p, const json& j, const char* key, const std::string& where, T& target) {
  if (auto v = p.get<T>(j, key, where)) target = *v;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string ModelRef::describe() const {
  switch (kind) {
    case Kind::Truss36: return std::string("builtin truss36 ") + to_string(output);
    case Kind::Truss36Low: return std::string("builtin truss36_low ") + to_string(output);
    case Kind::TrussFile: return "truss " + truss_file.string() + " " + to_string(output);
    case Kind::Linear: return "builtin linear";
    case Kind::Constant: return "builtin constant";
    case Kind::Command: return "command '" + command + "'";
  }
  return "model";
}

std::optional<AnalyticModel> ModelRef::analytic() const {
  if (kind == Kind::Linear) return AnalyticModel{linear};
  if (kind == Kind::Constant) return AnalyticModel{ConstantModel{value}};
  return std::nullopt;
}

BatchFunction make_function(const ModelRef& ref) {
  switch (ref.kind) {
    case ModelRef::Kind::Truss36: return truss_function(builtin_truss36(), ref.output);
    case ModelRef::Kind::Truss36Low: return truss36_low_function(ref.output);
    case ModelRef::Kind::TrussFile: return truss_function(*ref.truss, ref.output);
    case ModelRef::Kind::Linear:
    case ModelRef::Kind::Constant: return analytic_function(*ref.analytic());
    case ModelRef::Kind::Command:
      return external_function(ExternalModel{ref.command, ref.timeout_seconds});
  }
  fail(ErrorKind::Config, "unknown model reference");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::Fit: return "fit";
    case Command::Estimate: return "estimate";
    case Command::BiFit: return "bifit";
    case Command::Trials: return "trials";
    case Command::Sample: return "sample";
    case Command::Validate: return "validate";
  }
  return "?";
}

std::size_t PipelineConfig::basis_size() const {
  require(input.has_value(), ErrorKind::Config, "no input model configured");
  return static_cast<std::size_t>(cardinality_reduced(input->dimension(), interaction, degree));
}

std::size_t PipelineConfig::resolved_design_size() const {
  if (design_size > 0) return design_size;
  return static_cast<std::size_t>(std::ceil(oversampling * static_cast<double>(basis_size())));
}

std::size_t PipelineConfig::resolved_pair_count() const {
  if (pair_count > 0) return pair_count;
  return static_cast<std::size_t>(
      std::ceil(link_oversampling * static_cast<double>(link_degree + 1)));
}

PipelineConfig parse_config(const json& doc, const fs::path& base) {
  Problems p;
  PipelineConfig c;
  if (!doc.is_object()) fail(ErrorKind::Config, "configuration must be a JSON object");

  if (doc.contains("input")) {
    c.input = parse_input(doc.at("input"), p);
  }
  if (doc.contains("basis")) {
    const json& b = doc.at("basis");
    assign(p, b, "S", "basis", c.interaction);
    assign(p, b, "m", "basis", c.degree);
    assign(p, b, "m_bar", "basis", c.link_degree);
  }
  if (doc.contains("samples")) {
    const json& s = doc.at("samples");
    assign(p, s, "L", "samples", c.risk_samples);
    assign(p, s, "L_prime", "samples", c.design_size);
    assign(p, s, "L_double_prime", "samples", c.pair_count);
    assign(p, s, "L_bar", "samples", c.moment_samples);
    assign(p, s, "oversampling", "samples", c.oversampling);
    assign(p, s, "link_oversampling", "samples", c.link_oversampling);
    if (auto scheme = p.get<std::string>(s, "scheme", "samples")) {
      try {
        c.sample_scheme = parse_scheme(*scheme);
      } catch (const Error& e) {
        p.add(std::string("samples.scheme: ") + e.what());
      }
    }
  }
  if (doc.contains("beta")) {
    if (doc.at("beta").is_number()) {
      c.betas = {doc.at("beta").get<double>()};
    } else {
      assign(p, doc, "beta", "config", c.betas);
    }
  }
  assign(p, doc, "seed", "config", c.seed);
  if (auto e = p.get<std::string>(doc, "estimator", "config")) {
    try {
      c.estimator = parse_estimator(*e);
    } catch (const Error& err) {
      p.add(err.what());
    }
  }
  if (auto e = p.get<std::string>(doc, "pair_inputs", "config")) {
    try {
      c.pair_inputs = parse_pair_inputs(*e);
    } catch (const Error& err) {
      p.add(err.what());
    }
  }
  if (doc.contains("model")) c.model = parse_model(doc.at("model"), "model", base, p);
  if (doc.contains("low_model")) c.low_model = parse_model(doc.at("low_model"), "low_model", base, p);
  if (doc.contains("high_model")) c.high_model = parse_model(doc.at("high_model"), "high_model", base, p);
  if (doc.contains("trials")) {
    const json& t = doc.at("trials");
    assign(p, t, "K", "trials", c.trials);
    assign(p, t, "pool_size", "trials", c.pool_size);
    if (auto mode = p.get<std::string>(t, "mode", "trials")) {
      if (*mode == "ddgpce") {
        c.trial_mode = TrialMode::DdGpce;
      } else if (*mode == "bifidelity") {
        c.trial_mode = TrialMode::BiFidelity;
      } else {
        p.add("trials.mode must be ddgpce or bifidelity");
      }
    }
  }
  if (doc.contains("budget")) {
    const json& b = doc.at("budget");
    BudgetConfig budget;
    if (auto v = p.need<double>(b, "total", "budget")) budget.total = *v;
    if (auto v = p.need<double>(b, "cost_high", "budget")) budget.cost_high = *v;
    if (auto v = p.need<double>(b, "cost_low", "budget")) budget.cost_low = *v;
    c.budget = budget;
  }
  if (auto out = p.get<std::string>(doc, "output", "config")) c.output_dir = (base / *out).lexically_normal();

  for (double beta : c.betas) {
    if (!(beta > 0.0 && beta < 1.0)) p.add("beta " + std::to_string(beta) + " is not in (0,1)");
  }
  if (!p.messages().empty()) {
    fail(ErrorKind::Config, "invalid configuration:" + join(p.messages()));
  }
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Config, "cannot read configuration " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Config, "configuration " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

std::vector<std::string> validation_errors(const PipelineConfig& c, Command command) {
  std::vector<std::string> errors;
  const bool needs_input = command != Command::Estimate;
  if (needs_input && !c.input) errors.push_back("input model is required");

  auto check_model = [&](const std::optional<ModelRef>& ref, const char* name) {
    if (!ref) {
      errors.push_back(std::string(name) + " is required for " + to_string(command));
      return;
    }
    if (ref->kind == ModelRef::Kind::Command && !external_command_available(ref->command)) {
      errors.push_back(std::string(name) + " command '" + ref->command + "' is not executable");
    }
    if (c.input) {
      const std::size_t n = c.input->dimension();
      std::size_t need = 0;
      if (ref->kind == ModelRef::Kind::Truss36 || ref->kind == ModelRef::Kind::Truss36Low) need = 36;
      if (ref->kind == ModelRef::Kind::TrussFile && ref->truss) need = ref->truss->input_dimension();
      if (ref->kind == ModelRef::Kind::Linear) need = static_cast<std::size_t>(ref->linear.weights.size());
      if (need > 0 && (ref->kind == ModelRef::Kind::Linear ? need != n : need > n)) {
        errors.push_back(std::string(name) + " (" + ref->describe() + ") needs " +
                         std::to_string(need) + " inputs but the input model has " +
                         std::to_string(n));
      }
    }
  };

  const bool estimates_risk =
      command == Command::Estimate || command == Command::BiFit || command == Command::Trials;
  for (double beta : c.betas) {
    if (estimates_risk && c.risk_samples > 0 &&
        static_cast<double>(c.risk_samples) * (1.0 - beta) < 1.0 - 1e-9) {
      errors.push_back("beta " + std::to_string(beta) + " exceeds 1 - 1/L for L = " +
                       std::to_string(c.risk_samples));
    }
  }

  std::size_t k = 0;
  if (c.input && (command == Command::Fit || command == Command::BiFit || command == Command::Trials)) {
    try {
      k = c.basis_size();
    } catch (const Error& e) {
      errors.push_back(std::string("basis: ") + e.what());
    }
    if (k > 0) {
      const std::size_t design = c.resolved_design_size();
      if (design <= k) {
        errors.push_back("L' > L_{N,S,m} is required: L' = " + std::to_string(design) +
                         " <= L_{N,S,m} = " + std::to_string(k));
      }
      if (c.moment_samples < 10 * k) {
        errors.push_back("L-bar >= 10 L_{N,S,m} is required: L-bar = " +
                         std::to_string(c.moment_samples) + " < " + std::to_string(10 * k));
      }
    }
  }

  switch (command) {
    case Command::Fit:
      check_model(c.model, "model");
      break;
    case Command::Estimate:
    case Command::Sample:
    case Command::Validate:
      break;
    case Command::BiFit:
      check_model(c.low_model, "low_model");
      check_model(c.high_model, "high_model");
      break;
    case Command::Trials:
      if (c.trial_mode == TrialMode::DdGpce) {
        check_model(c.model ? c.model : c.high_model, "model");
      } else {
        check_model(c.low_model, "low_model");
        check_model(c.high_model, "high_model");
      }
      if (c.trials < 1) errors.push_back("trials.K must be at least 1");
      if (k > 0 && c.trials * c.resolved_design_size() > c.pool_size) {
        errors.push_back("pool of " + std::to_string(c.pool_size) +
                         " high-fidelity samples is smaller than K * L' = " +
                         std::to_string(c.trials * c.resolved_design_size()) +
                         " (subsets are drawn without replacement)");
      }
      break;
  }
  if (command == Command::BiFit || (command == Command::Trials && c.trial_mode == TrialMode::BiFidelity)) {
    const std::size_t pairs = c.resolved_pair_count();
    if (c.link_degree < 1) errors.push_back("basis.m_bar must be at least 1");
    if (pairs <= c.link_degree + 1u) {
      errors.push_back("L'' > m_bar + 1 is required: L'' = " + std::to_string(pairs));
    }
    if (k > 0 && c.pair_inputs == PairInputs::ReuseDesign && pairs > c.resolved_design_size()) {
      errors.push_back("L'' must not exceed L' when pair inputs reuse the design");
    }
  }
  return errors;
}

void validate_or_throw(const PipelineConfig& config, Command command) {
  const auto errors = validation_errors(config, command);
  if (!errors.empty()) {
    fail(ErrorKind::Config, std::string("configuration cannot run '") + to_string(command) +
                                "':" + join(errors));
  }
}

// ---------------------------------------------------------------------------

RandomInputModel input_model_from_json(const json& j) {
  Problems p;
  auto model = parse_input(j, p);
  if (!p.messages().empty() || !model) {
    fail(ErrorKind::Config, "invalid input model:" + join(p.messages()));
  }
  return *model;
}

json input_model_to_json(const RandomInputModel& model) {
  json marginals = json::array();
  for (const auto& m : model.marginals()) {
    json entry;
    std::visit(
        [&](const auto& law) {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, NormalLaw>) {
            entry = {{"type", "normal"}, {"mean", law.mean}, {"std", law.std}};
          } else if constexpr (std::is_same_v<T, UniformLaw>) {
            entry = {{"type", "uniform"}, {"lower", law.lower}, {"upper", law.upper}};
          } else {
            entry = {{"type", "lognormal"}, {"mean", law.mean}, {"cov", law.cov}};
          }
        },
        m.law());
    marginals.push_back(entry);
  }
  json out{{"marginals", marginals}};
  if (model.is_independent()) {
    out["correlation"] = {{"type", "identity"}};
  } else {
    json rows = json::array();
    for (Eigen::Index i = 0; i < model.correlation().rows(); ++i) {
      const Eigen::RowVectorXd row = model.correlation().row(i);
      rows.push_back(std::vector<double>(row.data(), row.data() + row.size()));
    }
    out["correlation"] = {{"type", "matrix"}, {"values", rows}};
  }
  return out;
}

TrussModel truss_from_json(const json& j) {
  try {
    TrussModel t;
    const auto nodes = j.at("nodes").get<std::vector<std::array<double, 3>>>();
    const auto n = static_cast<Eigen::Index>(nodes.size());
    t.nodes.resize(3, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& c = nodes[static_cast<std::size_t>(i)];
      t.nodes.col(i) << c[0], c[1], c[2];
    }
    for (const auto& e : j.at("elements").get<std::vector<std::array<int, 2>>>()) {
      t.elements.push_back({e[0] - 1, e[1] - 1});
    }
    const auto ne = t.elements.size();
    t.youngs_modulus = j.value("youngs_modulus", 1e7);
    t.density = j.value("density", 0.0);
    t.fixed.assign(static_cast<std::size_t>(n), {false, false, false});
    for (const auto& s : j.at("supports")) {
      const auto node = s.at("node").get<int>() - 1;
      require(node >= 0 && node < n, ErrorKind::Config, "support node out of range");
      t.fixed[static_cast<std::size_t>(node)] = s.at("fixed").get<std::array<bool, 3>>();
    }
    t.loads = Eigen::Matrix3Xd::Zero(3, n);
    for (const auto& l : j.at("loads")) {
      const auto node = l.at("node").get<int>() - 1;
      require(node >= 0 && node < n, ErrorKind::Config, "load node out of range");
      const auto f = l.at("force").get<std::array<double, 3>>();
      t.loads.col(node) += Eigen::Vector3d(f[0], f[1], f[2]);
    }
    t.area_map.resize(ne);
    t.fixed_areas = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ne));
    if (j.contains("areas")) {
      const auto& areas = j.at("areas");
      require(areas.size() == ne, ErrorKind::Config, "areas must have one entry per element");
      for (std::size_t e = 0; e < ne; ++e) {
        if (areas[e].contains("input")) {
          t.area_map[e] = areas[e].at("input").get<int>() - 1;
        } else {
          t.area_map[e] = -1;
          t.fixed_areas(static_cast<Eigen::Index>(e)) = areas[e].at("fixed").get<double>();
        }
      }
    } else {
      for (std::size_t e = 0; e < ne; ++e) t.area_map[e] = static_cast<int>(e);
    }
    t.modulus_factors = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(ne));
    if (j.contains("modulus_factors")) {
      const auto f = j.at("modulus_factors").get<std::vector<double>>();
      require(f.size() == ne, ErrorKind::Config, "modulus_factors must have one entry per element");
      t.modulus_factors = Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(ne));
    }
    t.horizontal_axis = parse_axis(j, "horizontal_axis", 0);
    t.vertical_axis = parse_axis(j, "vertical_axis", 2);
    t.validate();
    return t;
  } catch (const json::exception& e) {
    fail(ErrorKind::Config, std::string("malformed truss definition: ") + e.what());
  } catch (const Error& e) {
    fail(ErrorKind::Config, std::string("invalid truss definition: ") + e.what());
  }
}

json truss_to_json(const TrussModel& t) {
  json j;
  json nodes = json::array();
  for (Eigen::Index i = 0; i < t.nodes.cols(); ++i) {
    nodes.push_back({t.nodes(0, i), t.nodes(1, i), t.nodes(2, i)});
  }
  j["nodes"] = nodes;
  json elements = json::array();
  for (const auto& e : t.elements) elements.push_back({e[0] + 1, e[1] + 1});
  j["elements"] = elements;
  j["youngs_modulus"] = t.youngs_modulus;
  j["density"] = t.density;
  json supports = json::array();
  json loads = json::array();
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    const auto& f = t.fixed[i];
    if (f[0] || f[1] || f[2]) supports.push_back({{"node", i + 1}, {"fixed", f}});
    const auto col = static_cast<Eigen::Index>(i);
    if (!t.loads.col(col).isZero(0.0)) {
      loads.push_back({{"node", i + 1},
                       {"force", {t.loads(0, col), t.loads(1, col), t.loads(2, col)}}});
    }
  }
  j["supports"] = supports;
  j["loads"] = loads;
  json areas = json::array();
  for (std::size_t e = 0; e < t.element_count(); ++e) {
    if (t.area_map[e] >= 0) {
      areas.push_back({{"input", t.area_map[e] + 1}});
    } else {
      areas.push_back({{"fixed", t.fixed_areas(static_cast<Eigen::Index>(e))}});
    }
  }
  j["areas"] = areas;
  j["modulus_factors"] = std::vector<double>(t.modulus_factors.data(),
                                             t.modulus_factors.data() + t.modulus_factors.size());
  j["horizontal_axis"] = axis_name(t.horizontal_axis);
  j["vertical_axis"] = axis_name(t.vertical_axis);
  return j;
}

}  // namespace ddgpce
