#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ddgpce/archive.hpp"
#include "ddgpce/config.hpp"
#include "ddgpce/error.hpp"
#include "ddgpce/pipeline.hpp"

using namespace ddgpce;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config() {
  return json::parse(R"({
    "input": {"marginals": [{"type": "normal", "mean": 1, "std": 2, "count": 2},
                            {"type": "uniform", "lower": 0, "upper": 4},
                            {"type": "lognormal", "mean": 3, "cov": 0.2}],
              "correlation": {"type": "blocks", "blocks": [{"first": 1, "last": 2, "rho": 0.5}]}},
    "basis": {"S": 2, "m": 3, "m_bar": 2},
    "samples": {"L": 5000, "L_bar": 20000},
    "beta": [0.9, 0.95],
    "seed": 11,
    "model": {"builtin": "linear", "weights": [1, -1, 0.5, 2], "offset": 1}
  })");
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ddgpce_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string errors_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, ParsesFullDocument) {
  const auto c = parse_config(base_config());
  ASSERT_TRUE(c.input);
  EXPECT_EQ(c.input->dimension(), 4u);
  EXPECT_DOUBLE_EQ(c.input->correlation()(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(c.input->correlation()(0, 2), 0.0);
  EXPECT_EQ(c.interaction, 2u);
  EXPECT_EQ(c.degree, 3u);
  EXPECT_EQ(c.link_degree, 2u);
  EXPECT_EQ(c.risk_samples, 5000u);
  EXPECT_EQ(c.betas, (std::vector<double>{0.9, 0.95}));
  EXPECT_EQ(c.seed, 11u);
  ASSERT_TRUE(c.model);
  EXPECT_EQ(c.model->kind, ModelRef::Kind::Linear);
  // K = 1 + 4*3 + 6*3 = 31
  EXPECT_EQ(c.basis_size(), 31u);
  EXPECT_EQ(c.resolved_design_size(), 93u);
  EXPECT_EQ(c.resolved_pair_count(), 24u);
  EXPECT_EQ(c.trials, 20u);
  EXPECT_TRUE(validation_errors(c, Command::Fit).empty());
}

TEST(Config, CollectsEveryProblem) {
  json doc = base_config();
  doc["input"]["marginals"][1]["type"] = "weibull";
  doc["beta"] = {1.5};
  doc["estimator"] = "median";
  doc["model"] = {{"builtin", "truss99"}};
  const auto msg = errors_of(doc);
  EXPECT_NE(msg.find("weibull"), std::string::npos) << msg;
  EXPECT_NE(msg.find("beta"), std::string::npos) << msg;
  EXPECT_NE(msg.find("median"), std::string::npos) << msg;
  EXPECT_NE(msg.find("truss99"), std::string::npos) << msg;
}

TEST(Config, ValidationPrintsInequalities) {
  json doc = base_config();
  doc["samples"]["L_prime"] = 31;
  doc["samples"]["L_bar"] = 100;
  const auto c = parse_config(doc);
  const auto errors = validation_errors(c, Command::Fit);
  ASSERT_EQ(errors.size(), 2u);
  EXPECT_NE(errors[0].find("L' = 31 <= L_{N,S,m} = 31"), std::string::npos) << errors[0];
  EXPECT_NE(errors[1].find("L-bar"), std::string::npos) << errors[1];
}

TEST(Config, RejectsBetaBeyondSampleTail) {
  json doc = base_config();
  doc["samples"]["L"] = 100;
  doc["beta"] = {0.995};
  const auto c = parse_config(doc);
  EXPECT_FALSE(validation_errors(c, Command::Estimate).empty());
  EXPECT_FALSE(validation_errors(c, Command::Trials).empty());
  // Fitting and sampling never touch beta.
  EXPECT_TRUE(validation_errors(c, Command::Fit).empty());
  EXPECT_TRUE(validation_errors(c, Command::Sample).empty());
  doc["beta"] = {0.99};
  EXPECT_TRUE(validation_errors(parse_config(doc), Command::Estimate).empty());
}

TEST(Config, MissingCommandAndModels) {
  json doc = base_config();
  doc["low_model"] = {{"command", "/nonexistent/low_solver"}};
  const auto c = parse_config(doc);
  const auto errors = validation_errors(c, Command::BiFit);
  bool command = false, high = false;
  for (const auto& e : errors) {
    command |= e.find("not executable") != std::string::npos;
    high |= e.find("high_model is required") != std::string::npos;
  }
  EXPECT_TRUE(command);
  EXPECT_TRUE(high);
}

TEST(Config, DimensionMismatch) {
  json doc = base_config();
  doc["model"] = {{"builtin", "truss36"}, {"output", "y2"}};
  const auto errors = validation_errors(parse_config(doc), Command::Fit);
  ASSERT_FALSE(errors.empty());
  EXPECT_NE(errors[0].find("needs 36 inputs"), std::string::npos);
}

TEST(Config, TrialsPoolMustCoverDisjointSubsets) {
  json doc = base_config();
  doc["trials"] = {{"K", 20}, {"pool_size", 1000}};
  const auto errors = validation_errors(parse_config(doc), Command::Trials);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_NE(errors[0].find("K * L' = 1860"), std::string::npos) << errors[0];
}

TEST(Config, LoadsFromFileAndResolvesPaths) {
  const fs::path dir = scratch("load");
  json doc = base_config();
  doc["model"] = {{"truss_file", "truss.json"}, {"output", "y2"}};
  doc["input"] = json::parse(R"({"marginals": [{"type": "normal", "mean": 3, "std": 0.1, "count": 2}]})");
  doc["output"] = "results";
  fs::copy_file(fs::path(DDGPCE_TEST_DATA) / "triangle.json", dir / "truss.json");
  std::ofstream(dir / "config.json") << doc.dump();
  const auto c = load_config(dir / "config.json");
  ASSERT_TRUE(c.model && c.model->truss);
  EXPECT_EQ(c.model->truss->input_dimension(), 2u);
  EXPECT_EQ(c.output_dir, dir / "results");
  EXPECT_TRUE(validation_errors(c, Command::Fit).empty());

  std::ofstream(dir / "broken.json") << "{ not json";
  EXPECT_THROW(load_config(dir / "broken.json"), Error);
  EXPECT_THROW(load_config(dir / "missing.json"), Error);
}

TEST(Config, InputModelRoundTrip) {
  const auto c = parse_config(base_config());
  const auto back = input_model_from_json(input_model_to_json(*c.input));
  EXPECT_EQ(back.correlation(), c.input->correlation());
  ASSERT_EQ(back.dimension(), c.input->dimension());
  for (std::size_t i = 0; i < back.dimension(); ++i) {
    EXPECT_EQ(back.marginals()[i].name(), c.input->marginals()[i].name());
    EXPECT_EQ(back.marginals()[i].mean(), c.input->marginals()[i].mean());
  }
}

TEST(Config, TrussJsonRoundTrip) {
  std::ifstream in(fs::path(DDGPCE_TEST_DATA) / "triangle.json");
  const auto t = truss_from_json(json::parse(in));
  EXPECT_EQ(t.elements[2], (std::array<int, 2>{1, 2}));
  const auto back = truss_from_json(truss_to_json(t));
  EXPECT_EQ(back.nodes, t.nodes);
  EXPECT_EQ(back.elements, t.elements);
  EXPECT_EQ(back.area_map, t.area_map);
  EXPECT_EQ(back.fixed, t.fixed);
  EXPECT_EQ(back.loads, t.loads);
  const auto builtin = builtin_truss36_low();
  const auto b2 = truss_from_json(truss_to_json(builtin));
  const Eigen::VectorXd a = Eigen::VectorXd::LinSpaced(36, 25, 35);
  EXPECT_EQ(truss_outputs_y1_y2(b2, a).y2, truss_outputs_y1_y2(builtin, a).y2);
  EXPECT_THROW(truss_from_json(json::parse(R"({"nodes": [[0,0,0]]})")), Error);
}

TEST(Archive, DdGpceRoundTrip) {
  const auto c = parse_config(base_config());
  const auto model = *c.input;
  const BatchFunction f = [](const Eigen::MatrixXd& x) {
    return Eigen::VectorXd((x.col(0).array() * x.col(2).array() + x.col(3).array().exp()).matrix());
  };
  const auto s = fit_single_fidelity(model, f, 2, 3, 120, 20'000, 3);
  const SurrogateArchive archive{kArchiveFormatVersion, model, s, {{"note", "test"}}};
  const fs::path path = scratch("archive") / "s.json";
  save_archive(archive, path);
  const auto loaded = load_archive(path);
  const Eigen::MatrixXd x = sample(model, SamplingScheme::MCS, 1000, 77).points;
  const Eigen::VectorXd a = archive.evaluate(x);
  const Eigen::VectorXd b = loaded.evaluate(x);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
  EXPECT_EQ(dump_archive(loaded), dump_archive(archive));
  EXPECT_EQ(loaded.provenance["note"], "test");
}

TEST(Archive, BiFidelityRoundTrip) {
  const auto model = RandomInputModel::independent({Marginal::normal(0, 1), Marginal::uniform(-1, 1)});
  const BatchFunction low = [](const Eigen::MatrixXd& x) {
    return Eigen::VectorXd(x.col(0).array() + x.col(1).array().square());
  };
  const BatchFunction high = [&](const Eigen::MatrixXd& x) {
    return Eigen::VectorXd(low(x).array().square() + 0.1 * x.col(1).array());
  };
  Algorithm2Settings s;
  s.interaction = 1;
  s.degree = 2;
  s.link_degree = 2;
  s.pair_inputs = PairInputs::Fresh;
  s.moment_samples = 50'000;
  s.risk_samples = 2000;
  const auto r = run_algorithm2(model, low, high, s);
  const SurrogateArchive archive{kArchiveFormatVersion, model, r.surrogate, {}};
  const auto loaded = archive_from_json(json::parse(dump_archive(archive)));
  ASSERT_TRUE(loaded.is_bifidelity());
  const Eigen::MatrixXd x = sample(model, SamplingScheme::MCS, 1000, 5).points;
  const Eigen::VectorXd a = archive.evaluate(x);
  EXPECT_LE((a - loaded.evaluate(x)).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
  const auto& p = std::get<BiFidelitySurrogate>(loaded.surrogate).provenance();
  EXPECT_EQ(p.high_evaluations, r.high_evaluations);
  EXPECT_EQ(p.pair_count, 24u);
  EXPECT_EQ(p.pair_inputs, PairInputs::Fresh);
}

TEST(Archive, RejectsUnknownVersionAndMalformedInput) {
  json j = json::parse(R"({"format_version": 99, "kind": "ddgpce"})");
  EXPECT_THROW(archive_from_json(j), Error);
  EXPECT_THROW(archive_from_json(json::parse(R"({"format_version": 1})")), Error);
}
