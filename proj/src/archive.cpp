#include "ddgpce/archive.hpp"

#include <fstream>
#include <sstream>

#include "ddgpce/config.hpp"
#include "ddgpce/error.hpp"

namespace ddgpce {
namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vector_from(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json report_json(const FitReport& r) {
  return {{"residual", r.residual},
          {"oversampling_ratio", r.oversampling_ratio},
          {"condition_estimate", r.condition_estimate},
          {"design_size", r.design_size},
          {"undersampled", r.undersampled}};
}

FitReport report_from(const json& j) {
  FitReport r;
  r.residual = j.at("residual").get<double>();
  r.oversampling_ratio = j.at("oversampling_ratio").get<double>();
  r.condition_estimate = j.at("condition_estimate").get<double>();
  r.design_size = j.at("design_size").get<std::size_t>();
  r.undersampled = j.at("undersampled").get<bool>();
  return r;
}

json bifi_provenance_json(const Provenance& p) {
  return {{"seed", p.seed},
          {"risk_samples", p.risk_samples},
          {"design_size", p.design_size},
          {"pair_count", p.pair_count},
          {"moment_samples", p.moment_samples},
          {"pair_inputs", to_string(p.pair_inputs)},
          {"low_evaluations", p.low_evaluations},
          {"high_evaluations", p.high_evaluations}};
}

Provenance bifi_provenance_from(const json& j) {
  Provenance p;
  p.seed = j.value("seed", std::uint64_t{0});
  p.risk_samples = j.value("risk_samples", std::size_t{0});
  p.design_size = j.value("design_size", std::size_t{0});
  p.pair_count = j.value("pair_count", std::size_t{0});
  p.moment_samples = j.value("moment_samples", std::size_t{0});
  p.pair_inputs = parse_pair_inputs(j.value("pair_inputs", std::string("reuse_design")));
  p.low_evaluations = j.value("low_evaluations", std::size_t{0});
  p.high_evaluations = j.value("high_evaluations", std::size_t{0});
  return p;
}

}  // namespace

std::size_t SurrogateArchive::dimension() const {
  return std::visit(
      [](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, DdGpceSurrogate>) {
          return s.basis().dimension();
        } else {
          return s.low().basis().dimension();
        }
      },
      surrogate);
}

Eigen::VectorXd SurrogateArchive::evaluate(const Eigen::MatrixXd& points) const {
  return std::visit([&](const auto& s) { return s.evaluate(points); }, surrogate);
}

json basis_to_json(const OrthonormalBasis& basis) {
  const MultiIndexSet& set = basis.index_set();
  json indices = json::array();
  for (const MultiIndex& j : set) {
    json support = json::array();
    for (const auto& [coordinate, exponent] : j.support()) {
      support.push_back({coordinate, static_cast<unsigned>(exponent)});
    }
    indices.push_back(support);
  }
  const Eigen::MatrixXd& w = basis.whitening();
  json rows = json::array();
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(i + 1));
    for (Eigen::Index k = 0; k <= i; ++k) row[static_cast<std::size_t>(k)] = w(i, k);
    rows.push_back(row);
  }
  const WhiteningReport& report = basis.report();
  return {{"dimension", set.dimension()},
          {"truncation",
           {{"kind", set.truncation().kind == TruncationKind::Full ? "full" : "reduced"},
            {"S", set.truncation().interaction},
            {"m", set.truncation().degree}}},
          {"indices", indices},
          {"standardization",
           {{"shift", vector_json(basis.standardization().shift)},
            {"scale", vector_json(basis.standardization().scale)}}},
          {"whitening", rows},
          {"whitening_report",
           {{"jitter", report.jitter},
            {"condition_estimate", report.condition_estimate},
            {"ill_conditioned", report.ill_conditioned}}}};
}

OrthonormalBasis basis_from_json(const json& j) {
  const auto dimension = j.at("dimension").get<std::size_t>();
  const json& t = j.at("truncation");
  Truncation truncation{t.at("kind").get<std::string>() == "full" ? TruncationKind::Full
                                                                  : TruncationKind::Reduced,
                        t.at("S").get<unsigned>(), t.at("m").get<unsigned>()};
  std::vector<MultiIndex> indices;
  for (const json& support : j.at("indices")) {
    std::vector<Exponent> exponents(dimension, 0);
    for (const json& pair : support) {
      const auto coordinate = pair.at(0).get<std::size_t>();
      require(coordinate < dimension, ErrorKind::InvalidArgument,
              "archive multi-index coordinate out of range");
      exponents[coordinate] = static_cast<Exponent>(pair.at(1).get<unsigned>());
    }
    indices.emplace_back(std::move(exponents));
  }
  MultiIndexSet set(dimension, truncation, std::move(indices));

  Standardization standardization{vector_from(j.at("standardization").at("shift")),
                                  vector_from(j.at("standardization").at("scale"))};
  const json& rows = j.at("whitening");
  const auto k = static_cast<Eigen::Index>(set.size());
  require(static_cast<Eigen::Index>(rows.size()) == k, ErrorKind::InvalidArgument,
          "archive whitening matrix does not match the index set");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto row = rows.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
    require(static_cast<Eigen::Index>(row.size()) == i + 1, ErrorKind::InvalidArgument,
            "archive whitening row has the wrong length");
    for (Eigen::Index c = 0; c <= i; ++c) w(i, c) = row[static_cast<std::size_t>(c)];
  }
  Whitening whitening{std::move(w), {}};
  if (j.contains("whitening_report")) {
    const json& r = j.at("whitening_report");
    whitening.report.jitter = r.at("jitter").get<double>();
    whitening.report.condition_estimate = r.at("condition_estimate").get<double>();
    whitening.report.ill_conditioned = r.at("ill_conditioned").get<bool>();
  }
  return OrthonormalBasis(std::move(set), std::move(standardization), std::move(whitening));
}

json surrogate_to_json(const DdGpceSurrogate& s) {
  return {{"basis", basis_to_json(s.basis())},
          {"coefficients", vector_json(s.coefficients())},
          {"fit_report", report_json(s.report())}};
}

DdGpceSurrogate surrogate_from_json(const json& j) {
  return DdGpceSurrogate(basis_from_json(j.at("basis")), vector_from(j.at("coefficients")),
                         report_from(j.at("fit_report")));
}

json archive_to_json(const SurrogateArchive& a) {
  json out;
  out["format_version"] = a.format_version;
  if (a.input) out["input"] = input_model_to_json(*a.input);
  json provenance = a.provenance.is_object() ? a.provenance : json::object();
  if (const auto* bifi = std::get_if<BiFidelitySurrogate>(&a.surrogate)) {
    out["kind"] = "bifidelity";
    out["surrogate"] = surrogate_to_json(bifi->low());
    out["link"] = surrogate_to_json(bifi->link().expansion());
    provenance.update(bifi_provenance_json(bifi->provenance()));
  } else {
    out["kind"] = "ddgpce";
    out["surrogate"] = surrogate_to_json(std::get<DdGpceSurrogate>(a.surrogate));
  }
  out["provenance"] = provenance;
  return out;
}

SurrogateArchive archive_from_json(const json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    require(version == kArchiveFormatVersion, ErrorKind::Config,
            "unsupported archive format_version " + std::to_string(version));
    std::optional<RandomInputModel> input;
    if (j.contains("input")) input = input_model_from_json(j.at("input"));
    const json provenance = j.value("provenance", json::object());
    DdGpceSurrogate primary = surrogate_from_json(j.at("surrogate"));
    if (j.at("kind").get<std::string>() == "bifidelity") {
      FourierLink link(surrogate_from_json(j.at("link")));
      return SurrogateArchive{
          version, std::move(input),
          BiFidelitySurrogate(std::move(primary), std::move(link), bifi_provenance_from(provenance)),
          provenance};
    }
    return SurrogateArchive{version, std::move(input), std::move(primary), provenance};
  } catch (const json::exception& e) {
    fail(ErrorKind::Config, std::string("malformed surrogate archive: ") + e.what());
  }
}

std::string dump_archive(const SurrogateArchive& archive) {
  return archive_to_json(archive).dump(1) + "\n";
}

void save_archive(const SurrogateArchive& archive, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Config, "cannot write archive " + path.string());
  out << dump_archive(archive);
}

SurrogateArchive load_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Config, "cannot read archive " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Config, "archive " + path.string() + " is not valid JSON: " + e.what());
  }
  return archive_from_json(j);
}

}  // namespace ddgpce
