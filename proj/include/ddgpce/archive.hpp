#pragma once

#include <filesystem>
#include <optional>
#include <variant>

#include <Eigen/Dense>
#include <json.hpp>

#include "ddgpce/bifidelity.hpp"
#include "ddgpce/distributions.hpp"
#include "ddgpce/surrogate.hpp"

namespace ddgpce {

inline constexpr int kArchiveFormatVersion = 1;

/// A fitted surrogate together with its input law and provenance. Saved as a
/// JSON document: the basis (index set as sparse support pairs,
/// standardization, lower-triangular W row by row), coefficients, fit report,
/// an optional link section and free-form provenance (seeds, sizes, model
/// identifiers, evaluation counts).
struct SurrogateArchive {
  int format_version = kArchiveFormatVersion;
  std::optional<RandomInputModel> input;
  std::variant<DdGpceSurrogate, BiFidelitySurrogate> surrogate;
  nlohmann::json provenance = nlohmann::json::object();

  bool is_bifidelity() const noexcept {
    return std::holds_alternative<BiFidelitySurrogate>(surrogate);
  }
  std::size_t dimension() const;
  Eigen::VectorXd evaluate(const Eigen::MatrixXd& points) const;
};

nlohmann::json basis_to_json(const OrthonormalBasis& basis);
OrthonormalBasis basis_from_json(const nlohmann::json& j);

nlohmann::json surrogate_to_json(const DdGpceSurrogate& surrogate);
DdGpceSurrogate surrogate_from_json(const nlohmann::json& j);

nlohmann::json archive_to_json(const SurrogateArchive& archive);
SurrogateArchive archive_from_json(const nlohmann::json& j);

/// Serialized text; identical archives give identical bytes.
std::string dump_archive(const SurrogateArchive& archive);
void save_archive(const SurrogateArchive& archive, const std::filesystem::path& path);
SurrogateArchive load_archive(const std::filesystem::path& path);

}  // namespace ddgpce
