#include "ddgpce/distributions.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include <boost/random/sobol.hpp>

#include "ddgpce/error.hpp"
#include "ddgpce/normal.hpp"

namespace ddgpce {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in the open interval (0,1) from 53 random bits.
double open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection.
std::uint64_t bounded(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = engine();
  } while (r >= limit);
  return r % bound;
}

Eigen::MatrixXd mcs_unit(std::size_t count, std::size_t dimension, std::uint64_t seed,
                         std::size_t offset) {
  Eigen::MatrixXd out(count, dimension);
  std::size_t row = 0;
  while (row < count) {
    const std::size_t global = offset + row;
    const std::size_t chunk = global / kSampleChunk;
    const std::size_t within = global % kSampleChunk;
    std::mt19937_64 engine(derive_seed(seed, chunk));
    engine.discard(static_cast<unsigned long long>(within) * dimension);
    const std::size_t take = std::min(count - row, kSampleChunk - within);
    for (std::size_t r = 0; r < take; ++r) {
      for (std::size_t j = 0; j < dimension; ++j) {
        out(static_cast<Eigen::Index>(row + r), static_cast<Eigen::Index>(j)) =
            open_unit(engine());
      }
    }
    row += take;
  }
  return out;
}

Eigen::MatrixXd lhs_unit(std::size_t count, std::size_t dimension, std::uint64_t seed) {
  Eigen::MatrixXd out(count, dimension);
  std::vector<std::size_t> perm(count);
  for (std::size_t j = 0; j < dimension; ++j) {
    std::mt19937_64 engine(derive_seed(seed, 0x4C4853ULL + j));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = count; i > 1; --i) {
      std::swap(perm[i - 1], perm[bounded(engine, i)]);
    }
    for (std::size_t l = 0; l < count; ++l) {
      out(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) =
          (static_cast<double>(perm[l]) + 0.5) / static_cast<double>(count);
    }
  }
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x5DEECE66DULL));
}

// ---------------------------------------------------------------------------
// Marginal

Marginal Marginal::normal(double mean, double std) {
  require(std::isfinite(mean) && std::isfinite(std) && std > 0.0,
          ErrorKind::InvalidArgument, "normal marginal requires finite mean and std > 0");
  return Marginal(NormalLaw{mean, std});
}

Marginal Marginal::uniform(double lower, double upper) {
  require(std::isfinite(lower) && std::isfinite(upper) && upper > lower,
          ErrorKind::InvalidArgument, "uniform marginal requires upper > lower");
  return Marginal(UniformLaw{lower, upper});
}

Marginal Marginal::lognormal(double mean, double cov) {
  require(std::isfinite(mean) && std::isfinite(cov) && mean > 0.0 && cov > 0.0,
          ErrorKind::InvalidArgument, "lognormal marginal requires mean > 0 and cov > 0");
  return Marginal(LognormalLaw{mean, cov});
}

std::string Marginal::name() const {
  return std::visit(overloaded{[](const NormalLaw&) { return std::string("normal"); },
                               [](const UniformLaw&) { return std::string("uniform"); },
                               [](const LognormalLaw&) { return std::string("lognormal"); }},
                    law_);
}

double Marginal::log_sigma() const {
  const auto& p = std::get<LognormalLaw>(law_);
  return std::sqrt(std::log1p(p.cov * p.cov));
}

double Marginal::log_mu() const {
  const auto& p = std::get<LognormalLaw>(law_);
  const double s = log_sigma();
  return std::log(p.mean) - 0.5 * s * s;
}

double Marginal::mean() const {
  return std::visit(overloaded{[](const NormalLaw& p) { return p.mean; },
                               [](const UniformLaw& p) { return 0.5 * (p.lower + p.upper); },
                               [](const LognormalLaw& p) { return p.mean; }},
                    law_);
}

double Marginal::stddev() const {
  return std::visit(
      overloaded{[](const NormalLaw& p) { return p.std; },
                 [](const UniformLaw& p) { return (p.upper - p.lower) / std::sqrt(12.0); },
                 [](const LognormalLaw& p) { return p.mean * p.cov; }},
      law_);
}

double Marginal::cdf(double x) const {
  return std::visit(overloaded{[x](const NormalLaw& p) { return normal_cdf((x - p.mean) / p.std); },
                               [x](const UniformLaw& p) {
                                 if (x <= p.lower) return 0.0;
                                 if (x >= p.upper) return 1.0;
                                 return (x - p.lower) / (p.upper - p.lower);
                               },
                               [x, this](const LognormalLaw&) {
                                 if (x <= 0.0) return 0.0;
                                 return normal_cdf((std::log(x) - log_mu()) / log_sigma());
                               }},
                    law_);
}

double Marginal::quantile(double u) const {
  return std::visit(
      overloaded{[u](const NormalLaw& p) { return p.mean + p.std * normal_quantile(u); },
                 [u](const UniformLaw& p) { return p.lower + u * (p.upper - p.lower); },
                 [u, this](const LognormalLaw&) {
                   return std::exp(log_mu() + log_sigma() * normal_quantile(u));
                 }},
      law_);
}

double Marginal::from_standard_normal(double z) const {
  return std::visit(
      overloaded{[z](const NormalLaw& p) { return p.mean + p.std * z; },
                 [z](const UniformLaw& p) { return p.lower + normal_cdf(z) * (p.upper - p.lower); },
                 [z, this](const LognormalLaw&) { return std::exp(log_mu() + log_sigma() * z); }},
      law_);
}

// ---------------------------------------------------------------------------
// RandomInputModel

RandomInputModel::RandomInputModel(std::vector<Marginal> marginals,
                                   Eigen::MatrixXd correlation)
    : marginals_(std::move(marginals)), correlation_(std::move(correlation)) {
  const auto n = static_cast<Eigen::Index>(marginals_.size());
  require(n >= 1, ErrorKind::InvalidArgument, "input model needs at least one marginal");
  require(correlation_.rows() == n && correlation_.cols() == n, ErrorKind::InvalidArgument,
          "correlation matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    require(correlation_(i, i) == 1.0, ErrorKind::InvalidArgument,
            "correlation matrix must have unit diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r = correlation_(i, j);
      require(std::isfinite(r) && r >= -1.0 && r <= 1.0, ErrorKind::InvalidArgument,
              "correlation entries must lie in [-1, 1]");
      require(std::abs(r - correlation_(j, i)) <= 1e-12, ErrorKind::InvalidArgument,
              "correlation matrix must be symmetric");
    }
  }
  independent_ = correlation_.isIdentity(0.0);
  Eigen::LLT<Eigen::MatrixXd> llt(correlation_);
  require(llt.info() == Eigen::Success, ErrorKind::NotPositiveDefinite,
          "correlation matrix is not positive definite");
  factor_ = llt.matrixL();
}

RandomInputModel RandomInputModel::independent(std::vector<Marginal> marginals) {
  const auto n = static_cast<Eigen::Index>(marginals.size());
  return RandomInputModel(std::move(marginals), Eigen::MatrixXd::Identity(n, n));
}

Eigen::VectorXd RandomInputModel::means() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dimension()));
  for (std::size_t i = 0; i < dimension(); ++i) out(static_cast<Eigen::Index>(i)) = marginals_[i].mean();
  return out;
}

Eigen::VectorXd RandomInputModel::stddevs() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dimension()));
  for (std::size_t i = 0; i < dimension(); ++i) out(static_cast<Eigen::Index>(i)) = marginals_[i].stddev();
  return out;
}

Eigen::MatrixXd equicorrelation(std::size_t n, double rho) {
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd r = Eigen::MatrixXd::Constant(k, k, rho);
  r.diagonal().setOnes();
  return r;
}

// ---------------------------------------------------------------------------
// Sampling

const char* to_string(SamplingScheme scheme) {
  switch (scheme) {
    case SamplingScheme::MCS: return "mcs";
    case SamplingScheme::QMCS: return "qmcs";
    case SamplingScheme::LHS: return "lhs";
  }
  return "mcs";
}

SamplingScheme parse_scheme(const std::string& text) {
  if (text == "mcs") return SamplingScheme::MCS;
  if (text == "qmcs" || text == "sobol") return SamplingScheme::QMCS;
  if (text == "lhs") return SamplingScheme::LHS;
  fail(ErrorKind::InvalidArgument, "unknown sampling scheme '" + text + "'");
}

std::size_t sobol_max_dimension() { return BOOST_RANDOM_SOBOL_MAX_DIMENSION; }

Eigen::MatrixXd sobol_unit(std::size_t count, std::size_t dimension, std::uint64_t seed,
                           std::size_t offset) {
  require(dimension >= 1, ErrorKind::InvalidArgument, "Sobol dimension must be at least 1");
  require(dimension <= sobol_max_dimension(), ErrorKind::DimensionUnsupported,
          "Sobol dimension " + std::to_string(dimension) + " exceeds supported maximum " +
              std::to_string(sobol_max_dimension()));
  std::vector<std::uint64_t> shift(dimension, 0);
  if (seed != 0) {
    std::mt19937_64 engine(derive_seed(seed, 0x534F424FULL));
    for (auto& s : shift) s = engine();
  }
  boost::random::sobol_engine<std::uint64_t, 64> engine(dimension);
  if (offset > 0) engine.discard(static_cast<boost::uintmax_t>(offset) * dimension);
  Eigen::MatrixXd out(count, dimension);
  for (std::size_t l = 0; l < count; ++l) {
    for (std::size_t j = 0; j < dimension; ++j) {
      const std::uint64_t bits = engine() ^ shift[j];
      double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
      if (u == 0.0) u = 0x1.0p-54;
      out(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) = u;
    }
  }
  return out;
}

Eigen::MatrixXd unit_samples(SamplingScheme scheme, std::size_t count,
                             std::size_t dimension, std::uint64_t seed, std::size_t offset) {
  switch (scheme) {
    case SamplingScheme::MCS: return mcs_unit(count, dimension, seed, offset);
    case SamplingScheme::QMCS: return sobol_unit(count, dimension, seed, offset);
    case SamplingScheme::LHS:
      require(offset == 0, ErrorKind::InvalidArgument,
              "Latin hypercube designs cannot be generated in pieces");
      return lhs_unit(count, dimension, seed);
  }
  return {};
}

Eigen::MatrixXd transform_unit(const RandomInputModel& model, const Eigen::MatrixXd& unit) {
  const auto n = static_cast<Eigen::Index>(model.dimension());
  require(unit.cols() == n, ErrorKind::InvalidArgument, "unit sample dimension mismatch");
  Eigen::MatrixXd out(unit.rows(), n);
  const auto& marginals = model.marginals();
  if (model.is_independent()) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& marginal = marginals[static_cast<std::size_t>(j)];
      for (Eigen::Index l = 0; l < unit.rows(); ++l) out(l, j) = marginal.quantile(unit(l, j));
    }
    return out;
  }
  Eigen::MatrixXd z = unit.unaryExpr([](double u) { return normal_quantile(u); });
  z = z * model.copula_factor().transpose();
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& marginal = marginals[static_cast<std::size_t>(j)];
    for (Eigen::Index l = 0; l < unit.rows(); ++l) out(l, j) = marginal.from_standard_normal(z(l, j));
  }
  return out;
}

SampleBatch sample(const RandomInputModel& model, SamplingScheme scheme, std::size_t count,
                   std::uint64_t seed) {
  require(count >= 1, ErrorKind::InvalidArgument, "sample count must be at least 1");
  SampleBatch batch;
  batch.scheme = scheme;
  batch.seed = seed;
  batch.points = transform_unit(model, unit_samples(scheme, count, model.dimension(), seed));
  batch.probabilities =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(count), 1.0 / static_cast<double>(count));
  return batch;
}

Eigen::MatrixXd sample_rows(const RandomInputModel& model, SamplingScheme scheme,
                            std::size_t offset, std::size_t count, std::uint64_t seed) {
  return transform_unit(model, unit_samples(scheme, count, model.dimension(), seed, offset));
}

EmpiricalMoments empirical_moments(const Eigen::MatrixXd& points) {
  require(points.rows() >= 2, ErrorKind::InvalidArgument,
          "empirical moments need at least two samples");
  EmpiricalMoments m;
  const double n = static_cast<double>(points.rows());
  m.mean = points.colwise().mean().transpose();
  const Eigen::MatrixXd centered = points.rowwise() - m.mean.transpose();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / (n - 1.0);
  m.stddev = cov.diagonal().cwiseSqrt();
  const Eigen::Index k = points.cols();
  m.correlation = Eigen::MatrixXd::Identity(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (i == j) continue;
      const double denom = m.stddev(i) * m.stddev(j);
      m.correlation(i, j) = denom > 0.0 ? cov(i, j) / denom : 0.0;
    }
  }
  return m;
}

void write_samples_csv(std::ostream& out, const SampleBatch& batch) {
  const Eigen::Index n = batch.points.cols();
  for (Eigen::Index j = 0; j < n; ++j) out << 'x' << (j + 1) << ',';
  out << "p\n";
  out << std::setprecision(17);
  for (Eigen::Index l = 0; l < batch.points.rows(); ++l) {
    for (Eigen::Index j = 0; j < n; ++j) out << batch.points(l, j) << ',';
    out << batch.probabilities(l) << '\n';
  }
}

}  // namespace ddgpce
