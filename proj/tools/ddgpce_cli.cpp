#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ddgpce/error.hpp"
#include "ddgpce/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kModelError = 3, kNumericalError = 4 };

int exit_code(ddgpce::ErrorKind kind) {
  using ddgpce::ErrorKind;
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidArgument:
    case ErrorKind::SizeOverflow:
    case ErrorKind::DimensionUnsupported:
      return kConfigError;
    case ErrorKind::ModelEvaluation:
    case ErrorKind::SingularStiffness:
      return kModelError;
    default:
      return kNumericalError;
  }
}

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> estimator;
  std::optional<std::string> archive;
  bool cdf = false;
};

void add_common(CLI::App* sub, Flags& flags) {
  sub->add_option("--config", flags.config, "pipeline configuration (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", flags.seed, "master seed (overrides the configuration)");
  sub->add_option("--out", flags.out, "output directory (overrides the configuration)");
  sub->add_option("--estimator", flags.estimator, "CVaR estimator")
      ->check(CLI::IsMember({"rockafellar", "indicator"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensionally decomposed GPCE surrogates and VaR/CVaR estimation"};
  app.require_subcommand(1);
  Flags flags;

  auto* fit = app.add_subcommand("fit", "fit a DD-GPCE surrogate and write its archive");
  auto* estimate = app.add_subcommand("estimate", "estimate VaR/CVaR from a surrogate archive");
  auto* bifit = app.add_subcommand("bifit", "bi-fidelity fit and VaR/CVaR estimation");
  auto* trials = app.add_subcommand("trials", "repeated fits against a crude Monte Carlo benchmark");
  auto* sample = app.add_subcommand("sample", "write input samples as CSV");
  auto* validate = app.add_subcommand("validate", "check a configuration without running it");
  for (auto* sub : {fit, estimate, bifit, trials, sample, validate}) add_common(sub, flags);
  estimate->add_option("--archive", flags.archive,
                       "surrogate archive (default: <out>/surrogate.json)");
  for (auto* sub : {estimate, bifit}) {
    sub->add_flag("--cdf", flags.cdf, "also write the empirical CDF of the surrogate output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    ddgpce::PipelineConfig config = ddgpce::load_config(flags.config);
    ddgpce::RunOptions options;
    options.seed = flags.seed;
    if (flags.out) options.out = *flags.out;
    if (flags.estimator) options.estimator = ddgpce::parse_estimator(*flags.estimator);
    options.cdf = flags.cdf;
    ddgpce::apply_overrides(config, options);

    ddgpce::CommandResult result;
    if (*fit) {
      result = ddgpce::cmd_fit(config);
    } else if (*estimate) {
      const std::filesystem::path archive =
          flags.archive ? std::filesystem::path(*flags.archive)
                        : config.output_dir / "surrogate.json";
      result = ddgpce::cmd_estimate(config, archive, flags.cdf);
    } else if (*bifit) {
      result = ddgpce::cmd_bifit(config, flags.cdf);
    } else if (*trials) {
      result = ddgpce::cmd_trials(config);
    } else if (*sample) {
      result = ddgpce::cmd_sample(config);
    } else {
      result = ddgpce::cmd_validate(config);
    }
    std::cout << result.summary;
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
    return kOk;
  } catch (const ddgpce::Error& e) {
    std::cerr << "error [" << ddgpce::to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}
