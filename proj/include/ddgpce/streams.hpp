#pragma once

#include <cstdint>

namespace ddgpce {

/// Labels of the independent random streams a pipeline draws from one master
/// seed (see derive_seed). Fixed so that runs are reproducible.
enum class Stream : std::uint64_t {
  InputMoments = 1,   // QMC points for the input moment matrix
  Design = 2,         // experimental design inputs
  LinkMoments = 3,    // QMC points for the low-fidelity output moment matrix
  Pairs = 4,          // fresh inputs for low/high pairs
  Risk = 5,           // Monte Carlo inputs for VaR/CVaR
  Pool = 6,           // crude Monte Carlo benchmark pool
  TrialShuffle = 7,   // subset selection across trials
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline std::uint64_t stream_seed(std::uint64_t seed, Stream stream) {
  return derive_seed(seed, static_cast<std::uint64_t>(stream));
}

}  // namespace ddgpce
