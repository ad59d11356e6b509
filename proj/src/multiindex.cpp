#include "ddgpce/multiindex.hpp"

#include <algorithm>
#include <string>

#include "ddgpce/error.hpp"

namespace ddgpce {
namespace {

constexpr unsigned __int128 kCountLimit = static_cast<unsigned __int128>(1) << 63;

unsigned __int128 binomial_wide(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c * (n - k + i) / i stays integral at every step.
    c = c * (n - k + i) / i;
    if (c >= kCountLimit) {
      fail(ErrorKind::SizeOverflow, "binomial coefficient overflows 64-bit range");
    }
  }
  return c;
}

void check_degree(unsigned degree) {
  require(degree <= kMaxDegree, ErrorKind::InvalidArgument,
          "polynomial degree " + std::to_string(degree) + " exceeds " +
              std::to_string(kMaxDegree));
}

// Appends all exponent vectors of total degree `remaining` over coordinates
// [coord, N) with at most `budget` nonzero entries, in descending lex order.
void enumerate(std::vector<Exponent>& current, std::size_t coord, unsigned remaining,
               unsigned budget, std::vector<MultiIndex>& out) {
  const std::size_t n = current.size();
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  if (coord == n || budget == 0) return;
  if (coord + 1 == n) {
    current[coord] = static_cast<Exponent>(remaining);
    out.emplace_back(current);
    current[coord] = 0;
    return;
  }
  for (unsigned e = remaining; e >= 1; --e) {
    current[coord] = static_cast<Exponent>(e);
    enumerate(current, coord + 1, remaining - e, budget - 1, out);
  }
  current[coord] = 0;
  enumerate(current, coord + 1, remaining, budget, out);
}

MultiIndexSet generate(std::size_t dimension, Truncation truncation) {
  std::vector<MultiIndex> indices;
  std::vector<Exponent> current(dimension, 0);
  for (unsigned d = 0; d <= truncation.degree; ++d) {
    enumerate(current, 0, d, truncation.interaction, indices);
  }
  return MultiIndexSet(dimension, truncation, std::move(indices));
}

}  // namespace

MultiIndex::MultiIndex(std::vector<Exponent> exponents)
    : exponents_(std::move(exponents)) {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > 0) {
      support_.emplace_back(static_cast<std::uint32_t>(i), exponents_[i]);
      total_degree_ += exponents_[i];
    }
  }
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  for (std::size_t i = 0; i < std::min(ea.size(), eb.size()); ++i) {
    if (ea[i] != eb[i]) return ea[i] > eb[i];
  }
  return false;
}

MultiIndexSet::MultiIndexSet(std::size_t dimension, Truncation truncation,
                             std::vector<MultiIndex> indices)
    : dimension_(dimension), truncation_(truncation), indices_(std::move(indices)) {}

std::uint64_t cardinality_full(std::size_t dimension, unsigned degree) {
  require(dimension >= 1, ErrorKind::InvalidArgument, "dimension must be at least 1");
  check_degree(degree);
  return static_cast<std::uint64_t>(binomial_wide(dimension + degree, degree));
}

std::uint64_t cardinality_reduced(std::size_t dimension, unsigned interaction,
                                  unsigned degree) {
  require(dimension >= 1, ErrorKind::InvalidArgument, "dimension must be at least 1");
  require(interaction <= dimension, ErrorKind::InvalidArgument,
          "invalid truncation: S=" + std::to_string(interaction) + " exceeds N=" +
              std::to_string(dimension));
  require(interaction <= degree, ErrorKind::InvalidArgument,
          "invalid truncation: m=" + std::to_string(degree) + " is smaller than S=" +
              std::to_string(interaction));
  check_degree(degree);
  unsigned __int128 total = 1;
  for (unsigned s = 1; s <= interaction; ++s) {
    total += binomial_wide(dimension, s) * binomial_wide(degree, s);
    if (total >= kCountLimit) {
      fail(ErrorKind::SizeOverflow, "reduced cardinality overflows 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(total);
}

MultiIndexSet generate_full(std::size_t dimension, unsigned degree, std::uint64_t cap) {
  const std::uint64_t count = cardinality_full(dimension, degree);
  require(count <= cap, ErrorKind::SizeOverflow,
          "full basis cardinality " + std::to_string(count) + " exceeds cap " +
              std::to_string(cap));
  return generate(dimension,
                  {TruncationKind::Full, static_cast<unsigned>(dimension), degree});
}

MultiIndexSet generate_reduced(std::size_t dimension, unsigned interaction,
                               unsigned degree, std::uint64_t cap) {
  const std::uint64_t count = cardinality_reduced(dimension, interaction, degree);
  require(count <= cap, ErrorKind::SizeOverflow,
          "reduced basis cardinality " + std::to_string(count) + " exceeds cap " +
              std::to_string(cap));
  return generate(dimension, {TruncationKind::Reduced, interaction, degree});
}

}  // namespace ddgpce
