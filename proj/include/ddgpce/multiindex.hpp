#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ddgpce {

using Exponent = std::uint8_t;

inline constexpr std::uint64_t kDefaultCardinalityCap = 1'000'000;
inline constexpr unsigned kMaxDegree = 255;

/// Exponent vector j = (j_1, ..., j_N) of one monomial x^j.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<Exponent> exponents);

  const std::vector<Exponent>& exponents() const noexcept { return exponents_; }
  std::size_t dimension() const noexcept { return exponents_.size(); }
  Exponent operator[](std::size_t i) const { return exponents_[i]; }

  /// |j| = sum of exponents.
  unsigned total_degree() const noexcept { return total_degree_; }
  /// |U| = number of strictly positive exponents.
  unsigned interaction_order() const noexcept {
    return static_cast<unsigned>(support_.size());
  }
  /// Nonzero (coordinate, exponent) pairs, coordinates ascending.
  const std::vector<std::pair<std::uint32_t, Exponent>>& support() const noexcept {
    return support_;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  std::vector<Exponent> exponents_;
  std::vector<std::pair<std::uint32_t, Exponent>> support_;
  unsigned total_degree_ = 0;
};

/// Graded lexicographic order: total degree ascending, then the index with the
/// larger exponent at the first differing coordinate comes first.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

enum class TruncationKind { Full, Reduced };

struct Truncation {
  TruncationKind kind = TruncationKind::Full;
  unsigned interaction = 0;  // S; equals the dimension for Full
  unsigned degree = 0;       // m
};

/// Ordered set J_m (Full) or J_{S,m} (Reduced); element 0 is the zero index.
class MultiIndexSet {
 public:
  MultiIndexSet(std::size_t dimension, Truncation truncation,
                std::vector<MultiIndex> indices);

  std::size_t dimension() const noexcept { return dimension_; }
  const Truncation& truncation() const noexcept { return truncation_; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t k) const { return indices_[k]; }
  unsigned max_degree() const noexcept { return truncation_.degree; }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const MultiIndexSet& a, const MultiIndexSet& b) {
    return a.dimension_ == b.dimension_ && a.indices_ == b.indices_;
  }

 private:
  std::size_t dimension_;
  Truncation truncation_;
  std::vector<MultiIndex> indices_;
};

/// binom(N + m, m); throws SizeOverflow past 2^63.
std::uint64_t cardinality_full(std::size_t dimension, unsigned degree);

/// 1 + sum_{s=1..S} binom(N, s) binom(m, s), evaluated in closed form.
std::uint64_t cardinality_reduced(std::size_t dimension, unsigned interaction,
                                  unsigned degree);

MultiIndexSet generate_full(std::size_t dimension, unsigned degree,
                            std::uint64_t cap = kDefaultCardinalityCap);

MultiIndexSet generate_reduced(std::size_t dimension, unsigned interaction,
                               unsigned degree,
                               std::uint64_t cap = kDefaultCardinalityCap);

/// Univariate ordered set {0, 1, ..., degree}.
inline MultiIndexSet generate_univariate(unsigned degree) {
  return generate_full(1, degree);
}

}  // namespace ddgpce
