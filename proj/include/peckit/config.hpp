#pragma once

// Symbolic presentation of an infinite triple (J, lambda, chi): finitely many
// levels m = lambda_j, each carrying explicit d-values and symbolic tails.
// Every abstract index is addressed by a Label (block, source, position).

#include "peckit/rational.hpp"
#include "peckit/tail.hpp"
#include "peckit/weyl.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace peckit {

struct Block {
  Rational level;
  std::vector<Rational> finite;
  std::vector<Tail> tails;

  bool infinite() const { return !tails.empty(); }
  friend bool operator==(const Block&, const Block&) = default;
};

class Configuration {
 public:
  Configuration() = default;
  /// Validates: distinct levels; for signed types every tail is one-signed.
  Configuration(RootSystemType type, std::vector<Block> blocks);

  /// One block per distinct lambda value, finite entries in input order.
  static Configuration from_finite(RootSystemType type, std::span<const Rational> lambda,
                                   std::span<const Rational> chi);

  RootSystemType type() const { return type_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t b) const { return blocks_.at(b); }
  std::optional<std::size_t> find_level(const Rational& level) const;

  /// Same block data under another root system type (revalidated).
  Configuration with_type(RootSystemType type) const;

  /// Levels in increasing order.
  std::vector<Rational> levels() const;
  Rational max_abs_level() const;
  std::size_t tail_count() const;
  bool is_finite() const { return tail_count() == 0; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  RootSystemType type_ = RootSystemType::A;
  std::vector<Block> blocks_;
};

/// Every d-entry plus c. Throws DomainError for divergent tails.
Configuration shifted(const Configuration& config, const Rational& c);

/// position is the 0-based list position for finite entries and the tail
/// parameter s >= 1 for tail entries.
struct Label {
  std::size_t block = 0;
  std::optional<std::size_t> tail;
  std::uint64_t position = 0;

  std::string str() const;
  friend auto operator<=>(const Label&, const Label&) = default;
};

Rational level_of(const Configuration& config, const Label& label);
Rational value_of(const Configuration& config, const Label& label);
/// Smallest truncation depth containing the label (0 for finite entries).
std::uint64_t depth_of(const Label& label);

struct LevelFacts {
  Rational level;
  std::size_t block = 0;
  bool infinite = false;
  Extended inf_d;
  Extended sup_d;
  /// Distinct finite tail limits, increasing.
  std::vector<Rational> accumulation;
  /// Min / max accumulation point, +inf / -inf when there is none.
  Extended r_min = Extended::pos_inf();
  Extended r_max = Extended::neg_inf();

  bool bounded_below() const { return inf_d.is_finite(); }
  bool bounded_above() const { return sup_d.is_finite(); }
};

struct LevelAnalysis {
  /// Ordered by level.
  std::vector<LevelFacts> levels;
  Rational m_min;
  Rational m_max;
  /// Levels carrying tails together with m_min and m_max, increasing.
  std::vector<Rational> closure_levels;

  const LevelFacts& at(const Rational& level) const;
};

LevelAnalysis analyze(const Configuration& config);

/// Every level other than m_max is bounded below and every level other than
/// m_min is bounded above.
bool is_essentially_bounded(const Configuration& config);

enum class Side { kAbove, kBelow };
std::string to_string(Side side);

/// Sum of |d_j - r| over the side {d > r} or {d < r} of a set of entries.
struct SideSummary {
  bool infinite = false;
  bool summable = true;
  /// Valid when summable; exact except for power tails and very long runs.
  Interval sum;
};

/// Sum of |entry(s) - r| over s > after; summable only when the entries
/// settle at r (constant, or deviating with a summable shape).
SideSummary suffix_distance_sum(const Tail& tail, std::uint64_t after, const Rational& r);
SideSummary tail_side_summary(const Tail& tail, const Rational& r, Side side);
SideSummary side_summability(const Configuration& config, const Rational& level, const Rational& r, Side side);

struct Truncation {
  FiniteVector lambda;
  FiniteVector chi;
  /// labels[i] belongs to index i + 1.
  std::vector<Label> labels;

  std::vector<Index> support() const;
  std::vector<Rational> lambda_values() const;
  std::vector<Rational> chi_values() const;
  /// Index carrying the label, if present.
  std::optional<Index> find(const Label& label) const;
};

/// All finite entries plus the first `depth` entries of every tail, block by
/// block, finite entries before tails. Nested in depth.
Truncation truncate(const Configuration& config, std::uint64_t depth);

/// Sum of |tail.entry(s) - r| for s in [first, last]; the entries must lie on
/// one side of r. Exact for short runs, a certified enclosure otherwise.
Interval run_distance_sum(const Tail& tail, std::uint64_t first, std::uint64_t last, const Rational& r);

}  // namespace peckit
