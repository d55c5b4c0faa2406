#pragma once

// Positive energy decisions. Cone membership for the minimal-energy cones,
// the decision procedure for all five types, explicit divergence families
// for negative verdicts and the chi = chi_min + chi_sum decomposition with
// its -2MC lower bound for positive ones.

#include "peckit/config.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace peckit {

class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Weyl element acting on the local indices 1..labels.size(), index k
/// standing for labels[k - 1].
struct Witness {
  std::vector<Label> labels;
  SignedPermutation element;
};

/// lambda(g.chi - chi) of the witness evaluated on the configuration.
Rational witness_energy(const Configuration& config, const Witness& witness);
/// Local (lambda, chi) vectors of the witness labels.
std::pair<FiniteVector, FiniteVector> witness_vectors(const Configuration& config, const std::vector<Label>& labels);

struct ConeVerdict {
  bool member = true;
  std::string reason;
  /// Present for non-members: an element with negative energy.
  std::optional<Witness> witness;
};

ConeVerdict in_cmin_A(const Configuration& config);
ConeVerdict in_cmin_B(const Configuration& config);
ConeVerdict in_cmin_D(const Configuration& config);
/// The cone matching the configuration's type (A; B for B/C/BC; D).
ConeVerdict in_cmin(const Configuration& config);

/// I^min: indices with |lambda| minimal and |d| equal to inf |d| over J.
struct DLocusSet {
  bool nonempty = false;
  std::optional<Label> representative;
  Rational min_abs_level;
  Extended min_abs_d;
};
DLocusSet d_locus(const Configuration& config);

enum class FamilyKind { kNotEssentiallyBounded, kStrictCrossing, kNonSummableSide, kJplusInfinite };
std::string to_string(FamilyKind kind);

/// Negative certificate. The family's k-th element is a product of disjoint
/// transpositions (or sign flips for kJplusInfinite) whose energy tends to
/// -infinity with k.
struct DivergenceFamily {
  FamilyKind kind = FamilyKind::kStrictCrossing;
  /// Levels involved: (m, n) with m < n, or the single offending level.
  std::vector<Rational> levels;
  /// r-values involved (accumulation points, or the equality value r).
  std::vector<Extended> values;
  std::string detail;

  // Generator. When via_abs_transform is set the positions below refer to
  // abs_transform(config) and elements are pulled back with chosen signs.
  bool via_abs_transform = false;
  Label anchor;
  std::size_t block = 0;
  std::size_t tail = 0;
  std::size_t partner_block = 0;
  std::size_t partner_tail = 0;
  bool partner_squared = false;
  bool driving_first = true;  // driving tail entry is the first slot of each pair
  std::uint64_t start = 0;

  std::string describe() const;
};

/// The k-th family element (k >= 1).
Witness family_element(const Configuration& config, const DivergenceFamily& family, std::uint64_t k);

struct FamilyPoint {
  std::uint64_t k = 0;
  std::uint64_t depth = 0;
  Rational energy;
};
/// Energies of family elements 1..k_max, computed incrementally. Stops early
/// once the truncation depth would exceed max_depth.
std::vector<FamilyPoint> family_profile(const Configuration& config, const DivergenceFamily& family,
                                        std::uint64_t k_max, std::uint64_t max_depth);
/// First family element with energy below the threshold whose truncation
/// depth is at most max_depth.
std::optional<FamilyPoint> family_crossing(const Configuration& config, const DivergenceFamily& family,
                                           const Rational& threshold, std::uint64_t max_depth);

/// Clamping windows from the plateau thresholds a_0 = +inf > a_1 >= ... >= a_k > a_{k+1} = -inf
/// attached to the ordered levels n_0 < ... < n_k.
struct ThresholdPlan {
  std::vector<Rational> levels;
  std::vector<Extended> a;

  /// [a_{t+1}, a_t] for level n_t, [a_t, a_t] for a level between n_{t-1} and n_t.
  std::pair<Extended, Extended> window(const Rational& level) const;
};

/// chi_sum on a run of one source: alpha * d + beta, with sum of |.| in `sum`.
struct SumRecord {
  Label first;  // block, source and first position
  std::optional<std::uint64_t> last;  // inclusive; absent for an infinite run
  Rational alpha;
  Rational beta;
  Interval sum;
  std::string zone;

  bool covers(const Label& label) const;
  Rational value(const Rational& d) const { return alpha * d + beta; }
};

struct Decomposition {
  RootSystemType type = RootSystemType::A;
  bool already_minimal = false;
  Configuration chi_min;
  std::vector<SumRecord> chi_sum;
  ThresholdPlan plan;
  /// For signed types the plan lives on the absolute problem (-|lambda|, |chi|).
  bool plan_on_absolute = false;
  Interval C;
  Rational M;
  Rational bound;
  std::string note;

  /// chi_sum at the label; 0 outside every record.
  Rational chi_sum_at(const Configuration& original, const Label& label) const;
};

enum class Verdict { kPositive, kNegative };
std::string to_string(Verdict verdict);

struct PecDecision {
  Verdict verdict = Verdict::kPositive;
  std::optional<DivergenceFamily> family;
  std::optional<Decomposition> decomposition;
  Rational lower_bound;

  bool positive() const { return verdict == Verdict::kPositive; }
};

/// Type-A reading of the block data, whatever the configuration's type.
std::optional<DivergenceFamily> type_a_obstruction(const Configuration& config);

struct JplusSum {
  bool finite = true;
  Interval bound;
  /// Offending source when infinite.
  std::size_t block = 0;
  std::size_t tail = 0;
  std::uint64_t start = 0;
};
JplusSum jplus_weighted_sum(const Configuration& config);

/// Levels m -> -|m| (merging collisions), d -> |d|, type A.
Configuration abs_transform(const Configuration& config);

struct AbsTransform {
  Configuration config;
  std::vector<std::vector<Label>> finite_origin;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tail_origin;

  Label to_original(const Label& label) const;
};
AbsTransform abs_transform_with_origin(const Configuration& config);

PecDecision decide_pec(const Configuration& config);

/// Throws RefusalError naming the divergence family on a negative verdict.
Decomposition decompose(const Configuration& config);
Rational lower_bound(const Configuration& config);

ThresholdPlan plan_thresholds(const LevelAnalysis& analysis);

}  // namespace peckit
