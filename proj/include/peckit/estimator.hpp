#pragma once

// Finite-truncation estimates: Lambda(J_k) for growing depths k, the
// consistency check between divergence families and observed infima, the
// duality identity and orbit spectra.

#include "peckit/config.hpp"
#include "peckit/pec.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace peckit {

struct EstimatorOptions {
  bool d_closed_form = false;
  EnumerationBounds bounds = EnumerationBounds::from_environment();

  InfimumOptions infimum_options() const { return {d_closed_form, bounds}; }
};

/// Truncated infima from one global sort of the entries at max_depth.
/// Each depth costs a few binary searches per rank boundary. Supports
/// A, B, C, BC, and D when the closed form is enabled.
class TruncationEvaluator {
 public:
  TruncationEvaluator(const Configuration& config, std::uint64_t max_depth, const EstimatorOptions& options = {});
  ~TruncationEvaluator();
  TruncationEvaluator(TruncationEvaluator&&) noexcept;
  TruncationEvaluator& operator=(TruncationEvaluator&&) noexcept;

  /// True when the configuration's type is handled without enumeration.
  static bool supports(const Configuration& config, const EstimatorOptions& options);

  std::uint64_t max_depth() const;
  std::size_t support_size(std::uint64_t depth) const;
  Rational infimum(std::uint64_t depth) const;

  /// infimum(depth) for every depth, OpenMP over depths.
  std::vector<Rational> profile(std::span<const std::uint64_t> depths) const;
  /// Same values, one depth after another.
  std::vector<Rational> profile_serial(std::span<const std::uint64_t> depths) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Materializes the truncation and calls exact_finite_infimum.
Rational truncated_infimum_reference(const Configuration& config, std::uint64_t depth,
                                     const EstimatorOptions& options = {});

/// Lambda(J_depth); throws EnumerationBoundError for D beyond the bound
/// without the closed form.
Rational truncated_infimum(const Configuration& config, std::uint64_t depth, const EstimatorOptions& options = {});

struct ProfilePoint {
  std::uint64_t depth = 0;
  std::size_t support = 0;
  Rational infimum;
};
using InfimumProfile = std::vector<ProfilePoint>;

/// Depths must be strictly increasing.
InfimumProfile infimum_profile(const Configuration& config, std::span<const std::uint64_t> depths,
                               const EstimatorOptions& options = {});

/// Depths "1,2,5", ranges "1..100" and stepped ranges "10..1000:10", mixed.
std::vector<std::uint64_t> parse_depth_list(std::string_view text);

struct DivergenceCheck {
  Verdict verdict = Verdict::kPositive;
  bool consistent = false;
  Rational threshold;
  std::uint64_t max_depth = 0;
  /// Negative verdicts: first family element below the threshold.
  std::optional<FamilyPoint> predicted;
  /// First depth whose truncated infimum lies below the threshold.
  std::optional<std::uint64_t> crossing_depth;
  /// Positive verdicts: the certified bound and Lambda(J_max_depth).
  Rational lower_bound;
  Rational infimum_at_max_depth;
  std::string note;
};

/// Negative verdicts: consistent when the truncations cross the threshold no
/// later than the family's prediction. Positive verdicts: consistent when the
/// truncated infimum at max_depth respects the lower bound.
DivergenceCheck divergence_check(const Configuration& config, const Rational& threshold, std::uint64_t max_depth,
                                 const EstimatorOptions& options = {});

struct DualityCheck {
  bool holds = true;
  std::size_t elements = 0;
  /// min over g of lambda(g.chi - chi) and of chi(g.lambda - lambda).
  Rational lambda_side_min;
  Rational chi_side_min;
  std::optional<SignedPermutation> counterexample;
};

/// Checks chi(g.lambda - lambda) = lambda(g^{-1}.chi - chi) for every element
/// supported on the truncation at the given depth.
DualityCheck duality_check(const Configuration& config, std::uint64_t depth, const EstimatorOptions& options = {});

/// Multiset {chi(g.lambda - lambda)} over the truncation, value -> multiplicity.
std::map<Rational, std::uint64_t> orbit_spectrum(const Configuration& config, std::uint64_t depth,
                                                 const EstimatorOptions& options = {});

}  // namespace peckit
