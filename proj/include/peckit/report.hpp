#pragma once

// Deterministic JSON reports and CSV profile tables. Rationals appear as
// {"exact": "p/q", "decimal": "..."}.

#include "peckit/estimator.hpp"
#include "peckit/pec.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace peckit {

inline constexpr const char* kToolName = "peckit";
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json rational_json(const Rational& value);
nlohmann::json extended_json(const Extended& value);
nlohmann::json interval_json(const Interval& value);

nlohmann::json metadata_json(const std::string& command);
nlohmann::json witness_json(const Configuration& config, const Witness& witness);
/// Family description plus the energies of its first `samples` elements.
nlohmann::json family_json(const Configuration& config, const DivergenceFamily& family, std::uint64_t samples = 8);
nlohmann::json plan_json(const ThresholdPlan& plan);
/// With `full`, embeds chi_min and the chi_sum records.
nlohmann::json decomposition_json(const Decomposition& decomposition, bool full);
nlohmann::json cone_json(const Configuration& config, const ConeVerdict& verdict);

nlohmann::json decision_report(const Configuration& config, const PecDecision& decision, bool full_decomposition);
nlohmann::json profile_report(const Configuration& config, const InfimumProfile& profile,
                              const DivergenceCheck* check);
nlohmann::json spectrum_report(const Configuration& config, std::uint64_t depth,
                               const std::map<Rational, std::uint64_t>& spectrum);

/// depth,support,infimum,decimal
std::string profile_csv(const InfimumProfile& profile);

}  // namespace peckit
