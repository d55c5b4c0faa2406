#include "peckit/report.hpp"

#include "peckit/document.hpp"

#include <sstream>

namespace peckit {

using nlohmann::json;

json rational_json(const Rational& value) { return {{"exact", to_string(value)}, {"decimal", to_decimal(value)}}; }

json extended_json(const Extended& value) { return {{"exact", value.str()}, {"decimal", value.decimal()}}; }

json interval_json(const Interval& value) {
  json out{{"lo", rational_json(value.lo)}, {"hi", rational_json(value.hi)}};
  out["exact"] = value.is_exact();
  return out;
}

json metadata_json(const std::string& command) {
  return {{"name", kToolName}, {"version", kToolVersion}, {"command", command}};
}

json witness_json(const Configuration& config, const Witness& witness) {
  json labels = json::array();
  for (const Label& l : witness.labels) labels.push_back(l.str());
  return {{"labels", labels}, {"element", witness.element.str()},
          {"energy", rational_json(witness_energy(config, witness))}};
}

json family_json(const Configuration& config, const DivergenceFamily& family, std::uint64_t samples) {
  json out;
  out["name"] = to_string(family.kind);
  out["detail"] = family.detail;
  out["levels"] = json::array();
  for (const Rational& l : family.levels) out["levels"].push_back(rational_json(l));
  out["r_values"] = json::array();
  for (const Extended& r : family.values) out["r_values"].push_back(extended_json(r));
  out["via_absolute_problem"] = family.via_abs_transform;
  json points = json::array();
  for (const FamilyPoint& p : family_profile(config, family, samples, std::numeric_limits<std::uint64_t>::max())) {
    points.push_back({{"k", p.k}, {"depth", p.depth}, {"energy", rational_json(p.energy)}});
  }
  out["energies"] = std::move(points);
  out["first_element"] = witness_json(config, family_element(config, family, 1));
  return out;
}

json plan_json(const ThresholdPlan& plan) {
  json out;
  out["levels"] = json::array();
  for (const Rational& l : plan.levels) out["levels"].push_back(rational_json(l));
  out["thresholds"] = json::array();
  for (std::size_t t = 0; t < plan.a.size(); ++t) {
    out["thresholds"].push_back({{"t", t}, {"a", extended_json(plan.a[t])}});
  }
  return out;
}

json decomposition_json(const Decomposition& d, bool full) {
  json out;
  out["already_minimal"] = d.already_minimal;
  out["plan"] = plan_json(d.plan);
  out["plan_on_absolute_problem"] = d.plan_on_absolute;
  out["M"] = rational_json(d.M);
  out["C"] = interval_json(d.C);
  out["lower_bound"] = rational_json(d.bound);
  if (!d.note.empty()) out["note"] = d.note;
  if (full) {
    out["chi_min"] = to_document(d.chi_min);
    json records = json::array();
    for (const SumRecord& r : d.chi_sum) {
      json rec;
      rec["first"] = r.first.str();
      rec["last"] = r.last ? json(*r.last) : json("inf");
      rec["zone"] = r.zone;
      rec["alpha"] = rational_json(r.alpha);
      rec["beta"] = rational_json(r.beta);
      rec["abs_sum"] = interval_json(r.sum);
      records.push_back(std::move(rec));
    }
    out["chi_sum"] = std::move(records);
  }
  return out;
}

json cone_json(const Configuration& config, const ConeVerdict& verdict) {
  json out{{"member", verdict.member}, {"reason", verdict.reason}};
  if (verdict.witness) out["witness"] = witness_json(config, *verdict.witness);
  return out;
}

json decision_report(const Configuration& config, const PecDecision& decision, bool full_decomposition) {
  json out;
  out["tool"] = metadata_json(full_decomposition ? "decompose" : "decide");
  out["type"] = to_string(config.type());
  out["verdict"] = to_string(decision.verdict);
  json cert;
  if (decision.positive()) {
    cert["kind"] = "decomposition";
    cert["cone"] = cone_json(config, in_cmin(config));
    cert["decomposition"] = decomposition_json(*decision.decomposition, full_decomposition);
    cert["lower_bound"] = rational_json(decision.lower_bound);
  } else {
    cert["kind"] = "divergence_family";
    cert["family"] = family_json(config, *decision.family);
  }
  out["certificate"] = std::move(cert);
  return out;
}

json profile_report(const Configuration& config, const InfimumProfile& profile, const DivergenceCheck* check) {
  json out;
  out["tool"] = metadata_json("profile");
  out["type"] = to_string(config.type());
  json rows = json::array();
  for (const ProfilePoint& p : profile) {
    rows.push_back({{"depth", p.depth}, {"support", p.support}, {"infimum", rational_json(p.infimum)}});
  }
  out["profile"] = std::move(rows);
  if (check) {
    json c;
    c["verdict"] = to_string(check->verdict);
    c["consistent"] = check->consistent;
    c["threshold"] = rational_json(check->threshold);
    c["max_depth"] = check->max_depth;
    c["crossing_depth"] = check->crossing_depth ? json(*check->crossing_depth) : json(nullptr);
    if (check->predicted) {
      c["predicted"] = {{"k", check->predicted->k},
                        {"depth", check->predicted->depth},
                        {"energy", rational_json(check->predicted->energy)}};
    } else {
      c["predicted"] = nullptr;
    }
    if (check->verdict == Verdict::kPositive) c["lower_bound"] = rational_json(check->lower_bound);
    c["infimum_at_max_depth"] = rational_json(check->infimum_at_max_depth);
    c["note"] = check->note;
    out["divergence_check"] = std::move(c);
  }
  return out;
}

json spectrum_report(const Configuration& config, std::uint64_t depth,
                     const std::map<Rational, std::uint64_t>& spectrum) {
  json out;
  out["tool"] = metadata_json("spectrum");
  out["type"] = to_string(config.type());
  out["depth"] = depth;
  json bins = json::array();
  std::uint64_t total = 0;
  for (const auto& [value, count] : spectrum) {
    bins.push_back({{"value", rational_json(value)}, {"multiplicity", count}});
    total += count;
  }
  out["elements"] = total;
  out["histogram"] = std::move(bins);
  out["minimum"] = spectrum.empty() ? json(nullptr) : rational_json(spectrum.begin()->first);
  return out;
}

std::string profile_csv(const InfimumProfile& profile) {
  std::ostringstream out;
  out << "depth,support,infimum,decimal\n";
  for (const ProfilePoint& p : profile) {
    out << p.depth << ',' << p.support << ',' << to_string(p.infimum) << ',' << to_decimal(p.infimum) << '\n';
  }
  return out.str();
}

}  // namespace peckit
