// peckit command-line front end. Exit codes: 0 positive / ok, 1 negative or
// inconsistent, 2 input errors and refusals.

#include "peckit/document.hpp"
#include "peckit/estimator.hpp"
#include "peckit/report.hpp"
#include "peckit/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace peckit;
using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::string csv;
  std::string depths = "1..100";
  std::string threshold;
  std::uint64_t depth = 1;
  std::uint64_t seed = SelftestOptions{}.seed;
  std::uint64_t cases = SelftestOptions{}.cases;
  bool d_closed_form = false;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DocumentError(path, "cannot write file");
  out << text;
}

void emit(const Flags& flags, const json& report) { write_text(flags.out, report.dump(2) + "\n"); }

EstimatorOptions estimator_options(const Flags& flags) {
  EstimatorOptions o;
  o.d_closed_form = flags.d_closed_form;
  return o;
}

int cmd_decide(const Flags& flags, bool full) {
  const Configuration config = load_document(flags.config);
  const PecDecision decision = decide_pec(config);
  json report = decision_report(config, decision, full);
  if (full && !decision.positive()) {
    report["refusal"] = "decompose refused: the configuration is not positive energy (" +
                        decision.family->describe() + ")";
  }
  emit(flags, report);
  return decision.positive() ? 0 : 1;
}

int cmd_bound(const Flags& flags) {
  const Configuration config = load_document(flags.config);
  const PecDecision decision = decide_pec(config);
  json report;
  report["tool"] = metadata_json("bound");
  report["type"] = to_string(config.type());
  report["verdict"] = to_string(decision.verdict);
  if (decision.positive()) {
    report["lower_bound"] = rational_json(decision.lower_bound);
    report["M"] = rational_json(decision.decomposition->M);
    report["C"] = interval_json(decision.decomposition->C);
  } else {
    report["lower_bound"] = nullptr;
    report["family"] = family_json(config, *decision.family);
  }
  emit(flags, report);
  return decision.positive() ? 0 : 1;
}

std::string csv_path(const Flags& flags) {
  if (!flags.csv.empty()) return flags.csv;
  if (flags.out.empty()) return {};
  const auto dot = flags.out.rfind('.');
  const auto slash = flags.out.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? flags.out.substr(0, dot) : flags.out) + ".csv";
}

int cmd_profile(const Flags& flags) {
  const Configuration config = load_document(flags.config);
  const std::vector<std::uint64_t> depths = parse_depth_list(flags.depths);
  const EstimatorOptions options = estimator_options(flags);
  const InfimumProfile profile = infimum_profile(config, depths, options);
  std::optional<DivergenceCheck> check;
  if (!flags.threshold.empty()) {
    const Rational threshold = parse_rational(flags.threshold);
    if (threshold >= 0) throw DomainError("--threshold must be negative");
    check = divergence_check(config, threshold, depths.back(), options);
  }
  emit(flags, profile_report(config, profile, check ? &*check : nullptr));
  if (const std::string path = csv_path(flags); !path.empty()) write_text(path, profile_csv(profile));
  return check && !check->consistent ? 1 : 0;
}

int cmd_spectrum(const Flags& flags) {
  const Configuration config = load_document(flags.config);
  const auto spectrum = orbit_spectrum(config, flags.depth, estimator_options(flags));
  emit(flags, spectrum_report(config, flags.depth, spectrum));
  return 0;
}

int cmd_selftest(const Flags& flags) {
  SelftestOptions options;
  options.seed = flags.seed;
  options.cases = flags.cases;
  bool ok = true;
  json suites = json::array();
  for (const SuiteResult& r : run_selftest(options)) {
    ok = ok && r.passed();
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.failures
              << " failures, digest " << r.digest << "\n";
    for (const std::string& m : r.messages) std::cerr << "  " << m << "\n";
    suites.push_back({{"name", r.name},
                      {"cases", r.cases},
                      {"failures", r.failures},
                      {"digest", r.digest},
                      {"messages", r.messages}});
  }
  json report{{"tool", metadata_json("selftest")}, {"seed", flags.seed}, {"cases", flags.cases},
              {"passed", ok}, {"suites", suites}};
  emit(flags, report);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peckit: positive energy decisions for infinite root systems"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) sub->add_option("config", flags.config, "configuration document (JSON)")->required();
    sub->add_option("--out", flags.out, "write the JSON report here instead of stdout");
    sub->add_flag("--enable-d-closed-form", flags.d_closed_form, "use the type-D closed form for truncated infima");
    return sub;
  };
  CLI::App* decide = add_common(app.add_subcommand("decide", "decide the positive energy condition"), true);
  CLI::App* decompose = add_common(app.add_subcommand("decompose", "chi = chi_min + chi_sum with its bound"), true);
  CLI::App* bound = add_common(app.add_subcommand("bound", "certified lower bound -2MC"), true);
  CLI::App* profile = add_common(app.add_subcommand("profile", "truncated infima over depths"), true);
  profile->add_option("--depths", flags.depths, "depths, e.g. 1,2,4 or 1..1000 or 10..1000:10");
  profile->add_option("--threshold", flags.threshold, "negative threshold P/Q for the divergence check");
  profile->add_option("--csv", flags.csv, "CSV output path (default: next to --out)");
  CLI::App* spectrum = add_common(app.add_subcommand("spectrum", "orbit energy spectrum of a truncation"), true);
  spectrum->add_option("--depth", flags.depth, "truncation depth")->check(CLI::PositiveNumber);
  CLI::App* selftest = add_common(app.add_subcommand("selftest", "seeded oracle-equivalence suites"), false);
  selftest->add_option("--seed", flags.seed, "generator seed");
  selftest->add_option("--cases", flags.cases, "oracle cases (other suites use a fifth)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (decide->parsed()) return cmd_decide(flags, false);
    if (decompose->parsed()) return cmd_decide(flags, true);
    if (bound->parsed()) return cmd_bound(flags);
    if (profile->parsed()) return cmd_profile(flags);
    if (spectrum->parsed()) return cmd_spectrum(flags);
    if (selftest->parsed()) return cmd_selftest(flags);
  } catch (const std::exception& e) {
    std::cerr << "peckit: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
