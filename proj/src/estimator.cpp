#include "peckit/estimator.hpp"

#include <charconv>

namespace peckit {

InfimumProfile infimum_profile(const Configuration& config, std::span<const std::uint64_t> depths,
                               const EstimatorOptions& options) {
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] == 0) throw DomainError("profile depths must be >= 1");
    if (i > 0 && depths[i] <= depths[i - 1]) throw DomainError("profile depths must be strictly increasing");
  }
  InfimumProfile out;
  if (depths.empty()) return out;
  std::vector<Rational> values;
  std::vector<std::size_t> sizes;
  if (TruncationEvaluator::supports(config, options)) {
    TruncationEvaluator eval(config, depths.back(), options);
    values = eval.profile(depths);
    for (std::uint64_t k : depths) sizes.push_back(eval.support_size(k));
  } else {
    for (std::uint64_t k : depths) {
      const Truncation t = truncate(config, k);
      sizes.push_back(t.labels.size());
      values.push_back(exact_finite_infimum(t.lambda, t.chi, t.support(), config.type(), options.infimum_options()));
    }
  }
  for (std::size_t i = 0; i < depths.size(); ++i) out.push_back({depths[i], sizes[i], std::move(values[i])});
  return out;
}

namespace {

std::uint64_t parse_count(std::string_view text, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad depth list '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::vector<std::uint64_t> parse_depth_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    if (std::size_t dots = item.find(".."); dots != std::string_view::npos) {
      std::string_view rest = item.substr(dots + 2);
      std::uint64_t step = 1;
      if (std::size_t colon = rest.find(':'); colon != std::string_view::npos) {
        step = parse_count(rest.substr(colon + 1), text);
        rest = rest.substr(0, colon);
      }
      const std::uint64_t a = parse_count(item.substr(0, dots), text);
      const std::uint64_t b = parse_count(rest, text);
      if (step == 0 || b < a) throw ParseError("bad depth range '" + std::string(item) + "'");
      for (std::uint64_t k = a; k <= b; k += step) out.push_back(k);
    } else {
      out.push_back(parse_count(item, text));
    }
    start = comma + 1;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == 0) throw ParseError("depths must be >= 1");
    if (i > 0 && out[i] <= out[i - 1]) throw ParseError("depths must be strictly increasing");
  }
  return out;
}

namespace {

// Smallest depth in 1..max_depth whose infimum lies below the threshold.
// Truncations are nested, so the infimum is non-increasing in the depth.
template <typename F>
std::optional<std::uint64_t> first_below(F&& infimum, const Rational& threshold, std::uint64_t max_depth) {
  if (!(infimum(max_depth) < threshold)) return std::nullopt;
  std::uint64_t lo = 1, hi = max_depth;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (infimum(mid) < threshold) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

DivergenceCheck divergence_check(const Configuration& config, const Rational& threshold, std::uint64_t max_depth,
                                 const EstimatorOptions& options) {
  if (max_depth == 0) throw DomainError("max depth must be >= 1");
  DivergenceCheck out;
  out.threshold = threshold;
  out.max_depth = max_depth;
  const PecDecision decision = decide_pec(config);
  out.verdict = decision.verdict;

  std::optional<TruncationEvaluator> eval;
  if (TruncationEvaluator::supports(config, options)) eval.emplace(config, max_depth, options);
  auto infimum = [&](std::uint64_t k) {
    return eval ? eval->infimum(k) : truncated_infimum_reference(config, k, options);
  };

  out.infimum_at_max_depth = infimum(max_depth);
  out.crossing_depth = first_below(infimum, threshold, max_depth);
  if (decision.positive()) {
    out.lower_bound = decision.lower_bound;
    out.consistent = out.infimum_at_max_depth >= out.lower_bound;
    out.note = out.consistent ? "truncated infima respect the lower bound"
                              : "truncated infimum below the certified lower bound";
    return out;
  }
  out.predicted = family_crossing(config, *decision.family, threshold, max_depth);
  if (!out.predicted) {
    out.note = "the divergence family does not reach the threshold within the depth limit";
  } else if (!out.crossing_depth) {
    out.note = "no truncation crosses the threshold";
  } else {
    out.consistent = *out.crossing_depth <= out.predicted->depth;
    out.note = out.consistent ? "truncations cross no later than the family predicts"
                              : "truncations cross later than the family predicts";
  }
  return out;
}

DualityCheck duality_check(const Configuration& config, std::uint64_t depth, const EstimatorOptions& options) {
  const Truncation t = truncate(config, depth);
  const std::vector<Index> support = t.support();
  DualityCheck out;
  bool first = true;
  for_each_element(
      support, config.type(),
      [&](const SignedPermutation& g) {
        ++out.elements;
        Rational lam = energy(t.lambda, t.chi, g);
        Rational chi = energy(t.chi, t.lambda, g);
        if (out.holds && chi != energy(t.lambda, t.chi, inverse(g))) {
          out.holds = false;
          out.counterexample = g;
        }
        if (first || lam < out.lambda_side_min) out.lambda_side_min = lam;
        if (first || chi < out.chi_side_min) out.chi_side_min = chi;
        first = false;
      },
      options.bounds);
  if (out.lambda_side_min != out.chi_side_min) out.holds = false;
  return out;
}

std::map<Rational, std::uint64_t> orbit_spectrum(const Configuration& config, std::uint64_t depth,
                                                 const EstimatorOptions& options) {
  const Truncation t = truncate(config, depth);
  const std::vector<Index> support = t.support();
  std::map<Rational, std::uint64_t> out;
  for_each_element(
      support, config.type(), [&](const SignedPermutation& g) { ++out[energy(t.chi, t.lambda, g)]; },
      options.bounds);
  return out;
}

}  // namespace peckit
