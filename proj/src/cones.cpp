#include "pec_internal.hpp"

#include <algorithm>
#include <limits>

namespace peckit {

namespace detail {

std::optional<std::uint64_t> first_in(const IndexRun& a, const IndexRun& b) {
  if (a.suffix && b.suffix) return std::max(a.count, b.count) + 1;
  if (!a.suffix && !b.suffix) {
    std::uint64_t c = std::min(a.count, b.count);
    return c >= 1 ? std::optional<std::uint64_t>(1) : std::nullopt;
  }
  const IndexRun& prefix = a.suffix ? b : a;
  const IndexRun& suffix = a.suffix ? a : b;
  if (prefix.count > suffix.count) return suffix.count + 1;
  return std::nullopt;
}

namespace {

std::optional<std::uint64_t> first_of(const IndexRun& run) { return first_in(run, IndexRun::all()); }

}  // namespace

std::optional<Label> entry_below(const Configuration& config, std::size_t b, const Rational& x) {
  const Block& block = config.block(b);
  for (std::size_t p = 0; p < block.finite.size(); ++p) {
    if (block.finite[p] < x) return Label{b, std::nullopt, p};
  }
  for (std::size_t t = 0; t < block.tails.size(); ++t) {
    if (auto s = first_of(block.tails[t].below(x))) return Label{b, t, *s};
  }
  return std::nullopt;
}

std::optional<Label> entry_above(const Configuration& config, std::size_t b, const Rational& x) {
  const Block& block = config.block(b);
  for (std::size_t p = 0; p < block.finite.size(); ++p) {
    if (block.finite[p] > x) return Label{b, std::nullopt, p};
  }
  for (std::size_t t = 0; t < block.tails.size(); ++t) {
    if (auto s = first_of(block.tails[t].above(x))) return Label{b, t, *s};
  }
  return std::nullopt;
}

std::optional<Label> entry_abs_below(const Configuration& config, std::size_t b, const Extended& x) {
  if (x.is_pos_inf()) return first_entry(config, b);
  if (!x.is_finite()) return std::nullopt;
  const Rational& v = x.value();
  const Block& block = config.block(b);
  for (std::size_t p = 0; p < block.finite.size(); ++p) {
    if (abs(block.finite[p]) < v) return Label{b, std::nullopt, p};
  }
  for (std::size_t t = 0; t < block.tails.size(); ++t) {
    const Tail& tail = block.tails[t];
    if (auto s = first_in(tail.below(v), tail.above(-v))) return Label{b, t, *s};
  }
  return std::nullopt;
}

std::optional<Label> entry_abs_above(const Configuration& config, std::size_t b, const Rational& x) {
  const Block& block = config.block(b);
  for (std::size_t p = 0; p < block.finite.size(); ++p) {
    if (abs(block.finite[p]) > x) return Label{b, std::nullopt, p};
  }
  for (std::size_t t = 0; t < block.tails.size(); ++t) {
    const Tail& tail = block.tails[t];
    if (auto s = first_of(tail.above(x))) return Label{b, t, *s};
    if (auto s = first_of(tail.below(-x))) return Label{b, t, *s};
  }
  return std::nullopt;
}

Label first_entry(const Configuration& config, std::size_t b) {
  const Block& block = config.block(b);
  if (!block.finite.empty()) return Label{b, std::nullopt, 0};
  return Label{b, 0, 1};
}

Extended block_abs_inf(const Block& block) {
  Extended out = Extended::pos_inf();
  for (const Rational& d : block.finite) out = min(out, Extended(Rational(abs(d))));
  for (const Tail& t : block.tails) out = min(out, t.abs_infimum());
  return out;
}

Extended block_abs_sup(const Block& block) {
  Extended out = Extended(0);
  for (const Rational& d : block.finite) out = max(out, Extended(Rational(abs(d))));
  for (const Tail& t : block.tails) out = max(out, t.abs_supremum());
  return out;
}

Witness localize(const Truncation& truncation, const SignedPermutation& g) {
  const std::set<Index> support = g.support();
  std::map<Index, Index> local;
  Witness w;
  for (Index j : support) {
    local[j] = static_cast<Index>(w.labels.size()) + 1;
    w.labels.push_back(truncation.labels.at(static_cast<std::size_t>(j - 1)));
  }
  std::map<Index, Index> perm;
  for (const auto& [j, target] : g.permutation_part()) perm[local.at(j)] = local.at(target);
  std::set<Index> flips;
  for (Index j : g.flips()) flips.insert(local.at(j));
  w.element = SignedPermutation::from_parts(perm, flips);
  return w;
}

std::optional<Witness> search_witness(const Configuration& config, RootSystemType type) {
  const std::uint64_t max_depth = config.is_finite() ? 1 : 4096;
  for (std::uint64_t depth = 1; depth <= max_depth; depth *= 2) {
    Truncation trunc = truncate(config, depth);
    const std::vector<Index> support = trunc.support();
    SignedPermutation g = minimizing_element(trunc.lambda, trunc.chi, support, type);
    if (energy(trunc.lambda, trunc.chi, g) < 0) return localize(trunc, g);
  }
  return std::nullopt;
}

}  // namespace detail

using namespace detail;

std::pair<FiniteVector, FiniteVector> witness_vectors(const Configuration& config, const std::vector<Label>& labels) {
  FiniteVector lambda;
  FiniteVector chi;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    lambda.set(static_cast<Index>(k + 1), level_of(config, labels[k]));
    chi.set(static_cast<Index>(k + 1), value_of(config, labels[k]));
  }
  return {lambda, chi};
}

Rational witness_energy(const Configuration& config, const Witness& witness) {
  auto [lambda, chi] = witness_vectors(config, witness.labels);
  return energy(lambda, chi, witness.element);
}

ConeVerdict in_cmin_A(const Configuration& config) {
  const LevelAnalysis a = analyze(config);
  ConeVerdict out;
  for (std::size_t x = 0; x < a.levels.size(); ++x) {
    for (std::size_t y = x + 1; y < a.levels.size(); ++y) {
      const LevelFacts& m = a.levels[x];
      const LevelFacts& n = a.levels[y];
      if (m.inf_d >= n.sup_d) continue;
      // d_i < d_j with lambda_i = m < n = lambda_j.
      std::optional<Label> j =
          m.inf_d.is_neg_inf() ? first_entry(config, n.block) : entry_above(config, n.block, m.inf_d.value());
      std::optional<Label> i = j ? entry_below(config, m.block, value_of(config, *j)) : std::nullopt;
      out.member = false;
      out.reason = "inf D(J_" + to_string(m.level) + ") = " + m.inf_d.str() + " < sup D(J_" + to_string(n.level) +
                   ") = " + n.sup_d.str();
      if (i && j) out.witness = Witness{{*i, *j}, SignedPermutation::transposition(1, 2)};
      return out;
    }
  }
  return out;
}

namespace {

struct SignViolations {
  std::uint64_t count = 0;
  bool infinite = false;
  std::optional<Label> first;
};

SignViolations sign_violations(const Configuration& config) {
  SignViolations out;
  for (std::size_t b = 0; b < config.blocks().size(); ++b) {
    const Block& block = config.block(b);
    const int s = sgn(block.level);
    if (s == 0) continue;
    for (std::size_t p = 0; p < block.finite.size(); ++p) {
      if (sgn(block.finite[p]) == s) {
        ++out.count;
        if (!out.first) out.first = Label{b, std::nullopt, p};
      }
    }
    for (std::size_t t = 0; t < block.tails.size(); ++t) {
      IndexRun run = s > 0 ? block.tails[t].above(0) : block.tails[t].below(0);
      if (run.suffix) {
        out.infinite = true;
        if (!out.first) out.first = Label{b, t, run.count + 1};
      } else if (run.count > 0) {
        out.count += run.count;
        if (!out.first) out.first = Label{b, t, 1};
      }
    }
  }
  return out;
}

// |m| < |n| with sup |D_m| > inf |D_n|: returns (i at m, j at n) with |d_i| > |d_j|.
std::optional<std::pair<Label, Label>> order_violation(const Configuration& config, std::string* reason) {
  const auto& blocks = config.blocks();
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    for (std::size_t y = 0; y < blocks.size(); ++y) {
      if (!(abs(blocks[x].level) < abs(blocks[y].level))) continue;
      const Extended sup_m = block_abs_sup(blocks[x]);
      const Extended inf_n = block_abs_inf(blocks[y]);
      if (sup_m <= inf_n) continue;
      if (reason != nullptr) {
        *reason = "sup |D(J_" + to_string(blocks[x].level) + ")| = " + sup_m.str() + " > inf |D(J_" +
                  to_string(blocks[y].level) + ")| = " + inf_n.str();
      }
      std::optional<Label> j = entry_abs_below(config, y, sup_m);
      std::optional<Label> i = j ? entry_abs_above(config, x, Rational(abs(value_of(config, *j)))) : std::nullopt;
      if (i && j) return std::make_pair(*i, *j);
      return std::make_pair(first_entry(config, x), first_entry(config, y));
    }
  }
  return std::nullopt;
}

Witness pair_witness(const Configuration& config, const Label& i, const Label& j, RootSystemType type) {
  Witness w{{i, j}, {}};
  auto [lambda, chi] = witness_vectors(config, w.labels);
  const std::vector<Index> support{1, 2};
  w.element = minimizing_element(lambda, chi, support, type);
  return w;
}

}  // namespace

ConeVerdict in_cmin_B(const Configuration& config) {
  ConeVerdict out;
  SignViolations v = sign_violations(config);
  if (v.first) {
    out.member = false;
    out.reason = "lambda_j d_j > 0 at " + v.first->str();
    out.witness = Witness{{*v.first}, SignedPermutation::sign_flip({1})};
    return out;
  }
  std::string reason;
  if (auto pair = order_violation(config, &reason)) {
    out.member = false;
    out.reason = reason;
    out.witness = pair_witness(config, pair->first, pair->second, RootSystemType::B);
  }
  return out;
}

DLocusSet d_locus(const Configuration& config) {
  DLocusSet out;
  out.min_abs_level = abs(config.block(0).level);
  out.min_abs_d = Extended::pos_inf();
  for (const Block& block : config.blocks()) {
    out.min_abs_level = std::min(out.min_abs_level, Rational(abs(block.level)));
    out.min_abs_d = min(out.min_abs_d, block_abs_inf(block));
  }
  if (!out.min_abs_d.is_finite()) return out;
  const Rational& g = out.min_abs_d.value();
  for (std::size_t b = 0; b < config.blocks().size(); ++b) {
    const Block& block = config.block(b);
    if (abs(block.level) != out.min_abs_level) continue;
    for (std::size_t p = 0; p < block.finite.size(); ++p) {
      if (abs(block.finite[p]) == g) {
        out.nonempty = true;
        out.representative = Label{b, std::nullopt, p};
        return out;
      }
    }
    for (std::size_t t = 0; t < block.tails.size(); ++t) {
      for (std::uint64_t s : block.tails[t].abs_infimum_candidates()) {
        if (abs(block.tails[t].entry(s)) == g) {
          out.nonempty = true;
          out.representative = Label{b, t, s};
          return out;
        }
      }
    }
  }
  return out;
}

ConeVerdict in_cmin_D(const Configuration& config) {
  ConeVerdict out;
  std::string reason;
  if (order_violation(config, &reason)) {
    out.member = false;
    out.reason = reason;
    out.witness = search_witness(config, RootSystemType::D);
    return out;
  }
  SignViolations v = sign_violations(config);
  if (!v.first) return out;
  if (!v.infinite && v.count == 1) {
    // A single violator is repaired by one sign flip when it lies in I^min.
    const DLocusSet locus = d_locus(config);
    const Rational d = value_of(config, *v.first);
    if (abs(level_of(config, *v.first)) == locus.min_abs_level && locus.min_abs_d == Extended(Rational(abs(d)))) {
      return out;
    }
    out.reason = "the only index with lambda_j d_j > 0, " + v.first->str() + ", is not in I^min";
  } else {
    out.reason = "more than one index with lambda_j d_j > 0";
  }
  out.member = false;
  out.witness = search_witness(config, RootSystemType::D);
  return out;
}

ConeVerdict in_cmin(const Configuration& config) {
  switch (config.type()) {
    case RootSystemType::A: return in_cmin_A(config);
    case RootSystemType::D: return in_cmin_D(config);
    default: return in_cmin_B(config);
  }
}

}  // namespace peckit
