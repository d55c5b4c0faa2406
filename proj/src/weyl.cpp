#include "peckit/weyl.hpp"

#include "peckit/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace peckit {

std::string to_string(RootSystemType type) {
  switch (type) {
    case RootSystemType::A: return "A";
    case RootSystemType::B: return "B";
    case RootSystemType::C: return "C";
    case RootSystemType::D: return "D";
    case RootSystemType::BC: return "BC";
  }
  return "?";
}

RootSystemType parse_root_system_type(std::string_view text) {
  if (text == "A") return RootSystemType::A;
  if (text == "B") return RootSystemType::B;
  if (text == "C") return RootSystemType::C;
  if (text == "D") return RootSystemType::D;
  if (text == "BC") return RootSystemType::BC;
  throw ParseError("unknown root system type \"" + std::string(text) + "\"");
}

bool has_sign_changes(RootSystemType type) { return type != RootSystemType::A; }

EnumerationBoundError::EnumerationBoundError(std::size_t support_size, std::size_t bound, RootSystemType type)
    : std::runtime_error("enumeration refused: support size " + std::to_string(support_size) +
                         " exceeds the type-" + to_string(type) + " bound " + std::to_string(bound) +
                         " (set PECKIT_MAX_ENUM to override)"),
      bound_(bound) {}

std::size_t EnumerationBounds::for_type(RootSystemType type) const {
  switch (type) {
    case RootSystemType::A: return type_a;
    case RootSystemType::D: return type_d;
    default: return type_bc;
  }
}

EnumerationBounds EnumerationBounds::from_environment() {
  EnumerationBounds bounds;
  if (const char* env = std::getenv("PECKIT_MAX_ENUM"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long value = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0 && value <= 12) {
      bounds.type_a = bounds.type_bc = bounds.type_d = value;
    }
  }
  return bounds;
}

// --- FiniteVector -----------------------------------------------------------

FiniteVector FiniteVector::one_based(std::span<const Rational> values) {
  FiniteVector v;
  for (std::size_t k = 0; k < values.size(); ++k) v.set(static_cast<Index>(k + 1), values[k]);
  return v;
}

const Rational& FiniteVector::at(Index index) const {
  auto it = entries_.find(index);
  if (it == entries_.end()) {
    throw DomainError("index " + std::to_string(index) + " outside the vector's index set");
  }
  return it->second;
}

std::vector<Index> FiniteVector::indices() const {
  std::vector<Index> out;
  out.reserve(entries_.size());
  for (const auto& [index, value] : entries_) out.push_back(index);
  return out;
}

// --- SignedPermutation ------------------------------------------------------

SignedPermutation SignedPermutation::from_parts(const std::map<Index, Index>& w, const std::set<Index>& flips) {
  SignedPermutation g;
  std::set<Index> images;
  for (const auto& [from, to] : w) {
    if (!images.insert(to).second) throw DomainError("permutation part is not injective");
    if (from != to) g.perm_.emplace(from, to);
  }
  for (const auto& [from, to] : w) {
    if (w.count(to) == 0) throw DomainError("permutation part does not map its domain onto itself");
  }
  g.flips_ = flips;
  return g;
}

SignedPermutation SignedPermutation::transposition(Index i, Index j) {
  if (i == j) return {};
  return from_parts({{i, j}, {j, i}}, {});
}

SignedPermutation SignedPermutation::sign_flip(std::span<const Index> indices) {
  SignedPermutation g;
  for (Index j : indices) {
    if (!g.flips_.insert(j).second) throw DomainError("repeated index in sign flip");
  }
  return g;
}

SignedPermutation SignedPermutation::sign_flip(std::initializer_list<Index> indices) {
  return sign_flip(std::span<const Index>(indices.begin(), indices.size()));
}

SignedPermutation SignedPermutation::transpositions(std::span<const std::pair<Index, Index>> pairs) {
  std::map<Index, Index> w;
  for (const auto& [i, j] : pairs) {
    if (i == j || w.count(i) || w.count(j)) throw DomainError("transposition pairs are not disjoint");
    w[i] = j;
    w[j] = i;
  }
  return from_parts(w, {});
}

Index SignedPermutation::perm(Index j) const {
  auto it = perm_.find(j);
  return it == perm_.end() ? j : it->second;
}

std::pair<Index, int> SignedPermutation::act_on_basis(Index j) const {
  // w^{-1}(j): the preimage of j under w.
  Index target = j;
  for (const auto& [from, to] : perm_) {
    if (to == j) {
      target = from;
      break;
    }
  }
  return {target, sign(target)};
}

FiniteVector SignedPermutation::act(const FiniteVector& x) const {
  FiniteVector out;
  std::set<Index> domain(support());
  for (const auto& [index, value] : x) domain.insert(index);
  for (Index j : domain) {
    Index source = perm(j);
    Rational value = x.contains(source) ? x.at(source) : Rational(0);
    out.set(j, sign(j) < 0 ? Rational(-value) : value);
  }
  return out;
}

std::set<Index> SignedPermutation::support() const {
  std::set<Index> s(flips_);
  for (const auto& [from, to] : perm_) s.insert(from);
  return s;
}

bool SignedPermutation::admissible(RootSystemType type) const {
  switch (type) {
    case RootSystemType::A: return flips_.empty();
    case RootSystemType::D: return flips_.size() % 2 == 0;
    default: return true;
  }
}

std::string SignedPermutation::str() const {
  std::ostringstream out;
  out << "w={";
  bool first = true;
  for (const auto& [from, to] : perm_) {
    out << (first ? "" : ",") << from << "->" << to;
    first = false;
  }
  out << "} sigma={";
  first = true;
  for (Index j : flips_) {
    out << (first ? "" : ",") << j;
    first = false;
  }
  out << "}";
  return out.str();
}

SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h) {
  // g = s1 w1^{-1}, h = s2 w2^{-1}:  g h = (s1 * (s2 o w1)) (w2 w1)^{-1}.
  std::set<Index> domain = g.support();
  for (Index j : h.support()) domain.insert(j);
  std::map<Index, Index> w;
  std::set<Index> flips;
  for (Index j : domain) {
    w[j] = h.perm(g.perm(j));
    if (g.sign(j) * h.sign(g.perm(j)) < 0) flips.insert(j);
  }
  return SignedPermutation::from_parts(w, flips);
}

SignedPermutation inverse(const SignedPermutation& g) {
  // (s w^{-1})^{-1} = (s o w^{-1}) (w^{-1})^{-1}.
  std::map<Index, Index> w;
  std::set<Index> flips;
  for (const auto& [from, to] : g.permutation_part()) w[to] = from;
  for (Index k : g.support()) {
    Index pre = w.count(k) ? w.at(k) : k;
    if (g.sign(pre) < 0) flips.insert(k);
  }
  return SignedPermutation::from_parts(w, flips);
}

Rational energy(const FiniteVector& lambda, const FiniteVector& chi, const SignedPermutation& g) {
  Rational total = 0;
  for (Index j : g.support()) {
    const Rational& moved = chi.at(g.perm(j));
    total += lambda.at(j) * (g.sign(j) < 0 ? Rational(-moved - chi.at(j)) : Rational(moved - chi.at(j)));
  }
  return total;
}

Rational transposition_product_energy(const FiniteVector& lambda, const FiniteVector& chi,
                                      std::span<const std::pair<Index, Index>> pairs) {
  std::set<Index> seen;
  Rational total = 0;
  for (const auto& [i, j] : pairs) {
    if (!seen.insert(i).second || !seen.insert(j).second) {
      throw DomainError("repeated index in transposition pairs");
    }
    total += (lambda.at(j) - lambda.at(i)) * (chi.at(i) - chi.at(j));
  }
  return total;
}

// --- enumeration ------------------------------------------------------------

namespace {

void check_bound(std::size_t n, RootSystemType type, const EnumerationBounds& bounds) {
  if (n > bounds.for_type(type)) throw EnumerationBoundError(n, bounds.for_type(type), type);
}

std::vector<Index> sorted_unique(std::span<const Index> support) {
  std::vector<Index> s(support.begin(), support.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("repeated index in support");
  return s;
}

}  // namespace

void for_each_element(std::span<const Index> support, RootSystemType type,
                      const std::function<void(const SignedPermutation&)>& visit,
                      const EnumerationBounds& bounds) {
  const std::vector<Index> s = sorted_unique(support);
  const std::size_t n = s.size();
  check_bound(n, type, bounds);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::uint64_t masks = has_sign_changes(type) ? (std::uint64_t{1} << n) : 1;
  do {
    std::map<Index, Index> w;
    for (std::size_t k = 0; k < n; ++k) w[s[k]] = s[perm[k]];
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      if (type == RootSystemType::D && __builtin_popcountll(mask) % 2 != 0) continue;
      std::set<Index> flips;
      for (std::size_t k = 0; k < n; ++k) {
        if ((mask >> k) & 1U) flips.insert(s[k]);
      }
      visit(SignedPermutation::from_parts(w, flips));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<SignedPermutation> enumerate_elements(std::span<const Index> support, RootSystemType type,
                                                  const EnumerationBounds& bounds) {
  std::vector<SignedPermutation> out;
  for_each_element(support, type, [&](const SignedPermutation& g) { out.push_back(g); }, bounds);
  return out;
}

// --- closed forms -----------------------------------------------------------

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational sum = 0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += a[j] * b[j];
  return sum;
}

// Positions 0..n-1 sorted by key, ties by position.
template <typename Key>
std::vector<std::size_t> order_by(std::size_t n, Key key) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  return order;
}

// Pairing for A: k-th smallest lambda receives the k-th largest chi.
std::vector<std::size_t> pairing_a(std::span<const Rational> lambda, std::span<const Rational> chi) {
  const std::size_t n = lambda.size();
  auto by_lambda = order_by(n, [&](std::size_t j) -> const Rational& { return lambda[j]; });
  auto by_chi_desc = order_by(n, [&](std::size_t j) -> Rational { return -chi[j]; });
  std::vector<std::size_t> w(n);
  for (std::size_t k = 0; k < n; ++k) w[by_lambda[k]] = by_chi_desc[k];
  return w;
}

// Pairing for B: k-th smallest |lambda| receives the k-th smallest |chi|.
std::vector<std::size_t> pairing_b(std::span<const Rational> lambda, std::span<const Rational> chi) {
  const std::size_t n = lambda.size();
  auto by_lambda = order_by(n, [&](std::size_t j) -> Rational { return abs(lambda[j]); });
  auto by_chi = order_by(n, [&](std::size_t j) -> Rational { return abs(chi[j]); });
  std::vector<std::size_t> w(n);
  for (std::size_t k = 0; k < n; ++k) w[by_lambda[k]] = by_chi[k];
  return w;
}

bool d_parity_penalty(std::span<const Rational> lambda, std::span<const Rational> chi) {
  std::size_t odd = 0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] == 0 || chi[j] == 0) return false;
    odd += (lambda[j] < 0) + (chi[j] > 0);
  }
  return odd % 2 == 1;
}

}  // namespace

Rational infimum_closed_form_a(std::span<const Rational> lambda, std::span<const Rational> chi) {
  auto w = pairing_a(lambda, chi);
  Rational paired = 0;
  for (std::size_t j = 0; j < lambda.size(); ++j) paired += lambda[j] * chi[w[j]];
  return paired - dot(lambda, chi);
}

Rational infimum_closed_form_b(std::span<const Rational> lambda, std::span<const Rational> chi) {
  auto w = pairing_b(lambda, chi);
  Rational paired = 0;
  for (std::size_t j = 0; j < lambda.size(); ++j) paired += abs(lambda[j]) * abs(chi[w[j]]);
  return -paired - dot(lambda, chi);
}

Rational infimum_closed_form_d(std::span<const Rational> lambda, std::span<const Rational> chi) {
  Rational value = infimum_closed_form_b(lambda, chi);
  if (d_parity_penalty(lambda, chi)) {
    Rational min_lambda = abs(lambda[0]);
    Rational min_chi = abs(chi[0]);
    for (std::size_t j = 1; j < lambda.size(); ++j) {
      min_lambda = std::min(min_lambda, Rational(abs(lambda[j])));
      min_chi = std::min(min_chi, Rational(abs(chi[j])));
    }
    value += 2 * min_lambda * min_chi;
  }
  return value;
}

namespace {

void gather(const FiniteVector& lambda, const FiniteVector& chi, std::span<const Index> support,
            std::vector<Rational>& l, std::vector<Rational>& d) {
  l.clear();
  d.clear();
  for (Index j : support) {
    l.push_back(lambda.at(j));
    d.push_back(chi.at(j));
  }
}

}  // namespace

Rational brute_force_infimum(const FiniteVector& lambda, const FiniteVector& chi, std::span<const Index> support,
                             RootSystemType type, const EnumerationBounds& bounds) {
  const std::vector<Index> s = sorted_unique(support);
  check_bound(s.size(), type, bounds);
  std::vector<Rational> l, d;
  gather(lambda, chi, s, l, d);
  return kernels::min_energy_serial(l, d, type);
}

Rational exact_finite_infimum(const FiniteVector& lambda, const FiniteVector& chi, std::span<const Index> support,
                              RootSystemType type, const InfimumOptions& options) {
  const std::vector<Index> s = sorted_unique(support);
  std::vector<Rational> l, d;
  gather(lambda, chi, s, l, d);
  if (s.empty()) return 0;
  switch (type) {
    case RootSystemType::A: return infimum_closed_form_a(l, d);
    case RootSystemType::B:
    case RootSystemType::C:
    case RootSystemType::BC: return infimum_closed_form_b(l, d);
    case RootSystemType::D: break;
  }
  if (options.d_closed_form) return infimum_closed_form_d(l, d);
  check_bound(s.size(), type, options.bounds);
  return kernels::min_energy_parallel(l, d, type);
}

SignedPermutation minimizing_element(const FiniteVector& lambda, const FiniteVector& chi,
                                     std::span<const Index> support, RootSystemType type) {
  const std::vector<Index> s = sorted_unique(support);
  std::vector<Rational> l, d;
  gather(lambda, chi, s, l, d);
  const std::size_t n = s.size();
  std::map<Index, Index> w;
  std::set<Index> flips;
  if (type == RootSystemType::A) {
    auto p = pairing_a(l, d);
    for (std::size_t k = 0; k < n; ++k) w[s[k]] = s[p[k]];
    return SignedPermutation::from_parts(w, flips);
  }
  auto p = pairing_b(l, d);
  std::optional<std::size_t> free_slot;
  for (std::size_t k = 0; k < n; ++k) {
    w[s[k]] = s[p[k]];
    const Rational product = l[k] * d[p[k]];
    if (product > 0) flips.insert(s[k]);
    if (product == 0 && !free_slot) free_slot = k;
  }
  if (type == RootSystemType::D && flips.size() % 2 == 1) {
    // Toggle a zero product if any, else the smallest |lambda| slot, which
    // the pairing matched with the smallest |chi|.
    std::size_t k = free_slot.value_or(order_by(n, [&](std::size_t j) -> Rational { return abs(l[j]); })[0]);
    if (flips.count(s[k])) {
      flips.erase(s[k]);
    } else {
      flips.insert(s[k]);
    }
  }
  return SignedPermutation::from_parts(w, flips);
}

}  // namespace peckit
