#pragma once

// Finite-support signed permutations, their action on finitely supported
// vectors, the energy functional lambda(g.chi - chi) and exact finite infima.
//
// Convention: an element is stored as the pair (sigma, w) standing for the
// product sigma * w^{-1}. Acting on a vector x it gives
//     (sigma w^{-1} . x)_j = sigma_j * x_{w(j)},
// and on basis vectors g(e_j) = sigma_{w^{-1}(j)} e_{w^{-1}(j)}.

#include "peckit/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace peckit {

using Index = std::int64_t;

enum class RootSystemType { A, B, C, D, BC };

std::string to_string(RootSystemType type);
RootSystemType parse_root_system_type(std::string_view text);

/// True for B, C, BC and D (signed Weyl groups).
bool has_sign_changes(RootSystemType type);

class EnumerationBoundError : public std::runtime_error {
 public:
  EnumerationBoundError(std::size_t support_size, std::size_t bound, RootSystemType type);
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

/// Largest support sizes accepted by brute-force enumeration. Defaults keep
/// every enumeration below ~10^7 elements; PECKIT_MAX_ENUM overrides all three.
struct EnumerationBounds {
  std::size_t type_a = 8;
  std::size_t type_bc = 6;  // B, C and BC
  std::size_t type_d = 7;

  std::size_t for_type(RootSystemType type) const;
  static EnumerationBounds from_environment();
};

/// Finitely supported vector: index -> exact rational.
class FiniteVector {
 public:
  FiniteVector() = default;
  FiniteVector(std::initializer_list<std::pair<const Index, Rational>> entries) : entries_(entries) {}
  /// Entries at indices 1..values.size().
  static FiniteVector one_based(std::span<const Rational> values);

  void set(Index index, Rational value) { entries_[index] = std::move(value); }
  bool contains(Index index) const { return entries_.count(index) != 0; }
  /// Throws DomainError when the index is outside the vector's index set.
  const Rational& at(Index index) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<Index> indices() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const FiniteVector&, const FiniteVector&) = default;

 private:
  std::map<Index, Rational> entries_;
};

class SignedPermutation {
 public:
  SignedPermutation() = default;

  /// Builds sigma * w^{-1}; `w` maps j -> w(j) on its domain and must be a
  /// bijection of that domain. Fixed points are dropped.
  static SignedPermutation from_parts(const std::map<Index, Index>& w, const std::set<Index>& flips);
  static SignedPermutation transposition(Index i, Index j);
  static SignedPermutation sign_flip(std::span<const Index> indices);
  static SignedPermutation sign_flip(std::initializer_list<Index> indices);
  /// Product of disjoint transpositions (i_s, j_s).
  static SignedPermutation transpositions(std::span<const std::pair<Index, Index>> pairs);

  /// w(j); identity outside the support.
  Index perm(Index j) const;
  /// sigma_j in {+1, -1}.
  int sign(Index j) const { return flips_.count(j) ? -1 : 1; }
  /// g(e_j) = sign * e_target.
  std::pair<Index, int> act_on_basis(Index j) const;
  /// (g.x)_j = sigma_j x_{w(j)} on the union of x's indices and the support.
  FiniteVector act(const FiniteVector& x) const;

  const std::map<Index, Index>& permutation_part() const { return perm_; }
  const std::set<Index>& flips() const { return flips_; }
  std::set<Index> support() const;
  bool is_identity() const { return perm_.empty() && flips_.empty(); }
  /// Membership in W(X_J) for the given type (A: no flips; D: even flips).
  bool admissible(RootSystemType type) const;

  std::string str() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  std::map<Index, Index> perm_;  // j -> w(j), non-fixed points only
  std::set<Index> flips_;        // support of sigma
};

/// Acting with the result equals acting with h, then with g.
SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h);
SignedPermutation inverse(const SignedPermutation& g);

/// lambda(g.chi - chi) = sum_j lambda_j (sigma_j d_{w(j)} - d_j).
Rational energy(const FiniteVector& lambda, const FiniteVector& chi, const SignedPermutation& g);

/// sum_s (lambda_{j_s} - lambda_{i_s}) (d_{i_s} - d_{j_s}) over disjoint pairs.
Rational transposition_product_energy(const FiniteVector& lambda, const FiniteVector& chi,
                                      std::span<const std::pair<Index, Index>> pairs);

/// Calls `visit` once for every Weyl element of `type` supported in `support`.
/// Count: n! (A), n! 2^n (B, C, BC), n! 2^(n-1) (D, n >= 1).
void for_each_element(std::span<const Index> support, RootSystemType type,
                      const std::function<void(const SignedPermutation&)>& visit,
                      const EnumerationBounds& bounds = EnumerationBounds::from_environment());

std::vector<SignedPermutation> enumerate_elements(
    std::span<const Index> support, RootSystemType type,
    const EnumerationBounds& bounds = EnumerationBounds::from_environment());

struct InfimumOptions {
  bool d_closed_form = false;
  EnumerationBounds bounds = EnumerationBounds::from_environment();
};

/// min over Weyl elements supported in `support` of energy(lambda, chi, g).
/// A, B, C, BC use rearrangement closed forms; D is brute force unless the
/// closed form is enabled. The result is always <= 0.
Rational exact_finite_infimum(const FiniteVector& lambda, const FiniteVector& chi,
                              std::span<const Index> support, RootSystemType type,
                              const InfimumOptions& options = {});

/// Closed forms, exposed for cross-checking.
Rational infimum_closed_form_a(std::span<const Rational> lambda, std::span<const Rational> chi);
Rational infimum_closed_form_b(std::span<const Rational> lambda, std::span<const Rational> chi);
Rational infimum_closed_form_d(std::span<const Rational> lambda, std::span<const Rational> chi);

/// Brute-force minimum over enumerate_elements (serial reference).
Rational brute_force_infimum(const FiniteVector& lambda, const FiniteVector& chi,
                             std::span<const Index> support, RootSystemType type,
                             const EnumerationBounds& bounds = EnumerationBounds::from_environment());

/// A minimizing element for A/B/C/BC/D built from the rearrangement pairing
/// (for D including the parity repair). Its energy equals the closed form.
SignedPermutation minimizing_element(const FiniteVector& lambda, const FiniteVector& chi,
                                     std::span<const Index> support, RootSystemType type);

}  // namespace peckit
