#include "peckit/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <optional>

namespace peckit::kernels {

namespace {

bool mask_admissible(std::uint64_t mask, RootSystemType type) {
  switch (type) {
    case RootSystemType::A: return mask == 0;
    case RootSystemType::D: return __builtin_popcountll(mask) % 2 == 0;
    default: return true;
  }
}

std::uint64_t mask_count(std::size_t n, RootSystemType type) {
  return type == RootSystemType::A ? 1 : (std::uint64_t{1} << n);
}

// Energies of all admissible sign masks for one permutation; `base` is
// sum_j lambda_j chi_j.
template <typename Visit>
void visit_masks(std::span<const Rational> lambda, std::span<const Rational> chi,
                 const std::vector<std::size_t>& perm, const Rational& base, RootSystemType type,
                 Visit&& visit) {
  const std::size_t n = lambda.size();
  std::vector<Rational> products(n);
  for (std::size_t j = 0; j < n; ++j) products[j] = lambda[j] * chi[perm[j]];
  const std::uint64_t masks = mask_count(n, type);
  Rational total;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (!mask_admissible(mask, type)) continue;
    total = -base;
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> j) & 1U) {
        total -= products[j];
      } else {
        total += products[j];
      }
    }
    visit(total);
  }
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational sum = 0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += a[j] * b[j];
  return sum;
}

}  // namespace

std::uint64_t factorial(std::size_t n) {
  std::uint64_t result = 1;
  for (std::size_t k = 2; k <= n; ++k) result *= k;
  return result;
}

std::vector<std::size_t> unrank_permutation(std::uint64_t rank, std::size_t n) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::size_t> perm;
  perm.reserve(n);
  for (std::size_t k = n; k > 0; --k) {
    std::uint64_t block = factorial(k - 1);
    auto pick = static_cast<std::size_t>(rank / block);
    rank %= block;
    perm.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return perm;
}

Rational min_energy_serial(std::span<const Rational> lambda, std::span<const Rational> chi,
                           RootSystemType type) {
  const std::size_t n = lambda.size();
  const Rational base = dot(lambda, chi);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational best = 0;  // identity
  do {
    visit_masks(lambda, chi, perm, base, type, [&](const Rational& e) {
      if (e < best) best = e;
    });
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Rational min_energy_parallel(std::span<const Rational> lambda, std::span<const Rational> chi,
                             RootSystemType type) {
  const std::size_t n = lambda.size();
  const Rational base = dot(lambda, chi);
  const auto ranks = static_cast<std::int64_t>(factorial(n));
  Rational best = 0;
#pragma omp parallel
  {
    Rational local = 0;
#pragma omp for schedule(static)
    for (std::int64_t rank = 0; rank < ranks; ++rank) {
      auto perm = unrank_permutation(static_cast<std::uint64_t>(rank), n);
      visit_masks(lambda, chi, perm, base, type, [&](const Rational& e) {
        if (e < local) local = e;
      });
    }
#pragma omp critical(peckit_min_energy)
    {
      if (local < best) best = local;
    }
  }
  return best;
}

std::vector<Rational> all_energies_serial(std::span<const Rational> lambda, std::span<const Rational> chi,
                                          RootSystemType type) {
  const std::size_t n = lambda.size();
  const Rational base = dot(lambda, chi);
  std::vector<Rational> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    visit_masks(lambda, chi, perm, base, type, [&](const Rational& e) { out.push_back(e); });
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Rational> all_energies_parallel(std::span<const Rational> lambda, std::span<const Rational> chi,
                                            RootSystemType type) {
  const std::size_t n = lambda.size();
  const Rational base = dot(lambda, chi);
  const auto ranks = static_cast<std::int64_t>(factorial(n));
  std::uint64_t per_perm = 0;
  for (std::uint64_t mask = 0; mask < mask_count(n, type); ++mask) per_perm += mask_admissible(mask, type);
  std::vector<Rational> out(static_cast<std::size_t>(ranks) * per_perm);
#pragma omp parallel for schedule(static)
  for (std::int64_t rank = 0; rank < ranks; ++rank) {
    auto perm = unrank_permutation(static_cast<std::uint64_t>(rank), n);
    std::size_t slot = static_cast<std::size_t>(rank) * per_perm;
    visit_masks(lambda, chi, perm, base, type, [&](const Rational& e) { out[slot++] = e; });
  }
  return out;
}

}  // namespace peckit::kernels
