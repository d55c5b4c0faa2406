#include "pec_internal.hpp"

#include <algorithm>
#include <limits>

namespace peckit {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kNotEssentiallyBounded: return "not essentially bounded";
    case FamilyKind::kStrictCrossing: return "strict accumulation crossing";
    case FamilyKind::kNonSummableSide: return "non-summable equality side";
    case FamilyKind::kJplusInfinite: return "J_+ weighted sum infinite";
  }
  return "?";
}

std::string DivergenceFamily::describe() const { return to_string(kind) + ": " + detail; }

namespace {

// One transposition (a, b) or one sign flip (b absent), in original labels.
struct Slot {
  Label a;
  std::optional<Label> b;
};

struct SlotValue {
  Rational energy;
  int flips = 0;          // sign flips the slot carries
  Rational toggle_cost;   // cheapest change of its flip parity
  std::uint64_t depth = 0;
};

class Generator {
 public:
  Generator(const Configuration& config, const DivergenceFamily& family)
      : config_(config), family_(family), signed_(has_sign_changes(config.type())) {
    if (family.via_abs_transform) abs_ = abs_transform_with_origin(config);
  }

  bool cumulative() const { return family_.kind != FamilyKind::kNotEssentiallyBounded; }
  bool parity() const { return config_.type() == RootSystemType::D; }

  Slot step(std::uint64_t s) const {
    const DivergenceFamily& f = family_;
    switch (f.kind) {
      case FamilyKind::kNotEssentiallyBounded: return {back(f.anchor), back(Label{f.block, f.tail, s})};
      case FamilyKind::kStrictCrossing:
        return {back(Label{f.block, f.tail, s}), back(Label{f.partner_block, f.partner_tail, s})};
      case FamilyKind::kNonSummableSide: {
        Label driving{f.block, f.tail, s};
        Label partner{f.partner_block, f.partner_tail, f.partner_squared ? s * s : s};
        return f.driving_first ? Slot{back(driving), back(partner)} : Slot{back(partner), back(driving)};
      }
      case FamilyKind::kJplusInfinite: return {Label{f.block, f.tail, f.start + s}, std::nullopt};
    }
    return {};
  }

  SlotValue value(const Slot& slot) const {
    SlotValue v;
    const Rational la = level_of(config_, slot.a);
    const Rational da = value_of(config_, slot.a);
    v.depth = depth_of(slot.a);
    if (!slot.b) {
      const Rational p = la * da;
      v.energy = -abs(p) - p;
      v.flips = p > 0 ? 1 : 0;
      v.toggle_cost = 2 * abs(p);
      return v;
    }
    const Rational lb = level_of(config_, *slot.b);
    const Rational db = value_of(config_, *slot.b);
    v.depth = std::max(v.depth, depth_of(*slot.b));
    if (!signed_) {
      v.energy = (lb - la) * (da - db);
      return v;
    }
    // (g.x)_a = sigma_a x_b and (g.x)_b = sigma_b x_a with the cheaper signs.
    const Rational pa = la * db;
    const Rational pb = lb * da;
    v.energy = -abs(pa) - abs(pb) - la * da - lb * db;
    v.flips = (pa > 0 ? 1 : 0) + (pb > 0 ? 1 : 0);
    v.toggle_cost = 2 * std::min(abs(pa), abs(pb));
    return v;
  }

  void append(const Slot& slot, Witness& w) const {
    const Index a = static_cast<Index>(w.labels.size()) + 1;
    w.labels.push_back(slot.a);
    std::map<Index, Index> perm = w.element.permutation_part();
    std::set<Index> flips = w.element.flips();
    if (!slot.b) {
      const Rational p = level_of(config_, slot.a) * value_of(config_, slot.a);
      if (p > 0) flips.insert(a);
    } else {
      const Index b = a + 1;
      w.labels.push_back(*slot.b);
      perm[a] = b;
      perm[b] = a;
      if (signed_) {
        if (level_of(config_, slot.a) * value_of(config_, *slot.b) > 0) flips.insert(a);
        if (level_of(config_, *slot.b) * value_of(config_, slot.a) > 0) flips.insert(b);
      }
    }
    w.element = SignedPermutation::from_parts(perm, flips);
  }

 private:
  Label back(const Label& label) const { return abs_ ? abs_->to_original(label) : label; }

  const Configuration& config_;
  const DivergenceFamily& family_;
  bool signed_;
  std::optional<AbsTransform> abs_;
};

// Toggles the flip at the local index whose product lambda_a d_{w(a)} is smallest in size.
void repair_parity(const Configuration& config, Witness& w) {
  std::set<Index> flips = w.element.flips();
  if (flips.size() % 2 == 0) return;
  auto [lambda, chi] = witness_vectors(config, w.labels);
  Index best = 0;
  Rational best_cost;
  for (Index a = 1; a <= static_cast<Index>(w.labels.size()); ++a) {
    Rational cost = abs(lambda.at(a) * chi.at(w.element.perm(a)));
    if (best == 0 || cost < best_cost) {
      best = a;
      best_cost = cost;
    }
  }
  if (best == 0) return;
  if (flips.count(best)) {
    flips.erase(best);
  } else {
    flips.insert(best);
  }
  w.element = SignedPermutation::from_parts(w.element.permutation_part(), flips);
}

}  // namespace

Witness family_element(const Configuration& config, const DivergenceFamily& family, std::uint64_t k) {
  if (k == 0) throw DomainError("family elements are indexed from k = 1");
  Generator gen(config, family);
  Witness w;
  if (!gen.cumulative()) {
    gen.append(gen.step(k), w);
  } else {
    for (std::uint64_t s = 1; s <= k; ++s) {
      Slot slot = gen.step(s);
      if (gen.value(slot).energy < 0) gen.append(slot, w);
    }
  }
  if (gen.parity()) repair_parity(config, w);
  return w;
}

namespace {

// Visits family elements k = 1, 2, ... while visit returns true, the depth
// stays within max_depth and k <= k_max.
template <typename Visit>
void walk(const Configuration& config, const DivergenceFamily& family, std::uint64_t k_max, std::uint64_t max_depth,
          Visit&& visit) {
  Generator gen(config, family);
  Rational sum = 0;
  int flips = 0;
  std::optional<Rational> cheapest;
  std::uint64_t depth = 1;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    SlotValue v = gen.value(gen.step(k));
    if (v.depth > max_depth) break;
    FamilyPoint point;
    point.k = k;
    if (!gen.cumulative()) {
      point.depth = std::max<std::uint64_t>(v.depth, 1);
      point.energy = v.energy + (gen.parity() && v.flips % 2 != 0 ? v.toggle_cost : Rational(0));
    } else {
      if (v.energy < 0) {
        sum += v.energy;
        flips += v.flips;
        depth = std::max(depth, v.depth);
        if (!cheapest || v.toggle_cost < *cheapest) cheapest = v.toggle_cost;
      }
      point.depth = depth;
      point.energy = sum + (gen.parity() && flips % 2 != 0 ? *cheapest : Rational(0));
    }
    if (!visit(std::move(point))) break;
  }
}

}  // namespace

std::vector<FamilyPoint> family_profile(const Configuration& config, const DivergenceFamily& family,
                                        std::uint64_t k_max, std::uint64_t max_depth) {
  std::vector<FamilyPoint> out;
  walk(config, family, k_max, max_depth, [&](FamilyPoint p) {
    out.push_back(std::move(p));
    return true;
  });
  return out;
}

std::optional<FamilyPoint> family_crossing(const Configuration& config, const DivergenceFamily& family,
                                           const Rational& threshold, std::uint64_t max_depth) {
  std::optional<FamilyPoint> hit;
  walk(config, family, std::numeric_limits<std::uint64_t>::max(), max_depth, [&](FamilyPoint p) {
    if (p.energy < threshold) {
      hit = std::move(p);
      return false;
    }
    return true;
  });
  return hit;
}

}  // namespace peckit
