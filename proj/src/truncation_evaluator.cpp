#include "peckit/estimator.hpp"

#include <algorithm>
#include <numeric>

namespace peckit {

namespace {

// Keys are d (type A) or |d| (signed types). A source is the finite part of
// a block or one tail; within a source the keys are monotone in s.
struct Source {
  std::size_t block = 0;
  bool tail = false;
  // Finite sources: keys sorted decreasingly. Tails: keys[s - 1] for s = 1..K.
  std::vector<Rational> keys;
  std::vector<Rational> prefix;  // prefix[c] = keys[0] + ... + keys[c - 1]
  bool increasing = false;       // tails whose keys grow with s

  // Raw data for the dot product and the D parity term.
  std::vector<Rational> raw_prefix;  // tails only
  Rational raw_total;                // finite only
  std::vector<std::uint32_t> positive_prefix, zero_prefix;
  std::uint64_t positives = 0, zeros = 0;

  std::size_t ge(const Rational& x) const { return count_prefix(x, false); }
  std::size_t gt(const Rational& x) const { return count_prefix(x, true); }

  std::uint64_t count(const Rational& x, std::uint64_t k, bool strict) const {
    if (!tail) return count_prefix(x, strict);
    if (!increasing) return std::min<std::uint64_t>(count_prefix(x, strict), k);
    // Keys >= x form a suffix of 1..K; keep the part inside 1..k.
    const std::uint64_t below = keys.size() - count_suffix(x, strict);
    return k > below ? k - below : 0;
  }

  // Sum of the c largest keys among the first k.
  Rational top(std::uint64_t c, std::uint64_t k) const {
    if (!tail || !increasing) return prefix[c];
    return prefix[k] - prefix[k - c];
  }

  Rational raw_sum(std::uint64_t k) const { return tail ? raw_prefix[k] : raw_total; }
  std::uint64_t positive(std::uint64_t k) const { return tail ? positive_prefix[k] : positives; }
  std::uint64_t zero(std::uint64_t k) const { return tail ? zero_prefix[k] : zeros; }
  const Rational& min_key(std::uint64_t k) const {
    if (!tail) return keys.back();
    return increasing ? keys.front() : keys[k - 1];
  }

 private:
  // Number of leading keys (decreasing order) that are >= x, or > x.
  std::size_t count_prefix(const Rational& x, bool strict) const {
    auto it = strict ? std::partition_point(keys.begin(), keys.end(), [&](const Rational& v) { return v > x; })
                     : std::partition_point(keys.begin(), keys.end(), [&](const Rational& v) { return v >= x; });
    return static_cast<std::size_t>(it - keys.begin());
  }
  // Number of trailing keys (increasing order) that are >= x, or > x.
  std::size_t count_suffix(const Rational& x, bool strict) const {
    auto it = strict ? std::partition_point(keys.begin(), keys.end(), [&](const Rational& v) { return v <= x; })
                     : std::partition_point(keys.begin(), keys.end(), [&](const Rational& v) { return v < x; });
    return static_cast<std::size_t>(keys.end() - it);
  }
};

}  // namespace

struct TruncationEvaluator::Impl {
  RootSystemType type = RootSystemType::A;
  bool signed_type = false;
  std::uint64_t max_depth = 0;
  std::vector<Source> sources;
  std::vector<Rational> levels;            // per block
  std::vector<std::size_t> finite_counts;  // per block
  std::vector<std::size_t> tail_counts;    // per block
  // Blocks in the order in which they receive the largest keys.
  std::vector<std::size_t> order;
  std::vector<Rational> weights;  // lambda (A) or |lambda| (signed), per order slot
  std::vector<Rational> distinct;  // all keys at max_depth, decreasing, unique
  std::optional<Rational> min_abs_level;
  bool zero_level_entries = false;

  std::size_t block_size(std::size_t b, std::uint64_t k) const { return finite_counts[b] + tail_counts[b] * k; }

  // Sum of the c largest keys at depth k.
  Rational top_sum(std::uint64_t c, std::uint64_t k) const {
    if (c == 0) return 0;
    auto count_ge = [&](const Rational& x) {
      std::uint64_t n = 0;
      for (const Source& src : sources) n += src.count(x, k, false);
      return n;
    };
    // The c-th largest key is the largest distinct value with count_ge >= c.
    std::size_t lo = 0, hi = distinct.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (count_ge(distinct[mid]) >= c) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const Rational& x = distinct[lo];
    Rational sum = 0;
    std::uint64_t above = 0;
    for (const Source& src : sources) {
      const std::uint64_t n = src.count(x, k, true);
      above += n;
      sum += src.top(n, k);
    }
    sum += Rational(static_cast<long>(c - above)) * x;
    return sum;
  }

  Rational infimum(std::uint64_t k) const {
    if (k == 0 || k > max_depth) {
      throw DomainError("depth " + std::to_string(k) + " outside 1.." + std::to_string(max_depth));
    }
    Rational paired = 0;
    Rational previous = 0;
    std::uint64_t boundary = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::uint64_t n = block_size(order[i], k);
      if (n == 0) continue;
      boundary += n;
      Rational current = top_sum(boundary, k);
      paired += weights[i] * (current - previous);
      previous = std::move(current);
    }
    Rational dot = 0;
    for (const Source& src : sources) dot += levels[src.block] * src.raw_sum(k);
    if (!signed_type) return paired - dot;
    Rational value = -paired - dot;
    if (type == RootSystemType::D) value += parity_penalty(k);
    return value;
  }

  Rational parity_penalty(std::uint64_t k) const {
    if (zero_level_entries) return 0;
    std::uint64_t odd = 0;
    for (std::size_t b = 0; b < levels.size(); ++b) {
      if (levels[b] < 0) odd += block_size(b, k);
    }
    std::optional<Rational> min_abs_d;
    for (const Source& src : sources) {
      if (src.zero(k) > 0) return 0;
      odd += src.positive(k);
      const Rational& m = src.min_key(k);
      if (!min_abs_d || m < *min_abs_d) min_abs_d = m;
    }
    if (odd % 2 == 0 || !min_abs_d) return 0;
    return 2 * *min_abs_level * *min_abs_d;
  }
};

bool TruncationEvaluator::supports(const Configuration& config, const EstimatorOptions& options) {
  return config.type() != RootSystemType::D || options.d_closed_form;
}

TruncationEvaluator::TruncationEvaluator(const Configuration& config, std::uint64_t max_depth,
                                         const EstimatorOptions& options)
    : impl_(std::make_unique<Impl>()) {
  if (!supports(config, options)) {
    throw DomainError("type D truncations need enumeration unless the closed form is enabled");
  }
  if (max_depth == 0) throw DomainError("truncation depth must be >= 1");
  Impl& m = *impl_;
  m.type = config.type();
  m.signed_type = has_sign_changes(m.type);
  m.max_depth = max_depth;
  const std::uint64_t K = max_depth;
  auto key_of = [&](const Rational& d) { return m.signed_type ? Rational(abs(d)) : d; };

  for (std::size_t b = 0; b < config.blocks().size(); ++b) {
    const Block& block = config.block(b);
    m.levels.push_back(block.level);
    m.finite_counts.push_back(block.finite.size());
    m.tail_counts.push_back(block.tails.size());
    if (!block.finite.empty() || !block.tails.empty()) {
      if (block.level == 0) m.zero_level_entries = true;
      const Rational a = abs(block.level);
      if (!m.min_abs_level || a < *m.min_abs_level) m.min_abs_level = a;
    }
    if (!block.finite.empty()) {
      Source src;
      src.block = b;
      for (const Rational& d : block.finite) {
        src.keys.push_back(key_of(d));
        src.raw_total += d;
        src.positives += d > 0;
        src.zeros += d == 0;
      }
      std::sort(src.keys.begin(), src.keys.end(), std::greater<>());
      m.sources.push_back(std::move(src));
    }
    for (const Tail& tail : block.tails) {
      Source src;
      src.block = b;
      src.tail = true;
      src.keys.reserve(K);
      src.raw_prefix.reserve(K + 1);
      src.raw_prefix.push_back(0);
      src.positive_prefix.assign(1, 0);
      src.zero_prefix.assign(1, 0);
      for (std::uint64_t s = 1; s <= K; ++s) {
        Rational d = tail.entry(s);
        src.raw_prefix.push_back(src.raw_prefix.back() + d);
        src.positive_prefix.push_back(src.positive_prefix.back() + (d > 0));
        src.zero_prefix.push_back(src.zero_prefix.back() + (d == 0));
        src.keys.push_back(key_of(d));
      }
      src.increasing = src.keys.front() < src.keys.back();
      m.sources.push_back(std::move(src));
    }
  }
  for (Source& src : m.sources) {
    src.prefix.resize(src.keys.size() + 1);
    src.prefix[0] = 0;
    for (std::size_t i = 0; i < src.keys.size(); ++i) src.prefix[i + 1] = src.prefix[i] + src.keys[i];
    m.distinct.insert(m.distinct.end(), src.keys.begin(), src.keys.end());
  }
  std::sort(m.distinct.begin(), m.distinct.end(), std::greater<>());
  m.distinct.erase(std::unique(m.distinct.begin(), m.distinct.end()), m.distinct.end());

  // A pairs increasing lambda with decreasing d; signed types pair the
  // largest |lambda| with the largest |d|.
  m.order.resize(m.levels.size());
  std::iota(m.order.begin(), m.order.end(), 0);
  if (m.signed_type) {
    std::stable_sort(m.order.begin(), m.order.end(),
                     [&](std::size_t x, std::size_t y) { return abs(m.levels[x]) > abs(m.levels[y]); });
  } else {
    std::stable_sort(m.order.begin(), m.order.end(),
                     [&](std::size_t x, std::size_t y) { return m.levels[x] < m.levels[y]; });
  }
  for (std::size_t b : m.order) m.weights.push_back(m.signed_type ? Rational(abs(m.levels[b])) : m.levels[b]);
}

TruncationEvaluator::~TruncationEvaluator() = default;
TruncationEvaluator::TruncationEvaluator(TruncationEvaluator&&) noexcept = default;
TruncationEvaluator& TruncationEvaluator::operator=(TruncationEvaluator&&) noexcept = default;

std::uint64_t TruncationEvaluator::max_depth() const { return impl_->max_depth; }

std::size_t TruncationEvaluator::support_size(std::uint64_t depth) const {
  std::size_t n = 0;
  for (std::size_t b = 0; b < impl_->levels.size(); ++b) n += impl_->block_size(b, depth);
  return n;
}

Rational TruncationEvaluator::infimum(std::uint64_t depth) const {
  if (impl_->distinct.empty()) return 0;
  return impl_->infimum(depth);
}

std::vector<Rational> TruncationEvaluator::profile(std::span<const std::uint64_t> depths) const {
  std::vector<Rational> out(depths.size());
  for (std::uint64_t k : depths) {
    if (k == 0 || k > impl_->max_depth) (void)impl_->infimum(k);  // throws outside the range
  }
  const long n = static_cast<long>(depths.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) out[i] = infimum(depths[i]);
  return out;
}

std::vector<Rational> TruncationEvaluator::profile_serial(std::span<const std::uint64_t> depths) const {
  std::vector<Rational> out;
  out.reserve(depths.size());
  for (std::uint64_t k : depths) out.push_back(infimum(k));
  return out;
}

Rational truncated_infimum_reference(const Configuration& config, std::uint64_t depth,
                                     const EstimatorOptions& options) {
  const Truncation t = truncate(config, depth);
  return exact_finite_infimum(t.lambda, t.chi, t.support(), config.type(), options.infimum_options());
}

Rational truncated_infimum(const Configuration& config, std::uint64_t depth, const EstimatorOptions& options) {
  if (!TruncationEvaluator::supports(config, options)) return truncated_infimum_reference(config, depth, options);
  return TruncationEvaluator(config, depth, options).infimum(depth);
}

}  // namespace peckit
