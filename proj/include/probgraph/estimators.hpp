#pragma once

// Cardinality and intersection-cardinality estimators over sketches, plus the
// closed-form deviation bounds that go with them. Everything here is a pure
// function over immutable views; all logarithms are natural.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "probgraph/error.hpp"
#include "probgraph/sketch.hpp"

namespace probgraph {

enum class EstimatorKind {
  ExactMerge,
  ExactGallop,
  BfAnd,
  BfLimit,
  BfOr,
  KHash,
  OneHash,
  Kmv,
};

inline std::string_view to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::ExactMerge: return "exact_merge";
    case EstimatorKind::ExactGallop: return "exact_gallop";
    case EstimatorKind::BfAnd: return "bf_and";
    case EstimatorKind::BfLimit: return "bf_l";
    case EstimatorKind::BfOr: return "bf_or";
    case EstimatorKind::KHash: return "khash";
    case EstimatorKind::OneHash: return "onehash";
    case EstimatorKind::Kmv: return "kmv";
  }
  return "?";
}

inline std::optional<EstimatorKind> parse_estimator_kind(std::string_view s) {
  for (auto k : {EstimatorKind::ExactMerge, EstimatorKind::ExactGallop, EstimatorKind::BfAnd,
                 EstimatorKind::BfLimit, EstimatorKind::BfOr, EstimatorKind::KHash,
                 EstimatorKind::OneHash, EstimatorKind::Kmv}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

constexpr bool is_exact(EstimatorKind k) noexcept {
  return k == EstimatorKind::ExactMerge || k == EstimatorKind::ExactGallop;
}

// The sketch an estimator reads. Exact kinds read raw CSR neighborhoods.
inline SketchKind required_sketch(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::BfAnd:
    case EstimatorKind::BfLimit:
    case EstimatorKind::BfOr: return SketchKind::Bloom;
    case EstimatorKind::KHash: return SketchKind::KHash;
    case EstimatorKind::OneHash: return SketchKind::OneHash;
    case EstimatorKind::Kmv: return SketchKind::Kmv;
    default: break;
  }
  throw ContractViolation("exact estimators do not use sketches");
}

// ---------------------------------------------------------------------------
// Single-set estimators

// -(B/b) ln(1 - B~1/B) with B~1 = ones - [ones == B], which keeps the
// estimate finite on a saturated filter.
inline double swamidass(std::uint64_t bits, std::uint64_t ones, std::uint32_t b) noexcept {
  if (bits == 0 || ones == 0) return 0.0;
  const double B = static_cast<double>(bits);
  const double fixed = static_cast<double>(ones == bits ? ones - 1 : ones);
  return -(B / b) * std::log1p(-fixed / B);
}

inline double est_single_swamidass(const BloomView& s) noexcept {
  return swamidass(s.bits(), s.ones(), s.b);
}

// delta * ones; delta = 1/b gives the limiting estimator.
inline double est_single_delta_class(std::uint64_t ones, double delta) {
  if (delta < 0.0) throw ContractViolation("delta must be non-negative");
  return delta * static_cast<double>(ones);
}

inline double est_single_limit(const BloomView& s) noexcept {
  return static_cast<double>(s.ones()) / s.b;
}

// (k - 1) / max(K_X); exact when the sketch holds the whole set.
inline double est_single_kmv(const KmvView& s) noexcept {
  if (s.complete || s.values.size() < 2) return static_cast<double>(s.values.size());
  return static_cast<double>(s.k - 1) / s.values.back();
}

// ---------------------------------------------------------------------------
// Bloom filter intersections

inline void check_compatible(const BloomView& x, const BloomView& y) {
  if (x.words.size() != y.words.size() || x.b != y.b || x.family_seed != y.family_seed) {
    throw ContractViolation("Bloom sketches differ in size, hash count or hash family");
  }
}

inline std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t words) noexcept {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline std::uint64_t or_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                 std::size_t words) noexcept {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i] | b[i]));
  return c;
}

// Swamidass estimate of the filter B_X AND B_Y.
inline double est_intersection_bf_and(const BloomView& x, const BloomView& y) {
  check_compatible(x, y);
  return swamidass(x.bits(), and_popcount(x.words.data(), y.words.data(), x.words.size()), x.b);
}

// popcount(B_X AND B_Y) / b.
inline double est_intersection_bf_limit(const BloomView& x, const BloomView& y) {
  check_compatible(x, y);
  return static_cast<double>(and_popcount(x.words.data(), y.words.data(), x.words.size())) / x.b;
}

// |X| + |Y| - swamidass(B_X OR B_Y); may be negative.
inline double est_intersection_bf_or_raw(const BloomView& x, const BloomView& y,
                                         std::size_t size_x, std::size_t size_y) {
  check_compatible(x, y);
  const auto ones = or_popcount(x.words.data(), y.words.data(), x.words.size());
  return static_cast<double>(size_x + size_y) - swamidass(x.bits(), ones, x.b);
}

inline double est_intersection_bf_or(const BloomView& x, const BloomView& y, std::size_t size_x,
                                     std::size_t size_y) {
  return std::max(0.0, est_intersection_bf_or_raw(x, y, size_x, size_y));
}

// ---------------------------------------------------------------------------
// MinHash

// Fraction of positions where both sketches picked the same element.
// Two empty sketches (or one empty) give 0.
inline double est_jaccard_minhash(const KHashView& x, const KHashView& y) {
  if (x.entries.empty() || y.entries.empty()) return 0.0;
  if (x.entries.size() != y.entries.size() || x.family_seed != y.family_seed) {
    throw ContractViolation("k-Hash sketches differ in k or hash family");
  }
  std::size_t matches = 0;
  for (std::size_t i = 0; i < x.entries.size(); ++i) matches += x.entries[i] == y.entries[i];
  return static_cast<double>(matches) / static_cast<double>(x.entries.size());
}

struct OneHashSample {
  std::size_t shared = 0;   // sampled elements present in both sets
  std::size_t sampled = 0;  // sampled elements of the union
};

// Bottom-k sample of X ∪ Y: every union element whose (h, id) key is at most
// the smaller of the two sketch thresholds. A sketch that holds its whole set
// imposes no threshold, so two complete sketches sample the union exactly.
inline OneHashSample onehash_sample(const OneHashView& x, const OneHashView& y) {
  if (x.k != y.k || !(x.fn == y.fn)) {
    throw ContractViolation("1-Hash sketches differ in k or hash function");
  }
  using Key = std::pair<std::uint64_t, vertex_t>;
  constexpr Key kInf{std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<vertex_t>::max()};
  auto key_of = [&](vertex_t v) { return Key{x.fn.word(v), v}; };
  const Key tx = x.complete || x.entries.empty() ? kInf : key_of(x.entries.back());
  const Key ty = y.complete || y.entries.empty() ? kInf : key_of(y.entries.back());
  const Key tau = std::min(tx, ty);

  OneHashSample out;
  std::size_t i = 0, j = 0;
  Key kx = i < x.entries.size() ? key_of(x.entries[i]) : kInf;
  Key ky = j < y.entries.size() ? key_of(y.entries[j]) : kInf;
  while (true) {
    const Key next = std::min(kx, ky);
    if (next == kInf || tau < next) break;
    ++out.sampled;
    if (kx == ky) {
      ++out.shared;
      ++i;
      ++j;
      kx = i < x.entries.size() ? key_of(x.entries[i]) : kInf;
      ky = j < y.entries.size() ? key_of(y.entries[j]) : kInf;
    } else if (kx < ky) {
      ++i;
      kx = i < x.entries.size() ? key_of(x.entries[i]) : kInf;
    } else {
      ++j;
      ky = j < y.entries.size() ? key_of(y.entries[j]) : kInf;
    }
  }
  return out;
}

inline double est_jaccard_minhash(const OneHashView& x, const OneHashView& y) {
  const auto s = onehash_sample(x, y);
  return s.sampled == 0 ? 0.0 : static_cast<double>(s.shared) / static_cast<double>(s.sampled);
}

// J / (1 + J) * (|X| + |Y|), from |X ∪ Y| = |X| + |Y| - |X ∩ Y|.
constexpr double jaccard_to_intersection(double j, std::size_t size_x, std::size_t size_y) noexcept {
  return j / (1.0 + j) * static_cast<double>(size_x + size_y);
}

namespace detail {

// shared / sampled turned into an intersection without rounding through J, so
// that a complete sample (sampled + shared == |X| + |Y|) returns `shared` exactly.
inline double ratio_to_intersection(std::size_t shared, std::size_t sampled, std::size_t size_x,
                                    std::size_t size_y) noexcept {
  if (shared == 0) return 0.0;
  return static_cast<double>(shared) * static_cast<double>(size_x + size_y) /
         static_cast<double>(sampled + shared);
}

}  // namespace detail

inline double est_intersection_minhash(const KHashView& x, const KHashView& y, std::size_t size_x,
                                       std::size_t size_y) {
  const double j = est_jaccard_minhash(x, y);
  const auto matches = static_cast<std::size_t>(std::llround(j * static_cast<double>(x.entries.size())));
  return detail::ratio_to_intersection(matches, x.entries.size(), size_x, size_y);
}

inline double est_intersection_minhash(const OneHashView& x, const OneHashView& y,
                                       std::size_t size_x, std::size_t size_y) {
  const auto s = onehash_sample(x, y);
  return detail::ratio_to_intersection(s.shared, s.sampled, size_x, size_y);
}

// ---------------------------------------------------------------------------
// KMV

// |X ∪ Y| from the k smallest distinct hashes of K_X ∪ K_Y. When both
// sketches hold their whole sets the union is counted exactly.
inline double est_union_kmv(const KmvView& x, const KmvView& y) {
  if (x.k != y.k || x.family_seed != y.family_seed) {
    throw ContractViolation("KMV sketches differ in k or hash family");
  }
  const bool exact = x.complete && y.complete;
  std::size_t i = 0, j = 0, taken = 0;
  double last = 0.0;
  while ((i < x.values.size() || j < y.values.size()) && (exact || taken < x.k)) {
    double v;
    if (j >= y.values.size() || (i < x.values.size() && x.values[i] < y.values[j])) {
      v = x.values[i++];
    } else if (i >= x.values.size() || y.values[j] < x.values[i]) {
      v = y.values[j++];
    } else {
      v = x.values[i++];
      ++j;
    }
    last = v;
    ++taken;
  }
  if (exact || taken < 2 || taken < x.k) return static_cast<double>(taken);
  return static_cast<double>(x.k - 1) / last;
}

// |X| + |Y| - |X ∪ Y|^; may fall outside [0, min(|X|, |Y|)].
inline double est_intersection_kmv_raw(const KmvView& x, const KmvView& y, std::size_t size_x,
                                       std::size_t size_y) {
  return static_cast<double>(size_x + size_y) - est_union_kmv(x, y);
}

inline double est_intersection_kmv(const KmvView& x, const KmvView& y, std::size_t size_x,
                                   std::size_t size_y) {
  const double raw = est_intersection_kmv_raw(x, y, size_x, size_y);
  return std::clamp(raw, 0.0, static_cast<double>(std::min(size_x, size_y)));
}

// ---------------------------------------------------------------------------
// Deviation bounds

struct BoundQuery {
  double bits = 0;        // B_X (Bloom)
  double b = 1;           // hash functions (Bloom)
  double k = 0;           // MinHash sketch size
  double size_x = 0;
  double size_y = 0;
  double intersection = 0;
  double union_size = 0;
  double max_degree = 0;
  double m = 0;
  double t = 0;
};

// A bound is either a number or a reason why the query is outside the
// regime the bound was derived for.
struct BoundValue {
  std::optional<double> value;
  std::string reason;

  bool in_regime() const noexcept { return value.has_value(); }

  static BoundValue of(double v) { return {v, {}}; }
  static BoundValue out_of_regime(std::string why) { return {std::nullopt, std::move(why)}; }
};

namespace detail {

// (e^{c b / (B - 1)} - 1) B / b^2 - c / b, evaluated with expm1.
inline double bf_mse_expression(double bits, double b, double c) {
  return std::expm1(c * b / (bits - 1.0)) * bits / (b * b) - c / b;
}

inline std::optional<std::string> bf_regime_violation(double bits, double b, double c) {
  if (bits < 2 || b < 1) return "need B_X >= 2 and b >= 1";
  if (b > std::sqrt(bits)) return "b exceeds sqrt(B_X)";
  if (b * c > 0.499 * bits * std::log(bits)) return "b*|X∩Y| exceeds 0.499*B_X*ln(B_X)";
  return std::nullopt;
}

}  // namespace detail

// MSE bound of the AND estimator (up to a 1 + o(1) factor), using
// q.bits, q.b and q.intersection.
inline BoundValue bound_bf_mse(const BoundQuery& q) {
  if (auto why = detail::bf_regime_violation(q.bits, q.b, q.intersection)) {
    return BoundValue::out_of_regime(*why);
  }
  return BoundValue::of(std::max(0.0, detail::bf_mse_expression(q.bits, q.b, q.intersection)));
}

// Chebyshev form: P(|est - |X∩Y|| >= t) <= MSE / t^2, capped at 1.
inline BoundValue bound_bf_deviation(const BoundQuery& q) {
  auto mse = bound_bf_mse(q);
  if (!mse.in_regime()) return mse;
  if (q.t <= 0) return BoundValue::of(1.0);
  return BoundValue::of(std::min(1.0, *mse.value / (q.t * q.t)));
}

// min(1, 2 exp(-2 k t^2 / (|X| + |Y|)^2)), shared by k-Hash and 1-Hash.
inline double bound_minhash_tail(double k, double size_x, double size_y, double t) {
  const double total = size_x + size_y;
  if (t <= 0) return 1.0;
  if (total <= 0) return 0.0;
  return std::min(1.0, 2.0 * std::exp(-2.0 * k * t * t / (total * total)));
}

struct TcBoundInputs {
  double m = 0;
  double max_degree = 0;
  double sum_d2 = 0;
  double sum_d3 = 0;
  double bits = 0;
  double b = 1;
  double k = 0;
};

inline TcBoundInputs tc_bound_inputs(const DegreeStats& s, std::size_t m) {
  TcBoundInputs in;
  in.m = static_cast<double>(m);
  in.max_degree = static_cast<double>(s.max_degree);
  in.sum_d2 = static_cast<double>(s.sum_d2);
  in.sum_d3 = static_cast<double>(s.sum_d3);
  return in;
}

enum class TcBoundForm {
  SquaredDegrees,  // 2 exp(-18 k t^2 / (sum d^2)^2)
  CubedDegrees,    // 2 exp(-9 k t^2 / (4 (Δ + 1) sum d^3))
};

// P(|TC - TC^| >= t) for the per-edge triangle estimator built on `kind`.
inline BoundValue bound_tc(EstimatorKind kind, const TcBoundInputs& in, double t,
                           TcBoundForm form = TcBoundForm::SquaredDegrees) {
  switch (kind) {
    case EstimatorKind::ExactMerge:
    case EstimatorKind::ExactGallop: return BoundValue::of(t > 0 ? 0.0 : 1.0);
    case EstimatorKind::BfAnd: {
      const double B = in.bits, b = in.b, delta = in.max_degree;
      if (B < 2 || b < 1) return BoundValue::out_of_regime("need B_X >= 2 and b >= 1");
      if (b * delta > 0.499 * B * std::log(B)) {
        return BoundValue::out_of_regime("b*Δ exceeds 0.499*B_X*ln(B_X)");
      }
      if (t <= 0) return BoundValue::of(1.0);
      const double mse = std::max(0.0, detail::bf_mse_expression(B, b, delta));
      return BoundValue::of(std::min(1.0, 2.0 * in.m * in.m * mse / (9.0 * t * t)));
    }
    case EstimatorKind::KHash:
    case EstimatorKind::OneHash: {
      if (t <= 0) return BoundValue::of(1.0);
      double exponent;
      if (form == TcBoundForm::SquaredDegrees) {
        if (in.sum_d2 <= 0) return BoundValue::of(0.0);
        exponent = 18.0 * in.k * t * t / (in.sum_d2 * in.sum_d2);
      } else {
        if (in.sum_d3 <= 0) return BoundValue::of(0.0);
        exponent = 9.0 * in.k * t * t / (4.0 * (in.max_degree + 1.0) * in.sum_d3);
      }
      return BoundValue::of(std::min(1.0, 2.0 * std::exp(-exponent)));
    }
    default: break;
  }
  return BoundValue::out_of_regime("no triangle-count bound for estimator " +
                                   std::string(to_string(kind)));
}

}  // namespace probgraph
