#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lonely/rational.hpp"

namespace lonely {

/// Largest normalized speed the engine accepts. Candidate arithmetic forms
/// m * v with m < 2V and v <= V, which stays below 2^62.
inline constexpr std::int64_t kMaxSpeed = std::int64_t{1} << 30;

/// Largest common offset denominator accepted by the shifted solvers.
inline constexpr std::int64_t kMaxOffsetDenominator = std::int64_t{1} << 30;

/// Sorted, pairwise-distinct positive speeds with overall gcd 1, plus the
/// common factor that normalization divided out. Only normalize() builds one.
class SpeedSet {
 public:
  [[nodiscard]] std::span<const std::int64_t> speeds() const { return speeds_; }
  [[nodiscard]] std::int64_t scale() const { return scale_; }
  [[nodiscard]] std::size_t size() const { return speeds_.size(); }
  [[nodiscard]] std::int64_t operator[](std::size_t i) const { return speeds_[i]; }
  [[nodiscard]] std::int64_t max_speed() const { return speeds_.back(); }

  friend bool operator==(const SpeedSet&, const SpeedSet&) = default;

 private:
  friend SpeedSet normalize(std::span<const std::int64_t> raw_speeds);
  std::vector<std::int64_t> speeds_;
  std::int64_t scale_ = 1;
};

/// Sorts, divides out the gcd and records it as scale. Loneliness is
/// invariant under both, so the result has the same ML as the input.
///
/// Throws DomainError for an empty list, a non-positive speed or a repeated
/// speed, and ArithmeticOverflow when the largest normalized speed exceeds
/// kMaxSpeed.
SpeedSet normalize(std::span<const std::int64_t> raw_speeds);

/// Sorted copy of raw_speeds with repeats removed. Used by front ends that
/// accept loose input; the library itself rejects repeats.
std::vector<std::int64_t> dedupe_speeds(std::span<const std::int64_t> raw_speeds);

/// Index pair (i, j) into a speed list, i <= j.
using RunnerPair = std::pair<std::size_t, std::size_t>;

enum class ResultMode { exact, at_least_floor };

/// Outcome of a loneliness computation.
///
/// In exact mode `value` is the maximum loneliness and the objective at
/// `witness_time` equals it. In at-least-floor mode `value` holds the floor
/// that was reached and `witness_time` is the first time reaching it.
struct LonelinessResult {
  Rational value;
  Rational witness_time;
  std::optional<RunnerPair> witness_pair;  // none for a single runner
  ResultMode mode = ResultMode::exact;

  [[nodiscard]] bool exact() const { return mode == ResultMode::exact; }
  friend bool operator==(const LonelinessResult&, const LonelinessResult&) = default;
};

/// min_i ||t * v_i||, evaluated with Rational arithmetic.
Rational loneliness_at(std::span<const std::int64_t> speeds, const Rational& t);

/// Candidate time m / (v_i + v_j) for the runner pair (i, j).
struct Candidate {
  std::int64_t m = 0;
  std::int64_t denominator = 0;
  RunnerPair pair;

  [[nodiscard]] Rational time() const { return Rational(m, denominator); }
};

/// Single-pass stream over every candidate time m / (v_i + v_j), i < j,
/// 1 <= m <= floor((v_i + v_j) / 2). Pairs are visited in order of
/// increasing sum (ties by index), then m ascending. Because the objective
/// is 1-periodic and symmetric under t -> 1 - t, the half range contains a
/// global maximizer whenever the speeds are coprime.
class CandidateTimes {
 public:
  class Iterator {
   public:
    using value_type = Candidate;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    const Candidate& operator*() const { return current_; }
    const Candidate* operator->() const { return &current_; }
    Iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const Iterator& it, std::default_sentinel_t) { return it.owner_ == nullptr; }

   private:
    friend class CandidateTimes;
    explicit Iterator(const CandidateTimes* owner);
    void load_pair();

    const CandidateTimes* owner_ = nullptr;
    std::size_t pair_index_ = 0;
    Candidate current_;
  };

  explicit CandidateTimes(const SpeedSet& speeds);

  [[nodiscard]] Iterator begin() const { return Iterator(this); }
  [[nodiscard]] std::default_sentinel_t end() const { return {}; }

 private:
  std::vector<RunnerPair> pairs_;  // sorted by (v_i + v_j, i, j)
  std::vector<std::int64_t> sums_;
};

/// Candidate-time stream for a speed set; requires at least two speeds.
CandidateTimes candidate_times(const SpeedSet& speeds);

/// Exact maximum loneliness. Ties between maximizers go to the smallest
/// pair-sum denominator, then the smallest m. A single runner yields 1/2.
LonelinessResult compute_ml(const SpeedSet& speeds);

/// Like compute_ml, but returns in at-least-floor mode as soon as some
/// candidate reaches `floor`. Throws DomainError unless 0 < floor <= 1/2.
LonelinessResult compute_ml_with_floor(const SpeedSet& speeds, const Rational& floor);

/// Independent check of compute_ml: maximizes over every breakpoint of the
/// piecewise-linear objective on a full period (t = m/(2v_i),
/// m/(v_i + v_j), m/(v_j - v_i)) using Rational evaluation only.
LonelinessResult oracle_ml(const SpeedSet& speeds);

/// Runners with individual starting points: runner i sits at
/// offsets[i] + t * speeds[i].
class ShiftedInstance {
 public:
  /// Throws DomainError unless speeds are distinct and positive, sizes agree,
  /// and every offset lies in [0, 1). ArithmeticOverflow when a speed exceeds
  /// kMaxSpeed or the offsets' common denominator exceeds kMaxOffsetDenominator.
  ShiftedInstance(std::vector<std::int64_t> speeds, std::vector<Rational> offsets);

  [[nodiscard]] std::span<const std::int64_t> speeds() const { return speeds_; }
  [[nodiscard]] std::span<const Rational> offsets() const { return offsets_; }
  /// Least common denominator Q of the offsets.
  [[nodiscard]] std::int64_t common_denominator() const { return common_den_; }
  /// Offsets scaled by Q, i.e. offsets[i] = scaled_offsets()[i] / Q.
  [[nodiscard]] std::span<const std::int64_t> scaled_offsets() const { return scaled_; }
  [[nodiscard]] std::size_t size() const { return speeds_.size(); }

 private:
  std::vector<std::int64_t> speeds_;
  std::vector<Rational> offsets_;
  std::vector<std::int64_t> scaled_;
  std::int64_t common_den_ = 1;
};

/// min_i ||t * v_i + s_i||, evaluated with Rational arithmetic.
Rational shifted_loneliness_at(const ShiftedInstance& inst, const Rational& t);

/// Exact max over t of min_i ||t * v_i + s_i||, searching
/// t = (m - s_i - s_j) / (v_i + v_j) in [0, 1) for every i <= j. The i == j
/// candidates cover a runner alone at its antipode.
LonelinessResult shifted_ml(const ShiftedInstance& inst);

/// Breakpoint-superset cross-check for shifted_ml: every t in [0, 1) where
/// some runner is at 0 or 1/2, or two runners are at equal distance.
LonelinessResult shifted_oracle(const ShiftedInstance& inst);

/// Whether shifting t by h/g leaves min(||t v1||, ||t v2||) unchanged.
/// Always true when g divides both speeds; DomainError otherwise.
bool prejump_invariant(std::int64_t v1, std::int64_t v2, std::int64_t g, const Rational& t, std::int64_t h);

}  // namespace lonely
