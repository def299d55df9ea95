#include "lonely/loneliness.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace lonely {
namespace {

const Rational kHalf(1, 2);

std::vector<RunnerPair> pairs_by_sum(std::span<const std::int64_t> v, bool include_diagonal) {
  std::vector<RunnerPair> pairs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = include_diagonal ? i : i + 1; j < v.size(); ++j) pairs.emplace_back(i, j);
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](const RunnerPair& a, const RunnerPair& b) {
    return v[a.first] + v[a.second] < v[b.first] + v[b.second];
  });
  return pairs;
}

// Tracks the best value best_num / best_den seen so far, where candidate
// values are dist / den with a shared denominator per pair.
struct Best {
  int128 num = -1;
  int128 den = 1;
  Rational time;
  RunnerPair pair;

  // dist / den strictly greater than the current best.
  [[nodiscard]] bool beaten_by(int128 dist, int128 den_) const { return dist * den > num * den_; }
};

LonelinessResult single_runner(std::int64_t speed, const std::optional<Rational>& floor) {
  LonelinessResult r;
  r.value = kHalf;
  r.witness_time = Rational(1, 2 * speed);
  if (floor) {
    r.value = *floor;
    r.mode = ResultMode::at_least_floor;
  }
  return r;
}

LonelinessResult search_candidates(const SpeedSet& speeds, const std::optional<Rational>& floor) {
  const auto v = speeds.speeds();
  if (v.size() == 1) return single_runner(v[0], floor);

  const auto pairs = pairs_by_sum(v, false);
  std::vector<std::int64_t> residues(v.size());
  std::vector<std::int64_t> steps(v.size());
  Best best;
  std::int64_t last_sum = -1;

  for (const auto& pair : pairs) {
    const std::int64_t d = v[pair.first] + v[pair.second];
    // Equal sums generate identical times; the first pair in index order owns them.
    if (d == last_sum) continue;
    last_sum = d;

    std::fill(residues.begin(), residues.end(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) steps[k] = v[k] % d;
    for (std::int64_t m = 1; m <= d / 2; ++m) {
      std::int64_t dist = d;
      bool pruned = false;
      for (std::size_t k = 0; k < v.size(); ++k) {
        std::int64_t r = residues[k] + steps[k];
        if (r >= d) r -= d;
        residues[k] = r;
        if (pruned) continue;
        dist = std::min({dist, r, d - r});
        if (!best.beaten_by(dist, d)) pruned = true;
      }
      if (pruned) continue;

      best.num = dist;
      best.den = d;
      best.time = Rational(m, d);
      best.pair = pair;

      if (floor && dist * static_cast<int128>(floor->den()) >= static_cast<int128>(floor->num()) * d) {
        return {*floor, best.time, best.pair, ResultMode::at_least_floor};
      }
      if (2 * dist == d) {
        // 1/2 is the global ceiling.
        return {kHalf, best.time, best.pair, ResultMode::exact};
      }
    }
  }
  return {Rational::from_wide(best.num, best.den), best.time, best.pair, ResultMode::exact};
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b, std::int64_t limit) {
  const int128 l = static_cast<int128>(a / std::gcd(a, b)) * b;
  if (l > limit) throw ArithmeticOverflow("offset common denominator exceeds " + std::to_string(limit));
  return static_cast<std::int64_t>(l);
}

// Calls fn(t) for the d times t in [0, 1) with t * d + c integral.
template <typename Fn>
void for_each_shifted_time(const Rational& c, std::int64_t d, Fn&& fn) {
  const std::int64_t m0 = c.ceil();
  for (std::int64_t m = m0; m < m0 + d; ++m) fn((Rational(m) - c) / Rational(d));
}

}  // namespace

SpeedSet normalize(std::span<const std::int64_t> raw_speeds) {
  if (raw_speeds.empty()) throw DomainError("speed list is empty");
  std::vector<std::int64_t> sorted(raw_speeds.begin(), raw_speeds.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() <= 0) {
    throw DomainError("speeds must be positive, got " + std::to_string(sorted.front()));
  }
  if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw DomainError("duplicate speed " + std::to_string(*dup));
  }
  std::int64_t g = 0;
  for (const auto s : sorted) g = std::gcd(g, s);
  for (auto& s : sorted) s /= g;
  if (sorted.back() > kMaxSpeed) {
    throw ArithmeticOverflow("normalized speed " + std::to_string(sorted.back()) + " exceeds 2^30");
  }
  SpeedSet set;
  set.speeds_ = std::move(sorted);
  set.scale_ = g;
  return set;
}

std::vector<std::int64_t> dedupe_speeds(std::span<const std::int64_t> raw_speeds) {
  std::vector<std::int64_t> out(raw_speeds.begin(), raw_speeds.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational loneliness_at(std::span<const std::int64_t> speeds, const Rational& t) {
  if (speeds.empty()) throw DomainError("speed list is empty");
  Rational best = kHalf;
  for (const auto v : speeds) best = std::min(best, circle_norm(t * Rational(v)));
  return best;
}

// ---------------------------------------------------------------------------
// Candidate stream

CandidateTimes::CandidateTimes(const SpeedSet& speeds) {
  if (speeds.size() < 2) throw DomainError("candidate times need at least two runners");
  pairs_ = pairs_by_sum(speeds.speeds(), false);
  sums_.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) sums_.push_back(speeds[i] + speeds[j]);
}

CandidateTimes::Iterator::Iterator(const CandidateTimes* owner) : owner_(owner) { load_pair(); }

void CandidateTimes::Iterator::load_pair() {
  // Every pair sum is >= 3, so each pair contributes at least m = 1.
  if (pair_index_ >= owner_->pairs_.size()) {
    owner_ = nullptr;
    return;
  }
  current_ = Candidate{1, owner_->sums_[pair_index_], owner_->pairs_[pair_index_]};
}

CandidateTimes::Iterator& CandidateTimes::Iterator::operator++() {
  if (current_.m < current_.denominator / 2) {
    ++current_.m;
  } else {
    ++pair_index_;
    load_pair();
  }
  return *this;
}

CandidateTimes candidate_times(const SpeedSet& speeds) { return CandidateTimes(speeds); }

// ---------------------------------------------------------------------------
// Unshifted solvers

LonelinessResult compute_ml(const SpeedSet& speeds) { return search_candidates(speeds, std::nullopt); }

LonelinessResult compute_ml_with_floor(const SpeedSet& speeds, const Rational& floor) {
  if (floor <= Rational(0) || floor > kHalf) throw DomainError("floor must lie in (0, 1/2], got " + floor.str());
  return search_candidates(speeds, floor);
}

LonelinessResult oracle_ml(const SpeedSet& speeds) {
  const auto v = speeds.speeds();
  LonelinessResult best;
  best.value = Rational(-1);
  auto consider = [&](std::int64_t m, std::int64_t d, RunnerPair pair) {
    const Rational t(m, d);
    const Rational value = loneliness_at(v, t);
    if (value > best.value) best = {value, t, pair, ResultMode::exact};
  };
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::int64_t m = 0; m < 2 * v[i]; ++m) consider(m, 2 * v[i], {i, i});
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const std::int64_t sum = v[i] + v[j];
      const std::int64_t diff = v[j] - v[i];
      for (std::int64_t m = 0; m < sum; ++m) consider(m, sum, {i, j});
      for (std::int64_t m = 0; m < diff; ++m) consider(m, diff, {i, j});
    }
  }
  if (v.size() == 1) best.witness_pair.reset();
  return best;
}

// ---------------------------------------------------------------------------
// Shifted runners

ShiftedInstance::ShiftedInstance(std::vector<std::int64_t> speeds, std::vector<Rational> offsets)
    : speeds_(std::move(speeds)), offsets_(std::move(offsets)) {
  if (speeds_.empty()) throw DomainError("speed list is empty");
  if (speeds_.size() != offsets_.size()) {
    throw DomainError("expected " + std::to_string(speeds_.size()) + " offsets, got " +
                      std::to_string(offsets_.size()));
  }
  auto sorted = dedupe_speeds(speeds_);
  if (sorted.size() != speeds_.size()) throw DomainError("duplicate speed");
  if (sorted.front() <= 0) throw DomainError("speeds must be positive");
  if (sorted.back() > kMaxSpeed) throw ArithmeticOverflow("speed exceeds 2^30");
  for (const auto& o : offsets_) {
    if (o < Rational(0) || o >= Rational(1)) throw DomainError("offset " + o.str() + " outside [0, 1)");
    common_den_ = lcm_checked(common_den_, o.den(), kMaxOffsetDenominator);
  }
  scaled_.reserve(offsets_.size());
  for (const auto& o : offsets_) scaled_.push_back(o.num() * (common_den_ / o.den()));
}

Rational shifted_loneliness_at(const ShiftedInstance& inst, const Rational& t) {
  Rational best = kHalf;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    best = std::min(best, circle_norm(t * Rational(inst.speeds()[k]) + inst.offsets()[k]));
  }
  return best;
}

LonelinessResult shifted_ml(const ShiftedInstance& inst) {
  const auto v = inst.speeds();
  const auto a = inst.scaled_offsets();
  const int128 q = inst.common_denominator();
  Best best;

  // t = N / W with W = Q (v_i + v_j) and N = m Q - a_i - a_j, so runner k sits
  // at (N v_k + a_k (v_i + v_j)) / W.
  for (const auto& pair : pairs_by_sum(v, true)) {
    const auto [i, j] = pair;
    const int128 d = v[i] + v[j];
    const int128 w = q * d;
    int128 n0 = -(static_cast<int128>(a[i]) + a[j]) % q;
    if (n0 < 0) n0 += q;
    for (int128 n = n0; n < w; n += q) {
      int128 dist = w;
      for (std::size_t k = 0; k < v.size() && best.beaten_by(dist, w); ++k) {
        int128 x = (n * v[k] + static_cast<int128>(a[k]) * d) % w;
        dist = std::min({dist, x, w - x});
      }
      if (!best.beaten_by(dist, w)) continue;
      best.num = dist;
      best.den = w;
      best.time = Rational::from_wide(n, w);
      best.pair = pair;
    }
  }
  return {Rational::from_wide(best.num, best.den), best.time, best.pair, ResultMode::exact};
}

LonelinessResult shifted_oracle(const ShiftedInstance& inst) {
  const auto v = inst.speeds();
  const auto s = inst.offsets();
  LonelinessResult best;
  best.value = Rational(-1);
  auto consider = [&](const Rational& t, RunnerPair pair) {
    const Rational value = shifted_loneliness_at(inst, t);
    if (value > best.value) best = {value, t, pair, ResultMode::exact};
  };

  consider(Rational(0), {0, 0});
  for (std::size_t i = 0; i < v.size(); ++i) {
    // 2 (t v_i + s_i) integral: runner i at 0 or 1/2.
    for_each_shifted_time(Rational(2) * s[i], 2 * v[i], [&](const Rational& t) { consider(t, {i, i}); });
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      // Opposite positions: t (v_i + v_j) + s_i + s_j integral.
      for_each_shifted_time(s[i] + s[j], v[i] + v[j], [&](const Rational& t) { consider(t, {i, j}); });
      // Equal positions: t (v_j - v_i) + s_j - s_i integral.
      const bool j_faster = v[j] > v[i];
      const std::int64_t diff = j_faster ? v[j] - v[i] : v[i] - v[j];
      const Rational shift = j_faster ? s[j] - s[i] : s[i] - s[j];
      for_each_shifted_time(shift, diff, [&](const Rational& t) { consider(t, {i, j}); });
    }
  }
  return best;
}

bool prejump_invariant(std::int64_t v1, std::int64_t v2, std::int64_t g, const Rational& t, std::int64_t h) {
  if (g < 1) throw DomainError("pre-jump factor must be >= 1");
  if (v1 % g != 0 || v2 % g != 0) {
    throw DomainError(std::to_string(g) + " does not divide both " + std::to_string(v1) + " and " +
                      std::to_string(v2));
  }
  const std::int64_t both[] = {v1, v2};
  return loneliness_at(both, t) == loneliness_at(both, t + Rational(h, g));
}

}  // namespace lonely
