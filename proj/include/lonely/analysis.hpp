#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lonely/loneliness.hpp"
#include "lonely/rational.hpp"
#include "lonely/tuples.hpp"

namespace lonely {

// ---------------------------------------------------------------------------
// Counterexample family ML(8, 4s+3, 4s+11, 4s+19) = (2s+7)/(8s+30).

SpeedTuple family_speeds(std::int64_t s);
Rational family_value(std::int64_t s);

struct FamilyFailure {
  std::int64_t s = 0;
  Rational expected;
  Rational got;
  friend bool operator==(const FamilyFailure&, const FamilyFailure&) = default;
};

struct FamilyReport {
  std::int64_t s_lo = 0;
  std::int64_t s_hi = 0;
  std::vector<FamilyFailure> failures;
  bool all_pass = true;
};

/// Computes every family member for s in [s_lo, s_hi] and records mismatches.
FamilyReport verify_family(std::int64_t s_lo, std::int64_t s_hi);

// ---------------------------------------------------------------------------
// Very fast runner thresholds.

/// Least integer v_n >= ((L - eps) / eps) * v_prev: past it, adding runner
/// v_n to a set of loneliness L keeps loneliness >= L - eps.
/// DomainError unless 0 < eps < L <= 1/2 and v_prev >= 1.
std::int64_t lemma3_min_speed(const Rational& L, const Rational& eps, std::int64_t v_prev);

/// Whether L - 3 v_nm2 / (n v_nm1) >= 1/n, the two-fast-runner condition
/// guaranteeing loneliness >= 1/n. DomainError unless n >= 4,
/// 1 <= v_nm2 < v_nm1 and 0 < L <= 1/2.
bool lemma4_condition(const Rational& L, std::int64_t n, std::int64_t v_nm2, std::int64_t v_nm1);

// ---------------------------------------------------------------------------
// Theorem scans over four runners (three for the shifted variant).

struct TheoremException {
  SpeedTuple speeds;
  std::vector<Rational> offsets;  // shifted scans only
  Rational ml;
  friend bool operator==(const TheoremException&, const TheoremException&) = default;
};

struct TheoremScanReport {
  std::string theorem_id;
  std::int64_t tuples_checked = 0;
  std::vector<TheoremException> exceptions_found;
  std::string expected_exceptions;

  /// Every exception is one the theorem allows (the (1,2,3,12k) family for
  /// theorem 4, none otherwise).
  [[nodiscard]] bool claim_holds() const;
};

/// Associative, order-independent merge: counts add, exception lists are
/// concatenated and sorted. DomainError when the theorem ids differ.
TheoremScanReport merge(const TheoremScanReport& a, const TheoremScanReport& b);

/// Speeds of the form (1, 2, 3, 12k), the tolerated exceptions of theorem 4.
bool in_theorem4_exception_family(std::span<const std::int64_t> speeds);

/// Primitive 4-tuples (max <= v_max) in which some three speeds share a
/// factor >= 2; each must have ML >= 1/4.
TheoremScanReport verify_theorem1(std::int64_t v_max, unsigned workers = 1);
/// Primitive 4-tuples in which some pair shares a factor > 3.
TheoremScanReport verify_theorem3(std::int64_t v_max, unsigned workers = 1);
/// Primitive 4-tuples in which some pair has gcd exactly 3 and neither of the
/// above hypotheses applies. Tuples below 1/4 are recorded with exact ML;
/// only (1, 2, 3, 12k) may appear.
TheoremScanReport verify_theorem4(std::int64_t v_max, unsigned workers = 1);

/// Seeded random triples of distinct speeds <= v_max with gcd 1 and offsets
/// a/q with q <= q_max; each must have shifted loneliness >= 1/4.
TheoremScanReport verify_shifted_theorem2(std::int64_t trials, std::int64_t q_max, std::int64_t v_max,
                                          std::uint64_t seed);

}  // namespace lonely
