#pragma once

#include <cstdint>
#include <vector>

#include "lonely/rational.hpp"

namespace lonely {

enum class SpectrumKind { at_least_floor, spectrum_point, amended_violation };

/// Position of a loneliness value relative to the floor 1/n and the lattice
/// of values s / (n s + k), s >= 1, 1 <= k <= n.
struct SpectrumClass {
  SpectrumKind kind = SpectrumKind::at_least_floor;
  std::int64_t s = 0;      // spectrum_point only; pairs with k_min
  std::int64_t k_min = 0;  // spectrum_point only
  std::vector<std::int64_t> all_k;
  bool lrc_violation = false;  // value < 1/(n + 1)

  friend bool operator==(const SpectrumClass&, const SpectrumClass&) = default;
};

/// Classifies value (0 < value <= 1/2) for n runners.
///
/// Values >= 1/n are at-least-floor. Below the floor, writing value = p/q in
/// lowest terms, s/(n s + k) = p/q holds iff s (q - n p) = p k, so each k in
/// 1..n is tested for an integral s >= 1. The smallest accepted k is the
/// canonical representative; no accepted k is an amended violation.
SpectrumClass classify(std::int64_t n, const Rational& value);

/// s / (n s + k), reduced. DomainError unless n >= 1, s >= 1, 1 <= k <= n.
Rational spectrum_value(std::int64_t n, std::int64_t s, std::int64_t k);

const char* to_string(SpectrumKind kind);

}  // namespace lonely
