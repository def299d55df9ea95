#include "lonely/spectrum.hpp"

#include <string>

namespace lonely {

SpectrumClass classify(std::int64_t n, const Rational& value) {
  if (n < 1) throw DomainError("runner count must be >= 1");
  if (value <= Rational(0) || value > Rational(1, 2)) {
    throw DomainError("loneliness value " + value.str() + " outside (0, 1/2]");
  }
  SpectrumClass out;
  out.lrc_violation = value < Rational(1, n + 1);
  if (value >= Rational(1, n)) return out;

  const int128 p = value.num();
  const int128 gap = static_cast<int128>(value.den()) - static_cast<int128>(n) * p;  // > 0 below the floor
  for (std::int64_t k = 1; k <= n; ++k) {
    const int128 pk = p * k;
    if (pk % gap != 0) continue;
    const int128 s = pk / gap;
    if (s < 1) continue;
    if (out.all_k.empty()) {
      out.s = checked_narrow(s);
      out.k_min = k;
    }
    out.all_k.push_back(k);
  }
  out.kind = out.all_k.empty() ? SpectrumKind::amended_violation : SpectrumKind::spectrum_point;
  return out;
}

Rational spectrum_value(std::int64_t n, std::int64_t s, std::int64_t k) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (s < 1) throw DomainError("s must be >= 1");
  if (k < 1 || k > n) throw DomainError("k must lie in [1, n]");
  return Rational::from_wide(s, static_cast<int128>(n) * s + k);
}

const char* to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::at_least_floor:
      return "at-least-floor";
    case SpectrumKind::spectrum_point:
      return "spectrum-point";
    case SpectrumKind::amended_violation:
      return "amended-violation";
  }
  return "unknown";
}

}  // namespace lonely
