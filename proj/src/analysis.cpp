#include "lonely/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

namespace lonely {
namespace {

const Rational kQuarter(1, 4);

bool exception_less(const TheoremException& a, const TheoremException& b) {
  if (a.speeds != b.speeds) return a.speeds < b.speeds;
  return std::lexicographical_compare(a.offsets.begin(), a.offsets.end(), b.offsets.begin(), b.offsets.end());
}

TheoremScanReport scan_shard(const std::string& id, TupleFilter filter, std::int64_t v_max, Shard shard) {
  TheoremScanReport report;
  report.theorem_id = id;
  for_each_primitive(4, v_max, shard, [&](std::span<const std::int64_t> t) {
    if (!matches(filter, t)) return;
    ++report.tuples_checked;
    const SpeedSet speeds = normalize(t);
    if (compute_ml_with_floor(speeds, kQuarter).exact()) {
      report.exceptions_found.push_back({SpeedTuple(t.begin(), t.end()), {}, compute_ml(speeds).value});
    }
  });
  return report;
}

TheoremScanReport scan_four_runner_theorem(const std::string& id, TupleFilter filter, std::int64_t v_max,
                                           unsigned workers, std::string expected) {
  if (v_max < 4) throw DomainError("v_max must be >= 4");
  workers = std::max(1u, workers);
  std::vector<TheoremScanReport> parts(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] { parts[w] = scan_shard(id, filter, v_max, Shard{static_cast<std::int64_t>(w), static_cast<std::int64_t>(workers)}); });
  }
  for (auto& th : threads) th.join();

  TheoremScanReport total;
  total.theorem_id = id;
  for (const auto& p : parts) total = merge(total, p);
  total.expected_exceptions = std::move(expected);
  return total;
}

}  // namespace

SpeedTuple family_speeds(std::int64_t s) {
  if (s < 0) throw DomainError("family parameter must be >= 0");
  if (s > (kMaxSpeed - 19) / 4) throw ArithmeticOverflow("family parameter too large");
  return {8, 4 * s + 3, 4 * s + 11, 4 * s + 19};
}

Rational family_value(std::int64_t s) { return Rational(2 * s + 7, 8 * s + 30); }

FamilyReport verify_family(std::int64_t s_lo, std::int64_t s_hi) {
  if (s_lo < 0 || s_hi < s_lo) throw DomainError("family range must satisfy 0 <= s_lo <= s_hi");
  FamilyReport report{s_lo, s_hi, {}, true};
  for (std::int64_t s = s_lo; s <= s_hi; ++s) {
    const auto speeds = family_speeds(s);
    const Rational got = compute_ml(normalize(speeds)).value;
    const Rational expected = family_value(s);
    if (got != expected) report.failures.push_back({s, expected, got});
  }
  report.all_pass = report.failures.empty();
  return report;
}

std::int64_t lemma3_min_speed(const Rational& L, const Rational& eps, std::int64_t v_prev) {
  if (eps <= Rational(0)) throw DomainError("eps must be positive");
  if (eps >= L) throw DomainError("eps must be smaller than L");
  if (L > Rational(1, 2)) throw DomainError("L cannot exceed 1/2");
  if (v_prev < 1) throw DomainError("v_prev must be >= 1");
  return ((L - eps) / eps * Rational(v_prev)).ceil();
}

bool lemma4_condition(const Rational& L, std::int64_t n, std::int64_t v_nm2, std::int64_t v_nm1) {
  if (n < 4) throw DomainError("n must be >= 4");
  if (v_nm2 < 1 || v_nm2 >= v_nm1) throw DomainError("speeds must satisfy 1 <= v_{n-2} < v_{n-1}");
  if (L <= Rational(0) || L > Rational(1, 2)) throw DomainError("L must lie in (0, 1/2]");
  const Rational drift = Rational::from_wide(static_cast<int128>(3) * v_nm2, static_cast<int128>(n) * v_nm1);
  return L - drift >= Rational(1, n);
}

bool TheoremScanReport::claim_holds() const {
  if (theorem_id != "4") return exceptions_found.empty();
  return std::all_of(exceptions_found.begin(), exceptions_found.end(),
                     [](const TheoremException& e) { return in_theorem4_exception_family(e.speeds); });
}

TheoremScanReport merge(const TheoremScanReport& a, const TheoremScanReport& b) {
  if (!a.theorem_id.empty() && !b.theorem_id.empty() && a.theorem_id != b.theorem_id) {
    throw DomainError("cannot merge reports for theorems " + a.theorem_id + " and " + b.theorem_id);
  }
  TheoremScanReport out = a.theorem_id.empty() ? b : a;
  out.tuples_checked = a.tuples_checked + b.tuples_checked;
  out.exceptions_found = a.exceptions_found;
  out.exceptions_found.insert(out.exceptions_found.end(), b.exceptions_found.begin(), b.exceptions_found.end());
  std::sort(out.exceptions_found.begin(), out.exceptions_found.end(), exception_less);
  return out;
}

bool in_theorem4_exception_family(std::span<const std::int64_t> speeds) {
  return speeds.size() == 4 && speeds[0] == 1 && speeds[1] == 2 && speeds[2] == 3 && speeds[3] % 12 == 0;
}

TheoremScanReport verify_theorem1(std::int64_t v_max, unsigned workers) {
  return scan_four_runner_theorem("1", TupleFilter::three_share_factor, v_max, workers, "none");
}

TheoremScanReport verify_theorem3(std::int64_t v_max, unsigned workers) {
  return scan_four_runner_theorem("3", TupleFilter::pair_factor_above_3, v_max, workers, "none");
}

TheoremScanReport verify_theorem4(std::int64_t v_max, unsigned workers) {
  return scan_four_runner_theorem("4", TupleFilter::pair_factor_exactly_3, v_max, workers,
                                  "(1,2,3,12k) for k >= 1");
}

TheoremScanReport verify_shifted_theorem2(std::int64_t trials, std::int64_t q_max, std::int64_t v_max,
                                          std::uint64_t seed) {
  if (trials < 0) throw DomainError("trial count must be >= 0");
  if (q_max < 1) throw DomainError("q_max must be >= 1");
  if (v_max < 3) throw DomainError("v_max must be >= 3");
  if (v_max > kMaxSpeed) throw ArithmeticOverflow("v_max exceeds 2^30");
  if (q_max > 1024) throw ArithmeticOverflow("q_max above 1024 risks overflowing the offset denominator");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> speed_dist(1, v_max);
  TheoremScanReport report;
  report.theorem_id = "2";
  report.expected_exceptions = "none";

  for (std::int64_t trial = 0; trial < trials; ++trial) {
    std::vector<std::int64_t> v(3);
    do {
      for (auto& x : v) x = speed_dist(rng);
    } while (v[0] == v[1] || v[0] == v[2] || v[1] == v[2] || std::gcd(std::gcd(v[0], v[1]), v[2]) != 1);

    std::vector<Rational> offsets;
    for (int k = 0; k < 3; ++k) {
      const std::int64_t q = std::uniform_int_distribution<std::int64_t>(1, q_max)(rng);
      offsets.emplace_back(std::uniform_int_distribution<std::int64_t>(0, q - 1)(rng), q);
    }
    ++report.tuples_checked;
    const ShiftedInstance inst(v, offsets);
    const Rational ml = shifted_ml(inst).value;
    if (ml < kQuarter) report.exceptions_found.push_back({v, offsets, ml});
  }
  return report;
}

}  // namespace lonely
