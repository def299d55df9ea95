// Acceptance gates 1-9. Prints one PASS/FAIL line per gate and exits
// non-zero if any gate fails. All value checks are exact; only runtimes
// carry budgets, pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lonely/analysis.hpp"
#include "lonely/cli.hpp"
#include "lonely/loneliness.hpp"
#include "lonely/scan.hpp"
#include "lonely/serialize.hpp"
#include "lonely/tuples.hpp"
#include "support/temp_dir.hpp"

using namespace lonely;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kCliBudget = 1.0;
constexpr double kFamilyBudget = 10.0;
constexpr double kOracleBudget = 300.0;
constexpr double kCensusBudget = 600.0;
constexpr unsigned kCensusWorkers = 4;

struct Gate {
  bool ok = true;
  std::ostringstream notes;

  Gate() { notes << std::fixed << std::setprecision(3); }

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void run_gate(int id, const std::string& name, const std::function<void(Gate&)>& body) {
  Gate g;
  const auto start = Clock::now();
  try {
    body(g);
  } catch (const std::exception& e) {
    g.ok = false;
    g.notes << " [exception: " << e.what() << "]";
  }
  const double elapsed = seconds_since(start);
  if (!g.ok) ++failures;
  std::printf("%s %d %s (%.2fs)%s\n", g.ok ? "PASS" : "FAIL", id, name.c_str(), elapsed, g.notes.str().c_str());
  std::fflush(stdout);
}

Json cli_json(const std::vector<std::string>& args, int& code, double& elapsed) {
  std::ostringstream out, err;
  const auto start = Clock::now();
  code = cli::run(args, out, err);
  elapsed = seconds_since(start);
  return Json::parse(out.str());
}

void gate_counterexamples(Gate& g) {
  int code = 0;
  double t = 0;
  const Json four = cli_json({"ml", "8", "3", "11", "19"}, code, t);
  g.require(code == 0, "exit code");
  g.require(four.at("ml") == "7/30", "ML(8,3,11,19) = 7/30");
  g.require(four.at("class").at("s") == 7 && four.at("class").at("k_min") == 2, "class (s=7, k=2)");
  g.require(t < kCliBudget, "n=4 runtime");
  g.notes << " n=4 " << four.at("ml").get<std::string>() << " in " << t << "s;";

  const Json six = cli_json({"ml", "5", "6", "11", "17", "23", "28"}, code, t);
  g.require(code == 0, "exit code");
  g.require(six.at("ml") == "8/51", "ML(5,6,11,17,23,28) = 8/51");
  g.require(six.at("class").at("s") == 8 && six.at("class").at("k_min") == 3, "class (s=8, k=3)");
  g.require(t < kCliBudget, "n=6 runtime");
  g.notes << " n=6 " << six.at("ml").get<std::string>() << " in " << t << "s";
}

void gate_family(Gate& g) {
  int code = 0;
  double t = 0;
  const Json r = cli_json({"verify-family", "--s-lo", "0", "--s-hi", "200"}, code, t);
  g.require(code == 0, "exit code");
  g.require(r.at("all_pass") == true && r.at("failures").empty(), "all_pass");
  g.require(t < kFamilyBudget, "runtime");
  g.notes << " s in [0,200]";
}

void gate_known_values(Gate& g) {
  const std::vector<std::pair<SpeedTuple, Rational>> cases = {
      {{1, 2, 3}, Rational(1, 4)}, {{1, 7, 8, 15}, Rational(5, 22)}, {{1, 4, 5}, Rational(1, 3)}, {{5, 20}, Rational(2, 5)}};
  for (const auto& [v, expected] : cases) {
    const Rational got = compute_ml(normalize(v)).value;
    std::ostringstream what;
    what << "ML = " << expected.str() << ", got " << got.str();
    g.require(got == expected, what.str());
  }
}

void gate_oracle(Gate& g) {
  const auto start = Clock::now();
  std::int64_t exhaustive = 0;
  for (std::int64_t n = 2; n <= 4; ++n) {
    for_each_primitive(n, 40, {}, [&](std::span<const std::int64_t> t) {
      const SpeedSet s = normalize(t);
      ++exhaustive;
      if (compute_ml(s).value != oracle_ml(s).value) g.require(false, "exhaustive mismatch");
    });
  }
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::int64_t> speed(1, 60);
  std::int64_t random = 0;
  while (random < 10000) {
    const std::size_t n = random % 2 == 0 ? 5 : 6;
    std::set<std::int64_t> pick;
    while (pick.size() < n) pick.insert(speed(rng));
    const std::vector<std::int64_t> v(pick.begin(), pick.end());
    const SpeedSet s = normalize(v);
    if (compute_ml(s).value != oracle_ml(s).value) g.require(false, "random mismatch");
    ++random;
  }
  g.require(seconds_since(start) < kOracleBudget, "runtime");
  g.notes << " " << exhaustive << " exhaustive + " << random << " random tuples";
}

void gate_census(Gate& g) {
  testing::TempDir dir;
  const auto start = Clock::now();
  for (const std::int64_t n : {4, 3}) {
    ScanConfig cfg;
    cfg.n = n;
    cfg.v_max = 60;
    cfg.workers = kCensusWorkers;
    cfg.output_path = dir.file("n" + std::to_string(n) + ".jsonl");
    cfg.checkpoint_path = dir.file("n" + std::to_string(n) + ".ckpt");
    const CensusSummary c = run_scan(cfg).census;
    g.require(c.coherent(), "census coherent");
    g.require(c.amended_violations.empty(), "no amended violations");
    g.require(c.lrc_violations.empty(), "no LRC violations");
    std::set<std::int64_t> ks;
    for (const auto& [key, count] : c.histogram) ks.insert(key.first);
    if (n == 4) g.require(std::all_of(ks.begin(), ks.end(), [](auto k) { return k == 1 || k == 2; }), "k_min in {1,2}");
    if (n == 3) g.require(ks == std::set<std::int64_t>{1}, "k_min = 1 everywhere");
    g.notes << " n=" << n << ": " << c.total << " tuples, k_min set {";
    for (auto k : ks) g.notes << (k == *ks.begin() ? "" : ",") << k;
    g.notes << "};";
  }
  g.require(seconds_since(start) < kCensusBudget, "runtime");
}

void gate_theorems(Gate& g) {
  const auto t1 = verify_theorem1(40, kCensusWorkers);
  const auto t3 = verify_theorem3(40, kCensusWorkers);
  const auto t4 = verify_theorem4(48, kCensusWorkers);
  g.require(t1.exceptions_found.empty(), "theorem 1 exceptions");
  g.require(t3.exceptions_found.empty(), "theorem 3 exceptions");
  std::vector<SpeedTuple> got;
  for (const auto& e : t4.exceptions_found) {
    got.push_back(e.speeds);
    g.require(e.ml < Rational(1, 4), "exception ML < 1/4");
  }
  g.require(got == std::vector<SpeedTuple>{{1, 2, 3, 12}, {1, 2, 3, 24}, {1, 2, 3, 36}, {1, 2, 3, 48}},
            "theorem 4 exception set");
  g.notes << " t1 " << t1.tuples_checked << ", t3 " << t3.tuples_checked << ", t4 " << t4.tuples_checked
          << " tuples; t4 exceptions " << got.size();
}

void gate_shifted(Gate& g) {
  const auto r = verify_shifted_theorem2(10000, 8, 12, 1);
  g.require(r.tuples_checked == 10000, "trial count");
  g.require(r.exceptions_found.empty(), "shifted ML >= 1/4 on every trial");
  const ShiftedInstance zero(std::vector<std::int64_t>{1, 2, 3}, std::vector<Rational>(3));
  g.require(shifted_ml(zero).value == Rational(1, 4), "shifted_ml((1,2,3), 0) = 1/4");
  g.notes << " " << r.tuples_checked << " trials";
}

void gate_lemmas(Gate& g) {
  g.require(lemma3_min_speed(Rational(1, 3), Rational(1, 12), 5) == 15, "lemma3 = 15");
  g.require(lemma4_condition(Rational(2, 5), 4, 20, 100), "lemma4(..., 100) true");
  g.require(!lemma4_condition(Rational(2, 5), 4, 20, 99), "lemma4(..., 99) false");
}

void gate_properties(Gate& g) {
  std::mt19937_64 rng(7);

  std::uniform_int_distribution<std::int64_t> g_dist(1, 50), mult(1, 1000), num(-100000, 100000), den(1, 10000),
      shift(-1000, 1000);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t gg = g_dist(rng);
    if (!prejump_invariant(gg * mult(rng), gg * mult(rng), gg, Rational(num(rng), den(rng)), shift(rng))) {
      g.require(false, "pre-jump");
    }
  }

  std::uniform_int_distribution<std::int64_t> speed(1, 60), size(1, 5), factor(2, 50);
  auto random_tuple = [&] {
    std::set<std::int64_t> pick;
    const auto n = static_cast<std::size_t>(size(rng));
    while (pick.size() < n) pick.insert(speed(rng));
    return std::vector<std::int64_t>(pick.begin(), pick.end());
  };
  for (int i = 0; i < 1000; ++i) {
    auto v = random_tuple();
    const Rational base = compute_ml(normalize(v)).value;
    std::int64_t extra = speed(rng);
    while (std::find(v.begin(), v.end(), extra) != v.end()) extra = speed(rng);
    v.push_back(extra);
    if (compute_ml(normalize(v)).value > base) g.require(false, "monotonicity");
  }
  for (int i = 0; i < 1000; ++i) {
    auto v = random_tuple();
    const Rational base = compute_ml(normalize(v)).value;
    const std::int64_t k = factor(rng);
    std::shuffle(v.begin(), v.end(), rng);
    for (auto& x : v) x *= k;
    if (compute_ml(normalize(v)).value != base) g.require(false, "scale/permutation");
  }

  // Resume: stop at three random block boundaries, append a torn record to
  // mimic a kill during a write, resume and byte-compare.
  testing::TempDir dir;
  ScanConfig ref;
  ref.n = 4;
  ref.v_max = 30;
  ref.output_path = dir.file("ref.jsonl");
  run_scan(ref);
  const auto blocks = static_cast<std::int64_t>(leading_blocks(4, 30).size());
  std::uniform_int_distribution<std::int64_t> cut(1, blocks - 1);
  for (int i = 0; i < 3; ++i) {
    ScanConfig cfg = ref;
    cfg.output_path = dir.file("run" + std::to_string(i) + ".jsonl");
    cfg.checkpoint_path = dir.file("run" + std::to_string(i) + ".ckpt");
    cfg.block_limit = cut(rng);
    run_scan(cfg);
    {
      std::ofstream os(cfg.output_path, std::ios::app);
      os << "{\"speeds\":[";
    }
    cfg.block_limit.reset();
    cfg.resume = true;
    run_scan(cfg);
    g.require(testing::slurp(cfg.output_path) == testing::slurp(ref.output_path), "resume output identical");
    g.require(testing::slurp(cfg.effective_summary_path()) == testing::slurp(ref.effective_summary_path()),
              "resume summary identical");
  }
  g.notes << " 10000 pre-jump, 1000 monotonicity, 1000 scale/permutation, 3 resumes";
}

}  // namespace

int main() {
  run_gate(1, "counterexample reproduction", gate_counterexamples);
  run_gate(2, "family verification", gate_family);
  run_gate(3, "known values", gate_known_values);
  run_gate(4, "oracle equivalence", gate_oracle);
  run_gate(5, "spectrum census", gate_census);
  run_gate(6, "theorem scans", gate_theorems);
  run_gate(7, "shifted runners", gate_shifted);
  run_gate(8, "lemma calculators", gate_lemmas);
  run_gate(9, "property suites", gate_properties);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
