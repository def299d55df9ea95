#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lonely/scan.hpp"
#include "lonely/serialize.hpp"
#include "support/temp_dir.hpp"

using namespace lonely;
using lonely::testing::slurp;
using lonely::testing::TempDir;

namespace {

ScanConfig config(const TempDir& dir, std::int64_t n, std::int64_t v_max, const std::string& tag = "out") {
  ScanConfig cfg;
  cfg.n = n;
  cfg.v_max = v_max;
  cfg.output_path = dir.file(tag + ".jsonl");
  cfg.checkpoint_path = dir.file(tag + ".ckpt.json");
  return cfg;
}

std::vector<Json> read_lines(const std::string& path) {
  std::vector<Json> out;
  std::istringstream is(slurp(path));
  for (std::string line; std::getline(is, line);) out.push_back(Json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("evaluate_tuple examples") {
  const auto a = evaluate_tuple(SpeedTuple{3, 8, 11, 19}, 4, Rational(1, 4));
  CHECK(a.result.exact());
  CHECK(a.result.value == Rational(7, 30));
  CHECK(a.cls.kind == SpectrumKind::spectrum_point);
  CHECK(a.cls.s == 7);
  CHECK(a.cls.k_min == 2);

  const auto b = evaluate_tuple(SpeedTuple{1, 2, 3}, 3, Rational(1, 3));
  CHECK(b.result.value == Rational(1, 4));
  CHECK(b.cls.s == 1);
  CHECK(b.cls.k_min == 1);

  const auto c = evaluate_tuple(SpeedTuple{1, 3, 5, 7}, 4, Rational(1, 4));
  CHECK(c.cls.kind == SpectrumKind::at_least_floor);
  CHECK_FALSE(c.result.exact());

  const auto j = to_json(c);
  CHECK(j.at("ml").is_null());
  CHECK(j.at("class").at("kind") == "at-least-floor");
  CHECK(scan_record_from_json(to_json(a), Rational(1, 4)).cls == a.cls);
}

TEST_CASE("n = 3 census stays on the lattice s/(3s+1)") {
  TempDir dir;
  const auto out = run_scan(config(dir, 3, 30));
  CHECK(out.complete);
  CHECK(out.census.coherent());
  CHECK_FALSE(out.census.has_violations());
  for (const auto& [key, count] : out.census.histogram) CHECK(key.first == 1);
  CHECK(out.census.histogram.count({1, 1}) == 1);  // (1, 2, 3) -> 1/4
}

TEST_CASE("census entries re-derive from the JSONL records") {
  TempDir dir;
  const auto cfg = config(dir, 4, 20);
  const auto outcome = run_scan(cfg);
  CensusSummary rebuilt = empty_census(cfg);
  for (const auto& j : read_lines(cfg.output_path)) {
    const auto rec = scan_record_from_json(j, cfg.effective_floor());
    if (rec.result.exact()) CHECK(classify(4, rec.result.value) == rec.cls);
    rebuilt.add(rec);
  }
  CHECK(rebuilt == outcome.census);
  CHECK(census_from_json(to_json(outcome.census)) == outcome.census);
  CHECK(census_from_json(Json::parse(slurp(cfg.effective_summary_path()))) == outcome.census);
}

TEST_CASE("sharded scans merge to the unsharded output") {
  TempDir dir;
  auto whole = config(dir, 4, 24, "whole");
  whole.workers = 3;
  const auto full = run_scan(whole);

  std::vector<std::string> parts;
  CensusSummary merged;
  CensusSummary merged_rev;
  std::vector<CensusSummary> pieces;
  for (std::int64_t i = 0; i < 3; ++i) {
    auto cfg = config(dir, 4, 24, "shard" + std::to_string(i));
    cfg.shard = {i, 3};
    pieces.push_back(run_scan(cfg).census);
    parts.push_back(cfg.output_path);
  }
  for (const auto& p : pieces) merged = merge_census(merged, p);
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) merged_rev = merge_census(merged_rev, *it);
  CHECK(merged == full.census);
  CHECK(merged_rev == full.census);

  merge_scan_outputs(parts, dir.file("merged.jsonl"));
  CHECK(slurp(dir.file("merged.jsonl")) == slurp(whole.output_path));
}

TEST_CASE("worker count does not change the output") {
  TempDir dir;
  auto a = config(dir, 4, 22, "a");
  auto b = config(dir, 4, 22, "b");
  b.workers = 4;
  CHECK(run_scan(a).census == run_scan(b).census);
  CHECK(slurp(a.output_path) == slurp(b.output_path));
}

TEST_CASE("resume reproduces an uninterrupted run byte for byte") {
  TempDir dir;
  auto ref = config(dir, 4, 22, "ref");
  run_scan(ref);

  for (const std::int64_t cut : {1, 7, 40}) {
    auto cfg = config(dir, 4, 22, "cut" + std::to_string(cut));
    cfg.block_limit = cut;
    const auto partial = run_scan(cfg);
    CHECK_FALSE(partial.complete);
    CHECK(partial.blocks_processed == cut);

    // A torn write after the checkpoint must be discarded.
    {
      std::ofstream os(cfg.output_path, std::ios::app);
      os << "{\"speeds\": [9, 9";
    }
    cfg.block_limit.reset();
    cfg.resume = true;
    const auto done = run_scan(cfg);
    CHECK(done.complete);
    CHECK(slurp(cfg.output_path) == slurp(ref.output_path));
    CHECK(slurp(cfg.effective_summary_path()) == slurp(ref.effective_summary_path()));
  }
}

TEST_CASE("resume without a checkpoint starts fresh") {
  TempDir dir;
  auto cfg = config(dir, 3, 12);
  cfg.resume = true;
  CHECK(run_scan(cfg).complete);
}

TEST_CASE("checkpoint from another configuration is rejected") {
  TempDir dir;
  auto cfg = config(dir, 4, 20);
  cfg.block_limit = 3;
  run_scan(cfg);
  auto other = cfg;
  other.v_max = 21;
  other.resume = true;
  other.block_limit.reset();
  CHECK_THROWS_AS(run_scan(other), DomainError);
  auto sharded = cfg;
  sharded.shard = {0, 2};
  sharded.resume = true;
  CHECK_THROWS_AS(run_scan(sharded), DomainError);
  CHECK(cfg.base_hash() == sharded.base_hash());
  CHECK(cfg.hash() != sharded.hash());
}

TEST_CASE("config validation") {
  TempDir dir;
  auto cfg = config(dir, 4, 20);
  cfg.floor = Rational(3, 5);
  CHECK_THROWS_AS(run_scan(cfg), DomainError);
  cfg.floor.reset();
  cfg.v_max = 3;
  CHECK_THROWS_AS(run_scan(cfg), DomainError);
  cfg.v_max = 20;
  cfg.output_path = dir.file("missing/dir/out.jsonl");
  CHECK_THROWS_AS(run_scan(cfg), IoError);
}

TEST_CASE("merge_census algebra") {
  TempDir dir;
  auto a = config(dir, 4, 16, "a");
  a.shard = {0, 2};
  auto b = config(dir, 4, 16, "b");
  b.shard = {1, 2};
  const auto ca = run_scan(a).census;
  const auto cb = run_scan(b).census;
  CHECK(merge_census(ca, cb) == merge_census(cb, ca));
  CHECK(merge_census(CensusSummary{}, ca) == ca);
  CHECK(merge_census(ca, CensusSummary{}) == ca);

  auto c = config(dir, 3, 16, "c");
  CHECK_THROWS_AS(merge_census(ca, run_scan(c).census), DomainError);
}

TEST_CASE("a floor below 1/n counts reached records as at-least-floor") {
  TempDir dir;
  auto cfg = config(dir, 4, 14);
  cfg.floor = Rational(1, 6);
  const auto out = run_scan(cfg);
  CHECK(out.census.coherent());
  CHECK(out.census.at_least_floor == out.census.total);
  bool found = false;
  for (const auto& j : read_lines(cfg.output_path)) {
    if (j.at("speeds") == Json::array({1, 2, 3, 4})) {
      found = true;
      CHECK(j.at("ml").is_null());
      CHECK(j.at("class").at("kind") == "at-least-floor");
    }
  }
  CHECK(found);
}

TEST_CASE("the tight set is classified exactly under the default floor") {
  TempDir dir;
  const auto out = run_scan(config(dir, 4, 6));
  CHECK(out.census.total == 15);
  CHECK(out.census.histogram.at({1, 1}) >= 1);  // (1,2,3,4) -> 1/5
  CHECK_FALSE(out.census.has_violations());
}
