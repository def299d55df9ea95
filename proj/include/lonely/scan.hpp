#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lonely/loneliness.hpp"
#include "lonely/spectrum.hpp"
#include "lonely/tuples.hpp"

namespace lonely {

struct ScanConfig {
  std::int64_t n = 4;
  std::int64_t v_max = 0;
  std::optional<Rational> floor;  // 1/n when unset
  TupleFilter filter = TupleFilter::none;
  Shard shard;
  std::string output_path;
  std::string checkpoint_path;  // empty disables checkpointing
  std::string summary_path;     // defaults to output_path + ".summary.json"
  unsigned workers = 1;
  bool resume = false;
  /// Stop after this many blocks in the current run, leaving a resumable
  /// checkpoint behind. Unset runs to completion.
  std::optional<std::int64_t> block_limit;

  [[nodiscard]] Rational effective_floor() const { return floor.value_or(Rational(1, n)); }
  [[nodiscard]] std::string effective_summary_path() const {
    return summary_path.empty() ? output_path + ".summary.json" : summary_path;
  }
  /// Hash of the parameters that determine output content, shard excluded.
  /// Shards of one scan share it, which is what merge_census checks.
  [[nodiscard]] std::string base_hash() const;
  /// base_hash plus the shard; guards checkpoints against reuse by another run.
  [[nodiscard]] std::string hash() const;
  /// Throws DomainError / ArithmeticOverflow on invalid parameters.
  void validate() const;
};

/// Result for one tuple: floor-mode results carry no witness when serialized.
struct ScanRecord {
  SpeedTuple speeds;
  LonelinessResult result;
  SpectrumClass cls;
};

/// Runs the engine and classifier on one primitive tuple.
ScanRecord evaluate_tuple(std::span<const std::int64_t> speeds, std::int64_t n, const Rational& floor);

struct Violation {
  SpeedTuple speeds;
  Rational ml;
  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation& a, const Violation& b) { return a.speeds <=> b.speeds; }
};

/// Aggregate over a scan. total = at_least_floor + histogram counts +
/// amended violations; LRC violations overlap the other buckets.
struct CensusSummary {
  std::int64_t n = 0;
  std::int64_t v_max = 0;
  Rational floor;
  TupleFilter filter = TupleFilter::none;
  std::string config_hash;  // ScanConfig::base_hash()

  std::int64_t total = 0;
  std::int64_t at_least_floor = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> histogram;  // (k_min, s) -> count
  std::vector<Violation> amended_violations;
  std::vector<Violation> lrc_violations;

  void add(const ScanRecord& record);
  /// Counts are consistent with each other.
  [[nodiscard]] bool coherent() const;
  [[nodiscard]] bool has_violations() const { return !amended_violations.empty() || !lrc_violations.empty(); }

  friend bool operator==(const CensusSummary&, const CensusSummary&) = default;
};

/// Empty census carrying cfg's identity.
CensusSummary empty_census(const ScanConfig& cfg);

/// Component-wise sum; violation lists are concatenated and sorted by tuple,
/// so the merge is associative and commutative. An empty census (no
/// config_hash) is the identity. DomainError when config hashes differ.
CensusSummary merge_census(const CensusSummary& a, const CensusSummary& b);

struct ScanCheckpoint {
  std::string config_hash;
  LeadingPair last_block;
  std::int64_t emitted = 0;
};

struct ScanOutcome {
  CensusSummary census;
  bool complete = false;
  std::int64_t blocks_processed = 0;  // in this run
};

/// Exhaustive scan of the configured tuples, appending one JSONL record per
/// tuple in enumeration order and advancing the checkpoint after every
/// leading-pair block. With cfg.resume the output is truncated back to the
/// checkpoint's record count and the scan continues after its last block, so
/// the final file is byte-identical to an uninterrupted run. A resume with no
/// checkpoint file starts from scratch. The summary JSON is written on
/// completion.
///
/// Throws DomainError on a config/checkpoint hash mismatch and IoError when
/// files cannot be read or written.
ScanOutcome run_scan(const ScanConfig& cfg);

/// Streams several shard outputs into one JSONL file in global tuple order.
void merge_scan_outputs(std::span<const std::string> inputs, const std::string& output);

}  // namespace lonely
