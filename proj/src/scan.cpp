#include "lonely/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "lonely/serialize.hpp"

namespace lonely {
namespace {

namespace fs = std::filesystem;

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string canonical_config(const ScanConfig& cfg) {
  std::ostringstream os;
  os << "n=" << cfg.n << ";v_max=" << cfg.v_max << ";floor=" << cfg.effective_floor().str()
     << ";filter=" << to_string(cfg.filter);
  return os.str();
}

struct BlockResult {
  std::vector<ScanRecord> records;
  std::string text;  // serialized JSONL lines
};

BlockResult process_block(const ScanConfig& cfg, const Rational& floor, LeadingPair block) {
  BlockResult out;
  for_each_in_block(cfg.n, cfg.v_max, block, [&](std::span<const std::int64_t> t) {
    if (!matches(cfg.filter, t)) return;
    out.records.push_back(evaluate_tuple(t, cfg.n, floor));
    out.text += to_json(out.records.back()).dump();
    out.text += '\n';
  });
  return out;
}

void write_json_atomically(const std::string& path, const Json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw IoError("cannot write " + tmp);
    os << j.dump(2) << '\n';
    if (!os) throw IoError("write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  try {
    return Json::parse(is);
  } catch (const Json::exception& e) {
    throw IoError("corrupt JSON in " + path + ": " + e.what());
  }
}

// Keeps the first `keep` lines of the output, rebuilding their census.
// Anything after them was written after the last checkpoint and is dropped.
void truncate_output(const std::string& path, std::int64_t keep, const Rational& floor, CensusSummary& census) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path + " for resume");
  std::string line;
  std::uintmax_t bytes = 0;
  for (std::int64_t i = 0; i < keep; ++i) {
    if (!std::getline(is, line) || is.eof()) {
      throw IoError(path + " holds fewer records than the checkpoint claims");
    }
    bytes += line.size() + 1;
    try {
      census.add(scan_record_from_json(Json::parse(line), floor));
    } catch (const Json::exception& e) {
      throw IoError("corrupt record in " + path + ": " + e.what());
    }
  }
  is.close();
  std::error_code ec;
  fs::resize_file(path, bytes, ec);
  if (ec) throw IoError("cannot truncate " + path + ": " + ec.message());
}

}  // namespace

std::string ScanConfig::base_hash() const { return fnv1a_hex(canonical_config(*this)); }

std::string ScanConfig::hash() const {
  return fnv1a_hex(canonical_config(*this) + ";shard=" + std::to_string(shard.index) + "/" +
                   std::to_string(shard.total));
}

void ScanConfig::validate() const {
  if (n < 2) throw DomainError("scan needs n >= 2");
  if (v_max < n) throw DomainError("v_max must be >= n");
  if (v_max > kMaxSpeed) throw ArithmeticOverflow("v_max exceeds 2^30");
  const Rational f = effective_floor();
  if (f <= Rational(0) || f > Rational(1, 2)) throw DomainError("floor must lie in (0, 1/2]");
  if (shard.total < 1 || shard.index < 0 || shard.index >= shard.total) throw DomainError("invalid shard");
  if (output_path.empty()) throw DomainError("scan needs an output path");
  if (resume && checkpoint_path.empty()) throw DomainError("--resume needs a checkpoint path");
}

ScanRecord evaluate_tuple(std::span<const std::int64_t> speeds, std::int64_t n, const Rational& floor) {
  ScanRecord r;
  r.speeds.assign(speeds.begin(), speeds.end());
  r.result = compute_ml_with_floor(normalize(speeds), floor);
  if (r.result.exact()) {
    r.cls = classify(n, r.result.value);
  } else {
    r.cls.kind = SpectrumKind::at_least_floor;
    r.cls.lrc_violation = false;
  }
  return r;
}

void CensusSummary::add(const ScanRecord& record) {
  ++total;
  switch (record.cls.kind) {
    case SpectrumKind::at_least_floor:
      ++at_least_floor;
      break;
    case SpectrumKind::spectrum_point:
      ++histogram[{record.cls.k_min, record.cls.s}];
      break;
    case SpectrumKind::amended_violation:
      amended_violations.push_back({record.speeds, record.result.value});
      break;
  }
  if (record.cls.lrc_violation) lrc_violations.push_back({record.speeds, record.result.value});
}

bool CensusSummary::coherent() const {
  std::int64_t sum = at_least_floor + static_cast<std::int64_t>(amended_violations.size());
  for (const auto& [key, count] : histogram) sum += count;
  return sum == total && static_cast<std::int64_t>(lrc_violations.size()) <= total;
}

CensusSummary empty_census(const ScanConfig& cfg) {
  CensusSummary c;
  c.n = cfg.n;
  c.v_max = cfg.v_max;
  c.floor = cfg.effective_floor();
  c.filter = cfg.filter;
  c.config_hash = cfg.base_hash();
  return c;
}

CensusSummary merge_census(const CensusSummary& a, const CensusSummary& b) {
  if (a.config_hash.empty()) return b;
  if (b.config_hash.empty()) return a;
  if (a.config_hash != b.config_hash) {
    throw DomainError("cannot merge censuses of different configs (" + a.config_hash + " vs " + b.config_hash + ")");
  }
  CensusSummary out = a;
  out.total += b.total;
  out.at_least_floor += b.at_least_floor;
  for (const auto& [key, count] : b.histogram) out.histogram[key] += count;
  out.amended_violations.insert(out.amended_violations.end(), b.amended_violations.begin(),
                                b.amended_violations.end());
  out.lrc_violations.insert(out.lrc_violations.end(), b.lrc_violations.begin(), b.lrc_violations.end());
  std::sort(out.amended_violations.begin(), out.amended_violations.end());
  std::sort(out.lrc_violations.begin(), out.lrc_violations.end());
  return out;
}

ScanOutcome run_scan(const ScanConfig& cfg) {
  cfg.validate();
  const Rational floor = cfg.effective_floor();
  const std::string hash = cfg.hash();

  std::vector<LeadingPair> blocks;
  {
    const auto all = leading_blocks(cfg.n, cfg.v_max);
    for (std::size_t b = 0; b < all.size(); ++b) {
      if (cfg.shard.owns(b)) blocks.push_back(all[b]);
    }
  }

  ScanOutcome outcome;
  outcome.census = empty_census(cfg);
  std::size_t next = 0;
  std::int64_t emitted = 0;

  const bool have_checkpoint = cfg.resume && fs::exists(cfg.checkpoint_path);
  if (have_checkpoint) {
    ScanCheckpoint cp;
    try {
      cp = checkpoint_from_json(read_json_file(cfg.checkpoint_path));
    } catch (const Json::exception& e) {
      throw IoError("corrupt checkpoint " + cfg.checkpoint_path + ": " + e.what());
    }
    if (cp.config_hash != hash) {
      throw DomainError("checkpoint " + cfg.checkpoint_path + " belongs to a different scan configuration");
    }
    const auto it = std::find(blocks.begin(), blocks.end(), cp.last_block);
    if (it == blocks.end()) throw IoError("checkpoint block is not part of this scan");
    next = static_cast<std::size_t>(it - blocks.begin()) + 1;
    emitted = cp.emitted;
    truncate_output(cfg.output_path, emitted, floor, outcome.census);
  }

  std::ofstream out(cfg.output_path, have_checkpoint ? std::ios::app : std::ios::trunc);
  if (!out) throw IoError("cannot write " + cfg.output_path);

  std::size_t stop = blocks.size();
  if (cfg.block_limit) stop = std::min(stop, next + static_cast<std::size_t>(std::max<std::int64_t>(0, *cfg.block_limit)));

  const unsigned workers = std::max(1u, cfg.workers);
  const std::size_t batch = workers == 1 ? 1 : static_cast<std::size_t>(workers) * 4;

  while (next < stop) {
    const std::size_t end = std::min(stop, next + batch);
    std::vector<BlockResult> results(end - next);
    if (workers == 1) {
      results[0] = process_block(cfg, floor, blocks[next]);
    } else {
      std::atomic<std::size_t> cursor{next};
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t b = cursor++; b < end; b = cursor++) results[b - next] = process_block(cfg, floor, blocks[b]);
        });
      }
      for (auto& th : pool) th.join();
    }

    // Single writer: blocks land in enumeration order regardless of which worker ran them.
    for (std::size_t b = next; b < end; ++b) {
      const BlockResult& r = results[b - next];
      out << r.text;
      out.flush();
      if (!out) throw IoError("write failed for " + cfg.output_path);
      for (const auto& rec : r.records) outcome.census.add(rec);
      emitted += static_cast<std::int64_t>(r.records.size());
      if (!cfg.checkpoint_path.empty()) write_json_atomically(cfg.checkpoint_path, to_json(ScanCheckpoint{hash, blocks[b], emitted}));
      ++outcome.blocks_processed;
    }
    next = end;
  }

  outcome.complete = next == blocks.size();
  if (outcome.complete) write_json_atomically(cfg.effective_summary_path(), to_json(outcome.census));
  return outcome;
}

void merge_scan_outputs(std::span<const std::string> inputs, const std::string& output) {
  struct Source {
    std::ifstream in;
    std::string line;
    SpeedTuple key;
    bool live = false;
  };
  std::vector<Source> sources(inputs.size());
  auto advance = [](Source& s, const std::string& path) {
    s.live = static_cast<bool>(std::getline(s.in, s.line));
    if (!s.live) return;
    try {
      s.key = Json::parse(s.line).at("speeds").get<SpeedTuple>();
    } catch (const Json::exception& e) {
      throw IoError("corrupt record in " + path + ": " + e.what());
    }
  };
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    sources[i].in.open(inputs[i]);
    if (!sources[i].in) throw IoError("cannot read " + inputs[i]);
    advance(sources[i], inputs[i]);
  }
  std::ofstream out(output, std::ios::trunc);
  if (!out) throw IoError("cannot write " + output);
  while (true) {
    Source* best = nullptr;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (sources[i].live && (best == nullptr || sources[i].key < best->key)) {
        best = &sources[i];
        best_i = i;
      }
    }
    if (best == nullptr) break;
    out << best->line << '\n';
    advance(*best, inputs[best_i]);
  }
  if (!out) throw IoError("write failed for " + output);
}

}  // namespace lonely
