#include "lonely/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "lonely/analysis.hpp"
#include "lonely/loneliness.hpp"
#include "lonely/scan.hpp"
#include "lonely/serialize.hpp"
#include "lonely/spectrum.hpp"

namespace lonely::cli {
namespace {

std::vector<std::int64_t> parse_speeds(const std::vector<std::string>& raw) {
  std::vector<std::int64_t> out;
  out.reserve(raw.size());
  for (const auto& s : raw) out.push_back(parse_integer(s));
  return out;
}

std::vector<std::vector<std::int64_t>> read_tuple_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  std::vector<std::vector<std::int64_t>> tuples;
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<std::string> raw;
    for (std::string f; fields >> f;) raw.push_back(f);
    if (!raw.empty()) tuples.push_back(parse_speeds(raw));
  }
  return tuples;
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Plain-text rendering: nested objects flatten to dotted keys, one per row;
// arrays of objects become indented sub-tables.
void collect_rows(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, const Json*>>& rows) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object() && !value.empty()) {
      collect_rows(value, name, rows);
    } else {
      rows.emplace_back(name, &value);
    }
  }
}

void render_table(const Json& j, std::ostream& out) {
  if (!j.is_object()) {
    out << cell(j) << '\n';
    return;
  }
  std::vector<std::pair<std::string, const Json*>> rows;
  collect_rows(j, "", rows);
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  for (const auto& [key, value] : rows) {
    if (value->is_array() && !value->empty() && value->front().is_object()) {
      out << key << ":\n";
      std::vector<std::string> cols;
      for (const auto& [k, unused] : value->front().items()) cols.push_back(k);
      std::vector<std::vector<std::string>> grid{cols};
      for (const auto& row : *value) {
        auto& cells = grid.emplace_back();
        for (const auto& c : cols) cells.push_back(row.contains(c) ? cell(row[c]) : "-");
      }
      std::vector<std::size_t> widths(cols.size(), 0);
      for (const auto& cells : grid) {
        for (std::size_t c = 0; c < cells.size(); ++c) widths[c] = std::max(widths[c], cells[c].size());
      }
      for (const auto& cells : grid) {
        out << "  ";
        for (std::size_t c = 0; c < cells.size(); ++c) {
          out << cells[c];
          if (c + 1 < cells.size()) out << std::string(widths[c] - cells[c].size() + 2, ' ');
        }
        out << '\n';
      }
      continue;
    }
    out << key << std::string(width - key.size() + 2, ' ') << cell(*value) << '\n';
  }
}

struct Printer {
  std::ostream& out;
  bool table = false;

  void operator()(const Json& j) const {
    if (table) {
      render_table(j, out);
    } else {
      out << j.dump() << '\n';
    }
  }
};

Json ml_json(const std::vector<std::int64_t>& raw, const std::optional<Rational>& floor, std::ostream& err) {
  auto speeds = raw;
  if (auto deduped = dedupe_speeds(raw); deduped.size() != raw.size()) {
    err << "warning: duplicate speeds removed\n";
    speeds = std::move(deduped);
  }
  const SpeedSet set = normalize(speeds);
  const LonelinessResult r = floor ? compute_ml_with_floor(set, *floor) : compute_ml(set);
  Json j = to_json(set, r);
  if (r.exact()) j["class"] = to_json(classify(static_cast<std::int64_t>(set.size()), r.value));
  return j;
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maximum-loneliness engine for integer speed sets"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  bool table = false;
  app.add_flag("--table", table, "Render results as plain-text tables");

  int exit_code = kOk;
  auto emit = [&](const Json& j) { Printer{out, table}(j); };

  // ml
  std::vector<std::string> ml_speeds;
  std::string ml_file;
  std::string ml_floor;
  auto* ml = app.add_subcommand("ml", "Maximum loneliness of a speed set");
  ml->add_option("speeds", ml_speeds, "Positive integer speeds");
  ml->add_option("--file", ml_file, "Batch input, one tuple per line");
  ml->add_option("--floor", ml_floor, "Stop early once loneliness reaches p/q");
  ml->callback([&] {
    std::optional<Rational> floor;
    if (!ml_floor.empty()) floor = parse_rational(ml_floor);
    if (!ml_file.empty()) {
      for (const auto& t : read_tuple_file(ml_file)) emit(ml_json(t, floor, err));
      return;
    }
    if (ml_speeds.empty()) throw DomainError("ml needs speeds or --file");
    emit(ml_json(parse_speeds(ml_speeds), floor, err));
  });

  // classify
  std::int64_t cls_n = 0;
  std::string cls_value;
  auto* cls = app.add_subcommand("classify", "Place a loneliness value in the spectrum");
  cls->add_option("-n,--n", cls_n, "Runner count")->required();
  cls->add_option("value", cls_value, "Loneliness value p/q")->required();
  cls->callback([&] { emit(to_json(classify(cls_n, parse_rational(cls_value)))); });

  // scan
  ScanConfig scan_cfg;
  std::string scan_floor, scan_shard = "0/1", scan_filter = "none";
  std::int64_t scan_max_blocks = -1;
  scan_cfg.workers = default_workers();
  auto* scan = app.add_subcommand("scan", "Exhaustive census over primitive speed tuples");
  scan->add_option("--n", scan_cfg.n, "Runner count")->required();
  scan->add_option("--v-max", scan_cfg.v_max, "Largest speed")->required();
  scan->add_option("--floor", scan_floor, "Early-exit floor p/q (default 1/n)");
  scan->add_option("--shard", scan_shard, "Shard i/t of the leading-pair blocks");
  scan->add_option("--filter", scan_filter, "none | three-share | pair-gt3 | pair-eq3");
  scan->add_option("--out", scan_cfg.output_path, "JSONL output path")->required();
  scan->add_option("--checkpoint", scan_cfg.checkpoint_path, "Checkpoint path");
  scan->add_option("--summary", scan_cfg.summary_path, "Summary path (default OUT.summary.json)");
  scan->add_flag("--resume", scan_cfg.resume, "Continue from the checkpoint");
  scan->add_option("--workers", scan_cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--max-blocks", scan_max_blocks, "Stop after this many blocks");
  scan->callback([&] {
    if (!scan_floor.empty()) scan_cfg.floor = parse_rational(scan_floor);
    scan_cfg.shard = parse_shard(scan_shard);
    scan_cfg.filter = parse_filter(scan_filter);
    if (scan_max_blocks >= 0) scan_cfg.block_limit = scan_max_blocks;
    const ScanOutcome outcome = run_scan(scan_cfg);
    Json j = to_json(outcome.census);
    j["complete"] = outcome.complete;
    emit(j);
    if (outcome.census.has_violations()) exit_code = kViolation;
  });

  // merge
  std::vector<std::string> merge_inputs;
  std::string merge_out;
  auto* merge_cmd = app.add_subcommand("merge", "Merge shard outputs and their summaries");
  merge_cmd->add_option("inputs", merge_inputs, "Shard JSONL files (summaries at FILE.summary.json)")->required();
  merge_cmd->add_option("--out", merge_out, "Merged JSONL path")->required();
  merge_cmd->callback([&] {
    merge_scan_outputs(merge_inputs, merge_out);
    CensusSummary census;
    for (const auto& in : merge_inputs) {
      std::ifstream is(in + ".summary.json");
      if (!is) throw IoError("cannot read " + in + ".summary.json");
      census = merge_census(census, census_from_json(Json::parse(is)));
    }
    std::ofstream os(merge_out + ".summary.json");
    if (!os) throw IoError("cannot write " + merge_out + ".summary.json");
    os << to_json(census).dump(2) << '\n';
    emit(to_json(census));
    if (census.has_violations()) exit_code = kViolation;
  });

  // verify-family
  std::int64_t fam_lo = 0, fam_hi = 200;
  auto* fam = app.add_subcommand("verify-family", "Check ML(8,4s+3,4s+11,4s+19) = (2s+7)/(8s+30)");
  fam->add_option("--s-lo", fam_lo, "First s");
  fam->add_option("--s-hi", fam_hi, "Last s");
  fam->callback([&] {
    const FamilyReport r = verify_family(fam_lo, fam_hi);
    emit(to_json(r));
    if (!r.all_pass) exit_code = kViolation;
  });

  // verify-theorem
  int thm_id = 0;
  std::int64_t thm_vmax = -1, thm_trials = 10000, thm_qmax = 8;
  std::uint64_t thm_seed = 1;
  unsigned thm_workers = default_workers();
  auto* thm = app.add_subcommand("verify-theorem", "Scan the hypotheses of a four-runner theorem");
  thm->add_option("theorem", thm_id, "1, 2, 3 or 4")->required()->check(CLI::IsMember({1, 2, 3, 4}));
  thm->add_option("--v-max", thm_vmax, "Largest speed (default 40; 48 for theorem 4; 12 for theorem 2)");
  thm->add_option("--trials", thm_trials, "Random trials (theorem 2)");
  thm->add_option("--q-max", thm_qmax, "Largest offset denominator (theorem 2)");
  thm->add_option("--seed", thm_seed, "Random seed (theorem 2)");
  thm->add_option("--workers", thm_workers, "Worker threads")->check(CLI::PositiveNumber);
  thm->callback([&] {
    TheoremScanReport r;
    switch (thm_id) {
      case 1:
        r = verify_theorem1(thm_vmax < 0 ? 40 : thm_vmax, thm_workers);
        break;
      case 2:
        r = verify_shifted_theorem2(thm_trials, thm_qmax, thm_vmax < 0 ? 12 : thm_vmax, thm_seed);
        break;
      case 3:
        r = verify_theorem3(thm_vmax < 0 ? 40 : thm_vmax, thm_workers);
        break;
      default:
        r = verify_theorem4(thm_vmax < 0 ? 48 : thm_vmax, thm_workers);
        break;
    }
    emit(to_json(r));
    if (!r.claim_holds()) exit_code = kViolation;
  });

  // lemma3 / lemma4
  std::string l3_L, l3_eps;
  std::int64_t l3_prev = 0;
  auto* l3 = app.add_subcommand("lemma3", "Least very-fast speed keeping loneliness >= L - eps");
  l3->add_option("L", l3_L, "Loneliness of the slower runners")->required();
  l3->add_option("eps", l3_eps, "Allowed loss")->required();
  l3->add_option("v_prev", l3_prev, "Fastest of the slower runners")->required();
  l3->callback([&] {
    emit({{"L", parse_rational(l3_L).str()},
          {"eps", parse_rational(l3_eps).str()},
          {"v_prev", l3_prev},
          {"min_speed", lemma3_min_speed(parse_rational(l3_L), parse_rational(l3_eps), l3_prev)}});
  });

  std::string l4_L;
  std::int64_t l4_n = 0, l4_a = 0, l4_b = 0;
  auto* l4 = app.add_subcommand("lemma4", "Two-fast-runner condition L - 3a/(n b) >= 1/n");
  l4->add_option("L", l4_L, "Loneliness of the n-2 slower runners")->required();
  l4->add_option("n", l4_n, "Runner count")->required();
  l4->add_option("v_nm2", l4_a, "Speed v_{n-2}")->required();
  l4->add_option("v_nm1", l4_b, "Speed v_{n-1}")->required();
  l4->callback([&] {
    emit({{"L", parse_rational(l4_L).str()},
          {"n", l4_n},
          {"v_nm2", l4_a},
          {"v_nm1", l4_b},
          {"holds", lemma4_condition(parse_rational(l4_L), l4_n, l4_a, l4_b)}});
  });

  // oracle-check
  std::vector<std::string> oc_speeds;
  std::int64_t oc_n = 0, oc_vmax = 0, oc_random = 0;
  std::uint64_t oc_seed = 1;
  auto* oc = app.add_subcommand("oracle-check", "Cross-check the candidate search against the breakpoint oracle");
  oc->add_option("speeds", oc_speeds, "Single tuple to check");
  oc->add_option("--n", oc_n, "Runner count for exhaustive or random checks");
  oc->add_option("--v-max", oc_vmax, "Largest speed");
  oc->add_option("--random", oc_random, "Number of random tuples instead of exhaustive enumeration");
  oc->add_option("--seed", oc_seed, "Random seed");
  oc->callback([&] {
    std::int64_t checked = 0;
    Json mismatches = Json::array();
    auto check = [&](std::span<const std::int64_t> t) {
      const SpeedSet s = normalize(t);
      const Rational fast = compute_ml(s).value;
      const Rational slow = oracle_ml(s).value;
      ++checked;
      if (fast != slow) {
        mismatches.push_back({{"speeds", std::vector<std::int64_t>(t.begin(), t.end())},
                              {"compute_ml", fast.str()},
                              {"oracle_ml", slow.str()}});
      }
    };
    if (!oc_speeds.empty()) {
      check(parse_speeds(oc_speeds));
    } else if (oc_random > 0) {
      if (oc_n < 1 || oc_vmax < oc_n) throw DomainError("--random needs 1 <= n <= v-max");
      std::mt19937_64 rng(oc_seed);
      std::uniform_int_distribution<std::int64_t> dist(1, oc_vmax);
      for (std::int64_t i = 0; i < oc_random; ++i) {
        std::vector<std::int64_t> t;
        while (static_cast<std::int64_t>(t.size()) < oc_n) {
          const auto x = dist(rng);
          if (std::find(t.begin(), t.end(), x) == t.end()) t.push_back(x);
        }
        check(t);
      }
    } else {
      for_each_primitive(oc_n, oc_vmax, {}, check);
    }
    emit({{"checked", checked}, {"mismatches", mismatches}});
    if (!mismatches.empty()) exit_code = kViolation;
  });

  // shifted-ml
  std::vector<std::string> sh_speeds, sh_offsets;
  bool sh_oracle = false;
  auto* sh = app.add_subcommand("shifted-ml", "Loneliness with individual starting points");
  sh->add_option("speeds", sh_speeds, "Distinct positive speeds")->required();
  sh->add_option("--offsets", sh_offsets, "Starting points in [0, 1), one per speed");
  sh->add_flag("--oracle", sh_oracle, "Also run the breakpoint oracle and compare");
  sh->callback([&] {
    auto speeds = parse_speeds(sh_speeds);
    std::vector<Rational> offsets;
    for (const auto& o : sh_offsets) offsets.push_back(parse_rational(o));
    if (offsets.empty()) offsets.assign(speeds.size(), Rational(0));
    const ShiftedInstance inst(speeds, offsets);
    const LonelinessResult r = shifted_ml(inst);
    Json offs = Json::array();
    for (const auto& o : offsets) offs.push_back(o.str());
    Json j = {{"speeds", speeds}, {"offsets", offs}, {"ml", r.value.str()}, {"witness", witness_to_json(r)}};
    if (sh_oracle) {
      const Rational check = shifted_oracle(inst).value;
      j["oracle_ml"] = check.str();
      if (check != r.value) exit_code = kViolation;
    }
    emit(j);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const ArithmeticOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kWidthExceeded;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return exit_code;
}

}  // namespace lonely::cli
