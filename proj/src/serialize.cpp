#include "lonely/serialize.hpp"

namespace lonely {
namespace {

Json speeds_json(std::span<const std::int64_t> speeds) { return Json(std::vector<std::int64_t>(speeds.begin(), speeds.end())); }

Json violations_json(const std::vector<Violation>& list) {
  Json out = Json::array();
  for (const auto& v : list) out.push_back({{"speeds", speeds_json(v.speeds)}, {"ml", v.ml.str()}});
  return out;
}

std::vector<Violation> violations_from_json(const Json& j) {
  std::vector<Violation> out;
  for (const auto& v : j) out.push_back({v.at("speeds").get<SpeedTuple>(), rational_from_json(v.at("ml"))});
  return out;
}

SpectrumKind kind_from_string(const std::string& s) {
  for (auto k : {SpectrumKind::at_least_floor, SpectrumKind::spectrum_point, SpectrumKind::amended_violation}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown spectrum kind '" + s + "'");
}

}  // namespace

Json rational_to_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

Rational rational_from_json(const Json& j) {
  if (j.is_object()) return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw DomainError("expected a rational, got " + j.dump());
}

Json witness_to_json(const LonelinessResult& r) {
  Json w = {{"t", r.witness_time.str()}};
  if (r.witness_pair) w["pair"] = {r.witness_pair->first, r.witness_pair->second};
  return w;
}

Json to_json(const SpeedSet& speeds, const LonelinessResult& r) {
  return {{"speeds", speeds_json(speeds.speeds())},
          {"scale", speeds.scale()},
          {"ml", r.value.str()},
          {"mode", r.exact() ? "exact" : "floor"},
          {"witness", witness_to_json(r)}};
}

Json to_json(const SpectrumClass& c) {
  Json j = {{"kind", to_string(c.kind)}};
  if (c.kind == SpectrumKind::spectrum_point) {
    j["s"] = c.s;
    j["k_min"] = c.k_min;
  }
  j["all_k"] = c.all_k;
  j["lrc_violation"] = c.lrc_violation;
  return j;
}

SpectrumClass spectrum_class_from_json(const Json& j) {
  SpectrumClass c;
  c.kind = kind_from_string(j.at("kind").get<std::string>());
  if (c.kind == SpectrumKind::spectrum_point) {
    c.s = j.at("s").get<std::int64_t>();
    c.k_min = j.at("k_min").get<std::int64_t>();
  }
  c.all_k = j.at("all_k").get<std::vector<std::int64_t>>();
  c.lrc_violation = j.at("lrc_violation").get<bool>();
  return c;
}

Json to_json(const FamilyReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"s", f.s}, {"expected", f.expected.str()}, {"got", f.got.str()}});
  }
  return {{"s_range", {r.s_lo, r.s_hi}}, {"failures", failures}, {"all_pass", r.all_pass}};
}

Json to_json(const TheoremScanReport& r) {
  Json exceptions = Json::array();
  for (const auto& e : r.exceptions_found) {
    Json item = {{"speeds", speeds_json(e.speeds)}};
    if (!e.offsets.empty()) {
      Json offs = Json::array();
      for (const auto& o : e.offsets) offs.push_back(o.str());
      item["offsets"] = offs;
    }
    item["ml"] = e.ml.str();
    exceptions.push_back(item);
  }
  return {{"theorem_id", r.theorem_id},
          {"tuples_checked", r.tuples_checked},
          {"exceptions_found", exceptions},
          {"expected_exceptions", r.expected_exceptions},
          {"claim_holds", r.claim_holds()}};
}

Json to_json(const ScanRecord& r) {
  const bool exact = r.result.exact();
  return {{"speeds", speeds_json(r.speeds)},
          {"ml", exact ? Json(r.result.value.str()) : Json(nullptr)},
          {"floor", !exact},
          {"class", to_json(r.cls)},
          {"witness", exact ? witness_to_json(r.result) : Json(nullptr)}};
}

ScanRecord scan_record_from_json(const Json& j, const Rational& floor) {
  ScanRecord r;
  r.speeds = j.at("speeds").get<SpeedTuple>();
  r.cls = spectrum_class_from_json(j.at("class"));
  if (j.at("floor").get<bool>()) {
    r.result.mode = ResultMode::at_least_floor;
    r.result.value = floor;
    return r;
  }
  r.result.value = rational_from_json(j.at("ml"));
  const Json& w = j.at("witness");
  r.result.witness_time = rational_from_json(w.at("t"));
  if (w.contains("pair")) r.result.witness_pair = RunnerPair{w["pair"][0].get<std::size_t>(), w["pair"][1].get<std::size_t>()};
  return r;
}

Json to_json(const CensusSummary& c) {
  Json histogram = Json::array();
  for (const auto& [key, count] : c.histogram) histogram.push_back({{"k", key.first}, {"s", key.second}, {"count", count}});
  return {{"config",
           {{"n", c.n}, {"v_max", c.v_max}, {"floor", c.floor.str()}, {"filter", to_string(c.filter)}, {"hash", c.config_hash}}},
          {"total", c.total},
          {"at_least_floor", c.at_least_floor},
          {"histogram", histogram},
          {"violations", {{"amended", violations_json(c.amended_violations)}, {"lrc", violations_json(c.lrc_violations)}}}};
}

CensusSummary census_from_json(const Json& j) {
  CensusSummary c;
  const Json& cfg = j.at("config");
  c.n = cfg.at("n").get<std::int64_t>();
  c.v_max = cfg.at("v_max").get<std::int64_t>();
  c.floor = rational_from_json(cfg.at("floor"));
  c.filter = parse_filter(cfg.at("filter").get<std::string>());
  c.config_hash = cfg.at("hash").get<std::string>();
  c.total = j.at("total").get<std::int64_t>();
  c.at_least_floor = j.at("at_least_floor").get<std::int64_t>();
  for (const auto& h : j.at("histogram")) {
    c.histogram[{h.at("k").get<std::int64_t>(), h.at("s").get<std::int64_t>()}] = h.at("count").get<std::int64_t>();
  }
  c.amended_violations = violations_from_json(j.at("violations").at("amended"));
  c.lrc_violations = violations_from_json(j.at("violations").at("lrc"));
  return c;
}

Json to_json(const ScanCheckpoint& c) {
  return {{"config_hash", c.config_hash}, {"last_block", {c.last_block.first, c.last_block.second}}, {"emitted", c.emitted}};
}

ScanCheckpoint checkpoint_from_json(const Json& j) {
  ScanCheckpoint c;
  c.config_hash = j.at("config_hash").get<std::string>();
  c.last_block = {j.at("last_block")[0].get<std::int64_t>(), j.at("last_block")[1].get<std::int64_t>()};
  c.emitted = j.at("emitted").get<std::int64_t>();
  return c;
}

}  // namespace lonely
