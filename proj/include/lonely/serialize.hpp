#pragma once

#include <json.hpp>

#include "lonely/analysis.hpp"
#include "lonely/loneliness.hpp"
#include "lonely/scan.hpp"
#include "lonely/spectrum.hpp"

namespace lonely {

// Key order is part of the output format, hence ordered_json.
using Json = nlohmann::ordered_json;

/// {"num": p, "den": q}
Json rational_to_json(const Rational& r);
/// Accepts {"num", "den"} objects, "p/q" strings and integers.
Rational rational_from_json(const Json& j);

/// {"t": "m/D", "pair": [i, j]} (pair omitted for a single runner).
Json witness_to_json(const LonelinessResult& r);

/// {"speeds", "scale", "ml", "mode", "witness"}
Json to_json(const SpeedSet& speeds, const LonelinessResult& r);
Json to_json(const SpectrumClass& c);
SpectrumClass spectrum_class_from_json(const Json& j);

Json to_json(const FamilyReport& r);
Json to_json(const TheoremScanReport& r);

/// {"speeds", "ml", "floor", "class", "witness"}; floor-mode records store
/// null for ml and witness.
Json to_json(const ScanRecord& r);
/// Inverse of to_json(ScanRecord); `floor` fills the value of floor-mode records.
ScanRecord scan_record_from_json(const Json& j, const Rational& floor);

Json to_json(const CensusSummary& c);
CensusSummary census_from_json(const Json& j);

Json to_json(const ScanCheckpoint& c);
ScanCheckpoint checkpoint_from_json(const Json& j);

}  // namespace lonely
