#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "lonely/analysis.hpp"
#include "lonely/loneliness.hpp"
#include "lonely/scan.hpp"
#include "lonely/serialize.hpp"
#include "lonely/spectrum.hpp"
#include "lonely/tuples.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;

namespace pybind11::detail {

// Rational <-> fractions.Fraction. Anything with integral numerator and
// denominator attributes (int, Fraction) is accepted on the way in.
template <>
struct type_caster<lonely::Rational> {
  PYBIND11_TYPE_CASTER(lonely::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || !py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
    if (py::isinstance<py::float_>(src)) return false;
    const auto num = src.attr("numerator").cast<std::int64_t>();
    const auto den = src.attr("denominator").cast<std::int64_t>();
    value = lonely::Rational(num, den);
    return true;
  }

  static handle cast(const lonely::Rational& r, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(r.num(), r.den()).release();
  }
};

}  // namespace pybind11::detail

namespace {

py::object to_python(const lonely::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace lonely;
  m.doc() = "Exact maximum loneliness of integer speed sets";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ArithmeticOverflow>(m, "ArithmeticOverflow", PyExc_OverflowError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<LonelinessResult>(m, "LonelinessResult")
      .def_readonly("value", &LonelinessResult::value)
      .def_readonly("witness_time", &LonelinessResult::witness_time)
      .def_readonly("witness_pair", &LonelinessResult::witness_pair)
      .def_property_readonly("exact", &LonelinessResult::exact)
      .def("__repr__", [](const LonelinessResult& r) {
        return "LonelinessResult(value=" + r.value.str() + ", witness_time=" + r.witness_time.str() +
               (r.exact() ? ", exact)" : ", at-least-floor)");
      });

  py::class_<SpectrumClass>(m, "SpectrumClass")
      .def_property_readonly("kind", [](const SpectrumClass& c) { return std::string(to_string(c.kind)); })
      .def_readonly("s", &SpectrumClass::s)
      .def_readonly("k_min", &SpectrumClass::k_min)
      .def_readonly("all_k", &SpectrumClass::all_k)
      .def_readonly("lrc_violation", &SpectrumClass::lrc_violation)
      .def("__repr__", [](const SpectrumClass& c) { return "SpectrumClass(" + to_json(c).dump() + ")"; });

  m.def(
      "ml",
      [](const std::vector<std::int64_t>& speeds, const std::optional<Rational>& floor) {
        const SpeedSet s = normalize(speeds);
        return floor ? compute_ml_with_floor(s, *floor) : compute_ml(s);
      },
      py::arg("speeds"), py::arg("floor") = py::none(), py::call_guard<py::gil_scoped_release>(),
      "Maximum loneliness; with a floor, stops once the floor is reached.");
  m.def(
      "oracle_ml", [](const std::vector<std::int64_t>& speeds) { return oracle_ml(normalize(speeds)); },
      py::arg("speeds"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "loneliness_at", [](const std::vector<std::int64_t>& speeds, const Rational& t) { return loneliness_at(speeds, t); },
      py::arg("speeds"), py::arg("t"));
  m.def(
      "normalize",
      [](const std::vector<std::int64_t>& speeds) {
        const SpeedSet s = normalize(speeds);
        return py::make_tuple(std::vector<std::int64_t>(s.speeds().begin(), s.speeds().end()), s.scale());
      },
      py::arg("speeds"), "Sorted speeds with the gcd divided out, and that gcd.");

  m.def("classify", &classify, py::arg("n"), py::arg("value"));
  m.def("spectrum_value", &spectrum_value, py::arg("n"), py::arg("s"), py::arg("k"));

  m.def(
      "shifted_ml",
      [](std::vector<std::int64_t> speeds, std::vector<Rational> offsets) {
        return shifted_ml(ShiftedInstance(std::move(speeds), std::move(offsets)));
      },
      py::arg("speeds"), py::arg("offsets"), py::call_guard<py::gil_scoped_release>());
  m.def("prejump_invariant", &prejump_invariant, py::arg("v1"), py::arg("v2"), py::arg("g"), py::arg("t"),
        py::arg("h"));

  m.def(
      "enumerate_primitive",
      [](std::int64_t n, std::int64_t v_max, std::int64_t shard_index, std::int64_t shard_total) {
        if (shard_total < 1 || shard_index < 0 || shard_index >= shard_total) throw DomainError("invalid shard");
        return enumerate_primitive(n, v_max, Shard{shard_index, shard_total});
      },
      py::arg("n"), py::arg("v_max"), py::arg("shard_index") = 0, py::arg("shard_total") = 1);

  m.def(
      "verify_family",
      [](std::int64_t lo, std::int64_t hi) {
        FamilyReport r;
        {
          py::gil_scoped_release release;
          r = verify_family(lo, hi);
        }
        return to_python(to_json(r));
      },
      py::arg("s_lo") = 0, py::arg("s_hi") = 200);
  m.def(
      "verify_theorem",
      [](int id, std::int64_t v_max, unsigned workers, std::int64_t trials, std::int64_t q_max, std::uint64_t seed) {
        TheoremScanReport r;
        {
          py::gil_scoped_release release;
          switch (id) {
            case 1:
              r = verify_theorem1(v_max, workers);
              break;
            case 2:
              r = verify_shifted_theorem2(trials, q_max, v_max, seed);
              break;
            case 3:
              r = verify_theorem3(v_max, workers);
              break;
            case 4:
              r = verify_theorem4(v_max, workers);
              break;
            default:
              throw DomainError("theorem id must be 1, 2, 3 or 4");
          }
        }
        return to_python(to_json(r));
      },
      py::arg("theorem"), py::arg("v_max"), py::arg("workers") = 1, py::arg("trials") = 10000,
      py::arg("q_max") = 8, py::arg("seed") = 1);

  m.def("lemma3_min_speed", &lemma3_min_speed, py::arg("L"), py::arg("eps"), py::arg("v_prev"));
  m.def("lemma4_condition", &lemma4_condition, py::arg("L"), py::arg("n"), py::arg("v_nm2"), py::arg("v_nm1"));

  m.def(
      "scan",
      [](std::int64_t n, std::int64_t v_max, const std::string& out, const std::optional<Rational>& floor,
         const std::string& filter, std::int64_t shard_index, std::int64_t shard_total, unsigned workers,
         const std::string& checkpoint, bool resume) {
        ScanConfig cfg;
        cfg.n = n;
        cfg.v_max = v_max;
        cfg.output_path = out;
        cfg.floor = floor;
        cfg.filter = parse_filter(filter);
        cfg.shard = {shard_index, shard_total};
        cfg.workers = workers;
        cfg.checkpoint_path = checkpoint;
        cfg.resume = resume;
        ScanOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = run_scan(cfg);
        }
        Json j = to_json(outcome.census);
        j["complete"] = outcome.complete;
        return to_python(j);
      },
      py::arg("n"), py::arg("v_max"), py::arg("out"), py::arg("floor") = py::none(), py::arg("filter") = "none",
      py::arg("shard_index") = 0, py::arg("shard_total") = 1, py::arg("workers") = 1, py::arg("checkpoint") = "",
      py::arg("resume") = false,
      "Exhaustive census written as JSONL to `out`; returns the summary.");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
