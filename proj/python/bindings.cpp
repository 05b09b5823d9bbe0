#include "plbars/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace plbars;
using nlohmann::json;

namespace {

// Library errors surface as ValueError with the structured code name.
const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SlopeConditionViolation: return "SlopeConditionViolation";
    case Errc::DomainError: return "DomainError";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NotAComplex: return "NotAComplex";
    case Errc::FiltrationViolation: return "FiltrationViolation";
    case Errc::NoSolution: return "NoSolution";
    case Errc::CaseMismatch: return "CaseMismatch";
    case Errc::RuleConflict: return "RuleConflict";
    case Errc::ParameterError: return "ParameterError";
    case Errc::SupportError: return "SupportError";
    case Errc::CannotPerturb: return "CannotPerturb";
    case Errc::VolumeError: return "VolumeError";
    case Errc::AllZero: return "AllZero";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Error";
}

template <class F>
auto guard(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw py::value_error(std::string(errc_name(e.code())) + ": " + e.what());
  }
}

std::string spectrum_json(const std::string& profileText, long n, long N,
                          const std::string& gamma2pi, int lambdaSign, long degreeLo,
                          long degreeHi, const std::vector<long>& exteriorIndices) {
  return guard([&] {
    PLProfile f = parse_profile(profileText);
    ManifoldParams p;
    p.n = n;
    p.N = N;
    p.gammaHat = parse_rat(gamma2pi);
    p.lambdaSign = lambdaSign;
    p.R = f.R;
    if (!exteriorIndices.empty()) p.exteriorMorseIndices = exteriorIndices;
    p.validate();
    f.validate();
    json arr = json::array();
    for (long d = degreeLo; d <= degreeHi; ++d)
      for (auto& e : spectrum_to_json(enumerate_spectrum(f, p, d))) arr.push_back(e);
    return arr.dump();
  });
}

std::string certificate_json(const std::string& scenarioText) {
  return guard([&] {
    Scenario sc = parse_scenario(scenarioText);
    sc.validate();
    GeneratorFamily fam = build_generators(sc.params, sc.epsilon, sc.count);
    DepthBound db = boundary_depth_lower_bound(sc.coefficients, fam, sc.params, sc.epsilon);
    json out;
    out["scenario"] = scenario_to_string(sc);
    out["bound"] = {{"two_pi", rat_str(db.bound.two_pi)},
                    {"raw", rat_str(db.bound.raw)},
                    {"symbolic", db.bound.str()},
                    {"decimal", db.bound.decimal()}};
    if (db.certificate) out["certificate"] = certificate_to_json(*db.certificate);
    return out.dump();
  });
}

std::string bottleneck(const std::string& jsonA, const std::string& jsonB) {
  return guard([&] {
    Barcode A = barcode_from_json(json::parse(jsonA, nullptr, false));
    Barcode B = barcode_from_json(json::parse(jsonB, nullptr, false));
    return bottleneck_distance(A, B).str();
  });
}

std::string reduce_json(const std::string& complexText) {
  return guard([&] {
    json j = json::parse(complexText, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("generators") ||
        !j.contains("boundary"))
      throw Error(Errc::ParseError, "expected {generators:[...], boundary:[...]}");
    FilteredComplex K;
    for (const auto& g : j["generators"]) {
      ComplexGenerator cg;
      cg.degree = g.at("degree").get<long>();
      cg.action = parse_rat(g.at("action").get<std::string>());
      cg.label = g.value("label", std::string());
      K.generators.push_back(std::move(cg));
    }
    for (const auto& col : j["boundary"]) {
      std::vector<std::pair<size_t, Rat>> entries;
      for (const auto& e : col)
        entries.emplace_back(e.at(0).get<size_t>(), parse_rat(e.at(1).get<std::string>()));
      K.boundary.push_back(std::move(entries));
    }
    K.validate();
    json out = json::array();
    for (auto& [d, bc] : reduce_filtered_complex(K)) out.push_back(barcode_to_json(bc));
    return out.dump();
  });
}

std::string svg_of_barcodes(const std::string& barcodesText) {
  return guard([&] {
    json j = json::parse(barcodesText, nullptr, false);
    if (j.is_discarded() || !j.is_array())
      throw Error(Errc::ParseError, "expected an array of barcode objects");
    std::vector<Barcode> bcs;
    for (const auto& e : j) bcs.push_back(barcode_from_json(e));
    return barcode_svg(bcs);
  });
}

std::string py_sup_distance(const std::string& a, const std::string& b) {
  return guard([&] { return rat_str(sup_distance(parse_profile(a), parse_profile(b))); });
}

std::string py_oscillation(const std::string& a) {
  return guard([&] { return rat_str(oscillation(parse_profile(a))); });
}

int case_of(const std::string& scenarioText) {
  return guard([&] {
    Scenario sc = parse_scenario(scenarioText);
    sc.validate();
    return (int)dispatch_case(sc.params);
  });
}

}  // namespace

PYBIND11_MODULE(_plbars, m) {
  m.doc() = "Exact action spectra, barcode certificates, and bottleneck distances";
  m.def("spectrum_json", &spectrum_json, py::arg("profile"), py::arg("n") = 1,
        py::arg("N") = 0, py::arg("gamma2pi") = "0", py::arg("lambda_sign") = 0,
        py::arg("degree_lo") = 0, py::arg("degree_hi") = 0,
        py::arg("exterior_indices") = std::vector<long>{},
        "Indexed action spectrum of a profile over a degree range, as JSON.");
  m.def("certificate_json", &certificate_json, py::arg("scenario"),
        "Run a depth-bound certificate from key=value scenario text; returns JSON.");
  m.def("bottleneck", &bottleneck, py::arg("barcode_a"), py::arg("barcode_b"),
        "Exact bottleneck distance of two barcode JSON strings ('p/q' or 'inf').");
  m.def("reduce_complex", &reduce_json, py::arg("complex"),
        "Barcodes of a filtered complex given as JSON; returns a JSON array.");
  m.def("barcode_svg", &svg_of_barcodes, py::arg("barcodes"),
        "SVG rendering of a JSON array of barcodes.");
  m.def("sup_distance", &py_sup_distance, py::arg("profile_a"), py::arg("profile_b"),
        "Exact L-infinity distance of two profile texts, as 'p/q'.");
  m.def("oscillation", &py_oscillation, py::arg("profile"),
        "max - min of a profile text, as 'p/q'.");
  m.def("case_of", &case_of, py::arg("scenario"),
        "Monotonicity regime (1..5) dispatched from scenario text.");
}
