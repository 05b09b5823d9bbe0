#ifndef PLBARS_JSON_IO_HPP
#define PLBARS_JSON_IO_HPP

#include "plbars/tracker.hpp"

#include <json.hpp>

namespace plbars {

// Spectrum export: array of {value, degree, source, k}, already sorted by
// enumerate_spectrum's (value, degree, source, k) order.
nlohmann::json spectrum_to_json(const std::vector<IndexedAction>& actions);

// {degree, bars: [{left: "p/q", right: "p/q"|"inf"}...]} sorted by
// (left, right).
nlohmann::json barcode_to_json(const Barcode& bc);
Barcode barcode_from_json(const nlohmann::json& j);  // throws ParseError

nlohmann::json certificate_to_json(const BarCertificate& cert);

// One horizontal segment per bar, x-axis in 2pi-units, arrowhead marks an
// infinite bar.
std::string barcode_svg(const std::vector<Barcode>& barcodes);

// Plain key=value scenario config.
struct Scenario {
  ManifoldParams params;
  Rat epsilon;
  long count = 1;                // generator count m
  std::vector<Rat> coefficients; // a_i, in family order
  unsigned long seed = 0;

  void validate() const;
};

Scenario parse_scenario(const std::string& text);   // throws ParseError
std::string scenario_to_string(const Scenario& s);  // lossless round-trip
Scenario load_scenario(const std::string& path);

}  // namespace plbars

#endif
