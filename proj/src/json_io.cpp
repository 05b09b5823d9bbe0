#include "plbars/json_io.hpp"

#include <fstream>
#include <sstream>

namespace plbars {

namespace {

const char* kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::KinkDown: return "kink-down";
    case SourceKind::KinkUp: return "kink-up";
    case SourceKind::YIntercept: return "y-intercept";
    default: return "exterior";
  }
}

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::SlopeHitsInteger: return "slope-hits-integer";
    case EventKind::Collision: return "collision";
    case EventKind::KinkAbsorbed: return "kink-absorbed";
    default: return "leg-boundary";
  }
}

nlohmann::json bar_to_json(const Bar& b) {
  nlohmann::json j;
  j["left"] = rat_str(b.left);
  j["right"] = b.right.infinite ? std::string("inf") : rat_str(b.right.value);
  return j;
}

Bar bar_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("left") || !j.contains("right"))
    throw Error(Errc::ParseError, "bar entries need left and right fields");
  Bar b;
  b.left = parse_rat(j.at("left").get<std::string>());
  b.right = parse_ext_rat(j.at("right").get<std::string>());
  b.validate();
  return b;
}

}  // namespace

nlohmann::json spectrum_to_json(const std::vector<IndexedAction>& actions) {
  nlohmann::json arr = nlohmann::json::array();
  for (const IndexedAction& a : actions) {
    nlohmann::json s;
    s["kind"] = kind_name(a.source.kind);
    if (a.source.kind == SourceKind::KinkDown || a.source.kind == SourceKind::KinkUp) {
      s["r"] = rat_str(a.source.r);
      s["l"] = a.source.l;
    } else if (a.source.kind == SourceKind::YIntercept) {
      s["l"] = a.source.l;
    } else {
      s["j"] = a.source.j;
    }
    nlohmann::json e;
    e["value"] = rat_str(a.value);
    e["degree"] = a.degree;
    e["source"] = std::move(s);
    e["k"] = a.k;
    arr.push_back(std::move(e));
  }
  return arr;
}

nlohmann::json barcode_to_json(const Barcode& bc) {
  nlohmann::json j;
  j["degree"] = bc.degree;
  std::vector<Bar> sorted = bc.bars;
  std::sort(sorted.begin(), sorted.end());
  nlohmann::json arr = nlohmann::json::array();
  for (const Bar& b : sorted) arr.push_back(bar_to_json(b));
  j["bars"] = std::move(arr);
  return j;
}

Barcode barcode_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("bars") ||
      !j.at("degree").is_number_integer() || !j.at("bars").is_array())
    throw Error(Errc::ParseError, "barcode JSON needs an integer degree and a bars array");
  Barcode bc;
  bc.degree = j.at("degree").get<long>();
  for (const auto& e : j.at("bars")) bc.bars.push_back(bar_from_json(e));
  return bc;
}

nlohmann::json certificate_to_json(const BarCertificate& cert) {
  nlohmann::json j;
  j["case"] = (int)cert.caseTag;
  j["trackedDegree"] = cert.trackedDegree;
  j["finalBar"] = bar_to_json(cert.finalBar);
  nlohmann::json lb;
  lb["two_pi"] = rat_str(cert.lowerBound.two_pi);
  lb["raw"] = rat_str(cert.lowerBound.raw);
  lb["symbolic"] = cert.lowerBound.str();
  lb["decimal"] = cert.lowerBound.decimal();
  j["lowerBound"] = std::move(lb);
  j["exchanged"] = cert.exchanged;
  nlohmann::json evs = nlohmann::json::array();
  for (const LoggedEvent& le : cert.eventLog) {
    nlohmann::json e;
    e["leg"] = le.leg;
    e["t"] = rat_str(le.event.time);
    e["kind"] = event_name(le.event.kind);
    e["rule"] = le.rule;
    if (!le.event.detail.empty()) e["detail"] = le.event.detail;
    evs.push_back(std::move(e));
  }
  j["events"] = std::move(evs);
  j["theorems"] = cert.appliedTheorems;
  return j;
}

std::string barcode_svg(const std::vector<Barcode>& barcodes) {
  // Layout: one row per bar, grouped by degree; x-axis in 2pi-units.
  Rat lo = 0, hi = 1;
  size_t rows = 0;
  bool any = false;
  for (const Barcode& bc : barcodes)
    for (const Bar& b : bc.bars) {
      if (!any) {
        lo = b.left;
        hi = b.left + 1;
        any = true;
      }
      lo = std::min(lo, b.left);
      hi = std::max(hi, Rat(b.left + 1));
      if (!b.right.infinite) hi = std::max(hi, b.right.value);
      ++rows;
    }
  double dlo = lo.convert_to<double>(), dhi = hi.convert_to<double>();
  if (dhi <= dlo) dhi = dlo + 1;
  const double W = 640, H = 24.0 * (double)rows + 40, pad = 40;
  auto X = [&](double v) { return pad + (v - dlo) / (dhi - dlo) * (W - 2 * pad); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << H - 20 << "\" x2=\"" << W - pad << "\" y2=\""
     << H - 20 << "\" stroke=\"black\"/>\n";
  double y = 20;
  for (const Barcode& bc : barcodes) {
    std::vector<Bar> sorted = bc.bars;
    std::sort(sorted.begin(), sorted.end());
    for (const Bar& b : sorted) {
      double x1 = X(b.left.convert_to<double>());
      double x2 = b.right.infinite ? W - pad : X(b.right.value.convert_to<double>());
      os << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << x2 << "\" y2=\"" << y
         << "\" stroke=\"#1f4e79\" stroke-width=\"4\"/>\n";
      if (b.right.infinite)
        os << "<path d=\"M " << x2 << " " << y - 6 << " L " << x2 + 10 << " " << y << " L " << x2
           << " " << y + 6 << " Z\" fill=\"#1f4e79\"/>\n";
      os << "<text x=\"" << 4 << "\" y=\"" << y + 4 << "\" font-size=\"10\">d=" << bc.degree
         << "</text>\n";
      y += 24;
    }
  }
  os << "</svg>\n";
  return os.str();
}

void Scenario::validate() const {
  params.validate();
  if (!(epsilon > 0) || !(epsilon < params.R))
    throw Error(Errc::ParameterError, "epsilon must lie in (0, R)");
  if (count < 1) throw Error(Errc::ParameterError, "generator count must be at least 1");
  if ((long)coefficients.size() > count)
    throw Error(Errc::SupportError, "coefficient support exceeds the generator count");
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  bool haveR = false, haveEps = false;
  std::istringstream in(text);
  std::string line;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ParseError, "scenario line " + std::to_string(lineNo) + " lacks '='");
    auto trim = [](std::string v) {
      size_t x = v.find_first_not_of(" \t");
      size_t y = v.find_last_not_of(" \t");
      if (x == std::string::npos) return std::string();
      return v.substr(x, y - x + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    try {
      if (key == "n") s.params.n = std::stol(val);
      else if (key == "N") s.params.N = std::stol(val);
      else if (key == "gamma2pi") s.params.gammaHat = parse_rat(val);
      else if (key == "lambda_sign") s.params.lambdaSign = std::stoi(val);
      else if (key == "R") { s.params.R = parse_rat(val); haveR = true; }
      else if (key == "epsilon") { s.epsilon = parse_rat(val); haveEps = true; }
      else if (key == "m") s.count = std::stol(val);
      else if (key == "seed") s.seed = std::stoul(val);
      else if (key == "exterior_indices") {
        s.params.exteriorMorseIndices.clear();
        std::istringstream vs(val);
        std::string tok;
        while (std::getline(vs, tok, ',')) s.params.exteriorMorseIndices.push_back(std::stol(tok));
      } else if (key == "a") {
        s.coefficients.clear();
        std::istringstream vs(val);
        std::string tok;
        while (std::getline(vs, tok, ',')) s.coefficients.push_back(parse_rat(trim(tok)));
      } else {
        throw Error(Errc::ParseError, "unknown scenario key '" + key + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(Errc::ParseError,
                  "scenario line " + std::to_string(lineNo) + ": bad value for '" + key + "'");
    }
  }
  if (!haveR || !haveEps)
    throw Error(Errc::ParseError, "scenario must set R and epsilon");
  return s;
}

std::string scenario_to_string(const Scenario& s) {
  std::ostringstream os;
  os << "n=" << s.params.n << "\n";
  os << "N=" << s.params.N << "\n";
  os << "gamma2pi=" << rat_str(s.params.gammaHat) << "\n";
  os << "lambda_sign=" << s.params.lambdaSign << "\n";
  os << "R=" << rat_str(s.params.R) << "\n";
  os << "epsilon=" << rat_str(s.epsilon) << "\n";
  os << "m=" << s.count << "\n";
  os << "seed=" << s.seed << "\n";
  os << "exterior_indices=";
  for (size_t i = 0; i < s.params.exteriorMorseIndices.size(); ++i)
    os << (i ? "," : "") << s.params.exteriorMorseIndices[i];
  os << "\n";
  os << "a=";
  for (size_t i = 0; i < s.coefficients.size(); ++i)
    os << (i ? "," : "") << rat_str(s.coefficients[i]);
  os << "\n";
  return os.str();
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open scenario file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str());
}

}  // namespace plbars
