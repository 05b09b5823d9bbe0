#include "plbars/core.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace plbars {

void ManifoldParams::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::ParameterError, m); };
  if (n < 1) fail("n must be positive");
  if (N < 0) fail("N must be non-negative");
  if (gammaHat < 0) fail("gammaHat must be non-negative");
  if (lambdaSign < -1 || lambdaSign > 1) fail("lambdaSign must be -1, 0 or +1");
  if (R <= 0) fail("R must be positive");
  if (N == 0 && gammaHat != 0) fail("N = 0 forces gammaHat = 0");
  if (lambdaSign == 0 && gammaHat != 0) fail("lambdaSign = 0 forces gammaHat = 0");
  if (gammaHat != 0 && 2 * R > gammaHat) fail("gammaHat != 0 requires 2R <= gammaHat");
  if (exteriorMorseIndices.empty()) fail("exteriorMorseIndices must be non-empty");
  bool has0 = false;
  for (long j : exteriorMorseIndices) {
    if (j < 0 || j > 2 * n - 1) fail("exterior Morse index out of [0, 2n-1]");
    if (j == 0) has0 = true;
  }
  if (!has0) fail("exteriorMorseIndices must contain 0");
}

Rat PLProfile::slope(size_t i) const {
  return (pts[i + 1].v - pts[i].v) / (pts[i + 1].r - pts[i].r);
}

Rat PLProfile::value_at(const Rat& r) const {
  if (r < 0 || r > R) throw Error(Errc::DomainError, "value_at: r outside [0, R]");
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (r <= pts[i + 1].r)
      return pts[i].v + slope(i) * (r - pts[i].r);
  }
  return pts.back().v;
}

Rat PLProfile::min_value() const {
  Rat m = pts[0].v;
  for (const auto& p : pts) m = std::min(m, p.v);
  return m;
}

Rat PLProfile::max_value() const {
  Rat m = pts[0].v;
  for (const auto& p : pts) m = std::max(m, p.v);
  return m;
}

PLProfile PLProfile::simplified() const {
  PLProfile out;
  out.R = R;
  out.pts.push_back(pts.front());
  for (size_t i = 1; i + 1 < pts.size(); ++i) {
    Rat sl = (pts[i].v - out.pts.back().v) / (pts[i].r - out.pts.back().r);
    Rat sr = (pts[i + 1].v - pts[i].v) / (pts[i + 1].r - pts[i].r);
    if (sl != sr) out.pts.push_back(pts[i]);
  }
  out.pts.push_back(pts.back());
  return out;
}

void PLProfile::validate_domain() const {
  if (pts.size() < 2) throw Error(Errc::DomainError, "profile needs at least two breakpoints");
  if (pts.front().r != 0) throw Error(Errc::DomainError, "first breakpoint must be at r = 0");
  if (pts.back().r != R) throw Error(Errc::DomainError, "last breakpoint must be at r = R");
  if (R <= 0) throw Error(Errc::DomainError, "R must be positive");
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (!(pts[i].r < pts[i + 1].r))
      throw Error(Errc::DomainError, "breakpoint radii must strictly increase");
}

void PLProfile::validate() const {
  validate_domain();
  for (size_t i = 0; i < segments(); ++i) {
    Rat s = slope(i);
    if (is_integer(s)) {
      std::ostringstream os;
      os << "segment " << i << " has integer slope " << rat_str(s);
      throw Error(Errc::SlopeConditionViolation, os.str());
    }
  }
  Rat s = final_slope();
  if (rat_abs(s) >= 1) {
    std::ostringstream os;
    os << "final slope " << rat_str(s) << " has |s| >= 1";
    throw Error(Errc::SlopeConditionViolation, os.str());
  }
}

PLProfile make_profile_unchecked(const std::vector<std::pair<Rat, Rat>>& points) {
  PLProfile f;
  if (points.empty()) throw Error(Errc::DomainError, "no breakpoints");
  f.R = points.back().first;
  for (const auto& [r, v] : points) f.pts.push_back({r, v});
  f.validate_domain();
  return f;
}

PLProfile make_profile(const std::vector<std::pair<Rat, Rat>>& points) {
  PLProfile f = make_profile_unchecked(points);
  f.validate();
  return f;
}

PLProfile zero_profile(const Rat& R) {
  return make_profile_unchecked({{0, 0}, {R, 0}});
}

PLProfile linear_combine(const std::vector<Rat>& coeffs,
                         const std::vector<PLProfile>& profiles) {
  if (coeffs.size() != profiles.size())
    throw Error(Errc::DomainMismatch, "coefficient/profile count mismatch");
  if (profiles.empty()) throw Error(Errc::DomainMismatch, "no profiles");
  const Rat& R = profiles[0].R;
  std::set<Rat> radii;
  for (const auto& f : profiles) {
    if (f.R != R) throw Error(Errc::DomainMismatch, "profiles have different domains");
    for (const auto& p : f.pts) radii.insert(p.r);
  }
  PLProfile out;
  out.R = R;
  for (const Rat& r : radii) {
    Rat v = 0;
    for (size_t i = 0; i < profiles.size(); ++i) v += coeffs[i] * profiles[i].value_at(r);
    out.pts.push_back({r, v});
  }
  return out.simplified();
}

Rat sup_distance(const PLProfile& f, const PLProfile& g) {
  if (f.R != g.R) throw Error(Errc::DomainMismatch, "profiles have different domains");
  std::set<Rat> radii;
  for (const auto& p : f.pts) radii.insert(p.r);
  for (const auto& p : g.pts) radii.insert(p.r);
  Rat best = 0;
  for (const Rat& r : radii) best = std::max(best, rat_abs(f.value_at(r) - g.value_at(r)));
  return best;
}

Rat oscillation(const PLProfile& f) { return f.max_value() - f.min_value(); }

std::vector<Kink> classify_kinks(const PLProfile& f) {
  std::vector<Kink> out;
  for (size_t i = 1; i + 1 < f.pts.size(); ++i) {
    Rat sl = f.slope(i - 1), sr = f.slope(i);
    if (sl == sr) continue;
    Kink k;
    k.r = f.pts[i].r;
    k.value = f.pts[i].v;
    k.leftSlope = sl;
    k.rightSlope = sr;
    k.orientation = sl > sr ? KinkOrientation::Down : KinkOrientation::Up;
    Rat lo = std::min(sl, sr), hi = std::max(sl, sr);
    for (Int l = rat_floor(lo) + 1; Rat(l) < hi; ++l)
      if (Rat(l) > lo) k.crossedLevels.push_back((long)l);
    out.push_back(std::move(k));
  }
  return out;
}

std::string serialize_profile(const PLProfile& f) {
  std::ostringstream os;
  os << "R=" << rat_str(f.R) << "\n";
  for (const auto& p : f.pts) os << rat_str(p.r) << " " << rat_str(p.v) << "\n";
  return os.str();
}

PLProfile parse_profile(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<Rat, Rat>> points;
  bool haveR = false;
  Rat R;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (!haveR) {
      if (line.rfind("R=", 0) != 0)
        throw Error(Errc::ParseError, "profile file must start with R=p/q");
      R = parse_rat(line.substr(2));
      haveR = true;
      continue;
    }
    std::istringstream ls(line);
    std::string rs, vs;
    if (!(ls >> rs >> vs)) throw Error(Errc::ParseError, "bad breakpoint line: " + line);
    points.emplace_back(parse_rat(rs), parse_rat(vs));
  }
  if (!haveR || points.empty()) throw Error(Errc::ParseError, "empty profile file");
  PLProfile f = make_profile_unchecked(points);
  if (f.R != R) throw Error(Errc::ParseError, "header R does not match last breakpoint");
  return f;
}

PLProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_profile(os.str());
}

}  // namespace plbars
