#include "plbars/embedding.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace plbars {

void EmbeddingPoint::validate(long count) const {
  if ((long)coeffs.size() > count)
    throw Error(Errc::SupportError, "coefficient support exceeds the family size");
  for (const Rat& c : coeffs)
    if (c < 0 || c > 1)
      throw Error(Errc::ParameterError, "generator coefficients must lie in [0, 1]");
}

GeneratorFamily build_generators(const ManifoldParams& p, const Rat& eps, long m) {
  p.validate();
  if (m < 1) throw Error(Errc::ParameterError, "at least one generator is required");
  if (!(eps > 0) || !(eps < p.R))
    throw Error(Errc::ParameterError, "epsilon must lie in (0, R)");
  const Rat& R = p.R;
  GeneratorFamily fam;
  fam.params = p;
  fam.epsilon = eps;
  fam.count = m;
  Rat len = eps;
  for (long i = 1; i <= m; ++i) {
    len /= 2;  // |I_i| = eps / 2^i
    GeneratorProfile gp;
    gp.lo = R - eps + len;
    gp.hi = R - eps + 2 * len;
    gp.uw = len / 20;
    Rat r2 = gp.lo + len / 2;
    Rat half = len / 2;
    // Spread of the peaks around the midpoint; shrink deterministically
    // until neither the flank slope R/s nor the outer ramp slope lands on
    // an integer.
    Rat s;
    bool found = false;
    for (long j = 0; j < 200 && !found; ++j) {
      long q = 10007 + 2 * j;  // odd, coprime to the dyadic lengths
      s = len * Rat(q - 1, 10 * q);
      found = !is_integer(R / s) && !is_integer(R / (half - gp.uw - s));
    }
    if (!found)
      throw Error(Errc::ParameterError, "epsilon admits no integer-free generator slopes");
    gp.r1 = r2 - s;
    gp.r2 = r2;
    gp.r3 = r2 + s;
    std::vector<std::pair<Rat, Rat>> pts;
    pts.emplace_back(0, 0);
    pts.emplace_back(gp.lo, 0);
    pts.emplace_back(gp.lo + gp.uw, 0);
    pts.emplace_back(gp.r1, R);
    pts.emplace_back(gp.r2, 0);
    pts.emplace_back(gp.r3, R);
    pts.emplace_back(gp.hi - gp.uw, 0);
    pts.emplace_back(gp.hi, 0);
    if (gp.hi < R) pts.emplace_back(R, 0);
    gp.f = make_profile_unchecked(pts);
    fam.gens.push_back(std::move(gp));
  }
  return fam;
}

PLProfile phi_profile(const EmbeddingPoint& a, const GeneratorFamily& fam) {
  a.validate(fam.count);
  if (fam.gens.empty()) return zero_profile(fam.params.R);
  std::vector<Rat> coeffs(fam.gens.size(), 0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) coeffs[i] = a.coeffs[i];
  std::vector<PLProfile> profiles;
  profiles.reserve(fam.gens.size());
  for (const GeneratorProfile& gp : fam.gens) profiles.push_back(gp.f);
  return linear_combine(coeffs, profiles);
}

PLProfile perturb_to_generic(const PLProfile& f, const ManifoldParams& p, const Rat& eps,
                             const std::vector<Breakpoint>& pinned, unsigned long seed) {
  f.validate_domain();
  if (!(eps > 0)) throw Error(Errc::ParameterError, "epsilon must be positive");
  std::set<Rat> pinnedR;
  for (const Breakpoint& pin : pinned) {
    bool hit = false;
    for (const Breakpoint& bp : f.pts)
      if (bp.r == pin.r && bp.v == pin.v) hit = true;
    if (!hit)
      throw Error(Errc::ParameterError, "pinned point is not a breakpoint of f");
    pinnedR.insert(pin.r);
  }
  {
    bool generic = true;
    try {
      f.validate();
    } catch (const Error&) {
      generic = false;
    }
    if (generic && has_distinct_kink_actions(f, p).distinct) return f;
  }
  // Skeleton: the kinks and endpoints of f, plus any pinned collinear
  // breakpoints.  Collinear non-pinned breakpoints are dropped so the kink
  // r-set stays fixed.
  PLProfile fs = f.simplified();
  std::set<Rat> radii;
  for (const Breakpoint& bp : fs.pts) radii.insert(bp.r);
  for (const Rat& r : pinnedR) radii.insert(r);
  std::vector<std::pair<Rat, Rat>> base;
  for (const Rat& r : radii) base.emplace_back(r, f.value_at(r));
  const size_t interior = base.size() - 2;
  const Rat scale = eps / Rat(Int(1) << 45);
  std::optional<PLProfile> structural;
  for (unsigned long attempt = 0; attempt < 64; ++attempt) {
    std::mt19937_64 rng(seed * 1315423911ULL + attempt * 2654435761ULL + 0x9e3779b9ULL);
    auto pts = base;
    for (auto& [r, v] : pts) {
      if (pinnedR.count(r)) continue;
      long c = (long)(rng() % 4001) - 2000;
      if (c == 0) c = 1;
      v += scale * c;
    }
    PLProfile g = make_profile_unchecked(pts);
    try {
      g.validate();
    } catch (const Error&) {
      continue;
    }
    if (classify_kinks(g).size() != interior) continue;  // a kink degenerated
    if (!(sup_distance(f, g) < eps)) continue;
    if (!structural) structural = g;
    if (has_distinct_kink_actions(g, p).distinct) return g;
  }
  if (structural) return *structural;  // distinctness unattainable here
  throw Error(Errc::CannotPerturb,
              "pinned points leave no room to satisfy the slope condition");
}

HoferWindow theorem1_bounds(const EmbeddingPoint& a, const EmbeddingPoint& b,
                            const ManifoldParams& p, const Rat& eps,
                            const GeneratorFamily& fam) {
  a.validate(fam.count);
  b.validate(fam.count);
  size_t m = std::max(a.coeffs.size(), b.coeffs.size());
  std::vector<Rat> diff(fam.gens.size(), 0);
  Rat d = 0;
  for (size_t i = 0; i < m; ++i) {
    Rat ai = i < a.coeffs.size() ? a.coeffs[i] : Rat(0);
    Rat bi = i < b.coeffs.size() ? b.coeffs[i] : Rat(0);
    diff[i] = bi - ai;
    d = std::max(d, rat_abs(diff[i]));
  }
  HoferWindow w;
  w.lower = RealVal(p.R * d - 2 * eps, -7 * eps);
  if (w.lower.sign() < 0) w.lower = RealVal(0, 0);
  w.upper = RealVal(2 * p.R * d, 0);
  if (fam.gens.empty()) {
    w.oscillation2pi = 0;
    return w;
  }
  std::vector<PLProfile> profiles;
  for (const GeneratorProfile& gp : fam.gens) profiles.push_back(gp.f);
  w.oscillation2pi = oscillation(linear_combine(diff, profiles));
  return w;
}

Rat ball_volume(long n, const Rat& R) {
  if (n < 1 || !(R > 0))
    throw Error(Errc::ParameterError, "ball volume needs n >= 1 and R > 0");
  Rat v = 1;
  for (long i = 0; i < n; ++i) v *= R;
  return v;
}

PLProfile f0_profile(const ManifoldParams& p, const Rat& eps, const Rat& delta) {
  p.validate();
  const Rat& R = p.R;
  if (!(eps > 0) || !(4 * eps < R))
    throw Error(Errc::ParameterError, "need 0 < 4*eps < R");
  if (!(delta > 0) || !(delta < eps))
    throw Error(Errc::ParameterError, "need 0 < delta < eps");
  // Like the raw generator profiles, the result may carry integer ramp
  // slopes; downstream tilting handles the slope condition.
  return make_profile_unchecked({{0, R},
                                 {R - 4 * eps, R},
                                 {R - 3 * eps, 0},
                                 {R - 2 * eps, R},
                                 {R - eps - delta, 0},
                                 {R, 0}});
}

EmbeddingConstants theorem2_constants(const ManifoldParams& p, const Rat& eps,
                                      const Rat& volM, const EmbeddingPoint& a) {
  p.validate();
  const Rat& R = p.R;
  if (!(eps > 0) || !(4 * eps < R))
    throw Error(Errc::ParameterError, "need 0 < 4*eps < R");
  Rat volB = ball_volume(p.n, R);
  if (!(volM > volB))
    throw Error(Errc::VolumeError, "the manifold volume must exceed the ball volume");
  Rat volInner = ball_volume(p.n, R - 4 * eps);
  Rat maxA = a.a0 ? rat_abs(*a.a0) : Rat(0);
  for (const Rat& c : a.coeffs) maxA = std::max(maxA, rat_abs(c));
  EmbeddingConstants out;
  out.C = volB / volM - eps;
  RealVal main(R * volInner / volM * maxA, 0);
  RealVal corr1(2 * eps, 7 * eps);                  // (4pi + 7) eps
  RealVal corr2(R * (volB - volInner) / volM, 0);   // 2piR * V_4eps / Vol(M)
  out.lowerBound = main - std::max(corr1, corr2);
  return out;
}

}  // namespace plbars
