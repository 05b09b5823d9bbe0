#include "plbars/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace plbars {

bool ActionSource::operator<(const ActionSource& o) const {
  return std::tie(kind, r, l, j) < std::tie(o.kind, o.r, o.l, o.j);
}

std::string ActionSource::str() const {
  std::ostringstream os;
  switch (kind) {
    case SourceKind::KinkDown:
      os << "KinkDown{r=" << rat_str(r) << ", l=" << l << "}";
      break;
    case SourceKind::KinkUp:
      os << "KinkUp{r=" << rat_str(r) << ", l=" << l << "}";
      break;
    case SourceKind::YIntercept:
      os << "YIntercept{l=" << l << "}";
      break;
    case SourceKind::Exterior:
      os << "Exterior{j=" << j << "}";
      break;
  }
  return os.str();
}

bool IndexedAction::operator<(const IndexedAction& o) const {
  return std::tie(value, degree, source, k) < std::tie(o.value, o.degree, o.source, o.k);
}

std::vector<long> base_degrees(const ActionSource& s, const ManifoldParams& p) {
  const long n = p.n;
  switch (s.kind) {
    case SourceKind::KinkDown:
      return {-2 * s.l * n + n, -2 * s.l * n - n + 1};
    case SourceKind::KinkUp:
      return {-2 * s.l * n + n - 1, -2 * s.l * n - n};
    case SourceKind::YIntercept:
      return {-2 * s.l * n - n};
    case SourceKind::Exterior:
      return {s.j - n};
  }
  return {};
}

Rat base_value(const ActionSource& s, const PLProfile& f) {
  switch (s.kind) {
    case SourceKind::KinkDown:
    case SourceKind::KinkUp:
      return -Rat(s.l) * s.r + f.value_at(s.r);
    case SourceKind::YIntercept:
      return f.pts.front().v;
    case SourceKind::Exterior:
      return f.pts.back().v;
  }
  return 0;
}

namespace {

// All sources a profile contributes, with base values attached.
struct BaseItem {
  ActionSource source;
  Rat value;
};

std::vector<BaseItem> base_items(const PLProfile& f, const ManifoldParams& p) {
  std::vector<BaseItem> items;
  for (const Kink& k : classify_kinks(f)) {
    for (long l : k.crossedLevels) {
      ActionSource s = k.orientation == KinkOrientation::Down ? ActionSource::kink_down(k.r, l)
                                                              : ActionSource::kink_up(k.r, l);
      items.push_back({s, -Rat(l) * k.r + k.value});
    }
  }
  Rat s0 = f.first_slope();
  if (is_integer(s0))
    throw Error(Errc::SlopeConditionViolation, "first slope is an integer");
  items.push_back({ActionSource::y_intercept((long)rat_floor(s0)), f.pts.front().v});
  for (long j : p.exteriorMorseIndices)
    items.push_back({ActionSource::exterior(j), f.pts.back().v});
  return items;
}

}  // namespace

std::vector<IndexedAction> enumerate_spectrum(const PLProfile& f, const ManifoldParams& p,
                                              long d) {
  p.validate();
  std::vector<IndexedAction> out;
  for (const BaseItem& it : base_items(f, p)) {
    for (long bd : base_degrees(it.source, p)) {
      if (p.N == 0) {
        if (bd == d) out.push_back({it.value, d, it.source, 0});
      } else {
        long diff = d - bd;
        if (diff % (2 * p.N) != 0) continue;
        long k = diff / (2 * p.N);
        Rat value = it.value + Rat(k) * Rat(p.lambdaSign) * p.gammaHat;
        out.push_back({value, d, it.source, k});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long DegreeSolutionFamily::z_of_k(long kk) const {
  long diff = kk - k0;
  if (kStep == 0 || diff % kStep != 0)
    throw Error(Errc::NoSolution, "k not on the solution family");
  return diff / kStep;
}

DegreeSolutionFamily solve_degree_parametrization(long targetDegree, long baseConstant,
                                                  const ManifoldParams& p) {
  if (p.N == 0) throw Error(Errc::NoSolution, "parametrization requires N != 0");
  const long a = 2 * p.n, b = 2 * p.N;
  const long rhs = targetDegree - baseConstant;
  const long g = std::gcd(a, b);
  if (rhs % g != 0) {
    std::ostringstream os;
    os << "no integer solutions: gcd(" << a << "," << b << ") = " << g << " does not divide "
       << rhs;
    throw Error(Errc::NoSolution, os.str());
  }
  // Extended Euclid on (a, b): a*x + b*y = g.
  long x0 = 1, x1 = 0, r0 = a, r1 = b;
  while (r1 != 0) {
    long q = r0 / r1;
    std::tie(r0, r1) = std::tuple<long, long>(r1, r0 - q * r1);
    std::tie(x0, x1) = std::tuple<long, long>(x1, x0 - q * x1);
  }
  // r0 == g, a*x0 + b*y0 = g with y0 = (g - a*x0)/b.
  long scale = rhs / g;
  long x = x0 * scale;
  long y = (rhs - a * x) / b;
  DegreeSolutionFamily fam;
  fam.kStep = a / g;       // 2n/D
  fam.negLStep = -(b / g);  // -(2N/D)
  // Normalize so k0 lands in [0, kStep).
  long k0 = ((y % fam.kStep) + fam.kStep) % fam.kStep;
  long dz = (k0 - y) / fam.kStep;
  fam.k0 = k0;
  fam.negL0 = x + fam.negLStep * dz;
  return fam;
}

std::string KinkActionWitness::describe() const {
  std::ostringstream os;
  os << a.str() << " vs " << b.str() << " (shift " << kShift << " recaps)";
  return os.str();
}

DistinctKinkActions has_distinct_kink_actions(const PLProfile& f, const ManifoldParams& p) {
  // Collect one item per (kink, crossed level); the y-intercept and exterior
  // values enter only through the second condition.
  std::vector<BaseItem> kinks;
  for (const Kink& k : classify_kinks(f)) {
    for (long l : k.crossedLevels) {
      ActionSource s = k.orientation == KinkOrientation::Down ? ActionSource::kink_down(k.r, l)
                                                              : ActionSource::kink_up(k.r, l);
      kinks.push_back({s, -Rat(l) * k.r + k.value});
    }
  }
  const Rat g = p.gammaHat;
  auto collide = [&](const Rat& x, const Rat& y, long& shift) {
    Rat diff = x - y;
    if (g == 0) {
      shift = 0;
      return diff == 0;
    }
    Rat q = diff / g;
    if (!is_integer(q)) return false;
    shift = (long)rat_floor(q);
    return true;
  };
  DistinctKinkActions res;
  long shift = 0;
  for (size_t i = 0; i < kinks.size(); ++i) {
    for (size_t j = i + 1; j < kinks.size(); ++j) {
      if (collide(kinks[i].value, kinks[j].value, shift)) {
        res.distinct = false;
        res.witness = KinkActionWitness{kinks[i].source, kinks[j].source, shift};
        return res;
      }
    }
    Rat f0 = f.pts.front().v, fR = f.pts.back().v;
    if (collide(kinks[i].value, f0, shift)) {
      res.distinct = false;
      res.witness =
          KinkActionWitness{kinks[i].source, ActionSource::y_intercept(0), shift};
      return res;
    }
    if (collide(kinks[i].value, fR, shift)) {
      res.distinct = false;
      res.witness = KinkActionWitness{kinks[i].source, ActionSource::exterior(0), shift};
      return res;
    }
  }
  return res;
}

}  // namespace plbars
