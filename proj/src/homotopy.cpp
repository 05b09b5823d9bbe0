#include "plbars/homotopy.hpp"

#include <algorithm>
#include <sstream>

namespace plbars {

std::optional<Rat> solve_equal(const AffRat& a, const AffRat& b) {
  AffRat d = a - b;
  if (d.c1 == 0) return std::nullopt;  // parallel (possibly identical)
  return Rat(-d.c0 / d.c1);
}

const LegPiece& HomotopyLeg::piece_at(const Rat& t) const {
  for (const LegPiece& p : pieces)
    if (t >= p.t0 && t <= p.t1) return p;
  throw Error(Errc::DomainError, "time outside [0, 1]");
}

PLProfile HomotopyLeg::profile_at(const Rat& t) const {
  const LegPiece& p = piece_at(t);
  PLProfile f;
  for (const MovingPoint& mp : p.pts) {
    Rat r = mp.r.at(t), v = mp.v.at(t);
    if (!f.pts.empty()) {
      if (r == f.pts.back().r) {
        if (v != f.pts.back().v)
          throw Error(Errc::Internal, "coincident breakpoints with distinct values");
        continue;
      }
      if (r < f.pts.back().r) throw Error(Errc::Internal, "breakpoint order violated");
    }
    f.pts.push_back({r, v});
  }
  if (f.pts.size() < 2) throw Error(Errc::Internal, "degenerate profile");
  f.R = f.pts.back().r;
  return f;
}

void HomotopyLeg::validate() const {
  if (pieces.empty()) throw Error(Errc::DomainError, "leg has no pieces");
  if (pieces.front().t0 != 0 || pieces.back().t1 != 1)
    throw Error(Errc::DomainError, "pieces must cover [0, 1]");
  for (size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i].t1 != pieces[i + 1].t0)
      throw Error(Errc::DomainError, "pieces must be contiguous");
  for (const LegPiece& p : pieces) {
    if (!(p.t0 < p.t1)) throw Error(Errc::DomainError, "empty piece");
    Rat tm = (p.t0 + p.t1) / 2;
    Rat prev;
    bool first = true;
    for (const MovingPoint& mp : p.pts) {
      Rat r = mp.r.at(tm);
      if (!first && !(prev < r))
        throw Error(Errc::DomainError, "piece breakpoints not increasing");
      prev = r;
      first = false;
    }
  }
}

namespace {

int case_of(const ManifoldParams& p) {
  if (p.N == 0) return 2;
  if (p.lambdaSign == 0) return 5;
  if (p.lambdaSign < 0) return 4;
  return Rat(p.n) * p.gammaHat >= Rat(p.N) * p.R ? 1 : 3;
}

}  // namespace

void CaseData::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::CaseMismatch, m); };
  params.validate();
  if (!(0 < r1 && r1 < r2 && r2 < r3 && r3 < params.R))
    fail("landmarks must satisfy 0 < r1 < r2 < r3 < R");
  if (!(-1 < m0 && m0 < 0)) fail("m0 must lie in (-1, 0)");
  if (!(0 < m1 && m1 < 1)) fail("m1 must lie in (0, 1)");
  const Rat& R = params.R;
  if (is_integer(R / (r2 - r1)) || is_integer(R / (r3 - r2)))
    fail("generator flank slope is an integer");
  try {
    g.validate();
  } catch (const Error& e) {
    fail(std::string("g is not an admissible profile: ") + e.what());
  }
  if (g.R != R) fail("g has the wrong domain");
  if (g.value_at(r1) != R || g.value_at(r2) != 0 || g.value_at(r3) != R)
    fail("g must take values R, 0, R at the landmarks");
}

namespace {

HomotopyLeg straight_line_leg(const PLProfile& a, const PLProfile& b, LegKind kind,
                              int kinkIndex) {
  if (a.R != b.R) throw Error(Errc::DomainMismatch, "leg endpoints have different domains");
  std::set<Rat> radii;
  for (const auto& p : a.pts) radii.insert(p.r);
  for (const auto& p : b.pts) radii.insert(p.r);
  LegPiece piece;
  piece.t0 = 0;
  piece.t1 = 1;
  for (const Rat& r : radii) {
    Rat va = a.value_at(r), vb = b.value_at(r);
    piece.pts.push_back({AffRat(r), AffRat(va, vb - va)});
  }
  HomotopyLeg leg;
  leg.kind = kind;
  leg.kinkIndex = kinkIndex;
  leg.pieces.push_back(std::move(piece));
  return leg;
}

}  // namespace

std::vector<HomotopyLeg> fold_homotopy(const PLProfile& f) {
  bool isZero = true;
  for (const auto& p : f.pts) isZero = isZero && p.v == 0;
  if (isZero) return {};
  f.validate();
  std::vector<Kink> kinks = classify_kinks(f);
  std::sort(kinks.begin(), kinks.end(), [](const Kink& a, const Kink& b) { return a.r > b.r; });
  // g_i keeps f on [r_i, R] and extends the slope just right of r_i to the
  // axis; g_i carries the kinks strictly outside r_i.
  auto fold_at = [&](const Kink& k) {
    std::vector<std::pair<Rat, Rat>> pts;
    pts.emplace_back(0, k.value - k.rightSlope * k.r);
    for (const auto& p : f.pts)
      if (p.r >= k.r) pts.emplace_back(p.r, p.v);
    return make_profile_unchecked(pts).simplified();
  };
  std::vector<HomotopyLeg> legs;
  if (kinks.empty()) {
    legs.push_back(straight_line_leg(zero_profile(f.R), f, LegKind::StraightLine, -1));
    return legs;
  }
  PLProfile prev = fold_at(kinks[0]);
  legs.push_back(straight_line_leg(zero_profile(f.R), prev, LegKind::StraightLine, -1));
  for (size_t i = 1; i < kinks.size(); ++i) {
    PLProfile next = fold_at(kinks[i]);
    legs.push_back(straight_line_leg(prev, next, LegKind::Fold, (int)i - 1));
    prev = std::move(next);
  }
  legs.push_back(straight_line_leg(prev, f, LegKind::Fold, (int)kinks.size() - 1));
  return legs;
}

namespace {

// Upper envelope of the descending line slope*(r - anchor) + R*(1 - 2t)
// against g on [lo, hi], as affine breakpoints valid near time tm.  The
// region boundary values are appended by the caller.
std::vector<MovingPoint> clamp_envelope(const PLProfile& g, const Rat& slope,
                                        const Rat& anchor, const Rat& lo, const Rat& hi,
                                        const Rat& tm) {
  const Rat& R = g.R;
  auto line_at = [&](const Rat& r) { return AffRat(slope * (r - anchor) + R, -2 * R); };
  std::vector<std::pair<Rat, Rat>> bps;  // g breakpoints within [lo, hi]
  for (const auto& p : g.pts)
    if (p.r >= lo && p.r <= hi) bps.emplace_back(p.r, p.v);
  if (bps.empty() || bps.front().first != lo || bps.back().first != hi)
    throw Error(Errc::Internal, "clamp region must be bounded by g breakpoints");
  auto diff_at = [&](size_t i) { return bps[i].second - line_at(bps[i].first).at(tm); };
  std::vector<MovingPoint> out;
  auto push_bp = [&](size_t i) { out.push_back({AffRat(bps[i].first), AffRat(bps[i].second)}); };
  // First point of the region.
  Rat d0 = diff_at(0);
  if (d0 == 0) throw Error(Errc::Internal, "clamp envelope sampled at an event time");
  if (d0 > 0)
    push_bp(0);
  else
    out.push_back({AffRat(lo), line_at(lo)});
  for (size_t i = 0; i + 1 < bps.size(); ++i) {
    Rat da = diff_at(i), db = diff_at(i + 1);
    if (da == 0 || db == 0)
      throw Error(Errc::Internal, "clamp envelope sampled at an event time");
    if ((da > 0) != (db > 0)) {
      // Crossing of the line with this g segment; moves affinely in t.
      Rat ms = (bps[i + 1].second - bps[i].second) / (bps[i + 1].first - bps[i].first);
      if (ms == slope) throw Error(Errc::Internal, "clamp line parallel to g segment");
      // x(t) solves g(x) = line(x, t).
      Rat num0 = R - slope * anchor - bps[i].second + ms * bps[i].first;
      AffRat x(num0 / (ms - slope), Rat(-2 * R) / (ms - slope));
      AffRat v = AffRat(bps[i].second - ms * bps[i].first) + x * ms;
      out.push_back({x, v});
    }
    if (i + 2 < bps.size() && db > 0) push_bp(i + 1);
  }
  // Last point of the region.
  Rat dn = diff_at(bps.size() - 1);
  if (dn > 0)
    push_bp(bps.size() - 1);
  else
    out.push_back({AffRat(hi), line_at(hi)});
  return out;
}

std::vector<Rat> clamp_event_times(const PLProfile& g, const Rat& slope, const Rat& anchor,
                                   const Rat& lo, const Rat& hi, std::vector<AbsorbEvent>& ev) {
  const Rat& R = g.R;
  std::vector<Rat> times;
  for (const auto& p : g.pts) {
    if (p.r < lo || p.r > hi) continue;
    // line(r, t) = p.v  at  t = (R - p.v + slope*(r - anchor)) / (2R).
    Rat t = (R - p.v + slope * (p.r - anchor)) / (2 * R);
    if (t > 0 && t < 1) {
      times.push_back(t);
      ev.push_back({t, p.r});
    }
  }
  return times;
}

}  // namespace

std::pair<HomotopyLeg, HomotopyLeg> case_homotopies(int caseNumber, const CaseData& data) {
  if (caseNumber < 1 || caseNumber > 5)
    throw Error(Errc::CaseMismatch, "case number must be 1..5");
  data.validate();
  if (case_of(data.params) != caseNumber)
    throw Error(Errc::CaseMismatch, "manifold parameters dispatch to a different case");
  const Rat& R = data.params.R;
  const Rat &r1 = data.r1, &r2 = data.r2, &r3 = data.r3, &m0 = data.m0, &m1 = data.m1;

  HomotopyLeg h1;
  h1.kind = LegKind::Line1;
  h1.caseNumber = caseNumber;
  LegPiece p1;
  p1.t0 = 0;
  p1.t1 = 1;
  if (caseNumber == 3 || caseNumber == 5) {
    AffRat rt(r2, r3 - r2);  // moving kink slides from r2 out to r3
    p1.pts.push_back({AffRat(0), AffRat(R - m0 * r1)});
    p1.pts.push_back({AffRat(r1), AffRat(R)});
    p1.pts.push_back({AffRat(r2), AffRat(0)});
    p1.pts.push_back({rt, AffRat(0, R)});
    p1.pts.push_back({AffRat(R), AffRat(m1 * (R - r2), R - m1 * (r3 - r2))});
  } else {
    AffRat rt(r2, r1 - r2);  // moving kink slides from r2 in to r1
    p1.pts.push_back({AffRat(0), AffRat(-m0 * r2, R - m0 * (r1 - r2))});
    p1.pts.push_back({rt, AffRat(0, R)});
    p1.pts.push_back({AffRat(r2), AffRat(0)});
    p1.pts.push_back({AffRat(r3), AffRat(R)});
    p1.pts.push_back({AffRat(R), AffRat(m1 * (R - r3) + R)});
  }
  h1.pieces.push_back(std::move(p1));

  // h2 lowers the two clamp lines m0(r - r1) + R(1 - 2t) and
  // m1(r - r3) + R(1 - 2t) onto g; breakpoints of g passed by a line are
  // KinkAbsorbed events and bound the affine sub-legs.
  const PLProfile& g = data.g;
  HomotopyLeg h2;
  h2.kind = LegKind::Line2;
  h2.caseNumber = caseNumber;
  std::vector<Rat> cuts{0, 1};
  {
    auto tl = clamp_event_times(g, m0, r1, 0, r1, h2.absorbed);
    auto tr = clamp_event_times(g, m1, r3, r3, R, h2.absorbed);
    cuts.insert(cuts.end(), tl.begin(), tl.end());
    cuts.insert(cuts.end(), tr.begin(), tr.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  std::sort(h2.absorbed.begin(), h2.absorbed.end(),
            [](const AbsorbEvent& a, const AbsorbEvent& b) {
              return a.time != b.time ? a.time < b.time : a.r < b.r;
            });
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    LegPiece piece;
    piece.t0 = cuts[i];
    piece.t1 = cuts[i + 1];
    Rat tm = (piece.t0 + piece.t1) / 2;
    auto left = clamp_envelope(g, m0, r1, 0, r1, tm);
    auto right = clamp_envelope(g, m1, r3, r3, R, tm);
    piece.pts = std::move(left);
    for (const auto& p : g.pts)
      if (p.r > r1 && p.r < r3) piece.pts.push_back({AffRat(p.r), AffRat(p.v)});
    piece.pts.insert(piece.pts.end(), right.begin(), right.end());
    h2.pieces.push_back(std::move(piece));
  }
  h1.validate();
  h2.validate();
  return {std::move(h1), std::move(h2)};
}

namespace {

// Slope of segment i of a piece as an affine function of t; throws if the
// construction ever produces a non-affine slope.
AffRat slope_aff(const LegPiece& piece, size_t i) {
  AffRat dv = piece.pts[i + 1].v - piece.pts[i].v;
  AffRat dr = piece.pts[i + 1].r - piece.pts[i].r;
  if (dr.c1 == 0) {
    if (dr.c0 == 0) throw Error(Errc::Internal, "zero-width segment");
    return dv * (Rat(1) / dr.c0);
  }
  // Moving endpoints: affine only when dv is proportional to dr.
  if (dv.c0 * dr.c1 != dv.c1 * dr.c0)
    throw Error(Errc::Internal, "non-affine segment slope");
  Rat m = dv.c1 / dr.c1;
  return AffRat(m);
}

// Times in (lo, hi) where the slope structure changes: a slope crosses an
// integer, two adjacent slopes agree, or a segment collapses.
std::vector<Rat> structure_cuts(const LegPiece& piece, const Rat& lo, const Rat& hi) {
  std::vector<Rat> cuts;
  auto add = [&](const Rat& t) {
    if (t > lo && t < hi) cuts.push_back(t);
  };
  size_t segs = piece.pts.size() - 1;
  std::vector<AffRat> sl(segs);
  for (size_t i = 0; i < segs; ++i) {
    sl[i] = slope_aff(piece, i);
    if (sl[i].c1 != 0) {
      Rat a = sl[i].at(lo), b = sl[i].at(hi);
      Int first = rat_floor(std::min(a, b)), last = rat_ceil(std::max(a, b));
      for (Int l = first; l <= last; ++l)
        if (auto t = solve_equal(sl[i], AffRat(Rat(l)))) add(*t);
    }
    AffRat dr = piece.pts[i + 1].r - piece.pts[i].r;
    if (dr.c1 != 0)
      if (auto t = solve_equal(dr, AffRat(Rat(0)))) add(*t);
  }
  for (size_t i = 0; i + 1 < segs; ++i)
    if (auto t = solve_equal(sl[i], sl[i + 1])) add(*t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

ActionSource ActionTrack::source_at(const Rat& t) const {
  switch (sourceKind) {
    case SourceKind::KinkDown:
      return ActionSource::kink_down(r.at(t), l);
    case SourceKind::KinkUp:
      return ActionSource::kink_up(r.at(t), l);
    case SourceKind::YIntercept:
      return ActionSource::y_intercept(l);
    case SourceKind::Exterior:
      return ActionSource::exterior(j);
  }
  throw Error(Errc::Internal, "bad source kind");
}

std::string ActionTrack::str() const {
  std::ostringstream os;
  switch (sourceKind) {
    case SourceKind::KinkDown:
    case SourceKind::KinkUp:
      os << (sourceKind == SourceKind::KinkDown ? "KinkDown" : "KinkUp") << "{r="
         << rat_str(r.c0);
      if (r.c1 != 0) os << "+(" << rat_str(r.c1) << ")t";
      os << ", l=" << l << "}";
      break;
    case SourceKind::YIntercept:
      os << "YIntercept{l=" << l << "}";
      break;
    case SourceKind::Exterior:
      os << "Exterior{j=" << j << "}";
      break;
  }
  os << " k=" << k << " deg=" << degree << " on [" << rat_str(tLo) << ", " << rat_str(tHi)
     << "]";
  return os.str();
}

std::vector<ActionTrack> track_actions(const HomotopyLeg& leg, const ManifoldParams& p,
                                       const std::set<long>& degrees) {
  p.validate();
  std::vector<ActionTrack> out;
  // k solving baseDegree + 2Nk = d, when it exists.
  auto recaps = [&](long baseDeg, long d) -> std::optional<long> {
    if (p.N == 0) {
      if (baseDeg == d) return 0;
      return std::nullopt;
    }
    long diff = d - baseDeg;
    if (diff % (2 * p.N) != 0) return std::nullopt;
    return diff / (2 * p.N);
  };
  Rat shift = Rat(p.lambdaSign) * p.gammaHat;
  for (size_t pi = 0; pi < leg.pieces.size(); ++pi) {
    const LegPiece& piece = leg.pieces[pi];
    std::vector<Rat> cuts{piece.t0};
    for (const Rat& t : structure_cuts(piece, piece.t0, piece.t1)) cuts.push_back(t);
    cuts.push_back(piece.t1);
    for (size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
      Rat lo = cuts[ci], hi = cuts[ci + 1];
      Rat tm = (lo + hi) / 2;
      size_t segs = piece.pts.size() - 1;
      std::vector<AffRat> sl(segs);
      for (size_t i = 0; i < segs; ++i) sl[i] = slope_aff(piece, i);
      auto emit = [&](ActionTrack tr) {
        tr.tLo = lo;
        tr.tHi = hi;
        tr.piece = pi;
        out.push_back(std::move(tr));
      };
      // Kink tracks.
      for (size_t i = 1; i < segs; ++i) {
        Rat a = sl[i - 1].at(tm), b = sl[i].at(tm);
        if (a == b) continue;
        KinkOrientation ori = a > b ? KinkOrientation::Down : KinkOrientation::Up;
        Rat loS = std::min(a, b), hiS = std::max(a, b);
        for (Int li = rat_floor(loS) + 1; Rat(li) < hiS; ++li) {
          if (!(Rat(li) > loS)) continue;
          long l = (long)li;
          long d1, d2;
          if (ori == KinkOrientation::Down) {
            d1 = -2 * l * p.n + p.n;
            d2 = -2 * l * p.n - p.n + 1;
          } else {
            d1 = -2 * l * p.n + p.n - 1;
            d2 = -2 * l * p.n - p.n;
          }
          for (long base : {d1, d2}) {
            for (long d : degrees) {
              auto k = recaps(base, d);
              if (!k) continue;
              ActionTrack tr;
              tr.sourceKind =
                  ori == KinkOrientation::Down ? SourceKind::KinkDown : SourceKind::KinkUp;
              tr.orientation = ori;
              tr.r = piece.pts[i].r;
              tr.l = l;
              tr.k = *k;
              tr.degree = d;
              tr.value = piece.pts[i].v - piece.pts[i].r * Rat(l) + AffRat(Rat(*k) * shift);
              emit(std::move(tr));
            }
          }
        }
      }
      // Y-intercept track.
      {
        Rat s0 = sl[0].at(tm);
        if (!is_integer(s0)) {
          long l = (long)rat_floor(s0);
          long base = -2 * l * p.n - p.n;
          for (long d : degrees) {
            auto k = recaps(base, d);
            if (!k) continue;
            ActionTrack tr;
            tr.sourceKind = SourceKind::YIntercept;
            tr.l = l;
            tr.k = *k;
            tr.degree = d;
            tr.value = piece.pts[0].v + AffRat(Rat(*k) * shift);
            emit(std::move(tr));
          }
        }
      }
      // Exterior tracks.
      for (long j : p.exteriorMorseIndices) {
        long base = j - p.n;
        for (long d : degrees) {
          auto k = recaps(base, d);
          if (!k) continue;
          ActionTrack tr;
          tr.sourceKind = SourceKind::Exterior;
          tr.j = j;
          tr.k = *k;
          tr.degree = d;
          tr.value = piece.pts.back().v + AffRat(Rat(*k) * shift);
          emit(std::move(tr));
        }
      }
    }
  }
  return out;
}

bool Event::operator<(const Event& o) const {
  if (time != o.time) return time < o.time;
  if (kind != o.kind) return (int)kind < (int)o.kind;
  if (segment != o.segment) return segment < o.segment;
  if (level != o.level) return level < o.level;
  if (trackA != o.trackA) return trackA < o.trackA;
  if (trackB != o.trackB) return trackB < o.trackB;
  if (r != o.r) return r < o.r;
  return detail < o.detail;
}

std::vector<Event> detect_events(const HomotopyLeg& leg, const std::vector<ActionTrack>& tracks,
                                 const ManifoldParams&) {
  std::vector<Event> out;
  for (Rat t : {Rat(0), Rat(1)}) {
    Event e;
    e.time = t;
    e.kind = EventKind::LegBoundary;
    out.push_back(std::move(e));
  }
  for (const LegPiece& piece : leg.pieces) {
    size_t segs = piece.pts.size() - 1;
    for (size_t i = 0; i < segs; ++i) {
      AffRat s = slope_aff(piece, i);
      if (s.c1 == 0) continue;
      Rat a = s.at(piece.t0), b = s.at(piece.t1);
      Int first = rat_floor(std::min(a, b)), last = rat_ceil(std::max(a, b));
      for (Int li = first; li <= last; ++li) {
        auto t = solve_equal(s, AffRat(Rat(li)));
        if (t && *t > piece.t0 && *t < piece.t1) {
          Event e;
          e.time = *t;
          e.kind = EventKind::SlopeHitsInteger;
          e.segment = (long)i;
          e.level = (long)li;
          out.push_back(std::move(e));
        }
      }
    }
  }
  for (const AbsorbEvent& a : leg.absorbed) {
    Event e;
    e.time = a.time;
    e.kind = EventKind::KinkAbsorbed;
    e.r = a.r;
    out.push_back(std::move(e));
  }
  for (size_t i = 0; i < tracks.size(); ++i) {
    for (size_t j = i + 1; j < tracks.size(); ++j) {
      Rat lo = std::max(tracks[i].tLo, tracks[j].tLo);
      Rat hi = std::min(tracks[i].tHi, tracks[j].tHi);
      if (!(lo < hi)) continue;
      Event e;
      e.kind = EventKind::Collision;
      e.trackA = (long)i;
      e.trackB = (long)j;
      e.detail = tracks[i].str() + " / " + tracks[j].str();
      if (tracks[i].value == tracks[j].value) {
        e.time = lo;
        e.degenerate = true;
        out.push_back(std::move(e));
        continue;
      }
      auto t = solve_equal(tracks[i].value, tracks[j].value);
      if (t && *t >= lo && *t <= hi && *t > 0 && *t < 1) {
        e.time = *t;
        out.push_back(std::move(e));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plbars
