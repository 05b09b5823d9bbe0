#include "plbars/tracker.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace plbars {

CaseTag dispatch_case(const ManifoldParams& p) {
  p.validate();
  if (p.N == 0) return CaseTag::Case2;
  if (p.lambdaSign == 0) return CaseTag::Case5;
  if (p.lambdaSign < 0) return CaseTag::Case4;
  return Rat(p.n) * p.gammaHat >= Rat(p.N) * p.R ? CaseTag::Case1 : CaseTag::Case3;
}

long tracked_degree(CaseTag tag, const ManifoldParams& p) {
  switch (tag) {
    case CaseTag::Case1:
    case CaseTag::Case2:
    case CaseTag::Case4:
      return p.n;
    default:
      return -3 * p.n;
  }
}

std::string right_endpoint_rule(const ActionTrack& incumbent, const ActionTrack& other,
                                int caseNumber, int leg) {
  if (other.degree != incumbent.degree) return "bystander: cross-degree crossing";
  if (other.degenerate) return "energy pairing of coincident actions";
  if (other.sourceKind == SourceKind::KinkUp) return "concave-up exclusion in the death degree";
  if (caseNumber == 5 && leg == 2 && other.sourceKind == SourceKind::Exterior)
    return "exterior overtake: certified length floor applies";
  if (other.sourceKind == SourceKind::KinkDown && incumbent.sourceKind == SourceKind::KinkDown &&
      other.r == incumbent.r)
    return "recapped sibling at the same kink: endpoint retained";
  return "";
}

namespace {

using IdKey = std::tuple<int, long, long, long, long>;

IdKey id_of(const ActionTrack& t) { return {(int)t.sourceKind, t.l, t.j, t.k, t.degree}; }

bool params_equal(const ManifoldParams& a, const ManifoldParams& b) {
  return a.n == b.n && a.N == b.N && a.gammaHat == b.gammaHat && a.lambdaSign == b.lambdaSign &&
         a.R == b.R && a.exteriorMorseIndices == b.exteriorMorseIndices;
}

// Action tracks of degrees d and d+1 on a clamp leg, restricted to tracks
// whose value range meets [wLo, wHi].  Every segment of a clamp leg has a
// slope constant in t (each segment lies on the descending line or on g), so
// no further sub-cuts are needed; this is checked.  The coarse range filter
// runs in floating point with a safety margin already included in the
// window, keeping the kink-level loops cheap; kept tracks are exact.
std::vector<ActionTrack> window_tracks(const HomotopyLeg& leg, const ManifoldParams& p, long d,
                                       double wLo, double wHi) {
  std::vector<ActionTrack> out;
  auto recaps = [&](long baseDeg, long dd) -> std::optional<long> {
    if (p.N == 0) {
      if (baseDeg == dd) return 0;
      return std::nullopt;
    }
    long diff = dd - baseDeg;
    if (diff % (2 * p.N) != 0) return std::nullopt;
    return diff / (2 * p.N);
  };
  Rat shift = Rat(p.lambdaSign) * p.gammaHat;
  double shiftD = shift.convert_to<double>();
  const long degs[2] = {d, d + 1};
  for (size_t pi = 0; pi < leg.pieces.size(); ++pi) {
    const LegPiece& piece = leg.pieces[pi];
    Rat tm = (piece.t0 + piece.t1) / 2;
    Rat tq = piece.t0 + (piece.t1 - piece.t0) / 4;
    size_t np = piece.pts.size();
    std::vector<double> rA(np), rB(np), vA(np), vB(np);
    for (size_t i = 0; i < np; ++i) {
      rA[i] = piece.pts[i].r.at(piece.t0).convert_to<double>();
      rB[i] = piece.pts[i].r.at(piece.t1).convert_to<double>();
      vA[i] = piece.pts[i].v.at(piece.t0).convert_to<double>();
      vB[i] = piece.pts[i].v.at(piece.t1).convert_to<double>();
    }
    std::vector<Rat> sl(np - 1);
    for (size_t i = 0; i + 1 < np; ++i) {
      auto slope_at = [&](const Rat& tt) {
        return (piece.pts[i + 1].v.at(tt) - piece.pts[i].v.at(tt)) /
               (piece.pts[i + 1].r.at(tt) - piece.pts[i].r.at(tt));
      };
      sl[i] = slope_at(tm);
      if (slope_at(tq) != sl[i]) throw Error(Errc::Internal, "clamp leg slope varies in time");
    }
    auto emit = [&](ActionTrack tr) {
      tr.tLo = piece.t0;
      tr.tHi = piece.t1;
      tr.piece = pi;
      out.push_back(std::move(tr));
    };
    for (size_t i = 1; i + 1 < np; ++i) {
      const Rat &a = sl[i - 1], &b = sl[i];
      if (a == b) continue;
      KinkOrientation ori = a > b ? KinkOrientation::Down : KinkOrientation::Up;
      Rat loS = std::min(a, b), hiS = std::max(a, b);
      long lFirst = (long)rat_floor(loS) + 1;
      long lLast = (long)rat_ceil(hiS) - 1;
      for (long l = lFirst; l <= lLast; ++l) {
        long d1, d2;
        if (ori == KinkOrientation::Down) {
          d1 = -2 * l * p.n + p.n;
          d2 = -2 * l * p.n - p.n + 1;
        } else {
          d1 = -2 * l * p.n + p.n - 1;
          d2 = -2 * l * p.n - p.n;
        }
        for (long base : {d1, d2}) {
          for (long dd : degs) {
            auto k = recaps(base, dd);
            if (!k) continue;
            double kd = (double)*k;
            double val0 = vA[i] - rA[i] * (double)l + kd * shiftD;
            double val1 = vB[i] - rB[i] * (double)l + kd * shiftD;
            if (std::max(val0, val1) < wLo || std::min(val0, val1) > wHi) continue;
            ActionTrack tr;
            tr.sourceKind =
                ori == KinkOrientation::Down ? SourceKind::KinkDown : SourceKind::KinkUp;
            tr.orientation = ori;
            tr.r = piece.pts[i].r;
            tr.l = l;
            tr.k = *k;
            tr.degree = dd;
            tr.value = piece.pts[i].v - piece.pts[i].r * Rat(l) + AffRat(Rat(*k) * shift);
            emit(std::move(tr));
          }
        }
      }
    }
    {
      const Rat& s0 = sl[0];
      if (!is_integer(s0)) {
        long l = (long)rat_floor(s0);
        long base = -2 * l * p.n - p.n;
        for (long dd : degs) {
          auto k = recaps(base, dd);
          if (!k) continue;
          ActionTrack tr;
          tr.sourceKind = SourceKind::YIntercept;
          tr.l = l;
          tr.k = *k;
          tr.degree = dd;
          tr.value = piece.pts[0].v + AffRat(Rat(*k) * shift);
          emit(std::move(tr));
        }
      }
    }
    for (long j : p.exteriorMorseIndices) {
      long base = j - p.n;
      for (long dd : degs) {
        auto k = recaps(base, dd);
        if (!k) continue;
        ActionTrack tr;
        tr.sourceKind = SourceKind::Exterior;
        tr.j = j;
        tr.k = *k;
        tr.degree = dd;
        tr.value = piece.pts.back().v + AffRat(Rat(*k) * shift);
        emit(std::move(tr));
      }
    }
  }
  return out;
}

// Time-ordered sweep of one leg: advances the two tracked endpoints through
// their collision events, applying the exchange rule on the birth side and
// the exclusion rules on the death side.
struct Sweeper {
  int leg;
  int cn;
  long d;
  const HomotopyLeg& hleg;
  std::vector<ActionTrack>& tracks;
  const CaseData& data;
  BarCertificate& cert;
  size_t idxL, idxR;
  bool ceiling;  // enforce c_t below the continuity ceiling (clamp leg)
  Rat maxC;
  bool overtake = false;
  bool usedCu = false;      // concave-up exclusion fired
  bool usedEnergy = false;  // coincident-action rule fired
  std::set<std::pair<IdKey, IdKey>> coincLogged;
  size_t absorbPos = 0;

  void push(const Rat& time, Event e, std::string rule) {
    LoggedEvent le;
    le.leg = leg;
    le.event = std::move(e);
    le.rule = std::move(rule);
    le.barLeft = tracks[idxL].value.at(time);
    le.barRight = tracks[idxR].value.at(time);
    cert.eventLog.push_back(std::move(le));
  }

  void log(const Rat& time, EventKind kind, std::string detail, std::string rule, long a = -1,
           long b = -1) {
    Event e;
    e.time = time;
    e.kind = kind;
    e.detail = std::move(detail);
    e.trackA = a;
    e.trackB = b;
    push(time, std::move(e), std::move(rule));
  }

  void mark_coincident(size_t incIdx, size_t otherIdx, const Rat& now) {
    IdKey ia = id_of(tracks[incIdx]), ib = id_of(tracks[otherIdx]);
    std::pair<IdKey, IdKey> key = ia < ib ? std::make_pair(ia, ib) : std::make_pair(ib, ia);
    for (auto& tr : tracks)
      if (id_of(tr) == ib) tr.degenerate = true;
    usedEnergy = true;
    if (coincLogged.insert(key).second) {
      Event e;
      e.time = now;
      e.kind = EventKind::Collision;
      e.trackA = (long)incIdx;
      e.trackB = (long)otherIdx;
      e.degenerate = true;
      e.detail = tracks[incIdx].str() + " / " + tracks[otherIdx].str();
      push(now, std::move(e), "energy pairing of coincident actions");
    }
  }

  void advance(size_t& idx, const Rat& t, bool isRight) {
    while (tracks[idx].tHi <= t && tracks[idx].tHi < 1) {
      const ActionTrack c = tracks[idx];
      const Rat& tb = c.tHi;
      std::optional<size_t> nxt;
      bool isKink = c.sourceKind == SourceKind::KinkDown || c.sourceKind == SourceKind::KinkUp;
      for (size_t i = 0; i < tracks.size(); ++i) {
        if (i == idx) continue;
        const ActionTrack& o = tracks[i];
        if (o.tLo != tb) continue;
        if (o.degree != c.degree || o.sourceKind != c.sourceKind || o.l != c.l || o.j != c.j ||
            o.k != c.k)
          continue;
        if (o.value.at(tb) != c.value.at(tb)) continue;
        if (isKink && o.r.at(tb) != c.r.at(tb)) continue;
        if (nxt) throw Error(Errc::RuleConflict, "ambiguous continuation for " + c.str());
        nxt = i;
      }
      if (!nxt)
        throw Error(Errc::RuleConflict, "tracked endpoint vanishes: " + c.str());
      idx = *nxt;
      if (isRight && leg == 2 && tracks[idx].value.c1 != 0)
        throw Error(Errc::RuleConflict, "right endpoint drifted during the clamp leg");
    }
  }

  void checkpoint(const Rat& tt) {
    Rat c = tracks[idxL].value.at(tt);
    if (c > maxC) maxC = c;
    if (ceiling && !(RealVal(c - data.params.R, -data.eps).sign() < 0))
      throw Error(Errc::RuleConflict, "left endpoint reached the continuity ceiling");
  }

  struct Hits {
    Rat time;
    std::vector<size_t> others;
  };

  std::optional<Hits> next_hits(size_t incIdx, const Rat& tFrom, const Rat& tTo) {
    const ActionTrack& inc = tracks[incIdx];
    std::optional<Rat> best;
    std::vector<size_t> others;
    for (size_t i = 0; i < tracks.size(); ++i) {
      if (i == incIdx) continue;
      const ActionTrack& o = tracks[i];
      if (id_of(o) == id_of(inc)) continue;
      Rat lo = std::max(tFrom, o.tLo), hi = std::min(tTo, o.tHi);
      if (lo > hi) continue;
      if (o.value == inc.value) {
        if (lo < hi && !o.degenerate) mark_coincident(incIdx, i, tFrom);
        continue;
      }
      auto ts = solve_equal(inc.value, o.value);
      if (!ts) continue;
      if (!(*ts > tFrom) || *ts < lo || *ts > hi) continue;
      if (!(*ts > 0) || !(*ts < 1)) continue;
      if (best && *ts > *best) continue;
      if (!best || *ts < *best) {
        best = *ts;
        others.clear();
      }
      others.push_back(i);
    }
    if (!best) return std::nullopt;
    return Hits{*best, std::move(others)};
  }

  void process_right(const Rat& tt, const std::vector<size_t>& others) {
    for (size_t oi : others) {
      if (oi == idxL)
        throw Error(Errc::RuleConflict, "bar endpoints collided");
      std::string rule = right_endpoint_rule(tracks[idxR], tracks[oi], cn, leg);
      if (rule.empty())
        throw Error(Errc::RuleConflict,
                    "no rule covers a collision with the right endpoint: " + tracks[oi].str());
      if (rule.rfind("exterior overtake", 0) == 0) overtake = true;
      if (rule.rfind("concave-up", 0) == 0) usedCu = true;
      if (rule.rfind("energy", 0) == 0) usedEnergy = true;
      log(tt, EventKind::Collision, tracks[idxR].str() + " / " + tracks[oi].str(), rule,
          (long)idxR, (long)oi);
    }
  }

  void process_left(const Rat& tt, const std::vector<size_t>& others) {
    size_t winner = idxL;
    for (size_t oi : others) {
      if (oi == idxR)
        throw Error(Errc::RuleConflict, "bar endpoints collided");
      const ActionTrack& o = tracks[oi];
      std::string detail = tracks[idxL].str() + " / " + o.str();
      if (o.degree != d) {
        log(tt, EventKind::Collision, std::move(detail), "bystander: cross-degree crossing",
            (long)idxL, (long)oi);
        continue;
      }
      if (o.degenerate) {
        log(tt, EventKind::Collision, std::move(detail),
            "energy pairing of coincident actions: ineligible for exchange", (long)idxL,
            (long)oi);
        continue;
      }
      log(tt, EventKind::Collision, std::move(detail), "birth collision", (long)idxL, (long)oi);
      if (o.value.c1 > tracks[winner].value.c1) winner = oi;
    }
    if (winner != idxL) {
      log(tt, EventKind::Collision, tracks[idxL].str() + " -> " + tracks[winner].str(),
          "left endpoint exchange to the larger birth", (long)idxL, (long)winner);
      idxL = winner;
      if (leg == 1) cert.exchanged = true;
    }
  }

  void run() {
    Rat t = 0;
    maxC = tracks[idxL].value.at(t);
    checkpoint(t);
    log(t, EventKind::LegBoundary, "", leg == 1 ? "start of the case homotopy" : "start of the clamp descent");
    while (t < 1) {
      advance(idxL, t, false);
      advance(idxR, t, true);
      Rat tStop = std::min(tracks[idxL].tHi, tracks[idxR].tHi);
      auto hitL = next_hits(idxL, t, tStop);
      auto hitR = next_hits(idxR, t, tStop);
      Rat tNext = tStop;
      if (hitL && hitL->time < tNext) tNext = hitL->time;
      if (hitR && hitR->time < tNext) tNext = hitR->time;
      while (absorbPos < hleg.absorbed.size() && hleg.absorbed[absorbPos].time <= tNext) {
        const AbsorbEvent& ab = hleg.absorbed[absorbPos];
        if (ab.time > t) {
          Event e;
          e.time = ab.time;
          e.kind = EventKind::KinkAbsorbed;
          e.r = ab.r;
          push(ab.time, std::move(e), "breakpoint absorbed by the clamp line");
        }
        ++absorbPos;
      }
      checkpoint(tNext);
      if (hitR && hitR->time == tNext) process_right(tNext, hitR->others);
      if (hitL && hitL->time == tNext) process_left(tNext, hitL->others);
      checkpoint(tNext);
      t = tNext;
    }
    checkpoint(Rat(1));
    log(Rat(1), EventKind::LegBoundary, "",
        leg == 1 ? "end of the case homotopy" : "end of the clamp descent");
  }
};

}  // namespace

BarCertificate run_certificate(const ManifoldParams& p, const CaseData& data) {
  if (!params_equal(p, data.params))
    throw Error(Errc::CaseMismatch, "manifold parameters disagree with the case data");
  data.validate();
  CaseTag tag = dispatch_case(p);
  int cn = (int)tag;
  long d = tracked_degree(tag, p);
  auto legs = case_homotopies(cn, data);
  const HomotopyLeg& h1 = legs.first;
  const HomotopyLeg& h2 = legs.second;
  const Rat& R = p.R;

  BarCertificate cert;
  cert.caseTag = tag;
  cert.trackedDegree = d;

  // --- first leg: the case homotopy ---
  std::vector<ActionTrack> t1 = track_actions(h1, p, {d, d + 1});
  long lStar = (cn == 3 || cn == 5) ? 1 : -1;
  std::optional<size_t> idxR;
  for (size_t i = 0; i < t1.size(); ++i) {
    const ActionTrack& tr = t1[i];
    if (tr.sourceKind != SourceKind::KinkDown || tr.r.c1 == 0) continue;
    if (tr.degree != d + 1 || tr.k != 0 || tr.l != lStar) continue;
    if (tr.tLo != 0) continue;
    idxR = i;
    break;
  }
  if (!idxR)
    throw Error(Errc::RuleConflict, "designated moving death track not found");
  // Coincident tracks are flagged before the inception pairing.
  for (auto& tr : t1)
    if (&tr != &t1[*idxR] && tr.value == t1[*idxR].value) tr.degenerate = true;
  std::optional<size_t> idxL;
  Rat birth0 = t1[*idxR].value.at(Rat(0));
  for (size_t i = 0; i < t1.size(); ++i) {
    const ActionTrack& tr = t1[i];
    if (tr.degree != d || tr.tLo != 0 || tr.degenerate) continue;
    if (tr.value.at(Rat(0)) != birth0) continue;
    if (idxL)
      throw Error(Errc::RuleConflict, "inception partner is not unique");
    idxL = i;
  }
  if (!idxL)
    throw Error(Errc::RuleConflict, "no birth track matches the death at inception");

  Sweeper s1{1, cn, d, h1, t1, data, cert, *idxL, *idxR, /*ceiling=*/false};
  {
    LoggedEvent le;
    le.leg = 1;
    le.event.time = 0;
    le.event.kind = EventKind::Collision;
    le.event.trackA = (long)*idxR;
    le.event.trackB = (long)*idxL;
    le.event.detail = t1[*idxR].str() + " ~ " + t1[*idxL].str();
    le.rule = "concave-down inception pairing";
    le.barLeft = birth0;
    le.barRight = birth0;
    cert.eventLog.push_back(std::move(le));
  }
  s1.run();
  cert.finalBar = Bar(t1[s1.idxL].value.at(Rat(1)), ExtRat(t1[s1.idxR].value.at(Rat(1))));
  cert.finalBar.validate();

  // --- second leg: clamp descent onto g ---
  const Rat& right = cert.finalBar.right.value;
  double wLo = std::min(cert.finalBar.left, Rat(0)).convert_to<double>() -
               2 * R.convert_to<double>() - 1.0;
  double wHi = (right + R).convert_to<double>() + 1.0;
  std::vector<ActionTrack> t2 = window_tracks(h2, p, d, wLo, wHi);
  std::optional<size_t> idxR2;
  for (size_t i = 0; i < t2.size(); ++i) {
    const ActionTrack& tr = t2[i];
    if (tr.degree != d + 1 || tr.tLo != 0) continue;
    if (tr.value.c1 != 0 || tr.value.c0 != right) continue;
    if (tr.sourceKind == SourceKind::KinkUp) continue;
    idxR2 = i;
    break;
  }
  if (!idxR2)
    throw Error(Errc::RuleConflict, "right endpoint has no constant continuation on the clamp leg");
  for (auto& tr : t2)
    if (&tr != &t2[*idxR2] && tr.value == t2[*idxR2].value) tr.degenerate = true;
  std::optional<size_t> idxL2;
  for (size_t i = 0; i < t2.size(); ++i) {
    const ActionTrack& tr = t2[i];
    if (tr.degree != d || tr.tLo != 0 || tr.degenerate) continue;
    if (tr.value.at(Rat(0)) != cert.finalBar.left) continue;
    if (!idxL2 || tr.value.c1 > t2[*idxL2].value.c1) idxL2 = i;
  }
  if (!idxL2)
    throw Error(Errc::RuleConflict, "left endpoint has no continuation on the clamp leg");

  Sweeper s2{2, cn, d, h2, t2, data, cert, *idxL2, *idxR2, /*ceiling=*/true};
  s2.run();
  if (t2[s2.idxR].value.at(Rat(1)) != right)
    throw Error(Errc::RuleConflict, "right endpoint did not survive the clamp leg");

  Rat minLen = right - s2.maxC;
  if (s2.overtake) minLen = std::min(minLen, Rat(R - 2 * (R - data.r3)));
  cert.lowerBound = RealVal(minLen, -8 * data.eps);

  cert.appliedTheorems.push_back("continuity of barcodes in the C0 distance");
  cert.appliedTheorems.push_back("concave-down inception pairing");
  if (cert.exchanged)
    cert.appliedTheorems.push_back("left endpoint exchange to the larger birth");
  if (s1.usedCu || s2.usedCu)
    cert.appliedTheorems.push_back("concave-up exclusion in the death degree");
  if (s1.usedEnergy || s2.usedEnergy)
    cert.appliedTheorems.push_back("energy pairing of coincident actions");
  if (s2.overtake)
    cert.appliedTheorems.push_back("exterior overtake: certified length floor");
  cert.appliedTheorems.push_back("smoothing allowance of 8 eps in the certified bound");
  return cert;
}

bool all_bounds_hold(const std::vector<BoundCheck>& checks) {
  for (const BoundCheck& c : checks)
    if (!c.holds) return false;
  return true;
}

namespace {

std::string describe(size_t count, const std::string& what) {
  std::ostringstream os;
  os << count << " track(s): " << what;
  return os.str();
}

}  // namespace

std::vector<BoundCheck> verify_case_bounds(CaseTag tag, const CaseData& data, const Rat& t) {
  if (t < 0 || t > 1) throw Error(Errc::DomainError, "time must lie in [0, 1]");
  data.validate();
  const ManifoldParams& p = data.params;
  if (dispatch_case(p) != tag)
    throw Error(Errc::CaseMismatch, "manifold parameters dispatch to a different case");
  int cn = (int)tag;
  long d = tracked_degree(tag, p);
  auto legs = case_homotopies(cn, data);
  std::vector<ActionTrack> all = track_actions(legs.first, p, {d, d + 1});
  const Rat& R = p.R;
  const Rat &r1 = data.r1, &r2 = data.r2, &r3 = data.r3, &m0 = data.m0, &m1 = data.m1;
  Rat rt = (cn == 3 || cn == 5) ? r2 + (r3 - r2) * t : r2 + (r1 - r2) * t;

  struct Live {
    const ActionTrack* tr;
    Rat v;
  };
  std::vector<Live> live;
  {
    std::set<std::tuple<int, long, long, long, long, Rat>> seen;
    for (const ActionTrack& tr : all) {
      if (!(tr.tLo <= t && t <= tr.tHi)) continue;
      auto key = std::make_tuple((int)tr.sourceKind, tr.l, tr.j, tr.k, tr.degree, tr.r.at(t));
      if (!seen.insert(key).second) continue;
      live.push_back({&tr, tr.value.at(t)});
    }
  }
  auto kinkGroup = [&](bool moving, const Rat& rr, long deg) {
    std::vector<const Live*> g;
    for (const Live& lv : live) {
      const ActionTrack& tr = *lv.tr;
      if (tr.degree != deg) continue;
      if (tr.sourceKind != SourceKind::KinkDown && tr.sourceKind != SourceKind::KinkUp) continue;
      bool isMov = tr.r.c1 != 0;
      if (isMov != moving) continue;
      if (!moving && tr.r.c0 != rr) continue;
      g.push_back(&lv);
    }
    return g;
  };
  auto srcGroup = [&](SourceKind kind, long deg) {
    std::vector<const Live*> g;
    for (const Live& lv : live)
      if (lv.tr->sourceKind == kind && lv.tr->degree == deg) g.push_back(&lv);
    return g;
  };

  long Dg = p.N != 0 ? std::gcd(2 * p.n, 2 * p.N) : 0;
  // Recapping parameter of the affine solution family through k = (2n/D)z.
  auto zval = [&](long k, bool& ok) -> long {
    long num = k * Dg;
    if (num % (2 * p.n) != 0) {
      ok = false;
      return 0;
    }
    return num / (2 * p.n);
  };

  std::vector<BoundCheck> out;
  auto add = [&](std::string label, bool holds, std::string desc) {
    out.push_back({std::move(label), holds, std::move(desc)});
  };

  if (cn == 1 || cn == 2 || cn == 4) {
    char pre = cn == 4 ? 'C' : 'A';
    auto L = [&](int i) { return std::string(1, pre) + std::to_string(i); };
    auto r3u = kinkGroup(false, r3, d + 1);
    auto r3d = kinkGroup(false, r3, d);
    auto mvu = kinkGroup(true, 0, d + 1);
    auto mvd = kinkGroup(true, 0, d);
    auto r2d = kinkGroup(false, r2, d);
    auto yd = srcGroup(SourceKind::YIntercept, d);
    auto exd = srcGroup(SourceKind::Exterior, d);
    auto exu = srcGroup(SourceKind::Exterior, d + 1);
    Rat extBase = m1 * (R - r3) + R;  // exterior value: constant on this leg

    if (cn == 2) {
      add(L(1), r3u.empty(), describe(r3u.size(), "no recapped deaths at the outer kink"));
      add(L(2), r3d.empty(), describe(r3d.size(), "no recapped births at the outer kink"));
    } else {
      bool ok = true;
      for (auto lv : r3u) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        ok = ok && zi && z >= 1 && (cn == 1 ? lv->v >= 2 * R : lv->v < 0);
      }
      add(L(1), ok,
          describe(r3u.size(), cn == 1 ? "outer-kink deaths recapped upward, at least 4piR"
                                       : "outer-kink deaths recapped upward, all negative"));
      ok = true;
      for (auto lv : r3d) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        ok = ok && zi && z >= 1 && (cn == 1 ? lv->v > R : lv->v < 0);
      }
      add(L(2), ok,
          describe(r3d.size(), cn == 1 ? "outer-kink births recapped upward, above 2piR"
                                       : "outer-kink births recapped upward, all negative"));
    }
    {
      bool ok = true, found = false;
      for (auto lv : mvu) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        ok = ok && zi && z <= 0 && (cn != 2 || lv->tr->k == 0);
        if (lv->tr->k == 0 && lv->tr->l == -1) {
          found = true;
          if (lv->v != rt + R * t) ok = false;
        }
      }
      add(L(3), ok && found,
          describe(mvu.size(), "moving-kink deaths unrecapped or recapped downward; the chosen "
                               "one tracks the moving kink"));
    }
    if (cn == 2) {
      add(L(4), mvd.empty(), describe(mvd.size(), "no recapped births at the moving kink"));
    } else {
      bool ok = true;
      for (auto lv : mvd) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        ok = ok && zi && z <= -1 && (cn == 1 ? lv->v <= r2 : lv->v >= R * t + 2 * R);
      }
      add(L(4), ok,
          describe(mvd.size(), cn == 1 ? "moving-kink births recapped downward, at most 2pir2"
                                       : "moving-kink births recapped downward, above 2piRt+4piR"));
    }
    {
      bool ok = true, found = false;
      for (auto lv : r2d) {
        if (cn == 2 && lv->tr->k != 0) ok = false;
        if (lv->tr->k == 0 && lv->tr->l == -1) {
          found = true;
          if (lv->v != r2) ok = false;
        }
      }
      add(L(5), ok && found,
          describe(r2d.size(), "the valley birth at r2 exists with value 2pir2"));
    }
    {
      bool found = false, ok = true;
      for (auto lv : yd)
        if (lv->tr->k == 0) {
          found = true;
          if (lv->v != R * t - m0 * rt) ok = false;
        }
      bool slopeCond = (-m0 * r1 > 0) && RealVal(-m0 * r1, -data.eps).sign() < 0;
      add(L(6), found && ok && slopeCond,
          describe(yd.size(), "the y-axis birth tracks 2piRt - m0 r(t) with 0 < -m0 r1 < eps"));
    }
    if (cn == 1) {
      bool ok = true;
      for (auto lv : exd) ok = ok && lv->v >= R;
      add(L(7), ok, describe(exd.size(), "exterior births at least 2piR"));
      ok = p.gammaHat >= 2 * R;
      for (auto lv : exu) ok = ok && lv->v >= R + p.gammaHat;
      add(L(8), ok, describe(exu.size(), "exterior deaths at least 2piR + gamma >= 6piR"));
    } else if (cn == 2) {
      add(L(7), exd.empty(), describe(exd.size(), "no exterior births in the tracked degree"));
      add(L(8), exu.empty(), describe(exu.size(), "no exterior deaths in the tracked degree"));
    } else {
      bool ok = true;
      for (auto lv : exd) ok = ok && lv->tr->k >= 1 && lv->v <= extBase - p.gammaHat && lv->v < 0;
      add(L(7), ok, describe(exd.size(), "exterior births recapped at least once, all negative"));
      ok = true;
      for (auto lv : exu)
        ok = ok && lv->tr->k >= 1 && lv->v <= extBase - p.gammaHat && lv->v < rt + R * t;
      add(L(8), ok,
          describe(exu.size(), "exterior deaths recapped at least once, below the chosen death"));
    }
  } else {
    char pre = cn == 3 ? 'B' : 'D';
    auto L = [&](int i) { return std::string(1, pre) + std::to_string(i); };
    auto r1u = kinkGroup(false, r1, d + 1);
    auto r1d = kinkGroup(false, r1, d);
    auto mvu = kinkGroup(true, 0, d + 1);
    auto mvd = kinkGroup(true, 0, d);
    auto r2d = kinkGroup(false, r2, d);
    auto yd = srcGroup(SourceKind::YIntercept, d);
    auto exd = srcGroup(SourceKind::Exterior, d);
    auto exu = srcGroup(SourceKind::Exterior, d + 1);
    Rat d1 = R - r1;
    Rat extV = R * t + m1 * (R - rt);

    {
      bool ok = true;
      for (auto lv : r1u) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        ok = ok && zi && z <= -1 && lv->v > d1;
      }
      add(L(1), ok, describe(r1u.size(), "inner-kink deaths recapped downward, above 2pi delta1"));
    }
    {
      bool ok = true;
      for (auto lv : r1d) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        ok = ok && zi && z <= -1 && lv->v >= R - 2 * r1;
      }
      add(L(2), ok,
          describe(r1d.size(), "inner-kink births recapped downward, at least -2piR + 4pi delta1"));
    }
    {
      bool ok = true, found = false;
      Rat chosen = R * t - rt;
      for (auto lv : mvu) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        ok = ok && zi && z >= 0;
        if (lv->tr->k == 0 && lv->tr->l == 1) {
          found = true;
          if (lv->v != chosen) ok = false;
        }
      }
      if (t == 1 && found)
        for (auto lv : r1u) ok = ok && chosen < lv->v;
      add(L(3), ok && found,
          describe(mvu.size(),
                   "moving-kink deaths unrecapped or recapped upward; the chosen one ends below "
                   "every inner-kink death"));
    }
    {
      bool ok = true, found = false;
      for (auto lv : mvd) {
        bool zi = true;
        long z = zval(lv->tr->k, zi);
        if (!zi) {
          ok = false;
          continue;
        }
        if (z == -1) {
          // Admissible only in the monotone-zero case with 2N dividing 2n,
          // where it coincides with the chosen death for all time.
          ok = ok && cn == 5 && 2 * p.N == Dg && lv->v == R * t - rt;
        } else {
          ok = ok && z >= 0;
        }
        if (z == 0 && lv->tr->l == 2) {
          found = true;
          if (lv->v != R * t - 2 * rt) ok = false;
        }
      }
      add(L(4), ok && found,
          describe(mvd.size(), "moving-kink births admissible; the possible overtaker tracks "
                               "2piRt - 4pi r(t)"));
    }
    {
      bool ok = true, found = false;
      for (auto lv : r2d)
        if (lv->tr->k == 0 && lv->tr->l == 1) {
          found = true;
          if (lv->v != -r2) ok = false;
        }
      for (auto lv : r1d) ok = ok && lv->v > -r2;
      add(L(5), ok && found,
          describe(r2d.size(), "the valley birth at r2 exists with value -2pir2, below every "
                               "inner-kink birth"));
    }
    if (cn == 3) {
      bool ok = true;
      for (auto lv : yd)
        ok = ok && lv->tr->k <= -1 && lv->v <= R - m0 * r1 - p.gammaHat && lv->v < -r2;
      add(L(6), ok, describe(yd.size(), "y-axis births recapped downward, below the chosen birth"));
      ok = true;
      for (auto lv : exd)
        ok = ok && lv->tr->k <= -1 && lv->v <= extV - p.gammaHat && lv->v < -r2;
      add(L(7), ok,
          describe(exd.size(), "exterior births recapped downward, below the chosen birth"));
      ok = true;
      for (auto lv : exu) ok = ok && lv->v <= extV - 2 * R && lv->v < R * t - rt;
      add(L(8), ok,
          describe(exu.size(), "exterior deaths at least gamma below the clamp value, below the "
                               "chosen death"));
    } else {
      bool ok = true;
      for (auto lv : yd) ok = ok && lv->v == R - m0 * r1;
      add(L(6), ok, describe(yd.size(), "y-axis births all sit at 2piR - m0 r1"));
      ok = true;
      for (auto lv : exd) ok = ok && lv->v == extV;
      add(L(7), ok, describe(exd.size(), "exterior births all track the clamp value"));
      ok = true;
      for (auto lv : exu) ok = ok && lv->v == extV;
      add(L(8), ok,
          describe(exu.size(),
                   "exterior deaths all track the clamp value (overtake handled on the clamp leg)"));
    }
  }
  return out;
}

CaseData make_case_data(const GeneratorFamily& fam, const std::vector<Rat>& b, size_t k) {
  fam.params.validate();
  if (k < 1 || k > fam.gens.size())
    throw Error(Errc::ParameterError, "generator index out of range");
  if (b.size() > fam.gens.size())
    throw Error(Errc::SupportError, "coefficient support exceeds the family size");
  std::vector<Rat> c(fam.gens.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 0 || b[i] > 1)
      throw Error(Errc::ParameterError, "coefficients must lie in [0, 1]");
    c[i] = b[i];
  }
  if (c[k - 1] != 1)
    throw Error(Errc::ParameterError, "the tracked coefficient must equal 1");
  const GeneratorProfile& gk = fam.gens[k - 1];
  const Rat& R = fam.params.R;
  const Rat& eps = fam.epsilon;
  std::vector<PLProfile> profiles;
  for (const GeneratorProfile& gp : fam.gens) profiles.push_back(gp.f);
  PLProfile f = linear_combine(c, profiles);
  Rat m0base = -eps / (8 * gk.r1);
  Rat m1base = eps / (8 * (R - gk.r3));
  for (long it = 0; it < 256; ++it) {
    Rat sc(64, 64 + it);  // shrinking keeps 0 < -m0 r1 <= eps/8
    CaseData cd;
    cd.params = fam.params;
    cd.eps = eps;
    cd.r1 = gk.r1;
    cd.r2 = gk.r2;
    cd.r3 = gk.r3;
    cd.m0 = m0base * sc;
    cd.m1 = m1base * sc;
    PLProfile eta = make_profile_unchecked(
        {{0, -cd.m0 * gk.r1}, {gk.r1, 0}, {gk.r3, 0}, {R, cd.m1 * (R - gk.r3)}});
    cd.g = linear_combine({1, 1}, {f, eta});
    try {
      cd.validate();
    } catch (const Error&) {
      continue;
    }
    return cd;
  }
  throw Error(Errc::ParameterError, "could not avoid integer slopes in the tilted profile");
}

DepthBound boundary_depth_lower_bound(const std::vector<Rat>& a, const GeneratorFamily& family,
                                      const ManifoldParams& p, const Rat& eps) {
  p.validate();
  if (!params_equal(p, family.params))
    throw Error(Errc::ParameterError, "manifold parameters do not match the family");
  if (eps != family.epsilon)
    throw Error(Errc::ParameterError, "epsilon does not match the family");
  if (a.size() > family.gens.size())
    throw Error(Errc::SupportError, "coefficient support exceeds the family size");
  Rat c = 0;
  size_t k = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    Rat m = rat_abs(a[i]);
    if (m > 1) throw Error(Errc::ParameterError, "coefficients must lie in [-1, 1]");
    if (m > c) {
      c = m;
      k = i + 1;
    }
  }
  if (c == 0) throw Error(Errc::AllZero, "every coefficient vanishes");
  std::vector<Rat> b(a.size());
  for (size_t i = 0; i < a.size(); ++i) b[i] = rat_abs(a[i]) / c;
  DepthBound out;
  out.bound = RealVal(p.R * c - 2 * eps, -7 * eps);
  CaseData cd = make_case_data(family, b, k);
  BarCertificate cert = run_certificate(p, cd);
  if (c != 1)
    cert.appliedTheorems.push_back("certificate computed for the sup-normalized coefficients");
  if (cert.lowerBound < out.bound)
    cert.appliedTheorems.push_back("closed-form bound retained: the certificate bound is weaker");
  out.certificate = std::move(cert);
  return out;
}

}  // namespace plbars
