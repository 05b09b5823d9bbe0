#ifndef PLBARS_HOMOTOPY_HPP
#define PLBARS_HOMOTOPY_HPP

#include "plbars/spectrum.hpp"

#include <set>

namespace plbars {

// Affine function of the homotopy parameter t.
struct AffRat {
  Rat c0, c1;  // c0 + c1*t

  AffRat() : c0(0), c1(0) {}
  AffRat(Rat a) : c0(std::move(a)), c1(0) {}
  AffRat(Rat a, Rat b) : c0(std::move(a)), c1(std::move(b)) {}

  Rat at(const Rat& t) const { return c0 + c1 * t; }
  bool is_const() const { return c1 == 0; }

  AffRat operator+(const AffRat& o) const { return AffRat(c0 + o.c0, c1 + o.c1); }
  AffRat operator-(const AffRat& o) const { return AffRat(c0 - o.c0, c1 - o.c1); }
  AffRat operator*(const Rat& s) const { return AffRat(c0 * s, c1 * s); }
  bool operator==(const AffRat& o) const { return c0 == o.c0 && c1 == o.c1; }
};

// t with a(t) == b(t), if a unique solution exists.
std::optional<Rat> solve_equal(const AffRat& a, const AffRat& b);

struct MovingPoint {
  AffRat r;
  AffRat v;
};

enum class LegKind { Fold, Line1, Line2, StraightLine };

// One affine span of a homotopy leg: on [t0, t1] the profile's breakpoints
// are exactly `pts`, each affine in the global leg parameter t.
struct LegPiece {
  Rat t0, t1;
  std::vector<MovingPoint> pts;
};

struct AbsorbEvent {
  Rat time;
  Rat r;  // breakpoint of g the clamp line passes through
};

struct HomotopyLeg {
  LegKind kind = LegKind::StraightLine;
  int caseNumber = 0;  // Line1/Line2 only
  int kinkIndex = -1;  // Fold only
  std::vector<LegPiece> pieces;
  std::vector<AbsorbEvent> absorbed;  // Line2 only

  const LegPiece& piece_at(const Rat& t) const;
  // Profile at time t: coincident breakpoints merged, collinear ones kept.
  PLProfile profile_at(const Rat& t) const;
  void validate() const;
};

// Data for the five-case homotopies: landmarks of the tracked generator,
// the auxiliary slopes, and the perturbed target profile g.
struct CaseData {
  ManifoldParams params;
  Rat eps;
  Rat r1, r2, r3;  // 0 < r1 < r2 < r3 < R
  Rat m0;          // slope out of the y-axis, in (-1, 0), 2pi-units
  Rat m1;          // slope into r = R, in (0, 1), 2pi-units
  PLProfile g;     // target profile; g(r1) = g(r3) = R, g(r2) = 0

  void validate() const;  // throws CaseMismatch
};

// Legs from the zero profile to f, folding one kink at a time from the
// outermost inward, then restoring the y-intercept segment.  A profile with
// K kinks yields K+1 legs.
std::vector<HomotopyLeg> fold_homotopy(const PLProfile& f);

// The two displayed legs for the dispatched case; h2 descends the clamp
// lines onto g and records KinkAbsorbed events.
std::pair<HomotopyLeg, HomotopyLeg> case_homotopies(int caseNumber, const CaseData& data);

struct ActionTrack {
  SourceKind sourceKind;
  KinkOrientation orientation = KinkOrientation::Down;  // kinks only
  AffRat r;   // kink radius (constant 0 otherwise)
  long l = 0;
  long j = 0;
  long k = 0;
  long degree = 0;
  AffRat value;
  Rat tLo, tHi;      // live interval within the leg
  size_t piece = 0;  // index of the enclosing LegPiece
  bool degenerate = false;  // permanently coincident with another track

  ActionSource source_at(const Rat& t) const;
  std::string str() const;
};

// Every action track of the requested degrees, one per live sub-interval
// (pieces are further cut at slope-condition events).
std::vector<ActionTrack> track_actions(const HomotopyLeg& leg, const ManifoldParams& p,
                                       const std::set<long>& degrees);

enum class EventKind { SlopeHitsInteger, Collision, KinkAbsorbed, LegBoundary };

struct Event {
  Rat time;
  EventKind kind;
  long segment = -1;  // SlopeHitsInteger
  long level = 0;     // SlopeHitsInteger
  long trackA = -1, trackB = -1;  // Collision, indices into the track list
  bool degenerate = false;        // Collision over a whole interval
  Rat r;                          // KinkAbsorbed
  std::string detail;

  bool operator<(const Event& o) const;
};

std::vector<Event> detect_events(const HomotopyLeg& leg, const std::vector<ActionTrack>& tracks,
                                 const ManifoldParams& p);

}  // namespace plbars

#endif
