#ifndef PLBARS_SPECTRUM_HPP
#define PLBARS_SPECTRUM_HPP

#include "plbars/core.hpp"

#include <optional>

namespace plbars {

enum class SourceKind { KinkDown, KinkUp, YIntercept, Exterior };

// Where an action value comes from.  l is the crossed level for kink and
// y-intercept sources; j is the exterior Morse index.
struct ActionSource {
  SourceKind kind;
  Rat r;   // kink radius (0 otherwise)
  long l;  // level (0 for Exterior)
  long j;  // exterior Morse index (0 otherwise)

  static ActionSource kink_down(Rat r, long l) { return {SourceKind::KinkDown, std::move(r), l, 0}; }
  static ActionSource kink_up(Rat r, long l) { return {SourceKind::KinkUp, std::move(r), l, 0}; }
  static ActionSource y_intercept(long l) { return {SourceKind::YIntercept, 0, l, 0}; }
  static ActionSource exterior(long j) { return {SourceKind::Exterior, 0, 0, j}; }

  bool operator==(const ActionSource& o) const {
    return kind == o.kind && r == o.r && l == o.l && j == o.j;
  }
  bool operator<(const ActionSource& o) const;
  std::string str() const;
};

// One element of the indexed action spectrum in a fixed degree.
struct IndexedAction {
  Rat value;  // 2pi-units
  long degree;
  ActionSource source;
  long k;  // recapping index

  bool operator==(const IndexedAction& o) const {
    return value == o.value && degree == o.degree && source == o.source && k == o.k;
  }
  bool operator<(const IndexedAction& o) const;  // (value, degree, source, k)
};

// Degrees contributed by a source before recapping.  Kinks contribute two.
std::vector<long> base_degrees(const ActionSource& s, const ManifoldParams& p);

// Base action value (no recapping shift), 2pi-units.
Rat base_value(const ActionSource& s, const PLProfile& f);

// All actions of degree exactly d, sorted.  Identical values from distinct
// sources appear with multiplicity.
std::vector<IndexedAction> enumerate_spectrum(const PLProfile& f, const ManifoldParams& p,
                                              long d);

// Integer solutions of 2n*(-l) + baseConstant + 2N*k = targetDegree as an
// affine family in z: (-l)(z) = negL0 + negLStep*z, k(z) = k0 + kStep*z,
// normalized so k0 in [0, kStep).  Requires N != 0; throws NoSolution on a
// divisibility obstruction.
struct DegreeSolutionFamily {
  long negL0 = 0;
  long k0 = 0;
  long negLStep = 0;  // = -(2N/D) * sgn arrangement; step applied per unit z
  long kStep = 0;     // = 2n/D
  long neg_l(long z) const { return negL0 + negLStep * z; }
  long l(long z) const { return -neg_l(z); }
  long k(long z) const { return k0 + kStep * z; }
  // z such that k(z) = k; throws if k is not on the family.
  long z_of_k(long kk) const;
};

DegreeSolutionFamily solve_degree_parametrization(long targetDegree, long baseConstant,
                                                  const ManifoldParams& p);

struct KinkActionWitness {
  ActionSource a;
  ActionSource b;
  long kShift = 0;  // witness: base(a) = base(b) + kShift * sigma * gammaHat
  std::string describe() const;
};

struct DistinctKinkActions {
  bool distinct = true;
  std::optional<KinkActionWitness> witness;
};

// Genericity predicate: no two kink actions agree after recapping, and no
// kink action meets f(0) or f(R) modulo the recapping shift.  With gammaHat
// nonzero the infinite quantifier reduces to a congruence check mod gammaHat.
DistinctKinkActions has_distinct_kink_actions(const PLProfile& f, const ManifoldParams& p);

}  // namespace plbars

#endif
