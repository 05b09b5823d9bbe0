#ifndef PLBARS_EMBEDDING_HPP
#define PLBARS_EMBEDDING_HPP

#include "plbars/spectrum.hpp"

#include <optional>

namespace plbars {

// One generator profile together with its landmarks.  The support is
// [lo, hi] inside [0, R]; the kinks near the middle sit at r1 < r2 < r3 with
// values R, 0, R (2pi-units).
struct GeneratorProfile {
  PLProfile f;
  Rat lo, hi;       // support interval
  Rat r1, r2, r3;   // landmark kinks
  Rat uw;           // width of the flat margins at lo and hi
};

struct GeneratorFamily {
  ManifoldParams params;
  Rat epsilon;
  long count = 0;
  std::vector<GeneratorProfile> gens;  // index i-1 holds f_i
};

// Finite-support coefficient point.  a0 is the optional unconstrained
// coefficient of the auxiliary profile; coeffs[i-1] = a_i must lie in [0, 1].
struct EmbeddingPoint {
  std::optional<Rat> a0;
  std::vector<Rat> coeffs;

  void validate(long count) const;  // SupportError / ParameterError
};

// The m generator profiles supported in the dyadic intervals
// I_i = [R - e + e/2^i, R - e + e/2^{i-1}].  Landmark spread defaults to
// |I_i|/10 and the margin width to |I_i|/20, nudged deterministically when a
// flank or ramp slope would land on an integer.
GeneratorFamily build_generators(const ManifoldParams& p, const Rat& eps, long m);

// Pointwise sum of coeffs[i-1] * f_i.  The slope condition is not enforced;
// a0 is ignored (the auxiliary profile is handled separately).
PLProfile phi_profile(const EmbeddingPoint& a, const GeneratorFamily& fam);

// C0-perturbation of f within eps that keeps the kink r-set and the pinned
// points, satisfies the slope condition, and makes kink actions distinct
// where achievable.  Deterministic for a fixed seed.
PLProfile perturb_to_generic(const PLProfile& f, const ManifoldParams& p, const Rat& eps,
                             const std::vector<Breakpoint>& pinned, unsigned long seed = 0);

struct HoferWindow {
  RealVal lower;       // 2piR*d - (4pi+7)eps, clamped at 0
  RealVal upper;       // 4piR*d
  Rat oscillation2pi;  // osc(phi(b) - phi(a)), a sharper upper bound
};

HoferWindow theorem1_bounds(const EmbeddingPoint& a, const EmbeddingPoint& b,
                            const ManifoldParams& p, const Rat& eps,
                            const GeneratorFamily& fam);

// Symplectic volume of the ball of capacity 2piR as the coefficient of
// (2pi)^n: the integral of omega^n over B(2piR) equals (2piR)^n.
Rat ball_volume(long n, const Rat& R);

// The auxiliary profile: value R on [0, R-4e], zero at R-3e, peak R at
// R-2e, zero on [R-e-d, R].  Ramp slopes must avoid the integers.
PLProfile f0_profile(const ManifoldParams& p, const Rat& eps, const Rat& delta);

struct EmbeddingConstants {
  Rat C;               // R^n / volM - eps (a pure number)
  RealVal lowerBound;  // displacement-style lower bound for the Hofer norm
};

// volM is the symplectic volume of M as the coefficient of (2pi)^n; it must
// exceed ball_volume(n, R).
EmbeddingConstants theorem2_constants(const ManifoldParams& p, const Rat& eps,
                                      const Rat& volM, const EmbeddingPoint& a);

}  // namespace plbars

#endif
