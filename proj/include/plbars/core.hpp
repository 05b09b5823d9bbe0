#ifndef PLBARS_CORE_HPP
#define PLBARS_CORE_HPP

#include "plbars/rational.hpp"

#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace plbars {

// Monotonicity data of the ambient manifold together with the ball parameter.
// gammaHat = gamma / (2*pi).  The ball has capacity 2*pi*R.
struct ManifoldParams {
  long n = 1;                           // half-dimension
  long N = 0;                           // minimal Chern number
  Rat gammaHat = 0;                     // gamma in 2pi-units
  int lambdaSign = 0;                   // sigma(lambda) in {-1, 0, +1}
  Rat R = 1;                            // ball parameter
  std::vector<long> exteriorMorseIndices{0};  // multiset, values in [0, 2n-1]

  void validate() const;  // throws Error(ParameterError)
};

struct Breakpoint {
  Rat r;
  Rat v;  // 2pi-units
};

// Radial profile f: [0, R] -> R, piecewise linear, values in 2pi-units.
// Immutable after construction.
struct PLProfile {
  Rat R;
  std::vector<Breakpoint> pts;  // r strictly increasing, first 0, last R

  size_t segments() const { return pts.size() - 1; }
  Rat slope(size_t i) const;    // slope of segment i, 2pi-units
  Rat value_at(const Rat& r) const;
  Rat first_slope() const { return slope(0); }
  Rat final_slope() const { return slope(segments() - 1); }
  Rat min_value() const;
  Rat max_value() const;

  // Removes interior breakpoints where the two adjacent slopes agree.
  PLProfile simplified() const;

  bool operator==(const PLProfile& o) const {
    if (R != o.R || pts.size() != o.pts.size()) return false;
    for (size_t i = 0; i < pts.size(); ++i)
      if (pts[i].r != o.pts[i].r || pts[i].v != o.pts[i].v) return false;
    return true;
  }

  // Checks ordering/domain and the slope condition; throws on failure.
  void validate() const;
  // Ordering/domain only, slopes unrestricted (intermediate combinations).
  void validate_domain() const;
};

enum class KinkOrientation { Up, Down };  // Up = valley, Down = peak

struct Kink {
  Rat r;
  Rat value;      // f(r), 2pi-units
  Rat leftSlope;  // slope on the small-r side
  Rat rightSlope;
  KinkOrientation orientation;
  std::vector<long> crossedLevels;  // integers strictly between the slopes
};

// Validating constructor; points must be sorted by r with first r = 0.
PLProfile make_profile(const std::vector<std::pair<Rat, Rat>>& points);

// Same shape checks as make_profile but without the slope condition.
PLProfile make_profile_unchecked(const std::vector<std::pair<Rat, Rat>>& points);

PLProfile zero_profile(const Rat& R);

// Pointwise sum of c_i * f_i over the union of breakpoint sets.  The result
// is not re-validated against the slope condition.
PLProfile linear_combine(const std::vector<Rat>& coeffs,
                         const std::vector<PLProfile>& profiles);

// Exact L-infinity distance; the difference is PL so the max sits on the
// union of breakpoints.
Rat sup_distance(const PLProfile& f, const PLProfile& g);

// max f - min f in 2pi-units.
Rat oscillation(const PLProfile& f);

// Interior breakpoints where the adjacent slopes differ.
std::vector<Kink> classify_kinks(const PLProfile& f);

// Text format: header "R=p/q", then one "r v" line per breakpoint.
std::string serialize_profile(const PLProfile& f);
PLProfile parse_profile(const std::string& text);
PLProfile load_profile(const std::string& path);

}  // namespace plbars

#endif
