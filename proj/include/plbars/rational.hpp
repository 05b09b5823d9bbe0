#ifndef PLBARS_RATIONAL_HPP
#define PLBARS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace plbars {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar.  Profile values, slopes and gamma are stored in
// 2pi-normalized units (stored q means the real quantity 2*pi*q); radii and
// epsilon are stored as plain rationals.  No rounding ever occurs.
using Rat = boost::multiprecision::cpp_rational;

enum class Errc {
  SlopeConditionViolation,
  DomainError,
  DomainMismatch,
  DegreeMismatch,
  NotAComplex,
  FiltrationViolation,
  NoSolution,
  CaseMismatch,
  RuleConflict,
  ParameterError,
  SupportError,
  CannotPerturb,
  VolumeError,
  AllZero,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int t = n / d;
  if (n < 0 && t * d != n) --t;
  return t;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Renders p/q; integers render without the denominator.
std::string rat_str(const Rat& q);

// Accepts "p", "p/q", and optional leading '-'.  Throws ParseError.
Rat parse_rat(const std::string& s);

// Display-only decimal rendering with the given number of significant digits.
std::string rat_decimal(const Rat& q, int digits = 20);

// A real-valued quantity of the form 2*pi*u + w with u, w rational.  All of
// the tracked bounds live in the Z-span of {2*pi*l*r, f(r), k*gamma} plus raw
// multiples of epsilon, so this form is closed under the arithmetic we need
// and admits exact sign decisions (2*pi is irrational, so the sign of
// 2*pi*u + w is decidable from rational bounds on 2*pi).
struct RealVal {
  Rat two_pi;  // coefficient of 2*pi
  Rat raw;     // plain real part

  RealVal() = default;
  RealVal(Rat u, Rat w) : two_pi(std::move(u)), raw(std::move(w)) {}
  static RealVal of_two_pi(Rat u) { return RealVal(std::move(u), 0); }
  static RealVal of_raw(Rat w) { return RealVal(0, std::move(w)); }

  RealVal operator+(const RealVal& o) const { return RealVal(two_pi + o.two_pi, raw + o.raw); }
  RealVal operator-(const RealVal& o) const { return RealVal(two_pi - o.two_pi, raw - o.raw); }
  RealVal operator-() const { return RealVal(-two_pi, -raw); }
  RealVal operator*(const Rat& c) const { return RealVal(two_pi * c, raw * c); }

  // -1, 0, +1.
  int sign() const;

  bool operator<(const RealVal& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const RealVal& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const RealVal& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const RealVal& o) const { return (*this - o).sign() >= 0; }
  bool operator==(const RealVal& o) const { return two_pi == o.two_pi && raw == o.raw; }
  bool operator!=(const RealVal& o) const { return !(*this == o); }

  std::string str() const;      // symbolic, e.g. "2pi*(7/8) + (-1/2)"
  std::string decimal() const;  // display-only
};

// Scalar-or-plus-infinity, with +inf comparing strictly greater than every
// finite value.
struct ExtRat {
  bool infinite = false;
  Rat value;  // meaningful only when finite

  ExtRat() = default;
  ExtRat(Rat v) : infinite(false), value(std::move(v)) {}
  static ExtRat inf() {
    ExtRat e;
    e.infinite = true;
    return e;
  }

  bool operator==(const ExtRat& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator!=(const ExtRat& o) const { return !(*this == o); }
  bool operator<(const ExtRat& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }
  bool operator>(const ExtRat& o) const { return o < *this; }
  bool operator>=(const ExtRat& o) const { return o <= *this; }

  std::string str() const;
};

ExtRat parse_ext_rat(const std::string& s);  // "p/q" or "inf"

}  // namespace plbars

#endif
