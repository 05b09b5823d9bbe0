#include "plbars/rational.hpp"

#include <sstream>

namespace plbars {

std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << rat_num(q);
  if (rat_den(q) != 1) os << "/" << rat_den(q);
  return os.str();
}

Rat parse_rat(const std::string& s) {
  auto bad = [&] { throw Error(Errc::ParseError, "bad rational: '" + s + "'"); };
  if (s.empty()) bad();
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
  } catch (const std::exception&) {
    bad();
  }
  return 0;  // unreachable
}

std::string rat_decimal(const Rat& q, int digits) {
  if (q == 0) return "0";
  Int n = rat_num(q), d = rat_den(q);
  std::string sign;
  if (n < 0) {
    sign = "-";
    n = -n;
  }
  // Scale so the integer part of n*10^k/d has exactly `digits` digits, then
  // round half away from zero.
  int exp10 = 0;
  Int lo = n, hi = d;
  while (lo < hi) {
    lo *= 10;
    --exp10;
  }
  while (lo >= hi * 10) {
    hi *= 10;
    ++exp10;
  }
  // now 10^exp10 <= n/d < 10^(exp10+1)
  Int scaled_num = n, scaled_den = d;
  int shift = digits - 1 - exp10;
  if (shift > 0)
    for (int i = 0; i < shift; ++i) scaled_num *= 10;
  else
    for (int i = 0; i < -shift; ++i) scaled_den *= 10;
  Int digval = (2 * scaled_num + scaled_den) / (2 * scaled_den);  // rounded
  std::string ds = digval.str();
  if ((int)ds.size() > digits) {  // rounding bumped 999.. to 1000..
    ++exp10;
    ds.pop_back();
  }
  // Strip trailing zeros but keep at least one digit.
  while (ds.size() > 1 && ds.back() == '0') ds.pop_back();
  std::ostringstream os;
  os << sign;
  if (exp10 >= 0 && exp10 < digits + 2 && exp10 < (int)ds.size() + 6) {
    if (exp10 + 1 >= (int)ds.size()) {
      os << ds << std::string(exp10 + 1 - ds.size(), '0');
    } else {
      os << ds.substr(0, exp10 + 1) << "." << ds.substr(exp10 + 1);
    }
  } else if (exp10 < 0 && exp10 > -6) {
    os << "0." << std::string(-exp10 - 1, '0') << ds;
  } else {
    os << ds.substr(0, 1);
    if (ds.size() > 1) os << "." << ds.substr(1);
    os << "e" << exp10;
  }
  return os.str();
}

namespace {
// 2*pi = 6.2831853071795864769252867665590057684... ; LO < 2*pi < HI.
const Rat kTwoPiLo = Rat(Int("62831853071795864769252867665590057683"),
                         Int("10000000000000000000000000000000000000"));
const Rat kTwoPiHi = Rat(Int("62831853071795864769252867665590057684"),
                         Int("10000000000000000000000000000000000000"));
}  // namespace

int RealVal::sign() const {
  if (two_pi == 0) return raw == 0 ? 0 : (raw < 0 ? -1 : 1);
  // sign(2pi*u + w) with u != 0: compare -w/u against 2pi.
  Rat q = -raw / two_pi;
  int s = two_pi < 0 ? -1 : 1;
  if (q <= kTwoPiLo) return s;
  if (q >= kTwoPiHi) return -s;
  // A rational landed inside a 1e-38 window around 2pi; refuse to guess.
  throw Error(Errc::Internal, "RealVal sign: 2pi bounds too coarse");
}

std::string RealVal::str() const {
  std::ostringstream os;
  os << "2pi*(" << rat_str(two_pi) << ") + (" << rat_str(raw) << ")";
  return os.str();
}

std::string RealVal::decimal() const {
  // Display only: 2pi to 40 digits is far beyond the 20 shown.
  Rat approx = two_pi * kTwoPiLo + raw;
  return rat_decimal(approx, 20);
}

std::string ExtRat::str() const { return infinite ? "inf" : rat_str(value); }

ExtRat parse_ext_rat(const std::string& s) {
  if (s == "inf") return ExtRat::inf();
  return ExtRat(parse_rat(s));
}

}  // namespace plbars
