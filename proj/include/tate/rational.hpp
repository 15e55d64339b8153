#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace tate {

// Exact rational scalar. mpq_class keeps gcd(num,den)=1 and den>0 after
// canonicalize(); every constructor here canonicalizes.
using Rational = mpq_class;

inline Rational rat(long n, long d = 1) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Rational rat_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::domain_error("cannot parse rational: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

} // namespace tate
