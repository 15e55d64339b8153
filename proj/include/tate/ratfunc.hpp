#pragma once

#include "tate/multipoly.hpp"

namespace tate {

// Quotient of multivariate polynomials in canonical reduced form:
//   gcd(num, den) = 1, both with coprime integer coefficients apart from a
//   single rational scalar folded into num, den's leading coefficient > 0.
// Equality is structural equality of the canonical form.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}
  RationalFunction(long c) : num_(Rational(c)), den_(Rational(1)) {}
  explicit RationalFunction(const MultiPoly& p) : num_(p), den_(Rational(1)) {}
  RationalFunction(const MultiPoly& n, const MultiPoly& d) { assign(n, d); }

  static RationalFunction var(const std::string& name) {
    return RationalFunction(MultiPoly::var(name));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational as_constant() const { return num_.as_constant() / den_.as_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction inv() const;

  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }
  bool operator<(const RationalFunction& o) const {
    if (num_ < o.num_) return true;
    if (o.num_ < num_) return false;
    return den_ < o.den_;
  }

  bool depends_on(const std::string& v) const {
    return num_.depends_on(v) || den_.depends_on(v);
  }

  // Substitute a polynomial value for v (denominator must stay nonzero).
  RationalFunction subst(const std::string& v, const RationalFunction& val) const;
  RationalFunction derivative(const std::string& v) const;

  std::string str() const;

private:
  void assign(const MultiPoly& n, const MultiPoly& d);
  MultiPoly num_, den_;
};

// Spec name for the canonicalizing constructor.
inline RationalFunction rf_normalize(const MultiPoly& n, const MultiPoly& d) {
  return RationalFunction(n, d);
}

} // namespace tate
