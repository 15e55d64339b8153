#include "tate/ratfunc.hpp"

#include <sstream>

namespace tate {

void RationalFunction::assign(const MultiPoly& n, const MultiPoly& d) {
  if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (n.is_zero()) {
    num_ = MultiPoly();
    den_ = MultiPoly(Rational(1));
    return;
  }
  MultiPoly g = poly_gcd(n, d);
  MultiPoly nn = *n.divide_exact(g);
  MultiPoly dd = *d.divide_exact(g);
  // Fold scalar content into the numerator; keep den integer-primitive with
  // positive leading coefficient, then push any denominator of the scalar
  // back down so both parts have integer coefficients.
  Rational cn = nn.content_signed();
  Rational cd = dd.content_signed();
  nn = *nn.divide_exact(MultiPoly(cn));
  dd = *dd.divide_exact(MultiPoly(cd));
  Rational s = cn / cd;  // sign carried here; dd now has positive lead
  num_ = nn * MultiPoly(Rational(s.get_num()));
  den_ = dd * MultiPoly(Rational(s.get_den()));
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  // Cross-reduce before multiplying to keep intermediates small.
  MultiPoly g1 = poly_gcd(num_, o.den_);
  MultiPoly g2 = poly_gcd(o.num_, den_);
  MultiPoly n = *num_.divide_exact(g1) * *o.num_.divide_exact(g2);
  MultiPoly d = *den_.divide_exact(g2) * *o.den_.divide_exact(g1);
  return RationalFunction(n, d);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  return *this * o.inv();
}

RationalFunction RationalFunction::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::subst(const std::string& v,
                                         const RationalFunction& val) const {
  if (!depends_on(v)) return *this;
  // Homogenize in v: f(p/q) = sum n_k p^k q^(m-k) / sum d_k p^k q^(m-k).
  int dn = num_.degree_in(v), dd = den_.degree_in(v);
  int dmax = std::max(dn, dd);
  MultiPoly p = val.num(), q = val.den();
  auto eval_hom = [&](const MultiPoly& f, int deg) {
    // sum_k coeff_k * p^k * q^(dmax-k)
    MultiPoly acc;
    MultiPoly ppow(Rational(1));
    std::vector<MultiPoly> ppows(dmax + 1);
    for (int k = 0; k <= dmax; ++k) { ppows[k] = ppow; ppow = ppow * p; }
    MultiPoly qpow(Rational(1));
    std::vector<MultiPoly> qpows(dmax + 1);
    for (int k = 0; k <= dmax; ++k) { qpows[k] = qpow; qpow = qpow * q; }
    for (int k = 0; k <= deg; ++k) {
      MultiPoly ck = f.coeff_in(v, k);
      if (ck.is_zero()) continue;
      acc = acc + ck * ppows[k] * qpows[dmax - k];
    }
    return acc;
  };
  MultiPoly n = eval_hom(num_, dn);
  MultiPoly d = eval_hom(den_, dd);
  if (d.is_zero()) throw std::domain_error("substitution hits a pole");
  return RationalFunction(n, d);
}

RationalFunction RationalFunction::derivative(const std::string& v) const {
  MultiPoly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
  return RationalFunction(n, den_ * den_);
}

std::string RationalFunction::str() const {
  if (den_ == MultiPoly(Rational(1))) return num_.str();
  std::ostringstream os;
  bool np = num_.terms().size() > 1;
  bool dp = !den_.is_constant();
  os << (np ? "(" : "") << num_.str() << (np ? ")" : "");
  os << "/";
  os << (dp ? "(" : "") << den_.str() << (dp ? ")" : "");
  return os.str();
}

} // namespace tate
