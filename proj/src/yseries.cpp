#include "tate/yseries.hpp"

#include <algorithm>
#include <sstream>

namespace tate {

int expvec_degree(const ExpVec& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

ExpVec expvec_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

bool ExpVecLess::operator()(const ExpVec& a, const ExpVec& b) const {
  int da = expvec_degree(a), db = expvec_degree(b);
  if (da != db) return da < db;
  return a < b;
}

YSeries YSeries::constant(const RationalFunction& c, int nedges, int order) {
  YSeries s(nedges, order);
  s.add_term(ExpVec(nedges, 0), c);
  return s;
}

YSeries YSeries::monomial(const ExpVec& e, const RationalFunction& c, int order) {
  YSeries s((int)e.size(), order);
  s.add_term(e, c);
  return s;
}

YSeries YSeries::var(int edge, int nedges, int order) {
  ExpVec e(nedges, 0);
  e[edge] = 1;
  return monomial(e, RationalFunction(Rational(1)), order);
}

RationalFunction YSeries::coeff(const ExpVec& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? RationalFunction() : it->second;
}

RationalFunction YSeries::constant_term() const {
  return coeff(ExpVec(nedges_, 0));
}

void YSeries::add_term(const ExpVec& e, const RationalFunction& c) {
  if (c.is_zero() || expvec_degree(e) > order_) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

YSeries YSeries::operator-() const {
  YSeries r(nedges_, order_);
  for (auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

YSeries YSeries::operator+(const YSeries& o) const {
  YSeries r(nedges_, std::min(order_, o.order_));
  for (auto& [e, c] : terms_)
    if (expvec_degree(e) <= r.order_) r.add_term(e, c);
  for (auto& [e, c] : o.terms_)
    if (expvec_degree(e) <= r.order_) r.add_term(e, c);
  return r;
}

YSeries YSeries::operator-(const YSeries& o) const { return *this + (-o); }

YSeries YSeries::operator*(const YSeries& o) const {
  YSeries r(nedges_, std::min(order_, o.order_));
  for (auto& [ea, ca] : terms_) {
    int da = expvec_degree(ea);
    if (da > r.order_) continue;
    for (auto& [eb, cb] : o.terms_) {
      if (da + expvec_degree(eb) > r.order_) continue;
      r.add_term(expvec_add(ea, eb), ca * cb);
    }
  }
  return r;
}

YSeries YSeries::operator*(const RationalFunction& c) const {
  YSeries r(nedges_, order_);
  if (c.is_zero()) return r;
  for (auto& [e, cc] : terms_) r.terms_[e] = cc * c;
  return r;
}

YSeries YSeries::operator+(const RationalFunction& c) const {
  YSeries r = *this;
  r.add_term(ExpVec(nedges_, 0), c);
  return r;
}

YSeries operator*(const RationalFunction& c, const YSeries& s) { return s * c; }

bool YSeries::operator==(const YSeries& o) const {
  return nedges_ == o.nedges_ && terms_ == o.terms_;
}

YSeries YSeries::inv() const {
  RationalFunction c0 = constant_term();
  if (c0.is_zero())
    throw std::domain_error("series inversion requires a unit constant term");
  // 1/(c0 + t) = (1/c0) * sum_k (-t/c0)^k, t the positive-degree part.
  RationalFunction ic = c0.inv();
  YSeries t = *this;
  t.terms_.erase(ExpVec(nedges_, 0));
  YSeries u = t * (-ic);
  YSeries acc = YSeries::constant(ic, nedges_, order_);
  YSeries upow = YSeries::constant(ic, nedges_, order_);
  for (int k = 1; k <= order_; ++k) {
    upow = upow * u;
    if (upow.is_zero()) break;
    acc = acc + upow;
  }
  return acc;
}

YSeries YSeries::log1p() const {
  if (!constant_term().is_zero())
    throw std::domain_error("log1p requires zero constant term");
  YSeries acc(nedges_, order_);
  YSeries p = YSeries::constant(RationalFunction(Rational(1)), nedges_, order_);
  for (int k = 1; k <= order_; ++k) {
    p = p * *this;
    if (p.is_zero()) break;
    Rational c(k % 2 == 1 ? 1 : -1, k);
    c.canonicalize();
    acc = acc + p * RationalFunction(c);
  }
  return acc;
}

YSeries YSeries::exp_nilpotent() const {
  if (!constant_term().is_zero())
    throw std::domain_error("exp requires zero constant term");
  YSeries acc = YSeries::constant(RationalFunction(Rational(1)), nedges_, order_);
  YSeries p = acc;
  Rational fact(1);
  for (int k = 1; k <= order_; ++k) {
    p = p * *this;
    if (p.is_zero()) break;
    fact *= k;
    Rational c(1);
    c /= fact;
    acc = acc + p * RationalFunction(c);
  }
  return acc;
}

YSeries YSeries::pow(int k) const {
  if (k < 0) throw std::domain_error("negative power");
  YSeries r = YSeries::constant(RationalFunction(Rational(1)), nedges_, order_);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

YSeries YSeries::truncated(int new_order) const {
  YSeries r(nedges_, new_order);
  for (auto& [e, c] : terms_)
    if (expvec_degree(e) <= new_order) r.terms_[e] = c;
  return r;
}

YSeries YSeries::subst(const std::string& v, const RationalFunction& val) const {
  YSeries r(nedges_, order_);
  for (auto& [e, c] : terms_) r.add_term(e, c.subst(v, val));
  return r;
}

YSeries YSeries::coeff_derivative(const std::string& v) const {
  YSeries r(nedges_, order_);
  for (auto& [e, c] : terms_) r.add_term(e, c.derivative(v));
  return r;
}

bool YSeries::depends_on(const std::string& v) const {
  for (auto& [e, c] : terms_)
    if (c.depends_on(v)) return true;
  return false;
}

YSeries YSeries::shifted(const ExpVec& e) const {
  YSeries r(nedges_, order_);
  for (auto& [ee, c] : terms_) r.add_term(expvec_add(ee, e), c);
  return r;
}

YSeries YSeries::monomial_divided(const ExpVec& e) const {
  // Negative entries of e multiply by the monomial instead (results beyond
  // the truncation order are dropped).
  YSeries r(nedges_, order_);
  for (auto& [ee, c] : terms_) {
    ExpVec q = ee;
    for (size_t i = 0; i < e.size(); ++i) {
      q[i] -= e[i];
      if (q[i] < 0) throw std::domain_error("series not divisible by monomial");
    }
    r.add_term(q, c);
  }
  return r;
}

ExpVec YSeries::monomial_content() const {
  ExpVec m(nedges_, 0);
  bool first = true;
  for (auto& [e, c] : terms_) {
    if (first) { m = e; first = false; continue; }
    for (int i = 0; i < nedges_; ++i) m[i] = std::min(m[i], e[i]);
  }
  return m;
}

std::string YSeries::str() const {
  std::vector<std::string> names;
  for (int i = 0; i < nedges_; ++i) names.push_back("#" + std::to_string(i));
  return str_named(names);
}

std::string YSeries::str_named(const std::vector<std::string>& edge_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    std::string cs = c.str();
    // Single-monomial polynomial coefficients print bare; anything else is
    // parenthesized so the sign can be read off reliably.
    bool simple = c.num().terms().size() <= 1 &&
                  c.den() == MultiPoly(Rational(1));
    bool neg = simple && !cs.empty() && cs[0] == '-';
    if (!first) {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    } else {
      first = false;
      if (neg) { os << "-"; cs = cs.substr(1); }
    }
    if (expvec_degree(e) == 0) {
      os << (simple ? cs : "(" + cs + ")");
      continue;
    }
    if (cs != "1") {
      if (simple) os << cs << "*";
      else os << "(" << cs << ")*";
    }
    bool lead = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!lead) os << "*";
      lead = false;
      os << "y[" << edge_names[i] << "]";
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

YSeries compose_z(const RationalFunction& f, const YSeries& p,
                  const std::string& var) {
  int ne = p.nedges(), N = p.order();
  if (!f.depends_on(var))
    return YSeries::constant(f, ne, N);
  // Split p = c0 + t; substitute var -> c0 + t via Taylor-free Horner on the
  // numerator/denominator viewed as polynomials in var.
  auto eval_poly = [&](const MultiPoly& g) {
    int d = g.degree_in(var);
    YSeries acc = YSeries::constant(RationalFunction(g.coeff_in(var, d)), ne, N);
    for (int k = d - 1; k >= 0; --k)
      acc = acc * p + RationalFunction(g.coeff_in(var, k));
    return acc;
  };
  YSeries num = eval_poly(f.num());
  YSeries den = eval_poly(f.den());
  if (den.constant_term().is_zero())
    throw std::domain_error("compose_z: pole hit at the constant term");
  return num * den.inv();
}

namespace {
// The stored series only holds total degrees <= order; the value is trusted
// to the smaller of the analytic bound and the storage capacity.
int laurent_clamp(const LaurentYSeries& l, int analytic) {
  return std::min(analytic, l.series.order() - expvec_degree(l.shift));
}
} // namespace

LaurentYSeries LaurentYSeries::from_series(const YSeries& s) {
  return LaurentYSeries{s, ExpVec(s.nedges(), 0), s.order()};
}

LaurentYSeries LaurentYSeries::normalized() const {
  ExpVec c = series.monomial_content();
  for (size_t i = 0; i < c.size(); ++i) c[i] = std::min(c[i], shift[i]);
  if (expvec_degree(c) == 0) return *this;
  LaurentYSeries r;
  r.series = series.monomial_divided(c);
  r.shift = shift;
  for (size_t i = 0; i < c.size(); ++i) r.shift[i] -= c[i];
  r.known = known;
  return r;
}

LaurentYSeries LaurentYSeries::operator+(const LaurentYSeries& o) const {
  ExpVec m = shift;
  for (size_t i = 0; i < m.size(); ++i) m[i] = std::max(m[i], o.shift[i]);
  ExpVec da = m, db = m;
  for (size_t i = 0; i < m.size(); ++i) { da[i] -= shift[i]; db[i] -= o.shift[i]; }
  LaurentYSeries r;
  r.series = series.shifted(da) + o.series.shifted(db);
  r.shift = m;
  r.known = std::min(known, o.known);
  r.known = laurent_clamp(r, r.known);
  return r.normalized;
}

LaurentYSeries LaurentYSeries::operator-(const LaurentYSeries& o) const {
  return *this + (-o);
}

LaurentYSeries LaurentYSeries::operator-() const {
  return LaurentYSeries{-series, shift, known};
}

LaurentYSeries LaurentYSeries::operator*(const LaurentYSeries& o) const {
  LaurentYSeries r;
  r.series = series * o.series;
  r.shift = expvec_add(shift, o.shift);
  r.known = std::min(known - expvec_degree(o.shift),
                     o.known - expvec_degree(shift));
  r.known = laurent_clamp(r, r.known);
  return r.normalized();
}

YSeries LaurentYSeries::to_series(int order) const {
  LaurentYSeries n = normalized();
  for (int x : n.shift)
    if (x > 0) throw std::logic_error("Laurent value has a genuine pole in y");
  // Remaining negative shift entries are honest monomial factors.
  if (expvec_degree(n.shift) != 0) {
    ExpVec mono = n.shift;
    for (auto& x : mono) x = -x;
    n.series = n.series.shifted(mono);
    n.shift = ExpVec(n.shift.size(), 0);
  }
  if (n.known < order || n.series.order() < order)
    throw std::logic_error("Laurent value not known to the requested order");
  return n.series.truncated(order);
}

std::pair<ExpVec, YSeries> invert_with_content(const YSeries& s) {
  if (s.is_zero()) throw std::domain_error("inverting zero series");
  ExpVec mu = s.monomial_content();
  YSeries unit = s.monomial_divided(mu);
  if (unit.constant_term().is_zero())
    throw std::logic_error(
        "series is not a monomial times a unit; cannot invert exactly");
  return {mu, unit.inv()};
}

} // namespace tate
