#include "tate/multipoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tate {

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (auto& [v, e] : m) d += e;
  return d;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly::MultiPoly(const Rational& c) {
  if (!tate::is_zero(c)) terms_[Monomial{}] = c;
}

MultiPoly MultiPoly::var(const std::string& name) {
  MultiPoly p;
  p.terms_[Monomial{{name, 1}}] = Rational(1);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MultiPoly::constant() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::as_constant() const {
  if (!is_constant()) throw std::domain_error("polynomial is not constant: " + str());
  return constant();
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (tate::is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (tate::is_zero(it->second)) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r;
  for (auto& [ma, ca] : terms_) {
    for (auto& [mb, cb] : o.terms_) {
      Monomial m = ma;
      for (auto& [v, e] : mb) {
        int& x = m[v];
        x += e;
        if (x == 0) m.erase(v);
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r;
  if (tate::is_zero(c)) return r;
  for (auto& [m, cc] : terms_) r.terms_[m] = cc * c;
  return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

bool MultiPoly::operator<(const MultiPoly& o) const {
  return terms_ < o.terms_;
}

const Monomial& MultiPoly::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.rbegin()->second;
}

int MultiPoly::degree_in(const std::string& v) const {
  int d = 0;
  for (auto& [m, c] : terms_) {
    auto it = m.find(v);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

MultiPoly MultiPoly::coeff_in(const std::string& v, int k) const {
  MultiPoly r;
  for (auto& [m, c] : terms_) {
    auto it = m.find(v);
    int e = it == m.end() ? 0 : it->second;
    if (e != k) continue;
    Monomial rest = m;
    rest.erase(v);
    r.add_term(rest, c);
  }
  return r;
}

bool MultiPoly::depends_on(const std::string& v) const {
  for (auto& [m, c] : terms_)
    if (m.count(v)) return true;
  return false;
}

std::vector<std::string> MultiPoly::variables() const {
  std::set<std::string> s;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m) s.insert(v);
  return {s.begin(), s.end()};
}

MultiPoly MultiPoly::subst(const std::string& v, const MultiPoly& value) const {
  // Horner in v.
  int d = degree_in(v);
  if (d == 0) return *this;
  MultiPoly r = coeff_in(v, d);
  for (int k = d - 1; k >= 0; --k) r = r * value + coeff_in(v, k);
  return r;
}

MultiPoly MultiPoly::derivative(const std::string& v) const {
  MultiPoly r;
  for (auto& [m, c] : terms_) {
    auto it = m.find(v);
    if (it == m.end()) continue;
    int e = it->second;
    Monomial d = m;
    if (e == 1) d.erase(v); else d[v] = e - 1;
    r.add_term(d, c * Rational(e));
  }
  return r;
}

namespace {

bool monomial_divides(const Monomial& a, const Monomial& b) {
  // a | b
  for (auto& [v, e] : a) {
    auto it = b.find(v);
    if (it == b.end() || it->second < e) return false;
  }
  return true;
}

Monomial monomial_quot(const Monomial& b, const Monomial& a) {
  Monomial q = b;
  for (auto& [v, e] : a) {
    int& x = q[v];
    x -= e;
    if (x == 0) q.erase(v);
  }
  return q;
}

} // namespace

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  MultiPoly rem = *this, q;
  const Monomial& lm = d.leading_monomial();
  const Rational& lc = d.leading_coeff();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!monomial_divides(lm, rm)) return std::nullopt;
    Monomial qm = monomial_quot(rm, lm);
    Rational qc = rem.leading_coeff() / lc;
    MultiPoly t;
    t.add_term(qm, qc);
    q = q + t;
    rem = rem - t * d;
  }
  return q;
}

Rational MultiPoly::content_signed() const {
  if (terms_.empty()) return Rational(0);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (sgn(leading_coeff()) < 0) content = -content;
  return content;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending grlex for display.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->second;
    if (first) {
      if (sgn(c) < 0) { os << "-"; c = -c; }
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    bool coeff_one = (c == 1);
    if (it->first.empty()) {
      os << to_string(c);
    } else {
      bool lead = true;
      if (!coeff_one) { os << to_string(c); lead = false; }
      for (auto& [v, e] : it->first) {
        if (!lead) os << "*";
        lead = false;
        os << v;
        if (e != 1) os << "^" << e;
      }
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Gcd via primitive subresultant PRS, recursing on the variable set.

namespace {

// View of p as a univariate polynomial in v with MultiPoly coefficients.
std::vector<MultiPoly> as_univariate(const MultiPoly& p, const std::string& v) {
  int d = p.degree_in(v);
  std::vector<MultiPoly> c(d + 1);
  for (int k = 0; k <= d; ++k) c[k] = p.coeff_in(v, k);
  return c;
}

MultiPoly from_univariate(const std::vector<MultiPoly>& c, const std::string& v) {
  MultiPoly r, vp = MultiPoly::var(v);
  MultiPoly pow(Rational(1));
  for (size_t k = 0; k < c.size(); ++k) {
    r = r + c[k] * pow;
    pow = pow * vp;
  }
  return r;
}

int udeg(const std::vector<MultiPoly>& c) {
  for (int k = (int)c.size() - 1; k >= 0; --k)
    if (!c[k].is_zero()) return k;
  return -1;
}

void utrim(std::vector<MultiPoly>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Pseudo-remainder of a by b (univariate views, deg a >= deg b >= 0).
std::vector<MultiPoly> upseudo_rem(std::vector<MultiPoly> a,
                                   const std::vector<MultiPoly>& b) {
  int db = udeg(b);
  const MultiPoly& lb = b[db];
  int da = udeg(a);
  while (da >= db && da >= 0) {
    // a := lb*a - lead(a)*x^(da-db)*b
    MultiPoly la = a[da];
    for (auto& c : a) c = c * lb;
    for (int k = 0; k <= db; ++k)
      a[k + da - db] = a[k + da - db] - la * b[k];
    utrim(a);
    da = udeg(a);
  }
  return a;
}

MultiPoly content_of(const std::vector<MultiPoly>& c) {
  MultiPoly g;
  for (auto& x : c) {
    if (x.is_zero()) continue;
    g = g.is_zero() ? x : poly_gcd(g, x);
    if (g.is_constant()) break;
  }
  if (g.is_zero()) return g;
  Rational ct = g.content_signed();
  auto q = g.divide_exact(MultiPoly(ct));
  return *q;
}

std::vector<MultiPoly> udivide_coeffs(const std::vector<MultiPoly>& c,
                                      const MultiPoly& d) {
  std::vector<MultiPoly> r(c.size());
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) { r[k] = MultiPoly(); continue; }
    auto q = c[k].divide_exact(d);
    if (!q) throw std::logic_error("content division failed");
    r[k] = *q;
  }
  return r;
}

} // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  auto normalize = [](const MultiPoly& p) {
    if (p.is_zero()) return p;
    Rational c = p.content_signed();
    return *p.divide_exact(MultiPoly(c));
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly(Rational(1));

  // Cheap paths: equal polynomials, or one dividing the other.
  {
    MultiPoly na = normalize(a), nb = normalize(b);
    if (na == nb) return na;
    if (nb.divide_exact(na)) return na;
    if (na.divide_exact(nb)) return nb;
  }

  // Main variable: the last (grlex-largest name) variable present.
  std::string v;
  {
    auto va = a.variables();
    auto vb = b.variables();
    v = std::max(va.back(), vb.back());
  }
  if (!a.depends_on(v) || !b.depends_on(v)) {
    // v occurs in only one of them: gcd divides the content of that one.
    const MultiPoly& with = a.depends_on(v) ? a : b;
    const MultiPoly& without = a.depends_on(v) ? b : a;
    auto u = as_univariate(with, v);
    MultiPoly ct = content_of(u);
    return poly_gcd(ct, without);
  }

  auto ua = as_univariate(a, v);
  auto ub = as_univariate(b, v);
  MultiPoly ca = content_of(ua), cb = content_of(ub);
  ua = udivide_coeffs(ua, ca);
  ub = udivide_coeffs(ub, cb);
  MultiPoly cg = poly_gcd(ca, cb);

  // Primitive Euclidean PRS on the primitive parts.
  std::vector<MultiPoly> r0 = ua, r1 = ub;
  if (udeg(r0) < udeg(r1)) std::swap(r0, r1);
  while (true) {
    std::vector<MultiPoly> rem = upseudo_rem(r0, r1);
    if (udeg(rem) < 0) break;
    MultiPoly c = content_of(rem);
    rem = udivide_coeffs(rem, c);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  MultiPoly g = from_univariate(r1, v) * cg;
  return normalize(g);
}

} // namespace tate
