#include "tate/partial_fractions.hpp"

namespace tate {

ZPoly zpoly_from(const MultiPoly& p, const std::string& var) {
  int d = p.degree_in(var);
  ZPoly c(d + 1);
  for (int k = 0; k <= d; ++k) c[k] = RationalFunction(p.coeff_in(var, k));
  return c;
}

int zpoly_deg(const ZPoly& p) {
  for (int k = (int)p.size() - 1; k >= 0; --k)
    if (!p[k].is_zero()) return k;
  return -1;
}

RationalFunction zpoly_eval(const ZPoly& p, const RationalFunction& at) {
  RationalFunction r;
  for (int k = zpoly_deg(p); k >= 0; --k) r = r * at + p[k];
  return r;
}

namespace {

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = r[i + j] + a[i] * b[j];
  ztrim(r);
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  a.resize(std::max(a.size(), b.size()));
  for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  ztrim(a);
  return a;
}

// Divide a by the monic linear factor (var - r); returns quotient and
// remainder (a constant in var).
std::pair<ZPoly, RationalFunction> zdiv_linear(const ZPoly& a,
                                               const RationalFunction& r) {
  int d = zpoly_deg(a);
  if (d < 0) return {{}, RationalFunction()};
  ZPoly q(std::max(d, 0));
  RationalFunction carry;
  for (int k = d; k >= 1; --k) {
    carry = a[k] + carry * r;
    q[k - 1] = carry;
  }
  RationalFunction rem = a[0] + carry * r;
  ztrim(q);
  return {q, rem};
}

// General polynomial division: a = q*b + r with deg r < deg b.
std::pair<ZPoly, ZPoly> zdivmod(ZPoly a, const ZPoly& b) {
  int db = zpoly_deg(b);
  if (db < 0) throw std::domain_error("division by zero polynomial");
  ZPoly q;
  int da = zpoly_deg(a);
  if (da >= db) q.resize(da - db + 1);
  RationalFunction lb = b[db];
  while ((da = zpoly_deg(a)) >= db) {
    RationalFunction c = a[da] / lb;
    q[da - db] = c;
    for (int k = 0; k <= db; ++k)
      a[da - db + k] = a[da - db + k] - c * b[k];
    ztrim(a);
  }
  return {q, a};
}

} // namespace

PartialFractions partial_fractions_z(const RationalFunction& f,
                                     const std::vector<RationalFunction>& poles,
                                     const std::string& var) {
  for (auto& a : poles)
    if (a.depends_on(var))
      throw std::domain_error("pole value depends on " + var);

  ZPoly num = zpoly_from(f.num(), var);
  // den may mix var and other symbols; coefficients become rational functions.
  ZPoly den;
  {
    int d = f.den().degree_in(var);
    den.resize(d + 1);
    for (int k = 0; k <= d; ++k)
      den[k] = RationalFunction(f.den().coeff_in(var, k));
  }

  PartialFractions out;
  if (zpoly_deg(den) == 0) {
    RationalFunction c = den[0].inv();
    for (auto& x : num) out.poly.push_back(x * c);
    return out;
  }

  // Polynomial part.
  auto [q, r] = zdivmod(num, den);
  out.poly = q;

  // Factor den into linear factors over the declared pole list.
  std::vector<int> mult(poles.size(), 0);
  ZPoly rest = den;
  for (size_t i = 0; i < poles.size(); ++i) {
    // Skip duplicates of an earlier pole value.
    bool dup = false;
    for (size_t j = 0; j < i; ++j)
      if (poles[j] == poles[i]) { dup = true; break; }
    if (dup) continue;
    while (zpoly_deg(rest) >= 1) {
      auto [qq, rem] = zdiv_linear(rest, poles[i]);
      if (!rem.is_zero()) break;
      rest = qq;
      mult[i] += 1;
    }
  }
  if (zpoly_deg(rest) != 0)
    throw std::domain_error(
        "denominator does not split into declared linear factors in " + var);
  RationalFunction lc = rest[0];

  // Successive peeling: for each pole, extract the top coefficient, subtract,
  // and divide one linear factor out.
  ZPoly R = r;
  ZPoly D = den;
  std::vector<int> mleft = mult;
  for (size_t i = 0; i < poles.size(); ++i) {
    while (mleft[i] > 0) {
      int m = mleft[i];
      // Dhat = D / (var - a_i)^m at a_i: evaluate by dividing out factors.
      ZPoly dhat = D;
      for (int k = 0; k < m; ++k) {
        auto [qq, rem] = zdiv_linear(dhat, poles[i]);
        if (!rem.is_zero()) throw std::logic_error("factorization drifted");
        dhat = qq;
      }
      RationalFunction dval = zpoly_eval(dhat, poles[i]);
      RationalFunction c = zpoly_eval(R, poles[i]) / dval;
      if (!c.is_zero())
        out.parts[{(int)i, m}] = c;
      // R' = (R - c*Dhat) / (var - a_i), D' = D / (var - a_i).
      ZPoly cd = dhat;
      for (auto& x : cd) x = x * c;
      ZPoly rnew = zsub(R, cd);
      auto [qr, remr] = zdiv_linear(rnew, poles[i]);
      if (!remr.is_zero()) throw std::logic_error("peeling remainder nonzero");
      R = qr;
      auto [qd, remd] = zdiv_linear(D, poles[i]);
      if (!remd.is_zero()) throw std::logic_error("peeling denominator drifted");
      D = qd;
      mleft[i] -= 1;
    }
  }
  if (zpoly_deg(R) >= 0) {
    // Remaining part over the constant lc must be zero.
    bool allz = true;
    for (auto& x : R) allz = allz && x.is_zero();
    if (!allz) throw std::logic_error("partial fractions left a remainder");
  }
  (void)lc;
  return out;
}

RationalFunction pf_reassemble(const PartialFractions& pf,
                               const std::vector<RationalFunction>& poles,
                               const std::string& var) {
  RationalFunction z = RationalFunction::var(var);
  RationalFunction acc;
  RationalFunction zp(Rational(1));
  for (auto& c : pf.poly) {
    acc = acc + c * zp;
    zp = zp * z;
  }
  for (auto& [key, c] : pf.parts) {
    auto [i, m] = key;
    RationalFunction d = z - poles[i];
    RationalFunction dp(Rational(1));
    for (int k = 0; k < m; ++k) dp = dp * d;
    acc = acc + c / dp;
  }
  return acc;
}

} // namespace tate
