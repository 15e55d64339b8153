#pragma once

#include "tate/ratfunc.hpp"

#include <map>
#include <vector>

namespace tate {

// Exponent vector over the edge set (fixed length = number of edges).
using ExpVec = std::vector<int>;

int expvec_degree(const ExpVec& e);
ExpVec expvec_add(const ExpVec& a, const ExpVec& b);

struct ExpVecLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

// Formal power series in the deformation parameters y_e, truncated by total
// degree, with exact rational-function coefficients. Invariants: stored
// exponents have total degree <= order; no zero coefficients.
class YSeries {
public:
  YSeries() : nedges_(0), order_(0) {}
  YSeries(int nedges, int order) : nedges_(nedges), order_(order) {}
  static YSeries constant(const RationalFunction& c, int nedges, int order);
  static YSeries monomial(const ExpVec& e, const RationalFunction& c, int order);
  // The single variable y_e.
  static YSeries var(int edge, int nedges, int order);

  int nedges() const { return nedges_; }
  int order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }

  const std::map<ExpVec, RationalFunction, ExpVecLess>& terms() const { return terms_; }
  RationalFunction coeff(const ExpVec& e) const;
  RationalFunction constant_term() const;

  void add_term(const ExpVec& e, const RationalFunction& c);

  YSeries operator-() const;
  YSeries operator+(const YSeries& o) const;
  YSeries operator-(const YSeries& o) const;
  YSeries operator*(const YSeries& o) const;
  YSeries operator*(const RationalFunction& c) const;
  YSeries operator+(const RationalFunction& c) const;
  bool operator==(const YSeries& o) const;
  bool operator!=(const YSeries& o) const { return !(*this == o); }

  // Multiplicative inverse; requires a nonzero constant term.
  YSeries inv() const;
  // log(1 + a) for a with zero constant term.
  YSeries log1p() const;
  // exp(a) for a with zero constant term.
  YSeries exp_nilpotent() const;
  YSeries pow(int k) const;  // k >= 0

  YSeries truncated(int new_order) const;
  // Substitute a rational-function value for a scalar symbol in every
  // coefficient (used for z0-checks and coordinate specialization).
  YSeries subst(const std::string& v, const RationalFunction& val) const;
  YSeries coeff_derivative(const std::string& v) const;
  bool depends_on(const std::string& v) const;

  // Multiply by the monomial y^e (drops terms beyond the truncation order).
  YSeries shifted(const ExpVec& e) const;
  // Divide exactly by y^e; throws if some term is not divisible.
  YSeries monomial_divided(const ExpVec& e) const;
  // Componentwise-min exponent over the support (zero vector if empty).
  ExpVec monomial_content() const;

  std::string str() const;
  std::string str_named(const std::vector<std::string>& edge_names) const;

private:
  int nedges_;
  int order_;
  std::map<ExpVec, RationalFunction, ExpVecLess> terms_;
};

YSeries operator*(const RationalFunction& c, const YSeries& s);

// Substitute the series p for z inside the rational function f. The
// denominator of f evaluated at p's constant term must be nonzero.
YSeries compose_z(const RationalFunction& f, const YSeries& p,
                  const std::string& var = "z");

// A series divided by a y-monomial: value = y^(-shift) * series.
// `known` is the total degree through which the value is trusted.
struct LaurentYSeries {
  YSeries series;
  ExpVec shift;
  int known;

  static LaurentYSeries from_series(const YSeries& s);
  LaurentYSeries operator+(const LaurentYSeries& o) const;
  LaurentYSeries operator-(const LaurentYSeries& o) const;
  LaurentYSeries operator*(const LaurentYSeries& o) const;
  LaurentYSeries operator-() const;
  // Reduce the shift as far as the stored terms allow.
  LaurentYSeries normalized() const;
  // Assert the value is an honest power series and return it truncated to
  // `order` (requires known >= order).
  YSeries to_series(int order) const;
};

// Invert s = y^mu * unit: returns (mu, inverse of the unit part).
// Throws if the monomial-content quotient has zero constant term.
std::pair<ExpVec, YSeries> invert_with_content(const YSeries& s);

} // namespace tate
