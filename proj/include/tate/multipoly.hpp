#pragma once

#include "tate/rational.hpp"

#include <map>
#include <string>
#include <vector>
#include <optional>

namespace tate {

// Monomial: symbol name -> positive exponent. Sorted by name (std::map).
using Monomial = std::map<std::string, int>;

int monomial_degree(const Monomial& m);

// Graded lexicographic order: first by total degree, then lexicographically
// on the (name, exponent) sequence. Fixes the canonical term order used for
// serialization and for leading-coefficient normalization.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over Q in named symbols.
// Invariant: no zero coefficients stored.
class MultiPoly {
public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(const Rational& c);
  explicit MultiPoly(long c) : MultiPoly(Rational(c)) {}
  static MultiPoly var(const std::string& name);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (coefficient of the empty monomial).
  Rational constant() const;
  // The unique coefficient if constant, throws otherwise.
  Rational as_constant() const;

  const TermMap& terms() const { return terms_; }
  int total_degree() const;

  void add_term(const Monomial& m, const Rational& c);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rational& c) const;
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  bool operator<(const MultiPoly& o) const;  // arbitrary total order for map keys

  // Leading term in grlex order.
  const Monomial& leading_monomial() const;
  const Rational& leading_coeff() const;

  // Degree in one variable; 0 if absent.
  int degree_in(const std::string& v) const;
  // Coefficient of v^k, a polynomial in the remaining variables.
  MultiPoly coeff_in(const std::string& v, int k) const;
  bool depends_on(const std::string& v) const;
  std::vector<std::string> variables() const;

  // Substitute v := value (a polynomial).
  MultiPoly subst(const std::string& v, const MultiPoly& value) const;
  MultiPoly derivative(const std::string& v) const;

  // Exact division; nullopt if not divisible.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

  // Rational content: c such that (*this)/c has coprime integer coefficients
  // with positive leading coefficient. Zero polynomial: content 0.
  Rational content_signed() const;

  std::string str() const;

private:
  TermMap terms_;
};

MultiPoly operator*(const Rational& c, const MultiPoly& p);

// Gcd of multivariate polynomials over Q, normalized to be integer-primitive
// with positive leading coefficient (1 for coprime inputs).
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

} // namespace tate
