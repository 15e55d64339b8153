#pragma once

#include "tate/ratfunc.hpp"

#include <map>
#include <vector>

namespace tate {

// Partial-fraction decomposition of f with respect to the variable `var`:
//   f = poly(var) + sum over (pole index, multiplicity m) of c/(var - a)^m,
// where the declared poles a are rational functions free of `var`. Requires
// the var-denominator of f to split into linear factors over the declared
// pole list; reassembly reproduces f exactly.
struct PartialFractions {
  // poly[k] is the coefficient of var^k.
  std::vector<RationalFunction> poly;
  // (pole index, multiplicity) -> coefficient.
  std::map<std::pair<int, int>, RationalFunction> parts;
};

PartialFractions partial_fractions_z(const RationalFunction& f,
                                     const std::vector<RationalFunction>& poles,
                                     const std::string& var = "z");

// Reassemble a decomposition (testing aid).
RationalFunction pf_reassemble(const PartialFractions& pf,
                               const std::vector<RationalFunction>& poles,
                               const std::string& var = "z");

// Polynomials in `var` with coefficients rational in the other symbols.
using ZPoly = std::vector<RationalFunction>;

ZPoly zpoly_from(const MultiPoly& p, const std::string& var);
RationalFunction zpoly_eval(const ZPoly& p, const RationalFunction& at);
int zpoly_deg(const ZPoly& p);

} // namespace tate
