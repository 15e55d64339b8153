#pragma once

#include "tate/moebius.hpp"
#include "tate/partial_fractions.hpp"

namespace tate {

// One summand of a universal differential, kept generatively so pullbacks
// and closed-fiber restrictions stay exact:
//   pole form:  coeff * d sigma(z) / (sigma(z) - P)^k
//   power form: coeff * sigma(z)^kpow * d sigma(z)
struct FormTerm {
  Word sigma;
  bool is_power = false;
  int kpow = 0;
  PointSpec pole;
  int k = 1;
  RationalFunction coeff{Rational(1)};
};

enum class FormKind { first, second, third, combo };

class DifferentialForm {
public:
  FormKind kind = FormKind::combo;
  int order = 0;
  std::vector<FormTerm> terms;

  // Flattened dz-coefficient: YSeries whose coefficients are rational in z.
  const YSeries& flat(const Schottky& s) const;
  YSeries flatten_at(const Schottky& s, int order) const;

  // Finite z-pole locations of the flattened coefficients (constant parts of
  // the pole loci), deduplicated, deterministic order.
  std::vector<RationalFunction> pole_constants(const Schottky& s) const;

  DifferentialForm pullback(const Schottky& s, const Word& w) const;

private:
  mutable bool flat_ok_ = false;
  mutable YSeries flat_;
};

// Thread count used by orbit sums (deterministic merge). Default 1.
void set_thread_count(int n);
int thread_count();

// Universal differential of the first kind attached to generator i (1-based).
DifferentialForm omega_first(const Schottky& s, int i, int order);
// Second kind: tail t at the base vertex, pole order k >= 2.
DifferentialForm omega_second(const Schottky& s, const std::string& tail_id,
                              int k, int order);
// Third kind: simple poles at the two marked points.
DifferentialForm omega_third(const Schottky& s, const std::string& tail1,
                             const std::string& tail2, int order);

// Restriction to the closed-fiber component of vertex v: transport to the
// base chart along the spanning tree, flatten, and set every y_e = 0.
// Returns the dz-coefficient as an exact rational function of z.
RationalFunction restrict_closed_fiber(const Schottky& s,
                                       const DifferentialForm& form,
                                       const std::string& vertex);

// Exact residue of the form at a series point (sum over matching pole loci).
YSeries residue_at_point(const Schottky& s, const DifferentialForm& form,
                         const PointSpec& at, int order);

// Per-y-order sum of finite z-residues of the flattened coefficients.
YSeries residue_sum(const Schottky& s, const DifferentialForm& form);

} // namespace tate
