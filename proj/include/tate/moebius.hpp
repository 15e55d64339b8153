#pragma once

#include "tate/graph.hpp"
#include "tate/word.hpp"
#include "tate/yseries.hpp"

#include <mutex>

namespace tate {

// det(M) recorded exactly as a y-free unit scalar times a y-monomial.
struct DetFactor {
  RationalFunction scalar{Rational(1)};
  ExpVec mono;
  DetFactor mul(const DetFactor& o) const {
    return DetFactor{scalar * o.scalar, expvec_add(mono, o.mono)};
  }
};

// 2x2 matrix over YSeries, considered projectively.
struct Moebius {
  YSeries a, b, c, d;
  DetFactor det;
};

// Homogeneous coordinates of a point: value p/q. (p0, q0) != (0, 0) for all
// points produced by the safe constructors below.
struct ProjPoint {
  YSeries p, q;
};

// A point given generatively (order-independent): the word applied to a seed.
struct PointSeed {
  enum class Kind { Finite, Infinity, Symbol, CoreFP };
  Kind kind = Kind::Finite;
  RationalFunction value;  // Finite
  std::string sym;         // Symbol
  int gen = 0;             // CoreFP: generator index (1-based)
  bool attractive = true;  // CoreFP

  static PointSeed finite(const RationalFunction& v) {
    PointSeed s; s.kind = Kind::Finite; s.value = v; return s;
  }
  static PointSeed infinity() {
    PointSeed s; s.kind = Kind::Infinity; return s;
  }
  static PointSeed symbol(const std::string& n) {
    PointSeed s; s.kind = Kind::Symbol; s.sym = n; return s;
  }
  static PointSeed core_fp(int gen, bool attractive) {
    PointSeed s; s.kind = Kind::CoreFP; s.gen = gen; s.attractive = attractive;
    return s;
  }
  bool operator==(const PointSeed& o) const;
};

struct PointSpec {
  Word word;
  PointSeed seed;
};

struct FixedPointData {
  ProjPoint attractive, repulsive;
  YSeries multiplier;
  Word conjugator, core;
};

// The universal Schottky group attached to a coordinatized stable graph.
class Schottky {
public:
  Schottky(const StableGraph& g, const CoordinateAssignment& coords,
           const CycleBasis& cb);

  const StableGraph& graph() const { return g_; }
  const CoordinateAssignment& coords() const { return coords_; }
  const CycleBasis& basis() const { return cb_; }
  int nedges() const { return ne_; }
  int genus() const { return (int)cb_.generators.size(); }

  // Generator matrix phi_h of section 2.3, with the infinite-coordinate
  // variants obtained as limits of the conjugating matrix.
  Moebius phi(Half h, int order) const;
  Moebius word_matrix(const Word& w, int order) const;
  DetFactor word_det(const Word& w) const;

  ProjPoint apply(const Moebius& m, const ProjPoint& pt) const;
  ProjPoint seed_point(const PointSeed& s, int order) const;
  ProjPoint point_value(const PointSpec& s, int order) const;
  // Constant-term position of a seed / spec value on its chart.
  CoordValue seed_const(const PointSeed& s) const;

  // Fixed points and multiplier of a nonempty closed word (Newton iteration
  // on the fixed-point quadratic of the cyclically reduced core, transported
  // back by the conjugator).
  FixedPointData fixed_points(const Word& w, int order) const;
  FixedPointData generator_fp(int i, int order) const;  // cached, 1-based

  // Point spec for gamma(alpha_{+-i}) with a representative word chosen so
  // that the value pair is nondegenerate (never (0,0) at y = 0).
  PointSpec fp_value_spec(const Word& gamma, int i, bool attractive) const;

  // cross(pair(A'), pair(B')) = det(common prefix) * E with E a series whose
  // constant term is nonzero, where A', B' are the returned specs: they have
  // the same point values as A, B but their words may have been extended by
  // core words (unfolding a fixed point) so the peel can succeed. Pair-level
  // identities must use the returned specs consistently.
  struct PeeledCross {
    YSeries e;
    DetFactor common;
    PointSpec a_final, b_final;
  };
  PeeledCross peeled_cross(PointSpec A, PointSpec B, int order) const;

  // Projective equality of two point values modulo y^(order+1).
  bool points_equal(const PointSpec& A, const PointSpec& B, int order) const;

  // value as p * q^{-1}; requires q to have unit constant term.
  YSeries finite_value(const PointSpec& s, int order) const;

private:
  Word fixed_ending_word(Word w, int i, bool attractive) const;
  // Fixed-point data of the cyclically reduced core of generator i (cached).
  const FixedPointData& core_fp(int i, int order) const;
  FixedPointData solve_core_fixed_points(const Word& core, int order) const;

  StableGraph g_;
  CoordinateAssignment coords_;
  CycleBasis cb_;
  int ne_;

  mutable std::mutex mu_;
  mutable std::map<std::pair<Word, int>, Moebius> mat_cache_;
  mutable std::map<std::pair<int, int>, FixedPointData> fp_cache_;
};

} // namespace tate
