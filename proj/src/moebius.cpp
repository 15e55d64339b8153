#include "tate/moebius.hpp"

#include <algorithm>

namespace tate {

bool PointSeed::operator==(const PointSeed& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Finite: return value == o.value;
    case Kind::Infinity: return true;
    case Kind::Symbol: return sym == o.sym;
    case Kind::CoreFP: return gen == o.gen && attractive == o.attractive;
  }
  return false;
}

Schottky::Schottky(const StableGraph& g, const CoordinateAssignment& coords,
                   const CycleBasis& cb)
    : g_(g), coords_(coords), cb_(cb), ne_(g.n_edges()) {}

Moebius Schottky::phi(Half h, int order) const {
  const CoordValue& xh = coords_.at(g_.half_name(h));
  const CoordValue& xmh = coords_.at(g_.half_name(-h));
  YSeries y = YSeries::var(h.edge, ne_, order);
  auto cst = [&](const RationalFunction& v) {
    return YSeries::constant(v, ne_, order);
  };
  RationalFunction one(Rational(1));
  Moebius m;
  if (!xh.infinite && !xmh.infinite) {
    const RationalFunction& p = xh.value;
    const RationalFunction& q = xmh.value;
    if (p == q) throw std::domain_error("phi: coincident fixed coordinates");
    // [[x_h - x_{-h} y, -x_h x_{-h} (1-y)], [1-y, -x_{-h} + x_h y]]
    m.a = cst(p) - cst(q) * y;
    m.b = cst(-(p * q)) * (cst(one) - y);
    m.c = cst(one) - y;
    m.d = cst(-q) + cst(p) * y;
    RationalFunction diff = p - q;
    m.det.scalar = diff * diff;
  } else if (xh.infinite) {
    // [[1, x_{-h}(y-1)], [0, y]]
    const RationalFunction& q = xmh.value;
    m.a = cst(one);
    m.b = cst(q) * (y - cst(one));
    m.c = YSeries(ne_, order);
    m.d = y;
    m.det.scalar = one;
  } else {
    // x_{-h} infinite: [[y, x_h(1-y)], [0, 1]]
    const RationalFunction& p = xh.value;
    m.a = y;
    m.b = cst(p) * (cst(one) - y);
    m.c = YSeries(ne_, order);
    m.d = cst(one);
    m.det.scalar = one;
  }
  m.det.mono = ExpVec(ne_, 0);
  m.det.mono[h.edge] = 1;
  return m;
}

DetFactor Schottky::word_det(const Word& w) const {
  DetFactor d;
  d.mono = ExpVec(ne_, 0);
  for (auto& h : w) {
    const CoordValue& xh = coords_.at(g_.half_name(h));
    const CoordValue& xmh = coords_.at(g_.half_name(-h));
    if (!xh.infinite && !xmh.infinite) {
      RationalFunction diff = xh.value - xmh.value;
      d.scalar = d.scalar * diff * diff;
    }
    d.mono[h.edge] += 1;
  }
  return d;
}

Moebius Schottky::word_matrix(const Word& w, int order) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mat_cache_.find({w, order});
    if (it != mat_cache_.end()) return it->second;
  }
  Moebius m;
  if (w.empty()) {
    RationalFunction one(Rational(1));
    m.a = YSeries::constant(one, ne_, order);
    m.b = YSeries(ne_, order);
    m.c = YSeries(ne_, order);
    m.d = YSeries::constant(one, ne_, order);
    m.det.mono = ExpVec(ne_, 0);
  } else {
    m = phi(w[0], order);
    for (size_t i = 1; i < w.size(); ++i) {
      Moebius r = phi(w[i], order);
      Moebius p;
      p.a = m.a * r.a + m.b * r.c;
      p.b = m.a * r.b + m.b * r.d;
      p.c = m.c * r.a + m.d * r.c;
      p.d = m.c * r.b + m.d * r.d;
      p.det = m.det.mul(r.det);
      m = p;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  mat_cache_[{w, order}] = m;
  return m;
}

ProjPoint Schottky::apply(const Moebius& m, const ProjPoint& pt) const {
  return ProjPoint{m.a * pt.p + m.b * pt.q, m.c * pt.p + m.d * pt.q};
}

ProjPoint Schottky::seed_point(const PointSeed& s, int order) const {
  RationalFunction one(Rational(1));
  switch (s.kind) {
    case PointSeed::Kind::Finite:
      return ProjPoint{YSeries::constant(s.value, ne_, order),
                       YSeries::constant(one, ne_, order)};
    case PointSeed::Kind::Infinity:
      return ProjPoint{YSeries::constant(one, ne_, order), YSeries(ne_, order)};
    case PointSeed::Kind::Symbol:
      return ProjPoint{
          YSeries::constant(RationalFunction::var(s.sym), ne_, order),
          YSeries::constant(one, ne_, order)};
    case PointSeed::Kind::CoreFP: {
      const FixedPointData& fp = core_fp(s.gen, order);
      return s.attractive ? fp.attractive : fp.repulsive;
    }
  }
  throw std::logic_error("bad seed kind");
}

CoordValue Schottky::seed_const(const PointSeed& s) const {
  switch (s.kind) {
    case PointSeed::Kind::Finite:
      return CoordValue{false, s.value};
    case PointSeed::Kind::Infinity:
      return CoordValue{true, RationalFunction()};
    case PointSeed::Kind::Symbol:
      return CoordValue{false, RationalFunction::var(s.sym)};
    case PointSeed::Kind::CoreFP: {
      const Word& gen = cb_.generators.at(s.gen - 1);
      CyclicDecomposition cd = cyclic_reduce(gen);
      Half h = s.attractive ? cd.core.front() : -cd.core.back();
      return coords_.at(g_.half_name(h));
    }
  }
  throw std::logic_error("bad seed kind");
}

ProjPoint Schottky::point_value(const PointSpec& s, int order) const {
  return apply(word_matrix(s.word, order), seed_point(s.seed, order));
}

YSeries Schottky::finite_value(const PointSpec& s, int order) const {
  ProjPoint pt = point_value(s, order);
  if (pt.q.constant_term().is_zero())
    throw std::domain_error("point value is not finite");
  return pt.p * pt.q.inv();
}

// ---------------------------------------------------------------------------
// Fixed points: Newton iteration on c*x^2 + (d-a)*x - b = 0. The seed picks
// the branch; when the seed coordinate is infinite we solve in the w = 1/z
// chart (conjugate matrix [[d, c], [b, a]]).

namespace {

YSeries newton_root(const YSeries& qa, const YSeries& qb, const YSeries& qc,
                    const RationalFunction& seed, int order) {
  // qa*x^2 + qb*x + qc = 0, x = seed + O(y).
  YSeries x = YSeries::constant(seed, qa.nedges(), order);
  auto f = [&](const YSeries& v) { return qa * v * v + qb * v + qc; };
  auto fp = [&](const YSeries& v) {
    return qa * v * RationalFunction(Rational(2)) + qb;
  };
  YSeries d0 = fp(x);
  if (d0.constant_term().is_zero())
    throw std::domain_error("fixed-point seeds coincide (invalid coordinates)");
  int steps = 1;
  while ((1 << steps) < order + 2) ++steps;
  for (int k = 0; k <= steps; ++k) x = x - f(x) * fp(x).inv();
  if (!f(x).is_zero())
    throw std::logic_error("Newton iteration did not converge");
  return x;
}

} // namespace

FixedPointData Schottky::solve_core_fixed_points(const Word& core,
                                                 int order) const {
  if (core.empty()) throw std::domain_error("fixed points of the empty word");
  Moebius m = word_matrix(core, order);
  RationalFunction one(Rational(1));
  FixedPointData out;
  out.core = core;

  auto solve = [&](Half seed_half, bool seed_is_terminal) {
    // seed coordinate: x of the half-edge (attractive: first letter;
    // repulsive: inverse of the last letter).
    const CoordValue& cv = coords_.at(g_.half_name(seed_half));
    (void)seed_is_terminal;
    if (!cv.infinite) {
      YSeries qb = m.d - m.a;
      YSeries root = newton_root(m.c, qb, -m.b, cv.value, order);
      return ProjPoint{root, YSeries::constant(one, ne_, order)};
    }
    // w-chart: b*w^2 + (a-d)*w - c = 0 with seed w = 0.
    YSeries qb = m.a - m.d;
    YSeries root = newton_root(m.b, qb, -m.c, RationalFunction(), order);
    return ProjPoint{YSeries::constant(one, ne_, order), root};
  };

  out.attractive = solve(core.front(), true);
  out.repulsive = solve(-core.back(), false);

  // Eigenvalue of the fixed vector (p, q): (c p + d q)/q when q is a unit,
  // otherwise (a p + b q)/p. multiplier = lambda_repulsive / lambda_attract.
  auto lambda = [&](const ProjPoint& pt) {
    YSeries num = m.c * pt.p + m.d * pt.q;
    if (!pt.q.constant_term().is_zero()) return num * pt.q.inv();
    YSeries alt = m.a * pt.p + m.b * pt.q;
    return alt * pt.p.inv();
  };
  YSeries la = lambda(out.attractive);
  YSeries lr = lambda(out.repulsive);
  out.multiplier = lr * la.inv();
  return out;
}

const FixedPointData& Schottky::core_fp(int i, int order) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = fp_cache_.find({i, order});
    if (it != fp_cache_.end()) return it->second;
  }
  const Word& gen = cb_.generators.at(i - 1);
  CyclicDecomposition cd = cyclic_reduce(gen);
  FixedPointData fp = solve_core_fixed_points(cd.core, order);
  fp.conjugator = cd.conjugator;
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, ok] = fp_cache_.try_emplace({i, order}, std::move(fp));
  (void)ok;
  return it->second;
}

FixedPointData Schottky::fixed_points(const Word& w, int order) const {
  if (w.empty()) throw std::domain_error("fixed points of the empty word");
  CyclicDecomposition cd = cyclic_reduce(w);
  FixedPointData fp = solve_core_fixed_points(cd.core, order);
  fp.conjugator = cd.conjugator;
  if (!cd.conjugator.empty()) {
    Moebius u = word_matrix(cd.conjugator, order);
    fp.attractive = apply(u, fp.attractive);
    fp.repulsive = apply(u, fp.repulsive);
  }
  return fp;
}

FixedPointData Schottky::generator_fp(int i, int order) const {
  const FixedPointData& core = core_fp(i, order);
  FixedPointData fp = core;
  if (!fp.conjugator.empty()) {
    Moebius u = word_matrix(fp.conjugator, order);
    fp.attractive = apply(u, fp.attractive);
    fp.repulsive = apply(u, fp.repulsive);
  }
  return fp;
}

// ---------------------------------------------------------------------------
// Nondegenerate evaluation words.

Word Schottky::fixed_ending_word(Word w, int i, bool attractive) const {
  const Word& gen = cb_.generators.at(i - 1);
  CyclicDecomposition cd = cyclic_reduce(gen);
  CoordValue v0 = seed_const(PointSeed::core_fp(i, attractive));
  Word step = attractive ? cd.core : word_inverse(cd.core);
  int cap = (int)w.size() + 2 * (int)cd.core.size() + 8;
  for (int k = 0; k < cap; ++k) {
    if (w.empty()) return w;
    CoordValue back = coords_.at(g_.half_name(-w.back()));
    if (!(back == v0)) return w;
    w = word_concat(w, step);
  }
  throw std::logic_error("could not normalize the evaluation word ending");
}

PointSpec Schottky::fp_value_spec(const Word& gamma, int i,
                                  bool attractive) const {
  CyclicDecomposition cd = cyclic_reduce(cb_.generators.at(i - 1));
  Word w = word_concat(gamma, cd.conjugator);
  w = fixed_ending_word(w, i, attractive);
  return PointSpec{w, PointSeed::core_fp(i, attractive)};
}

// ---------------------------------------------------------------------------
// Peeled cross products.

Schottky::PeeledCross Schottky::peeled_cross(PointSpec A, PointSpec B,
                                             int order) const {
  DetFactor common;
  common.mono = ExpVec(ne_, 0);
  // Stripped prefixes, re-attached to the returned specs at the end.
  Word prefix;
  auto core_word = [&](const PointSeed& s) {
    CyclicDecomposition cd = cyclic_reduce(cb_.generators.at(s.gen - 1));
    return s.attractive ? cd.core : word_inverse(cd.core);
  };
  int cap = (int)(A.word.size() + B.word.size()) + 64;
  for (int iter = 0; iter < cap; ++iter) {
    size_t k = 0;
    while (k < A.word.size() && k < B.word.size() && A.word[k] == B.word[k]) ++k;
    if (k > 0) {
      Word pre(A.word.begin(), A.word.begin() + k);
      common = common.mul(word_det(pre));
      prefix.insert(prefix.end(), pre.begin(), pre.end());
      A.word.erase(A.word.begin(), A.word.begin() + k);
      B.word.erase(B.word.begin(), B.word.begin() + k);
    }
    ProjPoint pa = point_value(A, order);
    ProjPoint pb = point_value(B, order);
    YSeries e = pa.p * pb.q - pa.q * pb.p;
    if (!e.constant_term().is_zero()) {
      PointSpec af{A.word, A.seed}, bf{B.word, B.seed};
      af.word.insert(af.word.begin(), prefix.begin(), prefix.end());
      bf.word.insert(bf.word.begin(), prefix.begin(), prefix.end());
      return PeeledCross{e, common, af, bf};
    }
    // Constant collision: unfold a core fixed point so the peel can proceed.
    bool progressed = false;
    if (A.seed.kind == PointSeed::Kind::CoreFP) {
      A.word = word_concat(A.word, core_word(A.seed));
      progressed = true;
    }
    if (!progressed && B.seed.kind == PointSeed::Kind::CoreFP) {
      B.word = word_concat(B.word, core_word(B.seed));
      progressed = true;
    }
    if (!progressed)
      throw std::logic_error("cross product degenerates at order 0");
  }
  throw std::logic_error("peeled_cross did not terminate");
}

bool Schottky::points_equal(const PointSpec& A, const PointSpec& B,
                            int order) const {
  ProjPoint pa = point_value(A, order);
  ProjPoint pb = point_value(B, order);
  YSeries e = pa.p * pb.q - pa.q * pb.p;
  return e.is_zero();
}

} // namespace tate
