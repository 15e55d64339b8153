#include "tate/differentials.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace tate {

namespace {

int g_threads = 1;

LaurentYSeries linv(const YSeries& s) {
  auto [mu, u] = invert_with_content(s);
  return LaurentYSeries{u, mu, s.order() - expvec_degree(mu)};
}

LaurentYSeries lser(const YSeries& s) { return LaurentYSeries::from_series(s); }

// value = scalar * y^mono as a Laurent piece. Stored with a negative shift
// so multiplying by the monomial raises the trusted order instead of
// lowering it.
LaurentYSeries ldet(const DetFactor& d, int nedges, int order) {
  YSeries c = YSeries::constant(d.scalar, nedges, order);
  ExpVec neg = d.mono;
  for (auto& x : neg) x = -x;
  return LaurentYSeries{c, neg, order + expvec_degree(d.mono)};
}

// Deterministic parallel map over [0, n): results combined in index order.
template <typename F>
YSeries parallel_sum(int n, int nedges, int order, F f) {
  YSeries acc(nedges, order);
  int T = std::max(1, g_threads);
  if (T == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) acc = acc + f(i);
    return acc;
  }
  std::vector<YSeries> results(n, YSeries(nedges, order));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        results[i] = f(i);
      }
    });
  for (auto& th : pool) th.join();
  for (int i = 0; i < n; ++i) acc = acc + results[i];
  return acc;
}

} // namespace

void set_thread_count(int n) { g_threads = std::max(1, n); }
int thread_count() { return g_threads; }

// ---------------------------------------------------------------------------
// Flattening.

namespace {

YSeries flatten_term(const Schottky& s, const FormTerm& t, int order) {
  int ne = s.nedges();
  PointSpec sigma_z{t.sigma, PointSeed::symbol("z")};
  ProjPoint sz = s.point_value(sigma_z, order);
  DetFactor dsig = s.word_det(t.sigma);

  if (t.is_power) {
    // coeff * n^kpow * det(sigma) / m^(kpow+2)
    LaurentYSeries r = ldet(dsig, ne, order);
    r = r * lser(sz.p.pow(t.kpow));
    LaurentYSeries mi = linv(sz.q);
    for (int i = 0; i < t.kpow + 2; ++i) r = r * mi;
    return (r * lser(YSeries::constant(t.coeff, ne, order))).to_series(order);
  }

  auto pc = s.peeled_cross(sigma_z, t.pole, order);
  if (t.k == 1) {
    // coeff * det(sigma)/det(common) * q_P / (m * E)
    DetFactor rest;
    rest.scalar = dsig.scalar / pc.common.scalar;
    rest.mono = dsig.mono;
    for (size_t i = 0; i < rest.mono.size(); ++i) {
      rest.mono[i] -= pc.common.mono[i];
      if (rest.mono[i] < 0)
        throw std::logic_error("common det does not divide sigma det");
    }
    YSeries qp = s.point_value(pc.b_final, order).q;
    LaurentYSeries r = ldet(rest, ne, order);
    r = r * lser(qp) * linv(sz.q) * linv(pc.e);
    return (r * lser(YSeries::constant(t.coeff, ne, order))).to_series(order);
  }

  // k >= 2 requires an unpeeled pole (holds for the second-kind forms).
  if (expvec_degree(pc.common.mono) != 0)
    throw std::logic_error("higher-order pole with a shared prefix");
  YSeries qp = s.point_value(pc.b_final, order).q;
  LaurentYSeries r = ldet(dsig, ne, order);
  for (int i = 0; i < t.k - 2; ++i) r = r * lser(sz.q);
  LaurentYSeries ei = linv(pc.e);
  for (int i = 0; i < t.k; ++i) r = r * (ei * lser(qp));
  return (r * lser(YSeries::constant(t.coeff, ne, order))).to_series(order);
}

} // namespace

YSeries DifferentialForm::flatten_at(const Schottky& s, int ord) const {
  return parallel_sum((int)terms.size(), s.nedges(), ord, [&](int i) {
    return flatten_term(s, terms[i], ord);
  });
}

const YSeries& DifferentialForm::flat(const Schottky& s) const {
  if (!flat_ok_) {
    flat_ = flatten_at(s, order);
    flat_ok_ = true;
  }
  return flat_;
}

std::vector<RationalFunction> DifferentialForm::pole_constants(
    const Schottky& s) const {
  std::vector<RationalFunction> out;
  auto add = [&](const RationalFunction& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (auto& t : terms) {
    if (!t.is_power) {
      ProjPoint p = s.point_value(t.pole, 0);
      RationalFunction q0 = p.q.constant_term();
      if (!q0.is_zero()) add(p.p.constant_term() / q0);
    }
    // Pole of sigma itself (where m = c z + d vanishes at order 0).
    PointSpec sigma_z{t.sigma, PointSeed::symbol("z")};
    ProjPoint sz = s.point_value(sigma_z, 0);
    RationalFunction m0 = sz.q.constant_term();
    // m0 is linear in z: c0*z + d0; finite root iff c0 != 0.
    MultiPoly zc = m0.num().coeff_in("z", 1);
    MultiPoly cc = m0.num().coeff_in("z", 0);
    if (!zc.is_zero()) {
      RationalFunction root =
          RationalFunction(cc) / RationalFunction(zc) * RationalFunction(Rational(-1));
      add(root);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DifferentialForm DifferentialForm::pullback(const Schottky& s,
                                            const Word& w) const {
  DifferentialForm r;
  r.kind = kind;
  r.order = order;
  for (auto& t : terms) {
    FormTerm n = t;
    n.sigma = word_concat(t.sigma, w);
    r.terms.push_back(n);
  }
  (void)s;
  return r;
}

// ---------------------------------------------------------------------------
// The three universal differentials.

namespace {

// Enumerate group elements gamma = C . u where C is a prefix of `anchor` and
// u is a reduced tail of length <= maxtail, gamma reduced and closed at the
// base vertex, C maximal (u does not start with the next anchor letter).
std::vector<Word> enumerate_anchored(const StableGraph& g, const Word& anchor,
                                     int maxtail) {
  std::vector<Word> out;
  std::vector<Half> letters;
  for (int e = 0; e < g.n_edges(); ++e)
    for (int s : {+1, -1}) letters.push_back(Half{e, s});

  for (size_t plen = 0; plen <= anchor.size(); ++plen) {
    Word C(anchor.begin(), anchor.begin() + plen);
    // Extend to the right with u (matrix order): next letter h must satisfy
    // terminal(h) = initial(last letter so far), h != -last, and (maximality)
    // h != anchor[plen] when C is a proper prefix.
    Word cur = C;
    std::function<void(int)> dfs = [&](int depth) {
      bool closed = cur.empty() ||
                    (g.terminal(cur.front()) == g.base_vertex &&
                     g.initial(cur.back()) == g.base_vertex);
      if (closed) out.push_back(cur);
      if (depth == maxtail) return;
      std::string at =
          cur.empty() ? g.base_vertex : g.initial(cur.back());
      for (Half h : letters) {
        if (g.terminal(h) != at) continue;
        if (!cur.empty() && h == -cur.back()) continue;
        if (cur.size() == plen && plen < anchor.size() && h == anchor[plen])
          continue;
        cur.push_back(h);
        dfs(depth + 1);
        cur.pop_back();
      }
    };
    dfs(0);
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

DifferentialForm omega_first(const Schottky& s, int i, int order) {
  if (i < 1 || i > s.genus()) throw std::domain_error("invalid generator index");
  // Base-vertex conditions.
  for (auto& v : {s.graph().base_vertex}) {
    for (auto& br : s.graph().branches_at(v))
      if (!br.is_tail && s.coords().is_infinite(br.name))
        throw std::domain_error(
            "an edge half at infinity has terminal vertex v_b");
  }
  CyclicDecomposition cd = cyclic_reduce(s.basis().generators.at(i - 1));
  // Coset representatives gamma<gen_i> with ord(term) = len(reduce(gamma u))
  // <= order; enumerate generator words up to order + len(u) and filter.
  int gl = (int)cd.conjugator.size();
  auto reps = enumerate_gen_words(s.genus(), order + gl, i);
  DifferentialForm form;
  form.kind = FormKind::first;
  form.order = order;
  for (auto& gw : reps) {
    Word gamma = gen_word_to_edge_word(s.basis(), gw);
    Word wu = word_concat(gamma, cd.conjugator);
    if ((int)wu.size() > order) continue;
    PointSpec att = s.fp_value_spec(gamma, i, true);
    PointSpec rep = s.fp_value_spec(gamma, i, false);
    FormTerm t1;
    t1.pole = att;
    t1.coeff = RationalFunction(Rational(1));
    FormTerm t2;
    t2.pole = rep;
    t2.coeff = RationalFunction(Rational(-1));
    form.terms.push_back(t1);
    form.terms.push_back(t2);
  }
  return form;
}

DifferentialForm omega_second(const Schottky& s, const std::string& tail_id,
                              int k, int order) {
  if (k < 2) throw std::domain_error("second-kind differential needs k >= 2");
  const StableGraph& g = s.graph();
  int ti = g.tail_index(tail_id);
  if (g.tails[ti].at != g.base_vertex)
    throw std::domain_error("tail is not at the base vertex");
  bool inf = s.coords().is_infinite(tail_id);
  DifferentialForm form;
  form.kind = FormKind::second;
  form.order = order;
  auto words = enumerate_closed_words(g, s.basis(), order);
  for (auto& w : words) {
    FormTerm t;
    t.sigma = w;
    if (inf) {
      t.is_power = true;
      t.kpow = k - 2;
    } else {
      t.pole = PointSpec{{}, PointSeed::finite(s.coords().x(tail_id))};
      t.k = k;
    }
    form.terms.push_back(t);
  }
  return form;
}

DifferentialForm omega_third(const Schottky& s, const std::string& tail1,
                             const std::string& tail2, int order) {
  if (tail1 == tail2) throw std::domain_error("third kind needs distinct tails");
  const StableGraph& g = s.graph();
  DifferentialForm form;
  form.kind = FormKind::third;
  form.order = order;
  for (auto [tid, sign] : {std::pair{tail1, +1}, std::pair{tail2, -1}}) {
    int ti = g.tail_index(tid);
    (void)ti;
    const Word& transport = s.basis().tail_transport.at(tid);
    PointSeed seed = s.coords().is_infinite(tid)
                         ? PointSeed::infinity()
                         : PointSeed::finite(s.coords().x(tid));
    PointSpec pole{transport, seed};
    for (auto& w : enumerate_anchored(g, transport, order)) {
      FormTerm t;
      t.sigma = w;
      t.pole = pole;
      t.k = 1;
      t.coeff = RationalFunction(Rational(sign));
      form.terms.push_back(t);
    }
  }
  return form;
}

RationalFunction restrict_closed_fiber(const Schottky& s,
                                       const DifferentialForm& form,
                                       const std::string& vertex) {
  const Word& transport = s.basis().vertex_transport.at(vertex);
  DifferentialForm moved = form.pullback(s, transport);
  YSeries flat0 = moved.flatten_at(s, 0);
  return flat0.constant_term();
}

YSeries residue_at_point(const Schottky& s, const DifferentialForm& form,
                         const PointSpec& at, int order) {
  YSeries acc(s.nedges(), order);
  for (auto& t : form.terms) {
    if (t.is_power) continue;  // exact differential, no residues
    // Simple pole of d sigma/(sigma - P) at z = sigma^{-1}(P): residue coeff.
    // The accompanying pole at sigma^{-1}(infinity) has residue -coeff.
    if (t.k == 1) {
      PointSpec locus{word_concat(word_inverse(t.sigma), t.pole.word),
                      t.pole.seed};
      if (s.points_equal(locus, at, order))
        acc = acc + YSeries::constant(t.coeff, s.nedges(), order);
      PointSpec minf{word_inverse(t.sigma), PointSeed::infinity()};
      if (s.points_equal(minf, at, order))
        acc = acc - YSeries::constant(t.coeff, s.nedges(), order);
    }
    // k >= 2: d of a rational function, zero residue everywhere.
  }
  return acc;
}

YSeries residue_sum(const Schottky& s, const DifferentialForm& form) {
  YSeries flat = form.flat(s);
  auto poles = form.pole_constants(s);
  YSeries acc(s.nedges(), form.order);
  for (auto& [e, c] : flat.terms()) {
    PartialFractions pf = partial_fractions_z(c, poles);
    RationalFunction r;
    for (auto& [key, cc] : pf.parts)
      if (key.second == 1) r = r + cc;
    acc.add_term(e, r);
  }
  return acc;
}

} // namespace tate
