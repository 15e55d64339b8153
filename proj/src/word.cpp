#include "tate/word.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tate {

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  size_t i = 0;
  while (!r.empty() && i < b.size() && r.back() == -b[i]) {
    r.pop_back();
    ++i;
  }
  r.insert(r.end(), b.begin() + i, b.end());
  return r;
}

Word word_inverse(const Word& w) {
  Word r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

bool word_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1]) return false;
  return true;
}

bool word_composable(const StableGraph& g, const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (g.initial(w[i]) != g.terminal(w[i + 1])) return false;
  return true;
}

bool word_closed_at(const StableGraph& g, const Word& w, const std::string& v) {
  if (w.empty()) return true;
  return g.terminal(w.front()) == v && g.initial(w.back()) == v;
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  CyclicDecomposition d;
  d.core = w;
  while (d.core.size() >= 2 && d.core.front() == -d.core.back()) {
    d.conjugator.push_back(d.core.front());
    d.core.erase(d.core.begin());
    d.core.pop_back();
  }
  return d;
}

std::string word_str(const StableGraph& g, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ".";
    os << g.half_name(w[i]);
  }
  return os.str();
}

std::vector<Word> enumerate_closed_words(const StableGraph& g,
                                         const CycleBasis& cb, int maxlen) {
  (void)cb;
  std::vector<Word> out;
  out.push_back({});
  // DFS over reduced paths in path order starting at the base vertex;
  // a path closed at v_b reversed gives the matrix-order word.
  std::vector<Half> letters;
  for (int e = 0; e < g.n_edges(); ++e)
    for (int s : {+1, -1}) letters.push_back(Half{e, s});

  std::vector<Half> path;
  std::function<void(const std::string&)> dfs = [&](const std::string& at) {
    if ((int)path.size() >= 1 && at == g.base_vertex) {
      Word w(path.rbegin(), path.rend());
      out.push_back(w);
    }
    if ((int)path.size() == maxlen) return;
    for (Half h : letters) {
      if (g.initial(h) != at) continue;
      if (!path.empty() && h == -path.back()) continue;
      path.push_back(h);
      dfs(g.terminal(h));
      path.pop_back();
    }
  };
  dfs(g.base_vertex);
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<GenWord> enumerate_gen_words(int g, int maxlen, int avoid_tail_of) {
  std::vector<GenWord> out;
  out.push_back({});
  std::vector<int> letters;
  for (int i = 1; i <= g; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  GenWord cur;
  std::function<void()> dfs = [&]() {
    if (!cur.empty()) {
      int last = cur.back();
      if (avoid_tail_of < 1 || std::abs(last) != avoid_tail_of)
        out.push_back(cur);
    }
    if ((int)cur.size() == maxlen) return;
    for (int l : letters) {
      if (!cur.empty() && cur.back() == -l) continue;
      cur.push_back(l);
      dfs();
      cur.pop_back();
    }
  };
  dfs();
  std::stable_sort(out.begin(), out.end(), [](const GenWord& a, const GenWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Word gen_word_to_edge_word(const CycleBasis& cb, const GenWord& w) {
  Word r;
  for (int l : w) {
    const Word& gw = cb.generators.at(std::abs(l) - 1);
    r = word_concat(r, l > 0 ? gw : word_inverse(gw));
  }
  return r;
}

GenWord edge_word_to_gen_word(const StableGraph& g, const CycleBasis& cb,
                              const Word& w) {
  std::map<int, int> chord_of;  // edge index -> generator number
  for (size_t i = 0; i < cb.chords.size(); ++i)
    chord_of[cb.chords[i]] = (int)i + 1;
  GenWord r;
  // Path order is the reverse of matrix order; chords crossed positively
  // contribute the generator, negatively its inverse. Reading the matrix
  // word left to right yields the generator word directly: the generator
  // construction uses the same convention.
  for (auto& h : w) {
    auto it = chord_of.find(h.edge);
    if (it == chord_of.end()) continue;
    int l = h.sign > 0 ? it->second : -it->second;
    if (!r.empty() && r.back() == -l) r.pop_back();
    else r.push_back(l);
  }
  return r;
}

std::vector<Word> enumerate_words(const StableGraph& g, const CycleBasis& cb,
                                  EnumMode mode, int maxlen,
                                  int generator_index) {
  if (mode == EnumMode::closed_at_base)
    return enumerate_closed_words(g, cb, maxlen);
  if (mode == EnumMode::all) {
    std::vector<Word> out;
    out.push_back({});
    std::vector<Half> letters;
    for (int e = 0; e < g.n_edges(); ++e)
      for (int s : {+1, -1}) letters.push_back(Half{e, s});
    std::vector<Half> path;
    std::function<void(const std::string&)> dfs = [&](const std::string& at) {
      if (!path.empty()) out.emplace_back(path.rbegin(), path.rend());
      if ((int)path.size() == maxlen) return;
      for (Half h : letters) {
        if (g.initial(h) != at) continue;
        if (!path.empty() && h == -path.back()) continue;
        path.push_back(h);
        dfs(g.terminal(h));
        path.pop_back();
      }
    };
    for (auto& v : g.vertices) dfs(v);
    std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  // coset_reps: generator words not ending in gamma_i^{+-1}, kept when the
  // reduced edge word has length <= maxlen. Generator-word length is bounded
  // by the edge length (each generator letter contributes its chord letter,
  // and chords never cancel between reduced neighbours), so enumerating
  // generator words up to maxlen is exhaustive.
  if (generator_index < 1 || generator_index > (int)cb.generators.size())
    throw std::domain_error("invalid generator index");
  std::vector<Word> out;
  for (auto& gw :
       enumerate_gen_words((int)cb.generators.size(), maxlen, generator_index)) {
    Word w = gen_word_to_edge_word(cb, gw);
    if ((int)w.size() <= maxlen) out.push_back(w);
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace tate
