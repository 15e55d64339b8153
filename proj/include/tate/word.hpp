#pragma once

#include "tate/graph.hpp"

namespace tate {

// Words are edge words in matrix order (see graph.hpp). Letters of the
// corresponding path are read right to left.

// Concatenate and freely reduce (cancel h, -h pairs at the junction).
Word word_concat(const Word& a, const Word& b);
Word word_inverse(const Word& w);
bool word_reduced(const Word& w);
// Consecutive letters compose: initial(h_i) = terminal(h_{i+1}).
bool word_composable(const StableGraph& g, const Word& w);
bool word_closed_at(const StableGraph& g, const Word& w, const std::string& v);

// w = u . core . u^{-1} with core cyclically reduced.
struct CyclicDecomposition {
  Word conjugator;  // u
  Word core;
};
CyclicDecomposition cyclic_reduce(const Word& w);

std::string word_str(const StableGraph& g, const Word& w);

// All reduced closed edge words at the base vertex with length <= maxlen
// (identity included), ordered by (length, letters).
std::vector<Word> enumerate_closed_words(const StableGraph& g,
                                         const CycleBasis& cb, int maxlen);

// Letters +-1, +-2, ..., +-g (generator index, sign); reduced words only.
using GenWord = std::vector<int>;

// All reduced generator words of length <= maxlen; if avoid_tail_of >= 1,
// exclude words ending (rightmost letter) in that generator or its inverse —
// these are the right-coset representatives of <gamma_i>.
std::vector<GenWord> enumerate_gen_words(int g, int maxlen, int avoid_tail_of);

// Expand a generator word into the (reduced) edge word.
Word gen_word_to_edge_word(const CycleBasis& cb, const GenWord& w);

// Rewrite a closed edge word as a generator word by deleting tree letters
// (the projection collapsing the spanning tree), then freely reducing.
GenWord edge_word_to_gen_word(const StableGraph& g, const CycleBasis& cb,
                              const Word& w);

// Spec op: enumerate_words. Modes:
//   closed_at_base — reduced closed edge words at v_b, length <= maxlen;
//   coset_reps(i)  — edge words of the <gamma_i> right-coset representatives
//                    whose reduced edge length is <= maxlen;
//   all            — all reduced composable edge words, any start vertex.
enum class EnumMode { closed_at_base, coset_reps, all };
std::vector<Word> enumerate_words(const StableGraph& g, const CycleBasis& cb,
                                  EnumMode mode, int maxlen,
                                  int generator_index = -1);

} // namespace tate
