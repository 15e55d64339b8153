#pragma once

#include "tate/ratfunc.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tate {

// Oriented edge: index into the sorted edge list, sign +1/-1.
// +e runs from `from` to `to`; the terminal vertex of +e is `to`.
struct Half {
  int edge = -1;
  int sign = 0;  // +1 or -1
  bool operator==(const Half& o) const { return edge == o.edge && sign == o.sign; }
  bool operator!=(const Half& o) const { return !(*this == o); }
  bool operator<(const Half& o) const {
    return edge != o.edge ? edge < o.edge : sign < o.sign;
  }
  Half operator-() const { return Half{edge, -sign}; }
};

struct Edge {
  std::string id;
  std::string from, to;
};

struct Tail {
  std::string id;
  std::string at;
  int number = 0;  // the numbering nu : T -> {1..#T}
};

class StableGraph {
public:
  std::vector<std::string> vertices;  // sorted
  std::vector<Edge> edges;            // sorted by id
  std::vector<Tail> tails;            // sorted by id
  std::string base_vertex;

  int n_edges() const { return (int)edges.size(); }
  int genus() const { return (int)edges.size() - (int)vertices.size() + 1; }

  int edge_index(const std::string& id) const;
  int tail_index(const std::string& id) const;

  // Terminal vertex of an oriented edge (to-vertex of +e).
  const std::string& terminal(Half h) const;
  const std::string& initial(Half h) const { return terminal(-h); }

  std::string half_name(Half h) const;          // "e1+" / "e1-"
  std::optional<Half> parse_half(const std::string& s) const;

  // Branches at a vertex: incident oriented half-edges (by terminal vertex)
  // then tails, each identified by its name, in sorted order.
  struct Branch {
    bool is_tail;
    Half half;   // valid when !is_tail
    int tail;    // valid when is_tail
    std::string name;
  };
  std::vector<Branch> branches_at(const std::string& v) const;
};

// Coordinate value: a finite rational function or the point at infinity.
struct CoordValue {
  bool infinite = false;
  RationalFunction value;  // meaningful when !infinite
  bool operator==(const CoordValue& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

class CoordinateAssignment {
public:
  // Keyed by branch name ("e1+", "e1-", "t1"). Every element of +-E and T
  // has an entry; members of E_infinity are marked infinite.
  std::map<std::string, CoordValue> values;

  const CoordValue& at(const std::string& name) const;
  bool is_infinite(const std::string& name) const { return at(name).infinite; }
  // Finite coordinate value; throws on infinity.
  const RationalFunction& x(const std::string& name) const;
};

// Default symbolic coordinates: x[h] for every h, nothing at infinity.
CoordinateAssignment symbolic_coords(const StableGraph& g);

struct ValidationReport {
  bool ok = true;
  int genus = 0;
  std::vector<std::string> violations;
};

ValidationReport validate_graph(const StableGraph& g,
                                const CoordinateAssignment& coords);

// Standard {0,1,infinity} coordinates for trivalent graphs, deterministic.
CoordinateAssignment assign_standard_coords(const StableGraph& g);

// Edge words are stored in matrix order: w = [h1,...,hl] denotes the
// composite phi_{h1} ... phi_{hl} (rightmost letter acts first), with the
// chaining condition initial(h_i) = terminal(h_{i+1}).
using Word = std::vector<Half>;

struct CycleBasis {
  std::vector<int> tree_edges;            // indices, sorted
  std::vector<int> chords;                // indices, sorted (one generator each)
  std::vector<Word> generators;           // matrix order, closed at base vertex
  // Transport words: matrix-order word whose value maps the chart at v into
  // the chart at the base vertex (the starred tree path).
  std::map<std::string, Word> vertex_transport;
  std::map<std::string, Word> tail_transport;  // by tail id
};

CycleBasis spanning_tree_and_generators(const StableGraph& g);

// Contraction: keep the edges in `keep` (indices into g.edges), shrink the
// rest. Vertices merge to the lexicographically smallest name in their class.
StableGraph contract_graph(const StableGraph& g, const std::set<int>& keep);

// Basis of H^1 of the contracted graph as cocycles on the ambient edge set,
// plus the matrix of the inclusion into H^1(Delta) in the ambient cycle
// basis (entry [i][c] = pairing of cocycle c with ambient generator i).
struct GraphH1 {
  std::vector<std::vector<int>> cocycles;   // each of length #E (ambient)
  std::vector<std::vector<int>> inclusion;  // g x rank
  int rank = 0;
};

GraphH1 graph_h1(const StableGraph& g, const CycleBasis& ambient,
                 const std::set<int>& keep);

// Signed count of occurrences of edge e in a word.
int signed_count(const Word& w, int edge);

// JSON graph file parsing (format documented in the README).
struct ParsedGraph {
  StableGraph graph;
  CoordinateAssignment coords;
};
ParsedGraph parse_graph_json(const std::string& text);
ParsedGraph load_graph_file(const std::string& path);
std::string graph_to_json(const StableGraph& g, const CoordinateAssignment& c);

} // namespace tate
