#include "tate/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace tate {

int StableGraph::edge_index(const std::string& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return (int)i;
  throw std::domain_error("unknown edge id: " + id);
}

int StableGraph::tail_index(const std::string& id) const {
  for (size_t i = 0; i < tails.size(); ++i)
    if (tails[i].id == id) return (int)i;
  throw std::domain_error("unknown tail id: " + id);
}

const std::string& StableGraph::terminal(Half h) const {
  const Edge& e = edges.at(h.edge);
  return h.sign > 0 ? e.to : e.from;
}

std::string StableGraph::half_name(Half h) const {
  return edges.at(h.edge).id + (h.sign > 0 ? "+" : "-");
}

std::optional<Half> StableGraph::parse_half(const std::string& s) const {
  if (s.size() < 2) return std::nullopt;
  char c = s.back();
  if (c != '+' && c != '-') return std::nullopt;
  std::string id = s.substr(0, s.size() - 1);
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return Half{(int)i, c == '+' ? +1 : -1};
  return std::nullopt;
}

std::vector<StableGraph::Branch> StableGraph::branches_at(const std::string& v) const {
  std::vector<Branch> out;
  for (size_t i = 0; i < edges.size(); ++i) {
    for (int s : {+1, -1}) {
      Half h{(int)i, s};
      if (terminal(h) == v)
        out.push_back(Branch{false, h, -1, half_name(h)});
    }
  }
  for (size_t i = 0; i < tails.size(); ++i)
    if (tails[i].at == v)
      out.push_back(Branch{true, Half{}, (int)i, tails[i].id});
  std::sort(out.begin(), out.end(),
            [](const Branch& a, const Branch& b) { return a.name < b.name; });
  return out;
}

const CoordValue& CoordinateAssignment::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end())
    throw std::domain_error("no coordinate assigned to " + name);
  return it->second;
}

const RationalFunction& CoordinateAssignment::x(const std::string& name) const {
  const CoordValue& v = at(name);
  if (v.infinite)
    throw std::domain_error("coordinate of " + name + " is infinite");
  return v.value;
}

CoordinateAssignment symbolic_coords(const StableGraph& g) {
  CoordinateAssignment c;
  for (size_t i = 0; i < g.edges.size(); ++i)
    for (int s : {+1, -1}) {
      Half h{(int)i, s};
      std::string n = g.half_name(h);
      c.values[n] = CoordValue{false, RationalFunction::var("x[" + n + "]")};
    }
  for (auto& t : g.tails)
    c.values[t.id] = CoordValue{false, RationalFunction::var("x[" + t.id + "]")};
  return c;
}

namespace {

bool graph_connected(const StableGraph& g) {
  if (g.vertices.empty()) return false;
  std::set<std::string> seen;
  std::deque<std::string> q{g.vertices[0]};
  seen.insert(g.vertices[0]);
  while (!q.empty()) {
    std::string v = q.front();
    q.pop_front();
    for (auto& e : g.edges) {
      for (auto& [a, b] : {std::pair{e.from, e.to}, std::pair{e.to, e.from}}) {
        if (a == v && !seen.count(b)) {
          seen.insert(b);
          q.push_back(b);
        }
      }
    }
  }
  return seen.size() == g.vertices.size();
}

} // namespace

ValidationReport validate_graph(const StableGraph& g,
                                const CoordinateAssignment& coords) {
  ValidationReport rep;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.violations.push_back(m);
  };

  std::set<std::string> vset(g.vertices.begin(), g.vertices.end());
  if (vset.size() != g.vertices.size()) fail("duplicate vertex names");
  for (auto& e : g.edges) {
    if (!vset.count(e.from)) fail("edge " + e.id + ": unknown vertex " + e.from);
    if (!vset.count(e.to)) fail("edge " + e.id + ": unknown vertex " + e.to);
  }
  for (auto& t : g.tails)
    if (!vset.count(t.at)) fail("tail " + t.id + ": unknown vertex " + t.at);
  if (!vset.count(g.base_vertex)) fail("unknown base vertex " + g.base_vertex);
  if (!rep.ok) return rep;

  if (!graph_connected(g)) fail("graph is not connected");

  // Stability: every vertex has at least 3 branches.
  for (auto& v : g.vertices) {
    int b = (int)g.branches_at(v).size();
    if (b < 3)
      fail("vertex " + v + " has only " + std::to_string(b) + " branches");
  }

  // Tail numbering is a bijection onto 1..#T.
  {
    std::set<int> nums;
    for (auto& t : g.tails) nums.insert(t.number);
    if (!g.tails.empty() &&
        (nums.size() != g.tails.size() || *nums.begin() != 1 ||
         *nums.rbegin() != (int)g.tails.size()))
      fail("tail numbering is not a bijection onto 1..#T");
  }

  rep.genus = g.genus();

  // Coordinate conditions.
  // Build the branch list with coordinate values.
  try {
    // E_infinity: no pair {h, -h}; distinct members have distinct terminal
    // vertices; no edge-half at infinity with terminal vertex v_b.
    std::vector<std::string> inf_halves;
    std::set<std::string> inf_vertices;
    for (size_t i = 0; i < g.edges.size(); ++i) {
      Half hp{(int)i, +1}, hm{(int)i, -1};
      bool ip = coords.is_infinite(g.half_name(hp));
      bool im = coords.is_infinite(g.half_name(hm));
      if (ip && im)
        fail("both halves of edge " + g.edges[i].id + " are at infinity");
      for (auto [h, isinf] : {std::pair{hp, ip}, std::pair{hm, im}}) {
        if (!isinf) continue;
        const std::string& tv = g.terminal(h);
        if (!inf_vertices.insert(tv).second)
          fail("two infinite branches share the vertex " + tv);
        if (tv == g.base_vertex)
          fail("edge half " + g.half_name(h) +
               " at infinity has terminal vertex equal to the base vertex");
      }
    }
    for (auto& t : g.tails) {
      if (coords.is_infinite(t.id)) {
        if (!inf_vertices.insert(t.at).second)
          fail("two infinite branches share the vertex " + t.at);
      }
    }

    // Distinct coordinates among branches at a common vertex; x_e != x_{-e}.
    for (auto& v : g.vertices) {
      auto br = g.branches_at(v);
      for (size_t i = 0; i < br.size(); ++i)
        for (size_t j = i + 1; j < br.size(); ++j) {
          const CoordValue& a = coords.at(br[i].name);
          const CoordValue& b = coords.at(br[j].name);
          if (a == b)
            fail("branches " + br[i].name + " and " + br[j].name + " at " + v +
                 " share the coordinate value");
        }
    }
    for (size_t i = 0; i < g.edges.size(); ++i) {
      const CoordValue& a = coords.at(g.half_name(Half{(int)i, +1}));
      const CoordValue& b = coords.at(g.half_name(Half{(int)i, -1}));
      if (a == b) fail("x_e = x_{-e} for edge " + g.edges[i].id);
    }

    // At least one tail at the base vertex.
    bool tail_at_base = false;
    for (auto& t : g.tails) tail_at_base = tail_at_base || t.at == g.base_vertex;
    if (!tail_at_base) fail("no tail at the base vertex");
  } catch (const std::exception& ex) {
    fail(ex.what());
  }

  return rep;
}

CoordinateAssignment assign_standard_coords(const StableGraph& g) {
  CoordinateAssignment c;
  std::set<std::string> inf_halves;  // names of edge halves already infinite
  for (auto& v : g.vertices) {
    auto br = g.branches_at(v);
    if (br.size() != 3)
      throw std::domain_error("vertex " + v + " is not trivalent");
    // Choose the infinity branch: first valid in sorted order.
    int inf_idx = -1;
    for (size_t i = 0; i < br.size(); ++i) {
      if (v == g.base_vertex && !br[i].is_tail) continue;
      if (!br[i].is_tail) {
        // -h must not already be at infinity.
        std::string opp = g.half_name(-br[i].half);
        if (inf_halves.count(opp)) continue;
      }
      inf_idx = (int)i;
      break;
    }
    if (inf_idx < 0)
      throw std::domain_error("no valid infinity placement at vertex " + v);
    if (!br[inf_idx].is_tail) inf_halves.insert(br[inf_idx].name);
    c.values[br[inf_idx].name] = CoordValue{true, RationalFunction()};
    int next = 0;
    for (size_t i = 0; i < br.size(); ++i) {
      if ((int)i == inf_idx) continue;
      c.values[br[i].name] =
          CoordValue{false, RationalFunction(Rational(next))};
      ++next;
    }
  }
  return c;
}

namespace {

struct UnionFind {
  std::map<std::string, std::string> parent;
  const std::string& find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return parent[x];
    }
    if (it->second == x) return it->second;
    it->second = find(it->second);
    return it->second;
  }
  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    // smaller name wins
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

// Path (in path order: first traversed letter first) from `from` to `to`
// through the spanning tree.
std::vector<Half> tree_path(const StableGraph& g, const std::set<int>& tree,
                            const std::string& from, const std::string& to) {
  if (from == to) return {};
  // BFS from `from` over tree edges.
  std::map<std::string, std::pair<std::string, Half>> prev;
  std::deque<std::string> q{from};
  prev[from] = {from, Half{}};
  while (!q.empty()) {
    std::string v = q.front();
    q.pop_front();
    if (v == to) break;
    for (int ei : tree) {
      const Edge& e = g.edges[ei];
      for (int s : {+1, -1}) {
        Half h{ei, s};
        if (g.initial(h) == v) {
          const std::string& w = g.terminal(h);
          if (!prev.count(w)) {
            prev[w] = {v, h};
            q.push_back(w);
          }
        }
      }
    }
  }
  if (!prev.count(to)) throw std::logic_error("tree is not spanning");
  std::vector<Half> rev;
  std::string v = to;
  while (v != from) {
    auto& [p, h] = prev[v];
    rev.push_back(h);
    v = p;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

Word word_from_path(const std::vector<Half>& path) {
  Word w(path.rbegin(), path.rend());
  return w;
}

} // namespace

CycleBasis spanning_tree_and_generators(const StableGraph& g) {
  CycleBasis cb;
  // Kruskal on sorted edge ids (edges are stored sorted).
  UnionFind uf;
  std::set<int> tree;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (uf.find(e.from) != uf.find(e.to)) {
      uf.unite(e.from, e.to);
      tree.insert((int)i);
    } else {
      cb.chords.push_back((int)i);
    }
  }
  cb.tree_edges.assign(tree.begin(), tree.end());

  for (int c : cb.chords) {
    Half ch{c, +1};
    std::vector<Half> p1 = tree_path(g, tree, g.base_vertex, g.initial(ch));
    std::vector<Half> p2 = tree_path(g, tree, g.terminal(ch), g.base_vertex);
    std::vector<Half> path = p1;
    path.push_back(ch);
    path.insert(path.end(), p2.begin(), p2.end());
    cb.generators.push_back(word_from_path(path));
  }

  for (auto& v : g.vertices)
    cb.vertex_transport[v] =
        word_from_path(tree_path(g, tree, v, g.base_vertex));
  for (auto& t : g.tails)
    cb.tail_transport[t.id] =
        word_from_path(tree_path(g, tree, t.at, g.base_vertex));
  return cb;
}

StableGraph contract_graph(const StableGraph& g, const std::set<int>& keep) {
  UnionFind uf;
  for (auto& v : g.vertices) uf.find(v);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (keep.count((int)i)) continue;
    uf.unite(g.edges[i].from, g.edges[i].to);
  }
  StableGraph out;
  std::set<std::string> vs;
  for (auto& v : g.vertices) vs.insert(uf.find(v));
  out.vertices.assign(vs.begin(), vs.end());
  for (int i : keep) {
    const Edge& e = g.edges[i];
    out.edges.push_back(Edge{e.id, uf.find(e.from), uf.find(e.to)});
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (auto& t : g.tails)
    out.tails.push_back(Tail{t.id, uf.find(t.at), t.number});
  out.base_vertex = uf.find(g.base_vertex);
  return out;
}

int signed_count(const Word& w, int edge) {
  int c = 0;
  for (auto& h : w)
    if (h.edge == edge) c += h.sign;
  return c;
}

GraphH1 graph_h1(const StableGraph& g, const CycleBasis& ambient,
                 const std::set<int>& keep) {
  StableGraph contracted = contract_graph(g, keep);
  CycleBasis sub = spanning_tree_and_generators(contracted);
  GraphH1 out;
  out.rank = (int)sub.chords.size();
  // Each chord of the contracted graph yields the indicator cocycle of that
  // edge (ambient index), the dual basis of the contracted cycle basis.
  for (int c : sub.chords) {
    std::vector<int> coc(g.n_edges(), 0);
    int amb = g.edge_index(contracted.edges[c].id);
    coc[amb] = 1;
    out.cocycles.push_back(coc);
  }
  // Inclusion matrix: pair each cocycle with the ambient generators.
  for (size_t i = 0; i < ambient.generators.size(); ++i) {
    std::vector<int> row;
    for (auto& coc : out.cocycles) {
      int v = 0;
      for (int e = 0; e < g.n_edges(); ++e)
        if (coc[e] != 0) v += coc[e] * signed_count(ambient.generators[i], e);
      row.push_back(v);
    }
    out.inclusion.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON graph files.

ParsedGraph parse_graph_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    throw std::domain_error(std::string("graph file: JSON syntax error: ") +
                            ex.what());
  }
  auto need = [&](const char* k) {
    if (!j.contains(k))
      throw std::domain_error(std::string("graph file: missing field \"") + k +
                              "\"");
  };
  need("vertices");
  need("edges");
  need("base_vertex");

  StableGraph g;
  for (auto& v : j["vertices"]) g.vertices.push_back(v.get<std::string>());
  std::sort(g.vertices.begin(), g.vertices.end());
  for (auto& e : j["edges"]) {
    for (const char* k : {"id", "from", "to"})
      if (!e.contains(k))
        throw std::domain_error("graph file: edge missing field \"" +
                                std::string(k) + "\"");
    g.edges.push_back(Edge{e["id"].get<std::string>(),
                           e["from"].get<std::string>(),
                           e["to"].get<std::string>()});
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  if (j.contains("tails")) {
    for (auto& t : j["tails"]) {
      for (const char* k : {"id", "at", "number"})
        if (!t.contains(k))
          throw std::domain_error("graph file: tail missing field \"" +
                                  std::string(k) + "\"");
      g.tails.push_back(Tail{t["id"].get<std::string>(),
                             t["at"].get<std::string>(),
                             t["number"].get<int>()});
    }
  }
  std::sort(g.tails.begin(), g.tails.end(),
            [](const Tail& a, const Tail& b) { return a.id < b.id; });
  g.base_vertex = j["base_vertex"].get<std::string>();

  ParsedGraph out;
  out.graph = g;
  if (j.contains("coords")) {
    // Entries not listed default to symbolic values.
    CoordinateAssignment c = symbolic_coords(g);
    for (auto& [key, val] : j["coords"].items()) {
      std::string s = val.get<std::string>();
      CoordValue cv;
      if (s == "infty" || s == "inf" || s == "infinity") {
        cv.infinite = true;
      } else {
        cv = CoordValue{false, RationalFunction(rat_from_string(s))};
      }
      if (!c.values.count(key))
        throw std::domain_error("graph file: coords entry for unknown branch " +
                                key);
      c.values[key] = cv;
    }
    out.coords = c;
  } else if (!j.contains("coords") &&
             [&] {
               for (auto& v : g.vertices)
                 if (g.branches_at(v).size() != 3) return false;
               return true;
             }()) {
    out.coords = assign_standard_coords(g);
  } else {
    out.coords = symbolic_coords(g);
  }
  return out;
}

ParsedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_json(ss.str());
}

std::string graph_to_json(const StableGraph& g, const CoordinateAssignment& c) {
  nlohmann::json j;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::json::array();
  for (auto& e : g.edges)
    j["edges"].push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}});
  j["tails"] = nlohmann::json::array();
  for (auto& t : g.tails)
    j["tails"].push_back({{"id", t.id}, {"at", t.at}, {"number", t.number}});
  j["base_vertex"] = g.base_vertex;
  nlohmann::json coords;
  for (auto& [k, v] : c.values)
    coords[k] = v.infinite ? "infty" : v.value.str();
  j["coords"] = coords;
  return j.dump(2);
}

} // namespace tate
