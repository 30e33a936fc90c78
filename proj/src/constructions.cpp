#include "gridlang/constructions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gridlang {

namespace {

// (i,j)-tagged copy of a colour; the frame colour is never tagged.
std::string tag(const std::string& c, int i, int j) {
  if (c == kFrame) return c;
  return std::to_string(i) + std::to_string(j) + ":" + c;
}

int mod3(int v) { return ((v % 3) + 3) % 3; }

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Canonical positions of a hyperedge's induced graph, keyed by node index of
// the underlying graph. Throws when the induced graph is not a subgrid.
std::map<int, Pos> edge_positions(const Automaton& a, int e) {
  const Hyperedge& h = a.edges[e];
  Graph g = induced_subgraph(a.graph, h.nodes);
  Embedding emb = canonical_embedding(g);
  if (!emb.ok) {
    throw std::invalid_argument("hyperedge '" + h.id +
                                "' does not induce a subgrid: " + emb.error);
  }
  std::map<int, Pos> pos;
  for (const auto& [local, p] : emb.pos) pos[h.nodes[local]] = p;
  return pos;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nine-copy expansion

WangSystem nine_copy_expand(const WangSystem& v) {
  validate(v);
  WangSystem out;
  out.labels = v.labels;
  for (const std::string& c : v.colors) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out.colors.push_back(tag(c, i, j));
    }
  }
  for (const WangTile& t : v.tiles) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        WangTile c;
        c.n = tag(t.n, mod3(i - 1), j);
        c.e = tag(t.e, i, j);
        c.s = tag(t.s, i, j);
        c.w = tag(t.w, i, mod3(j - 1));
        c.label = t.label;
        c.name = t.name + "@" + std::to_string(i) + std::to_string(j);
        out.tiles.push_back(std::move(c));
      }
    }
  }
  return out;
}

BorderClasses border_classes(const WangSystem& w) {
  BorderClasses b;
  for (int i = 0; i < static_cast<int>(w.tiles.size()); ++i) {
    const WangTile& t = w.tiles[i];
    if (t.n == kFrame) b.top.insert(i);
    if (t.e == kFrame) b.right.insert(i);
    if (t.s == kFrame) b.bottom.insert(i);
    if (t.w == kFrame) b.left.insert(i);
  }
  return b;
}

// ---------------------------------------------------------------------------
// WTS -> automaton

Automaton wts_to_saha(const WangSystem& v, bool prune) {
  const WangSystem x = nine_copy_expand(v);
  const int n = static_cast<int>(x.tiles.size());
  const BorderClasses cls = border_classes(x);
  const auto inT = [&](int t) { return cls.top.count(t) != 0; };
  const auto inR = [&](int t) { return cls.right.count(t) != 0; };
  const auto inB = [&](int t) { return cls.bottom.count(t) != 0; };
  const auto inL = [&](int t) { return cls.left.count(t) != 0; };

  // Horizontal contact is compatible only inside one row class, vertical
  // contact only inside one column class; tiles outside every named class
  // pair up with their like.
  std::vector<std::pair<int, int>> hEdges, vEdges;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (x.tiles[a].e != kFrame && x.tiles[a].e == x.tiles[b].w) {
        const bool rowOk = (inT(a) && inT(b)) || (inB(a) && inB(b)) ||
                           (!inT(a) && !inB(a) && !inT(b) && !inB(b));
        if (rowOk) hEdges.emplace_back(a, b);
      }
      if (x.tiles[a].s != kFrame && x.tiles[a].s == x.tiles[b].n) {
        const bool colOk = (inL(a) && inL(b)) || (inR(a) && inR(b)) ||
                           (!inL(a) && !inR(a) && !inL(b) && !inR(b));
        if (colOk) vEdges.emplace_back(a, b);
      }
    }
  }

  std::vector<bool> dead(n, false);
  if (prune) {
    // Drop tiles that cannot sit in any completed rectangle: a coloured side
    // with no compatible neighbour can never be satisfied. Iterate to a
    // fixpoint, since removals can orphan further tiles.
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<bool> hasInH(n, false), hasOutH(n, false);
      std::vector<bool> hasInV(n, false), hasOutV(n, false);
      for (const auto& [a, b] : hEdges) {
        if (dead[a] || dead[b]) continue;
        hasOutH[a] = hasInH[b] = true;
      }
      for (const auto& [a, b] : vEdges) {
        if (dead[a] || dead[b]) continue;
        hasOutV[a] = hasInV[b] = true;
      }
      for (int t = 0; t < n; ++t) {
        if (dead[t]) continue;
        const bool ok = (inT(t) || hasInV[t]) && (inB(t) || hasOutV[t]) &&
                        (inL(t) || hasInH[t]) && (inR(t) || hasOutH[t]);
        if (!ok) dead[t] = changed = true;
      }
    }
    const auto alive = [&](const std::pair<int, int>& e) {
      return !dead[e.first] && !dead[e.second];
    };
    std::erase_if(hEdges, [&](const auto& e) { return !alive(e); });
    std::erase_if(vEdges, [&](const auto& e) { return !alive(e); });
  }

  std::vector<std::string> ids, labels;
  for (const WangTile& t : x.tiles) {
    ids.push_back(t.name);
    labels.push_back(t.label);
  }
  std::vector<std::pair<std::string, std::string>> vPairs, hPairs;
  for (const auto& [a, b] : vEdges) vPairs.emplace_back(ids[a], ids[b]);
  for (const auto& [a, b] : hEdges) hPairs.emplace_back(ids[a], ids[b]);

  Automaton out;
  out.graph = Graph::make(ids, labels, vPairs, hPairs);

  std::set<std::pair<int, int>> hSet(hEdges.begin(), hEdges.end());
  std::set<std::pair<int, int>> vSet(vEdges.begin(), vEdges.end());
  std::vector<std::vector<int>> hPred(n), vPred(n);
  for (const auto& [a, b] : hEdges) hPred[b].push_back(a);
  for (const auto& [a, b] : vEdges) vPred[b].push_back(a);
  for (auto& p : hPred) std::sort(p.begin(), p.end());
  for (auto& p : vPred) std::sort(p.begin(), p.end());

  std::vector<Hyperedge> edges;
  const auto add = [&](std::string id, std::vector<int> f, std::vector<int> q1,
                       std::vector<int> q2, bool initial) {
    Hyperedge e;
    e.id = std::move(id);
    e.nodes = sorted_unique(std::move(f));
    e.q1 = sorted_unique(std::move(q1));
    e.q2 = sorted_unique(std::move(q2));
    e.initial = initial;
    for (int nd : e.nodes)
      if (dead[nd]) return;
    edges.push_back(std::move(e));
  };

  // Seeds of two-dimensional assemblies: any top-left corner tile.
  for (int t = 0; t < n; ++t) {
    if (inT(t) && inL(t)) add("init:" + ids[t], {t}, {}, {t}, true);
  }
  // Top-row growth: attach a top tile east of an active top tile.
  for (int y = 0; y < n; ++y) {
    if (!inT(y)) continue;
    for (int t = 0; t < n; ++t) {
      if (inT(t) && hSet.count({y, t})) {
        add("ext-e:" + ids[y] + "->" + ids[t], {y, t}, {y}, {y, t}, false);
      }
    }
  }
  // Left-column growth: attach a left tile south of an active left tile.
  for (int y = 0; y < n; ++y) {
    if (!inL(y)) continue;
    for (int t = 0; t < n; ++t) {
      if (inL(t) && vSet.count({y, t})) {
        add("ext-s:" + ids[y] + "->" + ids[t], {y, t}, {y}, {y, t}, false);
      }
    }
  }
  // Interior completion: close a unit square whose north-west, north-east and
  // south-west corners are active. The north-west corner retires; the other
  // two stay active only while the rows/columns they govern are unfinished,
  // and the new tile stays active unless it completed the bottom-right corner.
  for (int t = 0; t < n; ++t) {
    if (inT(t) || inL(t)) continue;
    for (int y1 : hPred[t]) {
      for (int y3 : vPred[t]) {
        for (int y2 : vPred[y1]) {
          if (!hSet.count({y2, y3})) continue;
          std::vector<int> q2;
          if (!(inB(t) && inR(t))) q2.push_back(t);
          if (!inB(t)) q2.push_back(y1);
          if (!inR(t)) q2.push_back(y3);
          add("fill:" + ids[t] + "<-" + ids[y1] + "," + ids[y2] + "," + ids[y3],
              {t, y1, y2, y3}, {y1, y2, y3}, std::move(q2), false);
        }
      }
    }
  }
  // Single-row pictures assemble left to right through tiles that are both
  // top and bottom; a lone tile bordered on all four sides accepts at once.
  for (int t = 0; t < n; ++t) {
    if (!(inT(t) && inB(t) && inL(t))) continue;
    if (inR(t)) {
      add("unit:" + ids[t], {t}, {}, {}, true);
    } else {
      add("row-init:" + ids[t], {t}, {}, {t}, true);
    }
  }
  for (int y = 0; y < n; ++y) {
    if (!(inT(y) && inB(y))) continue;
    for (int t = 0; t < n; ++t) {
      if (!(inT(t) && inB(t)) || !hSet.count({y, t})) continue;
      std::vector<int> q2;
      if (!inR(t)) q2.push_back(t);
      add("row-ext:" + ids[y] + "->" + ids[t], {y, t}, {y}, std::move(q2), false);
    }
  }
  // Single-column pictures, top to bottom; the 1x1 case is already covered.
  for (int t = 0; t < n; ++t) {
    if (inL(t) && inR(t) && inT(t) && !inB(t)) {
      add("col-init:" + ids[t], {t}, {}, {t}, true);
    }
  }
  for (int y = 0; y < n; ++y) {
    if (!(inL(y) && inR(y))) continue;
    for (int t = 0; t < n; ++t) {
      if (!(inL(t) && inR(t)) || !vSet.count({y, t})) continue;
      std::vector<int> q2;
      if (!inB(t)) q2.push_back(t);
      add("col-ext:" + ids[y] + "->" + ids[t], {y, t}, {y}, std::move(q2), false);
    }
  }

  // A transition whose incoming or outgoing nodes are not shared with any
  // other hyperedge can never take part in an accepted derivation: an
  // unshared incoming node has no producer, and an unshared outgoing node
  // stays active forever. Dropping such hyperedges (to a fixpoint, since
  // sharing shrinks) keeps the language and makes the result well-formed.
  for (bool changed = true; changed;) {
    changed = false;
    out.edges = edges;
    for (size_t i = 0; i < edges.size(); ++i) {
      const std::vector<int> ih = intersecting_nodes(out, static_cast<int>(i));
      const auto covered = [&](const std::vector<int>& q) {
        return std::includes(ih.begin(), ih.end(), q.begin(), q.end());
      };
      if (!covered(edges[i].q1) || !covered(edges[i].q2)) {
        edges.erase(edges.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  out.edges = std::move(edges);
  return out;
}

// ---------------------------------------------------------------------------
// Loops

namespace {

struct Arc {
  int from = -1, to = -1;  // hyperedge indices
  int node = -1;           // witness: in Q2(from) and Q1(to)
  Pos weight{0, 0};
};

std::vector<Arc> displacement_arcs(const Automaton& a) {
  const int m = static_cast<int>(a.edges.size());
  std::vector<std::map<int, Pos>> pos(m);
  for (int e = 0; e < m; ++e) pos[e] = edge_positions(a, e);
  std::vector<Arc> arcs;
  for (int e = 0; e < m; ++e) {
    for (int f = 0; f < m; ++f) {
      for (int o : a.edges[e].q2) {
        const auto& q1 = a.edges[f].q1;
        if (!std::binary_search(q1.begin(), q1.end(), o)) continue;
        arcs.push_back({e, f, o, pos[e].at(o) - pos[f].at(o)});
      }
    }
  }
  return arcs;  // already sorted by (from, to, node)
}

}  // namespace

std::vector<LoopReport> find_loops(const Automaton& a) {
  const std::vector<Arc> arcs = displacement_arcs(a);
  const int m = static_cast<int>(a.edges.size());
  std::vector<std::vector<int>> out(m);  // vertex -> arc indices
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    out[arcs[i].from].push_back(i);
  }

  std::vector<LoopReport> reports;
  std::vector<int> path;  // arc indices
  std::vector<bool> onPath(m, false);

  // Every vertex-simple cycle exactly once, anchored at its smallest vertex;
  // parallel arcs count as distinct cycles.
  const auto emit = [&](int anchor) {
    LoopReport r;
    r.cycle.push_back(a.edges[anchor].id);
    for (int ai : path) {
      const Arc& arc = arcs[ai];
      r.cycle.push_back(a.edges[arc.to].id);
      r.overlaps.push_back(a.graph.id(arc.node));
      r.displacement = r.displacement + arc.weight;
    }
    r.strong = r.displacement == Pos{0, 0};
    reports.push_back(std::move(r));
  };

  const auto dfs = [&](auto&& self, int anchor, int at) -> void {
    for (int ai : out[at]) {
      const Arc& arc = arcs[ai];
      if (arc.to == anchor) {
        path.push_back(ai);
        emit(anchor);
        path.pop_back();
      } else if (arc.to > anchor && !onPath[arc.to]) {
        path.push_back(ai);
        onPath[arc.to] = true;
        self(self, anchor, arc.to);
        onPath[arc.to] = false;
        path.pop_back();
      }
    }
  };
  for (int v = 0; v < m; ++v) dfs(dfs, v, v);
  return reports;
}

std::vector<LoopReport> find_strong_loops(const Automaton& a) {
  std::vector<LoopReport> all = find_loops(a);
  std::erase_if(all, [](const LoopReport& r) { return !r.strong; });
  return all;
}

// ---------------------------------------------------------------------------
// Automaton -> WTS

Automaton normalize_initials(const Automaton& a) {
  std::set<std::string> used;
  for (const Hyperedge& e : a.edges) used.insert(e.id);
  const auto freshId = [&](std::string id) {
    while (used.count(id)) id += "_";
    used.insert(id);
    return id;
  };

  Automaton out;
  out.graph = a.graph;
  for (const Hyperedge& e : a.edges) {
    if (e.initial && !e.q1.empty()) {
      Hyperedge init = e;
      init.id = freshId(e.id + "_init");
      init.q1.clear();
      Hyperedge step = e;
      step.id = freshId(e.id + "_step");
      step.initial = false;
      out.edges.push_back(std::move(init));
      out.edges.push_back(std::move(step));
    } else if (!e.initial && e.q1.empty()) {
      // Unusable: never initial, never enabled.
    } else {
      out.edges.push_back(e);
    }
  }
  return out;
}

namespace {

// Union of the members' induced graphs: nodes from every f(e), edges of each
// G_e. Deliberately not the induced graph of the node union - extra edges of
// the underlying graph between nodes of different members stay out.
Graph union_graph(const Automaton& a, const std::vector<int>& edgeIdxs) {
  std::set<int> nodes;
  std::set<std::pair<int, int>> ve, he;
  for (int ei : edgeIdxs) {
    const auto& f = a.edges[ei].nodes;
    nodes.insert(f.begin(), f.end());
    const std::set<int> members(f.begin(), f.end());
    for (const auto& [u, v] : a.graph.vEdges()) {
      if (members.count(u) && members.count(v)) ve.insert({u, v});
    }
    for (const auto& [u, v] : a.graph.hEdges()) {
      if (members.count(u) && members.count(v)) he.insert({u, v});
    }
  }
  std::vector<std::string> ids, labels;
  for (int nd : nodes) {
    ids.push_back(a.graph.id(nd));
    labels.push_back(a.graph.label(nd));
  }
  std::vector<std::pair<std::string, std::string>> vp, hp;
  for (const auto& [u, v] : ve) vp.emplace_back(a.graph.id(u), a.graph.id(v));
  for (const auto& [u, v] : he) hp.emplace_back(a.graph.id(u), a.graph.id(v));
  return Graph::make(ids, labels, vp, hp);
}

}  // namespace

std::string candidate_key(const Automaton& a, const TileCandidate& c) {
  std::string key = a.graph.id(c.node) + "|";
  for (size_t i = 0; i < c.edges.size(); ++i) {
    if (i) key += ",";
    key += a.edges[c.edges[i]].id;
  }
  return key;
}

std::vector<TileCandidate> tile_candidates(const Automaton& a) {
  const int m = static_cast<int>(a.edges.size());
  std::vector<std::vector<int>> related(a.graph.size());
  for (int e = 0; e < m; ++e) {
    for (int nd : a.edges[e].nodes) related[nd].push_back(e);
  }

  std::vector<TileCandidate> out;
  for (int x = 0; x < a.graph.size(); ++x) {
    const std::vector<int>& hx = related[x];
    const int k = static_cast<int>(hx.size());
    if (k > 30) {
      throw std::invalid_argument(
          "node '" + a.graph.id(x) + "' belongs to " + std::to_string(k) +
          " hyperedges; candidate enumeration over its subsets is infeasible");
    }
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << k); ++bits) {
      TileCandidate c;
      c.node = x;
      int generators = 0, consumers = 0;
      for (int i = 0; i < k; ++i) {
        if (!(bits >> i & 1)) continue;
        const int e = hx[i];
        c.edges.push_back(e);
        const auto& q1 = a.edges[e].q1;
        const auto& q2 = a.edges[e].q2;
        if (!std::binary_search(q1.begin(), q1.end(), x)) {
          ++generators;
          c.generator = e;
        }
        if (!std::binary_search(q2.begin(), q2.end(), x)) {
          ++consumers;
          c.consumer = e;
        }
      }
      if (generators != 1 || consumers != 1) continue;
      if (c.generator == c.consumer && c.edges.size() != 1) continue;
      if (!canonical_embedding(union_graph(a, c.edges), false).ok) continue;
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SahaToWts saha_to_wts(const Automaton& a) {
  {
    const std::vector<std::string> problems = validate(a);
    if (!problems.empty()) {
      throw std::invalid_argument("automaton is not well-formed: " + problems.front());
    }
    const std::vector<LoopReport> strong = find_strong_loops(a);
    if (!strong.empty()) {
      std::string names;
      for (size_t i = 0; i < strong.front().cycle.size(); ++i) {
        if (i) names += ",";
        names += strong.front().cycle[i];
      }
      throw std::invalid_argument(
          "automaton has a strong loop <" + names +
          ">; the translation to a Wang tile system is undefined");
    }
  }

  SahaToWts conv;
  conv.normalized = normalize_initials(a);
  const Automaton& norm = conv.normalized;
  conv.candidates = tile_candidates(norm);
  const std::vector<TileCandidate>& cands = conv.candidates;
  const int nc = static_cast<int>(cands.size());

  std::vector<std::vector<int>> related(norm.graph.size());
  for (int e = 0; e < static_cast<int>(norm.edges.size()); ++e) {
    for (int nd : norm.edges[e].nodes) related[nd].push_back(e);
  }
  std::set<std::pair<int, int>> hSet(norm.graph.hEdges().begin(),
                                     norm.graph.hEdges().end());
  std::set<std::pair<int, int>> vSet(norm.graph.vEdges().begin(),
                                     norm.graph.vEdges().end());

  // Per candidate: does its node have in/out edges of each sort inside the
  // member-union graph? Absence pins the corresponding side to "#".
  std::vector<bool> outH(nc), inH(nc), outV(nc), inV(nc);
  std::vector<std::string> keys(nc);
  for (int i = 0; i < nc; ++i) {
    keys[i] = candidate_key(norm, cands[i]);
    const Graph gu = union_graph(norm, cands[i].edges);
    const int local = gu.indexOf(norm.graph.id(cands[i].node));
    for (const auto& [u, v] : gu.hEdges()) {
      if (u == local) outH[i] = true;
      if (v == local) inH[i] = true;
    }
    for (const auto& [u, v] : gu.vEdges()) {
      if (u == local) outV[i] = true;
      if (v == local) inV[i] = true;
    }
  }

  const auto subset = [](const std::vector<int>& s, const std::vector<int>& t) {
    return std::includes(t.begin(), t.end(), s.begin(), s.end());
  };
  const auto inQ1 = [&](int edge, int nd) {
    const auto& q1 = norm.edges[edge].q1;
    return std::binary_search(q1.begin(), q1.end(), nd);
  };

  std::vector<std::set<std::string>> sN(nc), sE(nc), sS(nc), sW(nc);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) {
      const int x = cands[i].node, y = cands[j].node;
      const bool h = hSet.count({x, y}) != 0, v = vSet.count({x, y}) != 0;
      if (!h && !v) continue;
      // Shared history must agree: every member of one side that involves the
      // other side's node is a member there too, and one of the two nodes was
      // active when the other's generator fired (or they share it).
      std::vector<int> hxPhi, psiHy;
      for (int e : cands[j].edges) {
        const auto& f = norm.edges[e].nodes;
        if (std::binary_search(f.begin(), f.end(), x)) hxPhi.push_back(e);
      }
      for (int e : cands[i].edges) {
        const auto& f = norm.edges[e].nodes;
        if (std::binary_search(f.begin(), f.end(), y)) psiHy.push_back(e);
      }
      if (!subset(hxPhi, cands[i].edges) || !subset(psiHy, cands[j].edges)) continue;
      if (!(cands[i].generator == cands[j].generator ||
            inQ1(cands[i].generator, y) || inQ1(cands[j].generator, x))) {
        continue;
      }
      const std::string colour =
          keys[i] < keys[j] ? keys[i] + " & " + keys[j] : keys[j] + " & " + keys[i];
      if (h) {
        sE[i].insert(colour);
        sW[j].insert(colour);
      }
      if (v) {
        sS[i].insert(colour);
        sN[j].insert(colour);
      }
    }
  }
  for (int i = 0; i < nc; ++i) {
    if (!inV[i]) sN[i] = {kFrame};
    if (!outH[i]) sE[i] = {kFrame};
    if (!outV[i]) sS[i] = {kFrame};
    if (!inH[i]) sW[i] = {kFrame};
  }

  std::set<std::string> labelSet, colourSet;
  int tileNo = 0;
  for (int i = 0; i < nc; ++i) {
    const std::string label = norm.graph.label(cands[i].node);
    for (const std::string& cn : sN[i]) {
      for (const std::string& ce : sE[i]) {
        for (const std::string& cs : sS[i]) {
          for (const std::string& cw : sW[i]) {
            WangTile t;
            t.n = cn;
            t.e = ce;
            t.s = cs;
            t.w = cw;
            t.label = label;
            t.name = "t" + std::to_string(tileNo++);
            conv.wts.tiles.push_back(std::move(t));
            conv.tileCandidate.push_back(i);
            labelSet.insert(label);
            for (const std::string* c : {&cn, &ce, &cs, &cw}) {
              if (*c != kFrame) colourSet.insert(*c);
            }
          }
        }
      }
    }
  }
  conv.wts.labels.assign(labelSet.begin(), labelSet.end());
  conv.wts.colors.assign(colourSet.begin(), colourSet.end());
  validate(conv.wts);
  return conv;
}

// ---------------------------------------------------------------------------
// Mask reconstruction

Reconstruction reconstruct_derivation(const SahaToWts& conv, const TiledPicture& t) {
  if (auto bad = tiling_violation(conv.wts, t)) {
    throw std::invalid_argument("not a tiling of the converted system: " + *bad);
  }
  const Automaton& norm = conv.normalized;
  const int h = t.height(), w = t.width();

  const auto candidateAt = [&](int r, int c) {  // 1-based
    const int tile = t.grid[r - 1][c - 1];
    if (tile < 0 || tile >= static_cast<int>(conv.tileCandidate.size())) {
      throw std::invalid_argument("tile index out of range in tiling");
    }
    return conv.tileCandidate[tile];
  };

  std::vector<std::map<int, Pos>> pos(norm.edges.size());
  for (int e = 0; e < static_cast<int>(norm.edges.size()); ++e) {
    pos[e] = edge_positions(norm, e);
  }

  // One mask per (cell, member hyperedge): the member's graph dropped rigidly
  // onto the picture so its node lands on the cell. Coinciding placements of
  // the same hyperedge collapse into one mask.
  std::map<std::pair<int, std::vector<std::pair<Pos, int>>>, int> seen;
  std::vector<Mask> masks;
  for (int r = 1; r <= h; ++r) {
    for (int c = 1; c <= w; ++c) {
      const TileCandidate& cand = conv.candidates[candidateAt(r, c)];
      for (int e : cand.edges) {
        const Pos base = Pos{r, c} - pos[e].at(cand.node);
        Mask m;
        m.edge = e;
        for (const auto& [node, p] : pos[e]) m.cells[base + p] = node;
        std::vector<std::pair<Pos, int>> key(m.cells.begin(), m.cells.end());
        if (seen.emplace(std::make_pair(e, std::move(key)),
                         static_cast<int>(masks.size()))
                .second) {
          masks.push_back(std::move(m));
        }
      }
    }
  }

  // Every mask must stay on the board and agree with the candidates under it.
  for (const Mask& m : masks) {
    for (const auto& [p, node] : m.cells) {
      if (p.first < 1 || p.first > h || p.second < 1 || p.second > w) {
        throw std::logic_error("mask for hyperedge '" + norm.edges[m.edge].id +
                               "' leaves the picture");
      }
      const TileCandidate& cand = conv.candidates[candidateAt(p.first, p.second)];
      const bool member = std::binary_search(cand.edges.begin(), cand.edges.end(), m.edge);
      if (cand.node != node || !member) {
        throw std::logic_error("mask for hyperedge '" + norm.edges[m.edge].id +
                               "' disagrees with the tile under it");
      }
    }
  }

  // Order: a shared cell's generator fires before anything else that touches
  // the cell, and its consumer after.
  const int nm = static_cast<int>(masks.size());
  std::vector<std::set<int>> succ(nm);
  std::vector<int> indeg(nm, 0);
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < nm; ++j) {
      if (i == j) continue;
      bool before = false;
      for (const auto& [p, node] : masks[i].cells) {
        const auto it = masks[j].cells.find(p);
        if (it == masks[j].cells.end()) continue;
        const TileCandidate& cand = conv.candidates[candidateAt(p.first, p.second)];
        if (masks[i].edge == cand.generator || masks[j].edge == cand.consumer) {
          before = true;
          break;
        }
      }
      if (before && succ[i].insert(j).second) ++indeg[j];
    }
  }

  std::vector<int> order;
  {
    std::set<int> ready;
    for (int i = 0; i < nm; ++i) {
      if (indeg[i] == 0) ready.insert(i);
    }
    if (ready.size() != 1) {
      throw std::logic_error("expected exactly one initial mask, found " +
                             std::to_string(ready.size()));
    }
    while (!ready.empty()) {
      const int i = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(i);
      for (int j : succ[i]) {
        if (--indeg[j] == 0) ready.insert(j);
      }
    }
    if (static_cast<int>(order.size()) != nm) {
      throw std::logic_error("mask ordering contains a cycle");
    }
  }

  // Replay the masks through the ordinary gluing machinery.
  Reconstruction rec;
  const Mask& first = masks[order.front()];
  if (!norm.edges[first.edge].initial) {
    throw std::logic_error("first mask '" + norm.edges[first.edge].id +
                           "' is not an initial hyperedge");
  }
  Config cfg;
  for (const auto& [p, node] : first.cells) {
    const auto& q2 = norm.edges[first.edge].q2;
    cfg.cells[p] = Cell{node, std::binary_search(q2.begin(), q2.end(), node)};
  }
  rec.trace.push_back(norm.edges[first.edge].id);
  for (size_t k = 1; k < order.size(); ++k) {
    const Mask& m = masks[order[k]];
    const auto& [cell0, node0] = *m.cells.begin();
    Gluing g{m.edge, cell0 - pos[m.edge].at(node0)};
    std::string why;
    const std::optional<Config> next = glue(norm, cfg, g, &why);
    if (!next) {
      throw std::logic_error("replaying mask for hyperedge '" +
                             norm.edges[m.edge].id + "' failed: " + why);
    }
    cfg = *next;
    rec.trace.push_back(norm.edges[m.edge].id);
  }
  if (!cfg.finalState()) {
    throw std::logic_error("replayed derivation leaves active cells behind");
  }
  const std::optional<Picture> got = picture_of(norm, cfg);
  if (!got || !(*got == labels_of(conv.wts, t))) {
    throw std::logic_error("replayed derivation does not reproduce the picture");
  }
  for (int i : order) rec.order.push_back(masks[i]);
  rec.finalConfig = std::move(cfg);
  return rec;
}

}  // namespace gridlang
