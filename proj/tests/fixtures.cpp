#include "fixtures.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gridlang::fixtures {

namespace {

WangTile tile(std::string n, std::string e, std::string s, std::string w,
              std::string label, std::string name) {
  WangTile t;
  t.n = std::move(n);
  t.e = std::move(e);
  t.s = std::move(s);
  t.w = std::move(w);
  t.label = std::move(label);
  t.name = std::move(name);
  return t;
}

Hyperedge edge(const Graph& g, std::string id, const std::vector<std::string>& nodes,
               const std::vector<std::string>& q1, const std::vector<std::string>& q2,
               bool initial) {
  Hyperedge e;
  e.id = std::move(id);
  auto lookup = [&g](const std::vector<std::string>& names) {
    std::vector<int> idx;
    for (const std::string& name : names) {
      const int n = g.indexOf(name);
      if (n < 0) throw std::invalid_argument("fixture references unknown node " + name);
      idx.push_back(n);
    }
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  e.nodes = lookup(nodes);
  e.q1 = lookup(q1);
  e.q2 = lookup(q2);
  e.initial = initial;
  return e;
}

}  // namespace

Picture all_a(int h, int w) {
  return Picture::fromRows(
      std::vector<std::vector<std::string>>(h, std::vector<std::string>(w, "a")));
}

Picture diagonal_picture(int k) {
  std::vector<std::vector<std::string>> rows(k, std::vector<std::string>(k, "0"));
  for (int i = 0; i < k; ++i) rows[i][i] = "1";
  return Picture::fromRows(rows);
}

Picture chain_row(int width) {
  const std::vector<std::string> cycle{"x1", "x2", "x3"};
  std::vector<std::string> row;
  for (int i = 0; i < width; ++i) row.push_back(cycle[i % 3]);
  return Picture::fromRows({row});
}

WangSystem singleton_wts() {
  WangSystem w;
  w.labels = {"a"};
  w.colors = {};
  w.tiles = {tile("#", "#", "#", "#", "a", "t0")};
  validate(w);
  return w;
}

WangSystem domino_wts() {
  WangSystem w;
  w.labels = {"a", "b"};
  w.colors = {"c"};
  w.tiles = {tile("#", "c", "#", "#", "a", "t0"),
             tile("#", "#", "#", "c", "b", "t1")};
  validate(w);
  return w;
}

WangSystem diagonal13_wts() {
  WangSystem w;
  w.labels = {"a"};
  w.colors = {"0", "1"};
  w.tiles = {
      tile("#", "0", "1", "#", "a", "d1"),   // top-left corner
      tile("#", "0", "0", "0", "a", "d2"),   // top edge
      tile("#", "#", "0", "0", "a", "d3"),   // top-right corner
      tile("1", "1", "0", "#", "a", "d4"),   // left edge, row 2
      tile("0", "0", "0", "#", "a", "d5"),   // left edge, rows > 2
      tile("0", "0", "#", "#", "a", "d6"),   // bottom-left corner
      tile("0", "0", "1", "1", "a", "d7"),   // interior diagonal
      tile("1", "1", "0", "0", "a", "d8"),   // interior subdiagonal
      tile("0", "0", "0", "0", "a", "d9"),   // interior elsewhere
      tile("1", "1", "#", "0", "a", "d10"),  // bottom edge, col k-1
      tile("0", "0", "#", "0", "a", "d11"),  // bottom edge, cols < k-1
      tile("0", "#", "#", "1", "a", "d12"),  // bottom-right corner
      tile("0", "#", "0", "0", "a", "d13"),  // right edge
  };
  validate(w);
  return w;
}

WangSystem diagonal14_wts() {
  WangSystem w = diagonal13_wts();
  w.tiles.push_back(tile("1", "1", "#", "#", "a", "d14"));  // (2,1) of the 2x2
  validate(w);
  return w;
}

PictureTileSystem diagonal_pts() {
  PictureTileSystem t;
  t.gamma = {"0", "1"};
  t.sigma = {"a"};
  t.pi = {{"0", "a"}, {"1", "a"}};
  for (int k = 2; k <= 5; ++k)
    for (const Tile2& w : tiles_of(diagonal_picture(k))) t.tiles.insert(w);
  validate(t);
  return t;
}

Automaton chain_automaton() {
  Automaton a;
  a.graph = Graph::make({"x1", "x2", "x3"}, {"x1", "x2", "x3"}, {},
                        {{"x1", "x2"}, {"x2", "x3"}, {"x3", "x1"}});
  a.edges = {
      edge(a.graph, "e1", {"x1", "x2"}, {"x1"}, {"x2"}, true),
      edge(a.graph, "e2", {"x2", "x3"}, {"x2"}, {"x3"}, false),
      edge(a.graph, "e3", {"x3", "x1"}, {"x3"}, {"x1"}, false),
      edge(a.graph, "e4", {"x2", "x3"}, {"x2"}, {}, false),
  };
  return a;
}

Automaton fanout_automaton() {
  Automaton a;
  a.graph = Graph::make(
      {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"},
      {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"},
      {{"x1", "x3"}, {"x2", "x4"}, {"x3", "x5"}, {"x4", "x6"}, {"x3", "x7"}, {"x4", "x8"}},
      {{"x1", "x2"}, {"x3", "x4"}, {"x5", "x6"}, {"x7", "x8"}});
  a.edges = {
      edge(a.graph, "e1", {"x1", "x2", "x3", "x4"}, {}, {"x3", "x4"}, true),
      edge(a.graph, "e2", {"x3", "x4", "x5", "x6"}, {"x3", "x4"}, {}, false),
      edge(a.graph, "e3", {"x3", "x4", "x7", "x8"}, {"x3", "x4"}, {}, false),
  };
  return a;
}

Automaton two_init_automaton() {
  Automaton a;
  a.graph = Graph::make({"u1", "u2", "w1", "w2", "w3"}, {"a", "b", "a", "c", "b"}, {},
                        {{"u1", "u2"}, {"w1", "w2"}, {"w2", "w3"}});
  a.edges = {
      edge(a.graph, "eU", {"u1", "u2"}, {}, {}, true),
      edge(a.graph, "eW1", {"w1", "w2"}, {}, {"w2"}, true),
      edge(a.graph, "eW2", {"w2", "w3"}, {"w2"}, {}, false),
  };
  return a;
}

Automaton self_loop_automaton() {
  Automaton a;
  a.graph = Graph::make({"y"}, {"a"}, {}, {});
  a.edges = {
      edge(a.graph, "seed", {"y"}, {}, {"y"}, true),
      edge(a.graph, "loop", {"y"}, {"y"}, {"y"}, false),
  };
  return a;
}

}  // namespace gridlang::fixtures
