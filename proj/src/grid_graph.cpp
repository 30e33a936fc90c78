#include "gridlang/grid_graph.hpp"

#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace gridlang {

Graph Graph::make(std::vector<std::string> ids, std::vector<std::string> labels,
                  std::vector<std::pair<std::string, std::string>> vEdges,
                  std::vector<std::pair<std::string, std::string>> hEdges) {
  if (ids.size() != labels.size())
    throw std::invalid_argument("graph: ids and labels differ in length");
  Graph g;
  g.ids_ = std::move(ids);
  g.labels_ = std::move(labels);

  std::map<std::string, int> index;
  for (int n = 0; n < g.size(); ++n) {
    if (g.ids_[n].empty()) throw std::invalid_argument("graph: empty node id");
    if (!index.emplace(g.ids_[n], n).second)
      throw std::invalid_argument("graph: duplicate node id '" + g.ids_[n] + "'");
    if (g.labels_[n].empty() || g.labels_[n] == kFrame)
      throw std::invalid_argument("graph: node '" + g.ids_[n] + "' has empty or reserved label");
  }

  std::set<std::pair<int, int>> seenV, seenH;
  auto resolve = [&](const std::vector<std::pair<std::string, std::string>>& in,
                     std::vector<std::pair<int, int>>& out,
                     std::set<std::pair<int, int>>& seen, const char* kind) {
    for (const auto& [a, b] : in) {
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end() || ib == index.end())
        throw std::invalid_argument(std::string("graph: ") + kind + "-edge (" + a + "," + b +
                                    ") references unknown node");
      if (!seen.emplace(ia->second, ib->second).second)
        throw std::invalid_argument(std::string("graph: duplicate ") + kind + "-edge (" + a +
                                    "," + b + ")");
      out.emplace_back(ia->second, ib->second);
    }
  };
  resolve(vEdges, g.vEdges_, seenV, "v");
  resolve(hEdges, g.hEdges_, seenH, "h");
  for (const auto& e : seenV)
    if (seenH.count(e))
      throw std::invalid_argument("graph: edge (" + g.ids_[e.first] + "," + g.ids_[e.second] +
                                  ") is both vertical and horizontal");
  return g;
}

int Graph::indexOf(const std::string& id) const {
  for (int n = 0; n < size(); ++n)
    if (ids_[n] == id) return n;
  return -1;
}

Embedding canonical_embedding(const Graph& g, bool requireFull) {
  Embedding out;
  if (g.size() == 0) {
    out.error = "empty graph";
    return out;
  }

  // Undirected view with forced displacements.
  std::vector<std::vector<std::pair<int, Pos>>> adj(g.size());
  for (const auto& [x, y] : g.vEdges()) {
    adj[x].push_back({y, {1, 0}});
    adj[y].push_back({x, {-1, 0}});
  }
  for (const auto& [x, y] : g.hEdges()) {
    adj[x].push_back({y, {0, 1}});
    adj[y].push_back({x, {0, -1}});
  }

  std::map<int, Pos> pos;
  pos[0] = {0, 0};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (const auto& [y, d] : adj[x]) {
      const Pos want = pos[x] + d;
      auto it = pos.find(y);
      if (it == pos.end()) {
        pos[y] = want;
        queue.push_back(y);
      } else if (it->second != want) {
        out.error = "conflicting coordinates for node '" + g.id(y) + "'";
        return out;
      }
    }
  }
  if (static_cast<int>(pos.size()) != g.size()) {
    out.error = "graph is disconnected";
    return out;
  }

  std::map<Pos, int> atCell;
  for (const auto& [n, p] : pos) {
    auto [it, fresh] = atCell.emplace(p, n);
    if (!fresh) {
      out.error = "nodes '" + g.id(it->second) + "' and '" + g.id(n) + "' collide on one cell";
      return out;
    }
  }

  if (requireFull) {
    // Distance-1 cells must be joined by the corresponding edge.
    std::set<std::pair<int, int>> v(g.vEdges().begin(), g.vEdges().end());
    std::set<std::pair<int, int>> h(g.hEdges().begin(), g.hEdges().end());
    for (const auto& [p, n] : atCell) {
      auto below = atCell.find(p + Pos{1, 0});
      if (below != atCell.end() && !v.count({n, below->second})) {
        out.error = "nodes '" + g.id(n) + "' and '" + g.id(below->second) +
                    "' are grid-adjacent but lack the vertical edge";
        return out;
      }
      auto right = atCell.find(p + Pos{0, 1});
      if (right != atCell.end() && !h.count({n, right->second})) {
        out.error = "nodes '" + g.id(n) + "' and '" + g.id(right->second) +
                    "' are grid-adjacent but lack the horizontal edge";
        return out;
      }
    }
  }

  Pos min = pos.begin()->second;
  for (const auto& [n, p] : pos) {
    (void)n;
    min.first = std::min(min.first, p.first);
    min.second = std::min(min.second, p.second);
  }
  for (auto& [n, p] : pos) {
    (void)n;
    p = p - min + Pos{1, 1};
  }

  out.ok = true;
  out.pos = std::move(pos);
  return out;
}

bool is_subgrid(const Graph& g) { return canonical_embedding(g).ok; }

std::optional<std::pair<int, int>> is_picture_graph(const Graph& g) {
  const Embedding e = canonical_embedding(g);
  if (!e.ok) return std::nullopt;
  int maxR = 0, maxC = 0;
  for (const auto& [n, p] : e.pos) {
    (void)n;
    maxR = std::max(maxR, p.first);
    maxC = std::max(maxC, p.second);
  }
  if (static_cast<long long>(maxR) * maxC != static_cast<long long>(g.size()))
    return std::nullopt;
  return std::make_pair(maxR, maxC);
}

Picture picture_of(const Graph& g) {
  const auto shape = is_picture_graph(g);
  if (!shape) throw std::invalid_argument("picture_of: not a picture graph");
  const Embedding e = canonical_embedding(g);
  std::vector<std::vector<std::string>> rows(shape->first,
                                             std::vector<std::string>(shape->second));
  for (const auto& [n, p] : e.pos) rows[p.first - 1][p.second - 1] = g.label(n);
  return Picture::fromRows(std::move(rows));
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& subset) {
  std::set<int> keep(subset.begin(), subset.end());
  std::vector<std::string> ids, labels;
  for (int n : subset) {
    ids.push_back(g.id(n));
    labels.push_back(g.label(n));
  }
  std::vector<std::pair<std::string, std::string>> v, h;
  for (const auto& [x, y] : g.vEdges())
    if (keep.count(x) && keep.count(y)) v.emplace_back(g.id(x), g.id(y));
  for (const auto& [x, y] : g.hEdges())
    if (keep.count(x) && keep.count(y)) h.emplace_back(g.id(x), g.id(y));
  return Graph::make(std::move(ids), std::move(labels), std::move(v), std::move(h));
}

Graph grid_graph_of(const Picture& p) {
  std::vector<std::string> ids, labels;
  std::vector<std::pair<std::string, std::string>> v, h;
  auto name = [](int r, int c) { return std::to_string(r) + "." + std::to_string(c); };
  for (int r = 1; r <= p.height(); ++r)
    for (int c = 1; c <= p.width(); ++c) {
      ids.push_back(name(r, c));
      labels.push_back(p.at(r - 1, c - 1));
      if (r < p.height()) v.emplace_back(name(r, c), name(r + 1, c));
      if (c < p.width()) h.emplace_back(name(r, c), name(r, c + 1));
    }
  return Graph::make(std::move(ids), std::move(labels), std::move(v), std::move(h));
}

}  // namespace gridlang
