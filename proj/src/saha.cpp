#include "gridlang/saha.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace gridlang {

int Automaton::edgeIndexOf(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].id == id) return i;
  return -1;
}

std::vector<int> intersecting_nodes(const Automaton& a, int edge) {
  if (edge < 0 || edge >= static_cast<int>(a.edges.size()))
    throw std::out_of_range("intersecting_nodes: unknown hyperedge");
  std::set<int> shared;
  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) {
    if (i == edge) continue;
    shared.insert(a.edges[i].nodes.begin(), a.edges[i].nodes.end());
  }
  std::vector<int> out;
  for (int n : a.edges[edge].nodes)
    if (shared.count(n)) out.push_back(n);
  return out;
}

namespace {

bool is_connected_subset(const Graph& g, const std::vector<int>& subset) {
  if (subset.empty()) return true;
  std::set<int> keep(subset.begin(), subset.end());
  std::vector<std::vector<int>> adj(g.size());
  auto add = [&](int x, int y) {
    if (keep.count(x) && keep.count(y)) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
  };
  for (const auto& [x, y] : g.vEdges()) add(x, y);
  for (const auto& [x, y] : g.hEdges()) add(x, y);
  std::set<int> seen{subset.front()};
  std::deque<int> queue{subset.front()};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : adj[x])
      if (seen.insert(y).second) queue.push_back(y);
  }
  return seen.size() == keep.size();
}

}  // namespace

std::vector<std::string> validate(const Automaton& a) {
  std::vector<std::string> out;
  std::set<std::string> ids;
  for (const auto& e : a.edges)
    if (!ids.insert(e.id).second) out.push_back("duplicate hyperedge id '" + e.id + "'");

  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) {
    const Hyperedge& e = a.edges[i];
    const std::string where = "hyperedge '" + e.id + "': ";

    bool refsOk = !e.nodes.empty();
    if (e.nodes.empty()) out.push_back(where + "empty member set");
    std::set<int> members;
    for (int n : e.nodes) {
      if (n < 0 || n >= a.graph.size()) {
        out.push_back(where + "dangling node reference");
        refsOk = false;
      } else if (!members.insert(n).second) {
        out.push_back(where + "duplicate member node '" + a.graph.id(n) + "'");
      }
    }
    if (!refsOk) continue;

    const std::set<int> ih = [&] {
      auto v = intersecting_nodes(a, i);
      return std::set<int>(v.begin(), v.end());
    }();
    auto checkSubset = [&](const std::vector<int>& q, const char* name) {
      for (int n : q) {
        if (!members.count(n)) {
          out.push_back(where + std::string(name) + " contains non-member '" +
                        (n >= 0 && n < a.graph.size() ? a.graph.id(n) : "?") + "'");
        } else if (!ih.count(n)) {
          out.push_back(where + std::string(name) + " node '" + a.graph.id(n) +
                        "' is not an intersecting node");
        }
      }
    };
    checkSubset(e.q1, "incoming set");
    checkSubset(e.q2, "outgoing set");

    const Graph ge = induced_subgraph(a.graph, e.nodes);
    const Embedding emb = canonical_embedding(ge);
    if (!emb.ok) out.push_back(where + "G_e is not a subgrid (" + emb.error + ")");
    if (!is_connected_subset(a.graph, e.q1))
      out.push_back(where + "incoming set does not induce a connected subgraph");
  }
  return out;
}

bool Config::finalState() const {
  for (const auto& [p, cell] : cells) {
    (void)p;
    if (cell.active) return false;
  }
  return true;
}

Config normalized(const Config& c) {
  if (c.cells.empty()) return c;
  Pos min = c.cells.begin()->first;
  for (const auto& [p, cell] : c.cells) {
    (void)cell;
    min.first = std::min(min.first, p.first);
    min.second = std::min(min.second, p.second);
  }
  Config out;
  for (const auto& [p, cell] : c.cells) out.cells.emplace(p - min + Pos{1, 1}, cell);
  return out;
}

std::string config_key(const Config& c) {
  const Config n = normalized(c);
  std::string key;
  for (const auto& [p, cell] : n.cells) {
    key += std::to_string(p.first);
    key += ',';
    key += std::to_string(p.second);
    key += ',';
    key += std::to_string(cell.origin);
    key += cell.active ? "+;" : "-;";
  }
  return key;
}

Graph materialize(const Automaton& a, const Config& c) {
  std::vector<std::string> ids, labels;
  std::vector<std::pair<std::string, std::string>> v, h;
  auto name = [](Pos p) { return std::to_string(p.first) + "." + std::to_string(p.second); };
  for (const auto& [p, cell] : c.cells) {
    ids.push_back(name(p));
    labels.push_back(a.graph.label(cell.origin));
    if (c.cells.count(p + Pos{1, 0})) v.emplace_back(name(p), name(p + Pos{1, 0}));
    if (c.cells.count(p + Pos{0, 1})) h.emplace_back(name(p), name(p + Pos{0, 1}));
  }
  return Graph::make(std::move(ids), std::move(labels), std::move(v), std::move(h));
}

std::optional<Picture> picture_of(const Automaton& a, const Config& c) {
  if (c.cells.empty()) return std::nullopt;
  const Config n = normalized(c);
  int maxR = 0, maxC = 0;
  for (const auto& [p, cell] : n.cells) {
    (void)cell;
    maxR = std::max(maxR, p.first);
    maxC = std::max(maxC, p.second);
  }
  if (static_cast<long long>(maxR) * maxC != static_cast<long long>(n.cells.size()))
    return std::nullopt;
  std::vector<std::vector<std::string>> rows(maxR, std::vector<std::string>(maxC));
  for (const auto& [p, cell] : n.cells)
    rows[p.first - 1][p.second - 1] = a.graph.label(cell.origin);
  return Picture::fromRows(std::move(rows));
}

namespace {

// Precomputed placement data for one hyperedge. All positions are G_e's
// canonical embedding; a gluing translates them uniformly by its offset.
struct EdgePlan {
  std::map<int, Pos> pos;  // node -> canonical position within G_e
  std::set<int> q2;
  int anchor = -1;                            // Q1 node with minimal position
  std::vector<std::pair<int, Pos>> matched;   // Q1 nodes with positions
  std::vector<std::pair<int, Pos>> fresh;     // f(e)\Q1 nodes with positions
};

std::vector<EdgePlan> plan_edges(const Automaton& a) {
  std::vector<EdgePlan> plans(a.edges.size());
  for (size_t i = 0; i < a.edges.size(); ++i) {
    const Hyperedge& e = a.edges[i];
    EdgePlan& plan = plans[i];
    const Graph ge = induced_subgraph(a.graph, e.nodes);
    const Embedding emb = canonical_embedding(ge);
    if (!emb.ok)
      throw std::invalid_argument("hyperedge '" + e.id + "': G_e is not a subgrid (" +
                                  emb.error + ")");
    for (const auto& [local, p] : emb.pos) plan.pos[e.nodes[local]] = p;
    plan.q2.insert(e.q2.begin(), e.q2.end());

    const std::set<int> q1(e.q1.begin(), e.q1.end());
    for (int n : e.nodes) {
      if (q1.count(n)) {
        plan.matched.push_back({n, plan.pos.at(n)});
        if (plan.anchor == -1 || plan.pos.at(n) < plan.pos.at(plan.anchor)) plan.anchor = n;
      } else {
        plan.fresh.push_back({n, plan.pos.at(n)});
      }
    }
  }
  return plans;
}

// A gluing is admissible iff every Q1 node lands on an active cell of the
// same origin, and every fresh node lands on a free cell whose occupied
// neighbours all belong to the hyperedge's own footprint (anything else would
// leave two grid-adjacent nodes unconnected, breaking the subgrid invariant).
bool gluing_fits(const Config& c, const EdgePlan& plan, Pos offset) {
  for (const auto& [node, pos] : plan.matched) {
    auto it = c.cells.find(offset + pos);
    if (it == c.cells.end() || !it->second.active || it->second.origin != node) return false;
  }
  std::set<Pos> footprint;
  for (const auto& [node, pos] : plan.pos) {
    (void)node;
    footprint.insert(offset + pos);
  }
  for (const auto& [node, pos] : plan.fresh) {
    (void)node;
    const Pos at = offset + pos;
    if (c.cells.count(at)) return false;  // lands on an occupied cell
    for (const Pos& d : {Pos{1, 0}, Pos{-1, 0}, Pos{0, 1}, Pos{0, -1}}) {
      const Pos nb = at + d;
      if (c.cells.count(nb) && !footprint.count(nb)) return false;
    }
  }
  return true;
}

// Matched copies stay active exactly when their original is in Q2; fresh
// copies arrive active exactly when their original is in Q2.
Config apply_gluing(const Config& c, const EdgePlan& plan, Pos offset) {
  Config out = c;
  for (const auto& [node, pos] : plan.matched)
    out.cells.at(offset + pos).active = plan.q2.count(node) > 0;
  for (const auto& [node, pos] : plan.fresh)
    out.cells.emplace(offset + pos, Cell{node, plan.q2.count(node) > 0});
  return out;
}

Config initial_config(const EdgePlan& plan) {
  Config c;
  for (const auto& [node, p] : plan.pos)
    c.cells.emplace(p, Cell{node, plan.q2.count(node) > 0});
  return c;
}

}  // namespace

std::vector<Config> initial_configurations(const Automaton& a) {
  const auto plans = plan_edges(a);
  std::vector<Config> out;
  for (size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].initial) out.push_back(initial_config(plans[i]));
  return out;
}

std::vector<Gluing> applicable_gluings(const Automaton& a, const Config& c) {
  const auto plans = plan_edges(a);
  std::vector<Gluing> out;
  for (size_t i = 0; i < a.edges.size(); ++i) {
    const EdgePlan& plan = plans[i];
    if (plan.anchor == -1) continue;  // Q1 empty: never fires as a transition
    const Pos anchorPos = plan.pos.at(plan.anchor);
    for (const auto& [p, cell] : c.cells) {
      if (!cell.active || cell.origin != plan.anchor) continue;
      const Pos offset = p - anchorPos;
      if (gluing_fits(c, plan, offset)) out.push_back(Gluing{static_cast<int>(i), offset});
    }
  }
  return out;
}

std::optional<Config> glue(const Automaton& a, const Config& c, const Gluing& g,
                           std::string* why) {
  if (g.edge < 0 || g.edge >= static_cast<int>(a.edges.size())) {
    if (why) *why = "unknown hyperedge";
    return std::nullopt;
  }
  const auto plans = plan_edges(a);
  const EdgePlan& plan = plans[g.edge];
  if (plan.anchor == -1) {
    if (why) *why = "hyperedge '" + a.edges[g.edge].id + "' has an empty incoming set";
    return std::nullopt;
  }
  if (!gluing_fits(c, plan, g.offset)) {
    if (why)
      *why = "gluing of '" + a.edges[g.edge].id +
             "' does not fit (match mismatch, collision, or missing adjacency)";
    return std::nullopt;
  }
  return apply_gluing(c, plan, g.offset);
}

namespace {

struct ClosureOutcome {
  bool truncated = false;  // a limit cut the closure short
  bool stopped = false;    // the sink asked to stop
};

// Deterministic BFS over canonical configurations whose bounding box fits
// maxH x maxW. finalSink runs once per distinct active-free configuration
// (normalized), with its derivation trace; returning false stops the search.
ClosureOutcome closure(
    const Automaton& a, int maxH, int maxW, const SearchLimits& lim,
    const std::function<bool(const Config&, const std::vector<std::string>&)>& finalSink) {
  const auto plans = plan_edges(a);
  ClosureOutcome outcome;

  struct ParentLink {
    std::string parentKey;
    std::string edgeId;
  };
  std::unordered_map<std::string, ParentLink> seen;
  std::deque<std::pair<Config, long long>> frontier;

  auto fitsBox = [&](const Config& c) {
    for (const auto& [p, cell] : c.cells) {
      (void)cell;
      if (p.first > maxH || p.second > maxW) return false;
    }
    return true;
  };

  auto traceOf = [&](std::string key) {
    std::vector<std::string> trace;
    while (!key.empty()) {
      const ParentLink& link = seen.at(key);
      trace.push_back(link.edgeId);
      key = link.parentKey;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
  };

  // Returns false when the sink stopped the search.
  auto admit = [&](Config c, const std::string& parentKey, const std::string& edgeId,
                   long long depth) {
    c = normalized(c);
    if (!fitsBox(c)) return true;  // box pruning keeps completeness: cells only grow
    std::string key = config_key(c);
    if (seen.count(key)) return true;
    if (static_cast<long long>(seen.size()) >= lim.maxStates) {
      outcome.truncated = true;
      return true;
    }
    seen.emplace(key, ParentLink{parentKey, edgeId});
    if (c.finalState() && !finalSink(c, traceOf(key))) {
      outcome.stopped = true;
      return false;
    }
    frontier.emplace_back(std::move(c), depth);
    return true;
  };

  for (size_t i = 0; i < a.edges.size(); ++i) {
    if (!a.edges[i].initial) continue;
    if (!admit(initial_config(plans[i]), "", a.edges[i].id, 0)) return outcome;
  }

  while (!frontier.empty()) {
    auto [cfg, depth] = std::move(frontier.front());
    frontier.pop_front();
    if (cfg.finalState()) continue;  // no active nodes: nothing can glue

    const std::string key = config_key(cfg);
    for (size_t i = 0; i < a.edges.size(); ++i) {
      const EdgePlan& plan = plans[i];
      if (plan.anchor == -1) continue;
      const Pos anchorPos = plan.pos.at(plan.anchor);
      for (const auto& [p, cell] : cfg.cells) {
        if (!cell.active || cell.origin != plan.anchor) continue;
        const Pos offset = p - anchorPos;
        if (!gluing_fits(cfg, plan, offset)) continue;
        if (lim.maxSteps >= 0 && depth >= lim.maxSteps) {
          outcome.truncated = true;  // a legal continuation was cut off
          continue;
        }
        if (!admit(apply_gluing(cfg, plan, offset), key, a.edges[i].id, depth + 1))
          return outcome;
      }
    }
  }
  return outcome;
}

}  // namespace

AcceptResult saha_accepts(const Automaton& a, const Picture& p, const SearchLimits& limits) {
  AcceptResult result;
  const ClosureOutcome outcome =
      closure(a, p.height(), p.width(), limits,
              [&](const Config& c, const std::vector<std::string>& trace) {
                const auto pic = picture_of(a, c);
                if (!pic || !(*pic == p)) return true;
                result.verdict = Verdict::Accepted;
                result.trace = trace;
                return false;
              });
  if (result.verdict != Verdict::Accepted && outcome.truncated)
    result.verdict = Verdict::BoundExhausted;
  return result;
}

EnumResult saha_enumerate(const Automaton& a, int maxH, int maxW, const SearchLimits& limits) {
  std::set<Picture> pictures;
  const ClosureOutcome outcome =
      closure(a, maxH, maxW, limits, [&](const Config& c, const std::vector<std::string>&) {
        if (const auto pic = picture_of(a, c)) pictures.insert(*pic);
        return true;
      });
  EnumResult result;
  result.pictures.assign(pictures.begin(), pictures.end());
  result.complete = !outcome.truncated;
  return result;
}

}  // namespace gridlang
