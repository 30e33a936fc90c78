#include "gridlang/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gridlang {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

const json& need(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) fail(what + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(what + ": missing field \"" + key + "\"");
  return *it;
}

std::string one_string(const json& j, const std::string& what) {
  if (!j.is_string()) fail(what + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + ": expected an array of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(one_string(j[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Picture

Picture picture_from_json(const json& j) {
  const std::vector<std::string> alphabet =
      string_list(need(j, "alphabet", "picture"), "picture.alphabet");
  const std::set<std::string> allowed(alphabet.begin(), alphabet.end());
  if (allowed.count(kFrame)) fail("picture.alphabet: \"#\" is reserved");

  const json& rows = need(j, "rows", "picture");
  if (!rows.is_array()) fail("picture.rows: expected an array of rows");
  std::vector<std::vector<std::string>> cells;
  for (size_t r = 0; r < rows.size(); ++r) {
    cells.push_back(string_list(rows[r], "picture.rows[" + std::to_string(r) + "]"));
    for (const std::string& s : cells.back()) {
      if (!allowed.count(s)) {
        fail("picture.rows: symbol \"" + s + "\" is not in the alphabet");
      }
    }
  }
  return Picture::fromRows(std::move(cells));
}

json picture_to_json(const Picture& p) {
  json j;
  j["alphabet"] = p.symbols();
  j["rows"] = p.rows();
  return j;
}

// ---------------------------------------------------------------------------
// Picture tile systems

namespace {

Tile2 tile2_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) fail(what + ": expected a 2x2 array");
  Tile2 t;
  for (int r = 0; r < 2; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != 2) fail(what + ": expected a 2x2 array");
    for (int c = 0; c < 2; ++c) {
      t.cells[r][c] = one_string(row[c], what + " cell");
    }
  }
  return t;
}

json tile2_to_json(const Tile2& t) {
  return json::array({json::array({t.tl(), t.tr()}), json::array({t.bl(), t.br()})});
}

}  // namespace

PictureTileSystem pts_from_json(const json& j) {
  PictureTileSystem t;
  t.sigma = sorted_unique(string_list(need(j, "sigma", "tile system"), "sigma"));
  t.gamma = sorted_unique(string_list(need(j, "gamma", "tile system"), "gamma"));
  const json& pi = need(j, "pi", "tile system");
  if (!pi.is_object()) fail("tile system.pi: expected an object");
  for (const auto& [key, value] : pi.items()) {
    t.pi[key] = one_string(value, "pi[\"" + key + "\"]");
  }
  const json& tiles = need(j, "tiles", "tile system");
  if (!tiles.is_array()) fail("tile system.tiles: expected an array");
  for (size_t i = 0; i < tiles.size(); ++i) {
    t.tiles.insert(tile2_from_json(tiles[i], "tiles[" + std::to_string(i) + "]"));
  }
  validate(t);
  return t;
}

json pts_to_json(const PictureTileSystem& t) {
  json j;
  j["sigma"] = t.sigma;
  j["gamma"] = t.gamma;
  j["pi"] = json::object();
  for (const auto& [from, to] : t.pi) j["pi"][from] = to;
  j["tiles"] = json::array();
  for (const Tile2& tile : t.tiles) j["tiles"].push_back(tile2_to_json(tile));
  return j;
}

// ---------------------------------------------------------------------------
// Wang tile systems

WangSystem wts_from_json(const json& j) {
  WangSystem w;
  w.labels = string_list(need(j, "labels", "tile system"), "labels");
  w.colors = string_list(need(j, "colors", "tile system"), "colors");
  const json& tiles = need(j, "tiles", "tile system");
  if (!tiles.is_array()) fail("tile system.tiles: expected an array");
  for (size_t i = 0; i < tiles.size(); ++i) {
    const std::string what = "tiles[" + std::to_string(i) + "]";
    const json& tj = tiles[i];
    WangTile t;
    t.n = one_string(need(tj, "n", what), what + ".n");
    t.e = one_string(need(tj, "e", what), what + ".e");
    t.s = one_string(need(tj, "s", what), what + ".s");
    t.w = one_string(need(tj, "w", what), what + ".w");
    t.label = one_string(need(tj, "label", what), what + ".label");
    t.name = tj.contains("name") ? one_string(tj["name"], what + ".name")
                                 : "t" + std::to_string(i);
    w.tiles.push_back(std::move(t));
  }
  validate(w);
  return w;
}

json wts_to_json(const WangSystem& w) {
  json j;
  j["labels"] = w.labels;
  j["colors"] = w.colors;
  j["tiles"] = json::array();
  for (const WangTile& t : w.tiles) {
    json tj;
    tj["n"] = t.n;
    tj["e"] = t.e;
    tj["s"] = t.s;
    tj["w"] = t.w;
    tj["label"] = t.label;
    tj["name"] = t.name;
    j["tiles"].push_back(std::move(tj));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Graphs

Graph graph_from_json(const json& j) {
  const json& nodes = need(j, "nodes", "graph");
  if (!nodes.is_array()) fail("graph.nodes: expected an array");
  std::vector<std::string> ids, labels;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const std::string what = "graph.nodes[" + std::to_string(i) + "]";
    ids.push_back(one_string(need(nodes[i], "id", what), what + ".id"));
    labels.push_back(one_string(need(nodes[i], "label", what), what + ".label"));
  }
  const auto edges = [&](const char* key) {
    const json& arr = need(j, key, "graph");
    if (!arr.is_array()) fail(std::string("graph.") + key + ": expected an array");
    std::vector<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string what = std::string("graph.") + key + "[" + std::to_string(i) + "]";
      const std::vector<std::string> pair = string_list(arr[i], what);
      if (pair.size() != 2) fail(what + ": expected a [from, to] pair");
      out.emplace_back(pair[0], pair[1]);
    }
    return out;
  };
  return Graph::make(std::move(ids), std::move(labels), edges("v_edges"), edges("h_edges"));
}

json graph_to_json(const Graph& g) {
  json j;
  j["nodes"] = json::array();
  for (int i = 0; i < g.size(); ++i) {
    j["nodes"].push_back(json{{"id", g.id(i)}, {"label", g.label(i)}});
  }
  j["v_edges"] = json::array();
  for (const auto& [a, b] : g.vEdges()) {
    j["v_edges"].push_back(json::array({g.id(a), g.id(b)}));
  }
  j["h_edges"] = json::array();
  for (const auto& [a, b] : g.hEdges()) {
    j["h_edges"].push_back(json::array({g.id(a), g.id(b)}));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Automata

Automaton automaton_from_json(const json& j, const std::string& baseDir) {
  Automaton a;
  const json& g = need(j, "graph", "automaton");
  if (g.is_string()) {
    std::string path = g.get<std::string>();
    if (!baseDir.empty() && !path.empty() && path.front() != '/') {
      path = baseDir + "/" + path;
    }
    a.graph = graph_from_json(load_json_file(path));
  } else {
    a.graph = graph_from_json(g);
  }

  std::map<std::string, int> index;
  for (int i = 0; i < a.graph.size(); ++i) index[a.graph.id(i)] = i;
  const auto nodeList = [&](const json& arr, const std::string& what) {
    std::vector<int> out;
    for (const std::string& id : string_list(arr, what)) {
      const auto it = index.find(id);
      if (it == index.end()) fail(what + ": unknown node \"" + id + "\"");
      out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  const json& hyperedges = need(j, "hyperedges", "automaton");
  if (!hyperedges.is_array()) fail("automaton.hyperedges: expected an array");
  for (size_t i = 0; i < hyperedges.size(); ++i) {
    const std::string what = "hyperedges[" + std::to_string(i) + "]";
    const json& ej = hyperedges[i];
    Hyperedge e;
    e.id = one_string(need(ej, "id", what), what + ".id");
    e.nodes = nodeList(need(ej, "nodes", what), what + ".nodes");
    e.q1 = nodeList(need(ej, "in", what), what + ".in");
    e.q2 = nodeList(need(ej, "out", what), what + ".out");
    if (ej.contains("initial")) {
      if (!ej["initial"].is_boolean()) fail(what + ".initial: expected a boolean");
      e.initial = ej["initial"].get<bool>();
    }
    a.edges.push_back(std::move(e));
  }
  return a;
}

json automaton_to_json(const Automaton& a) {
  json j;
  j["graph"] = graph_to_json(a.graph);
  j["hyperedges"] = json::array();
  for (const Hyperedge& e : a.edges) {
    const auto names = [&](const std::vector<int>& v) {
      std::vector<std::string> out;
      for (int n : v) out.push_back(a.graph.id(n));
      return out;
    };
    json ej;
    ej["id"] = e.id;
    ej["nodes"] = names(e.nodes);
    ej["in"] = names(e.q1);
    ej["out"] = names(e.q2);
    ej["initial"] = e.initial;
    j["hyperedges"].push_back(std::move(ej));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Tilings

TiledPicture tiling_from_json(const json& j, const WangSystem& w) {
  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(w.tiles.size()); ++i) {
    index[w.tiles[i].name] = i;
  }
  const json& grid = need(j, "grid", "tiling");
  if (!grid.is_array() || grid.empty()) fail("tiling.grid: expected a non-empty array");
  TiledPicture t;
  for (size_t r = 0; r < grid.size(); ++r) {
    const std::string what = "tiling.grid[" + std::to_string(r) + "]";
    std::vector<int> row;
    for (const std::string& name : string_list(grid[r], what)) {
      const auto it = index.find(name);
      if (it == index.end()) fail(what + ": unknown tile \"" + name + "\"");
      row.push_back(it->second);
    }
    if (row.empty() || (r > 0 && row.size() != t.grid.front().size())) {
      fail("tiling.grid: rows must be non-empty and equally long");
    }
    t.grid.push_back(std::move(row));
  }
  return t;
}

json tiling_to_json(const TiledPicture& t, const WangSystem& w) {
  json grid = json::array();
  for (const auto& row : t.grid) {
    std::vector<std::string> names;
    for (int i : row) {
      if (i < 0 || i >= static_cast<int>(w.tiles.size())) {
        fail("tiling: tile index out of range");
      }
      names.push_back(w.tiles[i].name);
    }
    grid.push_back(names);
  }
  return json{{"grid", std::move(grid)}};
}

// ---------------------------------------------------------------------------
// Loop reports

json loop_report_to_json(const LoopReport& r) {
  json j;
  j["cycle"] = r.cycle;
  j["overlaps"] = r.overlaps;
  j["displacement"] = json::array({r.displacement.first, r.displacement.second});
  j["strong"] = r.strong;
  return j;
}

// ---------------------------------------------------------------------------
// Shape sniffing and file loading

ModelKind sniff_model(const json& j) {
  if (!j.is_object()) return ModelKind::Unknown;
  if (j.contains("hyperedges")) return ModelKind::Automaton;
  if (j.contains("pi") || j.contains("gamma") || j.contains("sigma")) {
    return ModelKind::Pts;
  }
  if (j.contains("labels") || j.contains("colors")) return ModelKind::Wts;
  if (j.contains("tiles")) {
    const json& tiles = j["tiles"];
    if (tiles.is_array() && !tiles.empty() && tiles[0].is_object()) {
      return ModelKind::Wts;
    }
    return ModelKind::Pts;
  }
  if (j.contains("rows") || j.contains("alphabet")) return ModelKind::Picture;
  return ModelKind::Unknown;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

}  // namespace gridlang
