#pragma once

// Pseudo-picture graphs (node-labelled digraphs with disjoint vertical and
// horizontal edge sorts), canonical grid embeddings, subgrid / picture-graph
// predicates, and the graph -> picture projection.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridlang/picture.hpp"

namespace gridlang {

// Matrix coordinates: (row, col). A v-edge steps (+1,0) (down), an h-edge
// steps (0,+1) (right).
using Pos = std::pair<int, int>;

inline Pos operator+(Pos a, Pos b) { return {a.first + b.first, a.second + b.second}; }
inline Pos operator-(Pos a, Pos b) { return {a.first - b.first, a.second - b.second}; }

class Graph {
public:
  // Throws std::invalid_argument on duplicate ids, unknown edge endpoints,
  // overlapping edge sorts (a (from,to) pair may not be both v and h),
  // duplicate edges within a sort, or a label equal to "#".
  static Graph make(std::vector<std::string> ids, std::vector<std::string> labels,
                    std::vector<std::pair<std::string, std::string>> vEdges,
                    std::vector<std::pair<std::string, std::string>> hEdges);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int n) const { return ids_[n]; }
  const std::string& label(int n) const { return labels_[n]; }
  const std::vector<std::string>& ids() const { return ids_; }
  int indexOf(const std::string& id) const;  // -1 when absent

  const std::vector<std::pair<int, int>>& vEdges() const { return vEdges_; }
  const std::vector<std::pair<int, int>>& hEdges() const { return hEdges_; }

private:
  std::vector<std::string> ids_;
  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> vEdges_, hEdges_;
};

// Result of attempting a rigid grid embedding.
struct Embedding {
  bool ok = false;
  std::map<int, Pos> pos;  // node index -> position, minima normalized to 1
  std::string error;       // first conflict when !ok
};

// Unique translation-normalized embedding of a connected graph into the grid.
// Fails (with a diagnostic) when the graph is empty, disconnected, an edge
// constraint conflicts, two nodes collide on one cell, or - unless
// requireFull is false - two embedded nodes sit at grid distance 1 without
// the corresponding edge (the full-subgraph requirement for subgrids).
Embedding canonical_embedding(const Graph& g, bool requireFull = true);

// Connected + canonical_embedding succeeds (full). Empty graph: false.
bool is_subgrid(const Graph& g);

// Shape (rows, cols) when the embedding exists and covers exactly a full
// rectangle; nullopt otherwise.
std::optional<std::pair<int, int>> is_picture_graph(const Graph& g);

// Labels of a picture graph read off as a picture. Throws std::invalid_argument
// if g is not a picture graph.
Picture picture_of(const Graph& g);

// Node-induced subgraph: nodes = subset (indices into g), edges of g with both
// endpoints inside, labels restricted. Ids survive unchanged.
Graph induced_subgraph(const Graph& g, const std::vector<int>& subset);

// Full grid graph of a picture: node at (r,c) labelled p(r,c), all unit v/h
// edges. Node ids are "r.c" (1-based).
Graph grid_graph_of(const Picture& p);

}  // namespace gridlang
