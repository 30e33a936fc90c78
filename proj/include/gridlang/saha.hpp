#pragma once

// Self-assembly hypergraph automata: validation, configurations, the gluing
// transition, bounded derivation search, acceptance, and bounded language
// enumeration.
//
// A configuration is a connected full subgraph of the infinite grid, so it is
// stored as its cell map alone: position -> (origin node, active flag). Edges
// are implied by cell adjacency; materialize() rebuilds them explicitly.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridlang/grid_graph.hpp"
#include "gridlang/picture.hpp"

namespace gridlang {

struct Hyperedge {
  std::string id;
  std::vector<int> nodes;  // f(e): node indices into the underlying graph, sorted
  std::vector<int> q1;     // incoming, sorted
  std::vector<int> q2;     // outgoing, sorted
  bool initial = false;
};

struct Automaton {
  Graph graph;  // underlying pseudo-picture graph; labels give pi
  std::vector<Hyperedge> edges;

  int edgeIndexOf(const std::string& id) const;  // -1 when absent
};

// I_H(e): members of f(e) shared with at least one other hyperedge.
// Throws std::out_of_range on an unknown hyperedge index.
std::vector<int> intersecting_nodes(const Automaton& a, int edge);

// Empty iff the automaton is well-formed: per hyperedge, f(e) references valid
// distinct nodes, Q1/Q2 are subsets of f(e) and of I_H(e), G_e is a connected
// subgrid, and the Q1-induced subgraph of G_e is connected. One diagnostic per
// violation.
std::vector<std::string> validate(const Automaton& a);

struct Cell {
  int origin;   // node index in the underlying graph
  bool active;

  auto operator<=>(const Cell&) const = default;
};

struct Config {
  std::map<Pos, Cell> cells;

  bool finalState() const;  // no active cell
  auto operator<=>(const Config&) const = default;
};

// Translate so minimal row and column are both 1.
Config normalized(const Config& c);

// Compact canonical serialization of normalized(c); equal keys = equal
// configurations (and hence identical future behaviour).
std::string config_key(const Config& c);

// Explicit pseudo-picture graph: ids "r.c", labels looked up through origins.
Graph materialize(const Automaton& a, const Config& c);

// If the cells fill an exact rectangle, the represented picture.
std::optional<Picture> picture_of(const Automaton& a, const Config& c);

// One configuration per initial hyperedge: the cells of G_e's canonical
// embedding, active = Q2(e).
std::vector<Config> initial_configurations(const Automaton& a);

// A concrete gluing: hyperedge + rigid placement. The match is the map
// q |-> offset + embedding_{G_e}(q) for q in Q1; fresh copies of f(e)\Q1 land
// at the same translate of their embedding positions.
struct Gluing {
  int edge = -1;
  Pos offset{0, 0};
};

// Every gluing applicable to c, exhaustive and duplicate-free, in
// deterministic (edge, offset) order. Each returned gluing is valid: the
// matched cells are active with matching origins, fresh cells land on free
// cells, and the result is again a connected full subgrid.
std::vector<Gluing> applicable_gluings(const Automaton& a, const Config& c);

// Apply a gluing (in c's coordinate frame, no normalization). Returns nullopt
// and a diagnostic via *why when the gluing is invalid.
std::optional<Config> glue(const Automaton& a, const Config& c, const Gluing& g,
                           std::string* why = nullptr);

inline constexpr long long kDefaultMaxStates = 10'000'000;

struct SearchLimits {
  long long maxSteps = -1;                   // max gluings per derivation; -1 = unbounded
  long long maxStates = kDefaultMaxStates;   // distinct visited configurations
};

enum class Verdict { Accepted, Rejected, BoundExhausted };

struct AcceptResult {
  Verdict verdict = Verdict::Rejected;
  std::vector<std::string> trace;  // hyperedge ids, initial edge first (on accept)
};

// Exhaustive bounded search: accepted iff some derivation reaches an
// active-free configuration whose cells form exactly p. Complete within p's
// bounding box unless a limit is hit (then BoundExhausted instead of Rejected).
AcceptResult saha_accepts(const Automaton& a, const Picture& p,
                          const SearchLimits& limits = {});

struct EnumResult {
  std::vector<Picture> pictures;  // sorted, deduplicated
  bool complete = true;           // false iff a limit truncated the closure
};

// All pictures of accepted (picture-graph, active-free) configurations within
// maxH x maxW.
EnumResult saha_enumerate(const Automaton& a, int maxH, int maxW,
                          const SearchLimits& limits = {});

}  // namespace gridlang
