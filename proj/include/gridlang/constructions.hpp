#pragma once

// The two translations between Wang tile systems and self-assembly hypergraph
// automata, the mod-3 tile expansion, tile candidates, strong-loop analysis,
// and mask-based derivation reconstruction.

#include <set>
#include <string>
#include <vector>

#include "gridlang/saha.hpp"
#include "gridlang/wang.hpp"

namespace gridlang {

// ---------------------------------------------------------------------------
// WTS -> automaton direction

// Nine copies of every tile, indexed by (i,j) in {0,1,2}^2. Coloured glues
// carry both tags: south (c,i,j), north (c,(i-1)%3,j), east (c,i,j),
// west (c,i,(j-1)%3); "#" stays "#". Carrying both tags on every glue makes a
// horizontal contact force equal row tags and a vertical contact force equal
// column tags, which keeps the two derived edge sorts disjoint and every
// derived hyperedge graph exactly its intended shape.
WangSystem nine_copy_expand(const WangSystem& v);

// Tiles whose given side is uncoloured, per side.
struct BorderClasses {
  std::set<int> top, right, bottom, left;  // tile indices
};
BorderClasses border_classes(const WangSystem& w);

// Automaton with one node per expanded tile that accepts exactly the pictures
// the tile system accepts. prune=true additionally drops hyperedges touching
// nodes that cannot appear in any tiling-shaped assembly (off by default; the
// raw construction is the reference).
Automaton wts_to_saha(const WangSystem& v, bool prune = false);

// ---------------------------------------------------------------------------
// Strong loops

struct LoopReport {
  std::vector<std::string> cycle;     // hyperedge ids, first repeated last
  std::vector<std::string> overlaps;  // witness shared node per step
  Pos displacement{0, 0};
  bool strong = false;  // displacement == (0,0)
};

// Every simple cycle of the displacement multigraph over hyperedges: one arc
// per (e, e', shared node o in Q2(e) & Q1(e')), weighted by o's position in
// G_e minus its position in G_e'. Deterministic order.
std::vector<LoopReport> find_loops(const Automaton& a);

// The subset with displacement (0,0).
std::vector<LoopReport> find_strong_loops(const Automaton& a);

// ---------------------------------------------------------------------------
// Automaton -> WTS direction

// Every initial hyperedge gets Q1 = {} (splitting dual-use initial hyperedges
// into an initial copy and a plain transition copy); non-initial hyperedges
// with Q1 = {} are unusable and dropped. Bounded-language-equivalent.
Automaton normalize_initials(const Automaton& a);

struct TileCandidate {
  int node = -1;            // x
  std::vector<int> edges;   // psi: hyperedge indices, sorted
  int generator = -1;       // unique e in psi with x not in Q1(e)
  int consumer = -1;        // unique e in psi with x not in Q2(e)

  auto operator<=>(const TileCandidate&) const = default;
};

// Canonical encoding "<node id>|<edge id>,<edge id>,..." used for colours.
std::string candidate_key(const Automaton& a, const TileCandidate& c);

// All (x, psi) with psi a subset of the hyperedges containing x, exactly one
// generator and one consumer (psi a singleton when they coincide), and the
// union graph of {G_e : e in psi} injectively grid-embeddable. Requires a
// normalized automaton.
std::vector<TileCandidate> tile_candidates(const Automaton& a);

struct SahaToWts {
  WangSystem wts;
  Automaton normalized;                 // the automaton the tiles refer to
  std::vector<TileCandidate> candidates;
  std::vector<int> tileCandidate;       // wts.tiles index -> candidates index
};

// Wang system whose tilings are in bijection with the automaton's accepting
// derivations. Throws std::invalid_argument naming a strong loop when one
// exists (the construction is only defined without them).
SahaToWts saha_to_wts(const Automaton& a);

// ---------------------------------------------------------------------------
// Mask-based derivation reconstruction

struct Mask {
  int edge = -1;                       // related hyperedge (index in normalized)
  std::map<Pos, int> cells;            // covered cell -> G_e node mapped there
};

struct Reconstruction {
  std::vector<Mask> order;             // topologically sorted masks
  std::vector<std::string> trace;      // hyperedge ids, initial first
  Config finalConfig;                  // active-free; picture = labels_of(t)
};

// Rebuild an accepting derivation for a mismatch-free tiling t over
// conv.wts: compute the masks, order them generator-before-consumer, check
// acyclicity and the unique source, and replay them through the ordinary
// gluing engine. Throws std::invalid_argument on inputs that are not tilings
// of conv.wts and std::logic_error on internal inconsistencies.
Reconstruction reconstruct_derivation(const SahaToWts& conv, const TiledPicture& t);

}  // namespace gridlang
