#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gridlang/constructions.hpp"

using namespace gridlang;

namespace {

std::set<std::string> candidate_keys(const Automaton& a) {
  std::set<std::string> keys;
  for (const TileCandidate& c : tile_candidates(a)) keys.insert(candidate_key(a, c));
  return keys;
}

std::vector<std::string> edge_ids(const Automaton& a) {
  std::vector<std::string> ids;
  for (const Hyperedge& e : a.edges) ids.push_back(e.id);
  return ids;
}

}  // namespace

TEST_CASE("nine-copy expansion: counts, names, and tag arithmetic") {
  const WangSystem d = fixtures::domino_wts();
  const WangSystem e = nine_copy_expand(d);
  REQUIRE(e.tiles.size() == 18);
  CHECK(e.colors.size() == 9);  // one colour, nine tag pairs
  CHECK(e.labels == d.labels);

  // Copy (i,j) of tile t sits at index 9t + 3i + j.
  const WangTile& t0_12 = e.tiles[9 * 0 + 3 * 1 + 2];
  CHECK(t0_12.name == "t0@12");
  CHECK(t0_12.n == "#");
  CHECK(t0_12.s == "#");
  CHECK(t0_12.w == "#");
  CHECK(t0_12.e == "12:c");  // east keeps its own tags

  const WangTile& t1_12 = e.tiles[9 * 1 + 3 * 1 + 2];
  CHECK(t1_12.w == "11:c");  // west looks left: column tag j-1 mod 3

  const WangSystem s9 = nine_copy_expand(fixtures::singleton_wts());
  CHECK(s9.tiles.size() == 9);
  std::set<std::string> names;
  for (const WangTile& t : s9.tiles) names.insert(t.name);
  CHECK(names.size() == 9);  // identical colour tuples, distinct identities

  CHECK(nine_copy_expand(fixtures::diagonal13_wts()).tiles.size() == 117);
}

TEST_CASE("nine-copy expansion preserves the bounded language") {
  for (const WangSystem& w : {fixtures::singleton_wts(), fixtures::domino_wts(),
                              fixtures::diagonal13_wts()}) {
    CHECK(wts_enumerate(nine_copy_expand(w), 3, 3) == wts_enumerate(w, 3, 3));
  }
}

TEST_CASE("expanded tiles never match a copy of themselves") {
  const WangSystem e = nine_copy_expand(fixtures::diagonal13_wts());
  for (const WangTile& u : e.tiles) {
    for (const WangTile& v : e.tiles) {
      if (u.e != "#" && u.e == v.w) CHECK(u.name != v.name);
      if (u.s != "#" && u.s == v.n) CHECK(u.name != v.name);
    }
  }
}

TEST_CASE("border classes list the tiles with an uncoloured side") {
  const BorderClasses b = border_classes(fixtures::diagonal13_wts());
  CHECK(b.top == std::set<int>{0, 1, 2});
  CHECK(b.bottom == std::set<int>{5, 9, 10, 11});
  CHECK(b.left == std::set<int>{0, 3, 4, 5});
  CHECK(b.right == std::set<int>{2, 11, 12});
}

TEST_CASE("tile systems convert to automata with the same bounded language") {
  const Automaton s = wts_to_saha(fixtures::singleton_wts());
  CHECK(validate(s).empty());
  CHECK(s.graph.size() == 9);
  const EnumResult se = saha_enumerate(s, 2, 2);
  CHECK(se.complete);
  CHECK(se.pictures == std::vector<Picture>{Picture::fromRows({{"a"}})});

  const Automaton d = wts_to_saha(fixtures::domino_wts());
  CHECK(validate(d).empty());
  CHECK(d.graph.size() == 18);
  CHECK(d.edges.size() == 36);
  const EnumResult de = saha_enumerate(d, 2, 3);
  CHECK(de.complete);
  CHECK(de.pictures == std::vector<Picture>{Picture::fromRows({{"a", "b"}})});

  const Automaton g = wts_to_saha(fixtures::diagonal13_wts());
  CHECK(validate(g).empty());
  const EnumResult ge = saha_enumerate(g, 4, 4);
  CHECK(ge.complete);
  CHECK(ge.pictures == wts_enumerate(fixtures::diagonal13_wts(), 4, 4));
}

TEST_CASE("pruning dead tiles keeps the language") {
  for (const WangSystem& w : {fixtures::domino_wts(), fixtures::diagonal13_wts()}) {
    const Automaton full = wts_to_saha(w, false);
    const Automaton pruned = wts_to_saha(w, true);
    CHECK(validate(pruned).empty());
    CHECK(pruned.graph.size() <= full.graph.size());
    CHECK(saha_enumerate(pruned, 3, 3).pictures == saha_enumerate(full, 3, 3).pictures);
  }
}

TEST_CASE("displacement loops of the chain automaton") {
  const std::vector<LoopReport> loops = find_loops(fixtures::chain_automaton());
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].cycle == std::vector<std::string>{"e1", "e2", "e3", "e1"});
  CHECK(loops[0].overlaps == std::vector<std::string>{"x2", "x3", "x1"});
  CHECK(loops[0].displacement == Pos{0, 3});
  CHECK_FALSE(loops[0].strong);
  CHECK(find_strong_loops(fixtures::chain_automaton()).empty());
}

TEST_CASE("zero-displacement loops are strong") {
  const std::vector<LoopReport> loops = find_loops(fixtures::self_loop_automaton());
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].cycle == std::vector<std::string>{"loop", "loop"});
  CHECK(loops[0].displacement == Pos{0, 0});
  CHECK(loops[0].strong);
  CHECK(find_strong_loops(fixtures::self_loop_automaton()).size() == 1);

  CHECK(find_loops(fixtures::fanout_automaton()).empty());
  CHECK(find_loops(fixtures::two_init_automaton()).empty());
}

TEST_CASE("normalization splits seeding transitions and keeps the language") {
  const Automaton chain = fixtures::chain_automaton();
  const Automaton norm = normalize_initials(chain);
  CHECK(edge_ids(norm) ==
        std::vector<std::string>{"e1_init", "e1_step", "e2", "e3", "e4"});
  CHECK(norm.edges[0].initial);
  CHECK(norm.edges[0].q1.empty());
  CHECK(norm.edges[0].q2 == std::vector<int>{norm.graph.indexOf("x2")});
  CHECK_FALSE(norm.edges[1].initial);
  CHECK(norm.edges[1].q1 == std::vector<int>{norm.graph.indexOf("x1")});
  CHECK(validate(norm).empty());

  CHECK(saha_enumerate(norm, 1, 12).pictures ==
        saha_enumerate(chain, 1, 12).pictures);

  // Idempotent: nothing left to split.
  CHECK(edge_ids(normalize_initials(norm)) == edge_ids(norm));

  // Unreachable transitions (never initial, empty q1) are dropped.
  Automaton stuck = chain;
  stuck.edges[0].initial = false;
  stuck.edges[0].q1.clear();
  stuck.edges[0].q2 = {stuck.graph.indexOf("x2")};
  CHECK(edge_ids(normalize_initials(stuck)) ==
        std::vector<std::string>{"e2", "e3", "e4"});

  // Fresh ids avoid collisions with existing ones.
  Automaton clash = chain;
  clash.edges[1].id = "e1_init";
  const std::vector<std::string> ids = edge_ids(normalize_initials(clash));
  CHECK(ids.size() == 5);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == 5);
}

TEST_CASE("tile candidates of the normalized chain") {
  const Automaton norm = normalize_initials(fixtures::chain_automaton());
  CHECK(candidate_keys(norm) ==
        std::set<std::string>{"x1|e1_init", "x1|e1_step,e3", "x2|e1_init,e2",
                              "x2|e1_init,e4", "x2|e1_step,e2", "x2|e1_step,e4",
                              "x3|e4", "x3|e2,e3"});
}

TEST_CASE("tile candidates of the remaining fixtures") {
  CHECK(candidate_keys(fixtures::two_init_automaton()) ==
        std::set<std::string>{"u1|eU", "u2|eU", "w1|eW1", "w2|eW1,eW2", "w3|eW2"});

  CHECK(candidate_keys(fixtures::fanout_automaton()) ==
        std::set<std::string>{"x1|e1", "x2|e1", "x3|e1,e2", "x3|e1,e3",
                              "x4|e1,e2", "x4|e1,e3", "x5|e2", "x6|e2",
                              "x7|e3", "x8|e3"});
}

TEST_CASE("the chain converts to a 12-tile system over 9 colours") {
  const SahaToWts conv = saha_to_wts(fixtures::chain_automaton());
  CHECK(conv.candidates.size() == 8);
  CHECK(conv.wts.colors.size() == 9);
  CHECK(conv.wts.tiles.size() == 12);
  REQUIRE(conv.tileCandidate.size() == 12);

  // The unique vertical-free system: every tile keeps # above and below.
  for (const WangTile& t : conv.wts.tiles) {
    CHECK(t.n == "#");
    CHECK(t.s == "#");
  }

  // The wrap colour admitting x3-then-x1 is the only one on that edge pair.
  const std::string wrap = "x1|e1_step,e3 & x3|e2,e3";
  CHECK(std::count(conv.wts.colors.begin(), conv.wts.colors.end(), wrap) == 1);

  CHECK(wts_enumerate(conv.wts, 1, 12) ==
        saha_enumerate(fixtures::chain_automaton(), 1, 12).pictures);
  CHECK(wts_enumerate(conv.wts, 2, 6) ==
        saha_enumerate(fixtures::chain_automaton(), 2, 6).pictures);
}

TEST_CASE("the fan-out automaton converts faithfully") {
  const SahaToWts conv = saha_to_wts(fixtures::fanout_automaton());
  CHECK(conv.candidates.size() == 10);
  CHECK(conv.wts.colors.size() == 13);
  CHECK(conv.wts.tiles.size() == 12);
  CHECK(wts_enumerate(conv.wts, 4, 4) ==
        saha_enumerate(fixtures::fanout_automaton(), 4, 4).pictures);
}

TEST_CASE("the two-seed automaton converts faithfully") {
  const SahaToWts conv = saha_to_wts(fixtures::two_init_automaton());
  CHECK(conv.candidates.size() == 5);
  CHECK(conv.wts.colors.size() == 3);
  CHECK(conv.wts.tiles.size() == 5);
  CHECK(wts_enumerate(conv.wts, 2, 3) ==
        saha_enumerate(fixtures::two_init_automaton(), 2, 3).pictures);
}

TEST_CASE("strong loops block the conversion") {
  CHECK_THROWS_WITH_AS(saha_to_wts(fixtures::self_loop_automaton()),
                       doctest::Contains("strong loop"), std::invalid_argument);
}

TEST_CASE("derivations are reconstructible from tilings") {
  const SahaToWts conv = saha_to_wts(fixtures::chain_automaton());
  const std::vector<TiledPicture> tilings = wts_enumerate_tilings(conv.wts, 1, 12);
  REQUIRE(tilings.size() == 4);  // one tiling per width 3, 6, 9, 12

  for (const TiledPicture& t : tilings) {
    const Reconstruction rec = reconstruct_derivation(conv, t);
    const int width = t.width();
    CHECK(static_cast<int>(rec.order.size()) == width - 1);
    CHECK(picture_of(conv.normalized, rec.finalConfig) == labels_of(conv.wts, t));
    CHECK(rec.finalConfig.finalState());
    if (width == 3)
      CHECK(rec.trace == std::vector<std::string>{"e1_init", "e4"});
    if (width == 6)
      CHECK(rec.trace ==
            std::vector<std::string>{"e1_init", "e2", "e3", "e1_step", "e4"});
  }
}

TEST_CASE("reconstruction rejects tilings that are not valid") {
  const SahaToWts conv = saha_to_wts(fixtures::chain_automaton());
  std::vector<TiledPicture> tilings = wts_enumerate_tilings(conv.wts, 1, 3);
  REQUIRE(tilings.size() == 1);
  TiledPicture broken = tilings[0];
  std::swap(broken.grid[0][0], broken.grid[0][2]);
  CHECK_THROWS_AS(reconstruct_derivation(conv, broken), std::invalid_argument);
}
