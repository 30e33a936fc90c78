#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "fixtures.hpp"
#include "gridlang/wang.hpp"

using namespace gridlang;

namespace {

TiledPicture tiled(const WangSystem& w, const std::vector<std::vector<std::string>>& names) {
  TiledPicture t;
  for (const auto& row : names) {
    std::vector<int> r;
    for (const std::string& name : row) {
      int idx = -1;
      for (std::size_t i = 0; i < w.tiles.size(); ++i)
        if (w.tiles[i].name == name) idx = static_cast<int>(i);
      REQUIRE(idx >= 0);
      r.push_back(idx);
    }
    t.grid.push_back(std::move(r));
  }
  return t;
}

}  // namespace

TEST_CASE("system validation rejects structural defects") {
  WangSystem w = fixtures::domino_wts();
  w.colors.push_back("#");
  CHECK_THROWS_AS(validate(w), std::invalid_argument);

  w = fixtures::domino_wts();
  w.tiles[1].name = "t0";  // duplicate
  CHECK_THROWS_AS(validate(w), std::invalid_argument);

  w = fixtures::domino_wts();
  w.tiles[0].name = "";
  CHECK_THROWS_AS(validate(w), std::invalid_argument);

  w = fixtures::domino_wts();
  w.tiles[0].e = "zzz";  // colour outside C
  CHECK_THROWS_AS(validate(w), std::invalid_argument);

  w = fixtures::domino_wts();
  w.tiles[0].label = "z";  // label outside Sigma
  CHECK_THROWS_AS(validate(w), std::invalid_argument);
}

TEST_CASE("tiling violations: borders must be #, interiors must share a colour") {
  const WangSystem w = fixtures::domino_wts();

  CHECK(tiling_violation(w, tiled(w, {{"t0", "t1"}})) == std::nullopt);

  // t0 alone leaves an interior colour on the outer border.
  CHECK(tiling_violation(w, tiled(w, {{"t0"}})).has_value());
  // t0|t0 abuts colour c against the uncoloured side #.
  CHECK(tiling_violation(w, tiled(w, {{"t0", "t0"}})).has_value());
  // Vertical stacking forces coloured east sides onto the border.
  CHECK(tiling_violation(w, tiled(w, {{"t0"}, {"t0"}})).has_value());

  CHECK(labels_of(w, tiled(w, {{"t0", "t1"}})) ==
        Picture::fromRows({{"a", "b"}}));
}

TEST_CASE("membership for the tiny fixtures") {
  const WangSystem s = fixtures::singleton_wts();
  CHECK(wts_accepts(s, Picture::fromRows({{"a"}})));
  CHECK_FALSE(wts_accepts(s, fixtures::all_a(1, 2)));
  CHECK_FALSE(wts_accepts(s, fixtures::all_a(2, 1)));

  const WangSystem d = fixtures::domino_wts();
  CHECK(wts_accepts(d, Picture::fromRows({{"a", "b"}})));
  CHECK_FALSE(wts_accepts(d, Picture::fromRows({{"b", "a"}})));
  CHECK_FALSE(wts_accepts(d, Picture::fromRows({{"a"}})));
  CHECK_FALSE(wts_accepts(d, Picture::fromRows({{"a", "b"}, {"a", "b"}})));
}

TEST_CASE("the 13-tile system accepts exactly the squares of size >= 3") {
  const WangSystem w = fixtures::diagonal13_wts();
  CHECK_FALSE(wts_accepts(w, fixtures::all_a(1, 1)));
  CHECK_FALSE(wts_accepts(w, fixtures::all_a(2, 2)));
  CHECK(wts_accepts(w, fixtures::all_a(3, 3)));
  CHECK(wts_accepts(w, fixtures::all_a(4, 4)));
  CHECK(wts_accepts(w, fixtures::all_a(5, 5)));
  CHECK_FALSE(wts_accepts(w, fixtures::all_a(3, 4)));
  CHECK_FALSE(wts_accepts(w, fixtures::all_a(4, 3)));
}

TEST_CASE("witnesses are valid tilings projecting to the picture") {
  const WangSystem w = fixtures::diagonal13_wts();
  const Picture p = fixtures::all_a(3, 3);
  TiledPicture witness;
  REQUIRE(wts_accepts(w, p, &witness));
  CHECK(tiling_violation(w, witness) == std::nullopt);
  CHECK(labels_of(w, witness) == p);

  // The 3x3 tiling is unique; freeze it.
  CHECK(witness.grid == tiled(w, {{"d1", "d2", "d3"},
                                  {"d4", "d7", "d13"},
                                  {"d6", "d10", "d12"}}).grid);
}

TEST_CASE("bounded enumeration agrees with membership") {
  CHECK(wts_enumerate(fixtures::singleton_wts(), 2, 2) ==
        std::vector<Picture>{Picture::fromRows({{"a"}})});

  CHECK(wts_enumerate(fixtures::domino_wts(), 2, 3) ==
        std::vector<Picture>{Picture::fromRows({{"a", "b"}})});

  CHECK(wts_enumerate(fixtures::diagonal13_wts(), 4, 4) ==
        std::vector<Picture>{fixtures::all_a(3, 3), fixtures::all_a(4, 4)});

  CHECK(wts_enumerate(fixtures::diagonal14_wts(), 4, 4) ==
        std::vector<Picture>{fixtures::all_a(2, 2), fixtures::all_a(3, 3),
                             fixtures::all_a(4, 4)});
}

TEST_CASE("the 14-tile system and the window system define the same language") {
  CHECK(wts_enumerate(fixtures::diagonal14_wts(), 5, 5) ==
        pts_enumerate(fixtures::diagonal_pts(), 5, 5));
}

TEST_CASE("tiling enumeration lists every witness") {
  const std::vector<TiledPicture> dominoTilings =
      wts_enumerate_tilings(fixtures::domino_wts(), 1, 2);
  REQUIRE(dominoTilings.size() == 1);
  CHECK(labels_of(fixtures::domino_wts(), dominoTilings[0]) ==
        Picture::fromRows({{"a", "b"}}));

  // The diagonal squares have a unique tiling per size.
  CHECK(wts_enumerate_tilings(fixtures::diagonal13_wts(), 4, 4).size() == 2);
}
