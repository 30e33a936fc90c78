#pragma once

// Labelled Wang tiles, Wang tile systems, mismatch-free tilings, the
// membership recognizer, and bounded language enumeration.
//
// A tiling of an h x w picture assigns one tile per cell such that every
// interior shared side carries the same colour from C (an uncoloured "#"
// contact is a mismatch) and every outer side is "#".

#include <optional>
#include <string>
#include <vector>

#include "gridlang/picture.hpp"

namespace gridlang {

struct WangTile {
  std::string n, e, s, w;  // edge colours; "#" = uncoloured
  std::string label;
  std::string name;  // stable identity; distinct tiles may share all colours
};

struct WangSystem {
  std::vector<std::string> labels;  // Sigma
  std::vector<std::string> colors;  // C; never contains "#"
  std::vector<WangTile> tiles;      // Theta, identified by name
};

// Throws std::invalid_argument on: "#" in colors, duplicate/empty tile names,
// tile colours outside C+{"#"}, or tile labels outside Sigma.
void validate(const WangSystem& w);

// A concrete tiling: grid of indices into WangSystem::tiles.
struct TiledPicture {
  std::vector<std::vector<int>> grid;  // h rows of w tile indices

  int height() const { return static_cast<int>(grid.size()); }
  int width() const { return grid.empty() ? 0 : static_cast<int>(grid.front().size()); }
};

// First violated constraint of a candidate grid, or nullopt when the grid is
// mismatch-free with a well-formed "#" border.
std::optional<std::string> tiling_violation(const WangSystem& w, const TiledPicture& t);

// Label projection lambda(t).
Picture labels_of(const WangSystem& w, const TiledPicture& t);

// True iff some mismatch-free, well-bordered tiling projects to p; the
// witness tiling is returned when one exists.
bool wts_accepts(const WangSystem& w, const Picture& p, TiledPicture* witness = nullptr);

// All accepted pictures with h <= maxH, w <= maxW, sorted and deduplicated.
std::vector<Picture> wts_enumerate(const WangSystem& w, int maxH, int maxW);

// All mismatch-free, well-bordered tilings within the bounds (tile-level, not
// deduplicated by label projection), in deterministic order.
std::vector<TiledPicture> wts_enumerate_tilings(const WangSystem& w, int maxH, int maxW);

}  // namespace gridlang
