#pragma once

// Pictures: non-empty rectangular matrices of symbols, their framed versions,
// 2x2 picture tiles, and picture tile systems (local lattice languages).

#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gridlang {

// Reserved boundary symbol. Never a member of any alphabet.
inline const std::string kFrame = "#";

// Non-empty h x w matrix of symbols. Cells never contain the boundary symbol;
// framed() adds the boundary explicitly as a separate matrix.
class Picture {
public:
  // Throws std::invalid_argument if rows are empty, ragged, or contain "#".
  static Picture fromRows(std::vector<std::vector<std::string>> rows);

  int height() const { return static_cast<int>(rows_.size()); }
  int width() const { return static_cast<int>(rows_.front().size()); }
  const std::string& at(int r, int c) const { return rows_[r][c]; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  // Sorted distinct symbols occurring in the picture.
  std::vector<std::string> symbols() const;

  std::string render() const;  // ASCII, one row per line, cells space-separated

  auto operator<=>(const Picture&) const = default;

private:
  std::vector<std::vector<std::string>> rows_;
};

// (h+2) x (w+2) matrix: p surrounded by a one-cell "#" border.
std::vector<std::vector<std::string>> framed(const Picture& p);

// A 2x2 window over symbols and/or "#".
struct Tile2 {
  std::array<std::array<std::string, 2>, 2> cells;  // [row][col]

  const std::string& tl() const { return cells[0][0]; }
  const std::string& tr() const { return cells[0][1]; }
  const std::string& bl() const { return cells[1][0]; }
  const std::string& br() const { return cells[1][1]; }

  auto operator<=>(const Tile2&) const = default;
};

// All (h+1)*(w+1) 2x2 windows of framed(p).
std::set<Tile2> tiles_of(const Picture& p);

// Picture tile system T = (Sigma, Gamma, Delta, pi): local language over Gamma
// projected to Sigma through pi.
struct PictureTileSystem {
  std::vector<std::string> sigma;            // target alphabet, sorted
  std::vector<std::string> gamma;            // local alphabet, sorted
  std::map<std::string, std::string> pi;     // gamma -> sigma, total
  std::set<Tile2> tiles;                     // allowed 2x2 windows over gamma + "#"
};

// Throws std::invalid_argument on structural problems (pi not total on gamma,
// pi image outside sigma, tile cells outside gamma + "#", "#" in an alphabet).
void validate(const PictureTileSystem& t);

// True iff some picture q over gamma with tiles_of(q) subset of t.tiles has
// cellwise pi-image p.
bool pts_accepts(const PictureTileSystem& t, const Picture& p);

// All accepted pictures with height <= maxH and width <= maxW, sorted.
std::vector<Picture> pts_enumerate(const PictureTileSystem& t, int maxH, int maxW);

}  // namespace gridlang
