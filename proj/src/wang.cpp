#include "gridlang/wang.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace gridlang {

void validate(const WangSystem& w) {
  std::set<std::string> labels, colors, names;
  for (const auto& s : w.labels) {
    if (s.empty() || s == kFrame)
      throw std::invalid_argument("wts labels: empty or reserved symbol");
    if (!labels.insert(s).second)
      throw std::invalid_argument("wts labels: duplicate '" + s + "'");
  }
  for (const auto& c : w.colors) {
    if (c.empty()) throw std::invalid_argument("wts colors: empty colour");
    if (c == kFrame) throw std::invalid_argument("wts colors: '#' is reserved for uncoloured");
    if (!colors.insert(c).second)
      throw std::invalid_argument("wts colors: duplicate '" + c + "'");
  }
  for (const auto& t : w.tiles) {
    if (t.name.empty()) throw std::invalid_argument("wts tile: empty name");
    if (!names.insert(t.name).second)
      throw std::invalid_argument("wts tiles: duplicate name '" + t.name + "'");
    for (const std::string* side : {&t.n, &t.e, &t.s, &t.w})
      if (*side != kFrame && !colors.count(*side))
        throw std::invalid_argument("wts tile '" + t.name + "': colour '" + *side +
                                    "' outside the colour set");
    if (!labels.count(t.label))
      throw std::invalid_argument("wts tile '" + t.name + "': label '" + t.label +
                                  "' outside the label set");
  }
}

std::optional<std::string> tiling_violation(const WangSystem& w, const TiledPicture& t) {
  const int h = t.height(), wd = t.width();
  if (h == 0 || wd == 0) return "tiling: empty grid";
  for (const auto& row : t.grid) {
    if (static_cast<int>(row.size()) != wd) return "tiling: ragged rows";
    for (int idx : row)
      if (idx < 0 || idx >= static_cast<int>(w.tiles.size()))
        return "tiling: tile index out of range";
  }
  auto at = [&](int r, int c) -> const WangTile& { return w.tiles[t.grid[r][c]]; };
  auto cell = [](int r, int c) {
    return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
  };
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < wd; ++c) {
      const WangTile& tile = at(r, c);
      if (r == 0 && tile.n != kFrame) return "tiling: north border not uncoloured at " + cell(r, c);
      if (r == h - 1 && tile.s != kFrame)
        return "tiling: south border not uncoloured at " + cell(r, c);
      if (c == 0 && tile.w != kFrame) return "tiling: west border not uncoloured at " + cell(r, c);
      if (c == wd - 1 && tile.e != kFrame)
        return "tiling: east border not uncoloured at " + cell(r, c);
      if (r + 1 < h && (tile.s == kFrame || tile.s != at(r + 1, c).n))
        return "tiling: vertical mismatch between " + cell(r, c) + " and " + cell(r + 1, c);
      if (c + 1 < wd && (tile.e == kFrame || tile.e != at(r, c + 1).w))
        return "tiling: horizontal mismatch between " + cell(r, c) + " and " + cell(r, c + 1);
    }
  return std::nullopt;
}

Picture labels_of(const WangSystem& w, const TiledPicture& t) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : t.grid) {
    rows.emplace_back();
    for (int idx : row) rows.back().push_back(w.tiles[idx].label);
  }
  return Picture::fromRows(std::move(rows));
}

namespace {

// Row-major backtracking. Each cell's north and west sides are already fixed
// (to "#" on the border), so candidates are bucketed by that colour pair;
// south/east are constrained only on the far borders. target restricts each
// cell's label. sink returns false to stop the whole search.
void search_tilings(const WangSystem& w, int h, int wd, const Picture* target,
                    const std::function<bool(const TiledPicture&)>& sink) {
  std::map<std::pair<std::string, std::string>, std::vector<int>> byNorthWest;
  for (int i = 0; i < static_cast<int>(w.tiles.size()); ++i)
    byNorthWest[{w.tiles[i].n, w.tiles[i].w}].push_back(i);

  TiledPicture t;
  t.grid.assign(h, std::vector<int>(wd, -1));

  std::function<bool(int, int)> place = [&](int r, int c) -> bool {
    if (r == h) return sink(t);
    const int nr = (c == wd - 1) ? r + 1 : r;
    const int nc = (c == wd - 1) ? 0 : c + 1;
    const std::string& needN = (r == 0) ? kFrame : w.tiles[t.grid[r - 1][c]].s;
    const std::string& needW = (c == 0) ? kFrame : w.tiles[t.grid[r][c - 1]].e;
    if (r > 0 && needN == kFrame) return true;  // upper tile already dead-ends
    if (c > 0 && needW == kFrame) return true;
    auto bucket = byNorthWest.find({needN, needW});
    if (bucket == byNorthWest.end()) return true;
    for (int i : bucket->second) {
      const WangTile& tile = w.tiles[i];
      if (r == h - 1 && tile.s != kFrame) continue;
      if (r < h - 1 && tile.s == kFrame) continue;
      if (c == wd - 1 && tile.e != kFrame) continue;
      if (c < wd - 1 && tile.e == kFrame) continue;
      if (target && tile.label != target->at(r, c)) continue;
      t.grid[r][c] = i;
      if (!place(nr, nc)) return false;
    }
    t.grid[r][c] = -1;
    return true;
  };

  place(0, 0);
}

}  // namespace

bool wts_accepts(const WangSystem& w, const Picture& p, TiledPicture* witness) {
  bool found = false;
  search_tilings(w, p.height(), p.width(), &p, [&](const TiledPicture& t) {
    found = true;
    if (witness) *witness = t;
    return false;
  });
  return found;
}

std::vector<Picture> wts_enumerate(const WangSystem& w, int maxH, int maxW) {
  std::set<Picture> out;
  for (int h = 1; h <= maxH; ++h)
    for (int wd = 1; wd <= maxW; ++wd)
      search_tilings(w, h, wd, nullptr, [&](const TiledPicture& t) {
        out.insert(labels_of(w, t));
        return true;
      });
  return {out.begin(), out.end()};
}

std::vector<TiledPicture> wts_enumerate_tilings(const WangSystem& w, int maxH, int maxW) {
  std::vector<TiledPicture> out;
  for (int h = 1; h <= maxH; ++h)
    for (int wd = 1; wd <= maxW; ++wd)
      search_tilings(w, h, wd, nullptr, [&](const TiledPicture& t) {
        out.push_back(t);
        return true;
      });
  return out;
}

}  // namespace gridlang
