#include "gridlang/picture.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace gridlang {

Picture Picture::fromRows(std::vector<std::vector<std::string>> rows) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("picture: must have at least one row and one column");
  const size_t w = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != w) throw std::invalid_argument("picture: ragged rows");
    for (const auto& cell : row) {
      if (cell.empty()) throw std::invalid_argument("picture: empty symbol");
      if (cell == kFrame) throw std::invalid_argument("picture: reserved symbol '#' in cell");
    }
  }
  Picture p;
  p.rows_ = std::move(rows);
  return p;
}

std::vector<std::string> Picture::symbols() const {
  std::set<std::string> out;
  for (const auto& row : rows_) out.insert(row.begin(), row.end());
  return {out.begin(), out.end()};
}

std::string Picture::render() const {
  std::string out;
  for (const auto& row : rows_) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> framed(const Picture& p) {
  const int h = p.height(), w = p.width();
  std::vector<std::vector<std::string>> f(h + 2, std::vector<std::string>(w + 2, kFrame));
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) f[r + 1][c + 1] = p.at(r, c);
  return f;
}

std::set<Tile2> tiles_of(const Picture& p) {
  const auto f = framed(p);
  std::set<Tile2> out;
  for (size_t i = 0; i + 1 < f.size(); ++i)
    for (size_t j = 0; j + 1 < f[i].size(); ++j)
      out.insert(Tile2{{{{f[i][j], f[i][j + 1]}, {f[i + 1][j], f[i + 1][j + 1]}}}});
  return out;
}

void validate(const PictureTileSystem& t) {
  auto checkAlphabet = [](const std::vector<std::string>& a, const char* name) {
    std::set<std::string> seen;
    for (const auto& s : a) {
      if (s.empty() || s == kFrame)
        throw std::invalid_argument(std::string(name) + ": empty or reserved symbol");
      if (!seen.insert(s).second)
        throw std::invalid_argument(std::string(name) + ": duplicate symbol '" + s + "'");
    }
  };
  checkAlphabet(t.sigma, "pts sigma");
  checkAlphabet(t.gamma, "pts gamma");

  const std::set<std::string> sigma(t.sigma.begin(), t.sigma.end());
  const std::set<std::string> gamma(t.gamma.begin(), t.gamma.end());
  for (const auto& g : t.gamma) {
    auto it = t.pi.find(g);
    if (it == t.pi.end())
      throw std::invalid_argument("pts pi: no image for '" + g + "'");
    if (!sigma.count(it->second))
      throw std::invalid_argument("pts pi: image '" + it->second + "' outside sigma");
  }
  for (const auto& [key, val] : t.pi) {
    (void)val;
    if (!gamma.count(key))
      throw std::invalid_argument("pts pi: key '" + key + "' outside gamma");
  }
  for (const auto& tile : t.tiles)
    for (const auto& row : tile.cells)
      for (const auto& cell : row)
        if (cell != kFrame && !gamma.count(cell))
          throw std::invalid_argument("pts tile cell '" + cell + "' outside gamma");
}

namespace {

// Backtracking over gamma-labelings of an h x w grid. Every 2x2 window of the
// framed grid is checked as soon as its last cell is placed (cells are filled
// row-major, so the still-open windows touch only unfilled cells). When
// target is given, cell (r,c) is restricted to symbols with
// pi(symbol) == target(r,c). sink receives each complete labeling and returns
// false to stop the whole search.
bool search_labelings(
    const PictureTileSystem& t, int h, int w, const Picture* target,
    const std::function<bool(const std::vector<std::vector<std::string>>&)>& sink) {
  std::vector<std::vector<std::string>> f(h + 2, std::vector<std::string>(w + 2, kFrame));

  auto windowOk = [&](int i, int j) {
    return t.tiles.count(Tile2{{{{f[i][j], f[i][j + 1]}, {f[i + 1][j], f[i + 1][j + 1]}}}}) > 0;
  };

  // Returns false when the sink asked to stop.
  std::function<bool(int, int)> place = [&](int r, int c) -> bool {
    if (r == h) {
      std::vector<std::vector<std::string>> q(h, std::vector<std::string>(w));
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) q[i][j] = f[i + 1][j + 1];
      return sink(q);
    }
    const int nr = (c == w - 1) ? r + 1 : r;
    const int nc = (c == w - 1) ? 0 : c + 1;
    for (const auto& g : t.gamma) {
      if (target && t.pi.at(g) != target->at(r, c)) continue;
      f[r + 1][c + 1] = g;
      bool ok = windowOk(r, c);
      if (ok && c == w - 1) ok = windowOk(r, w);
      if (ok && r == h - 1) ok = windowOk(h, c);
      if (ok && r == h - 1 && c == w - 1) ok = windowOk(h, w);
      if (ok && !place(nr, nc)) return false;
    }
    f[r + 1][c + 1] = kFrame;
    return true;
  };

  return place(0, 0);
}

}  // namespace

bool pts_accepts(const PictureTileSystem& t, const Picture& p) {
  bool found = false;
  search_labelings(t, p.height(), p.width(), &p, [&](const auto&) {
    found = true;
    return false;  // one witness is enough
  });
  return found;
}

std::vector<Picture> pts_enumerate(const PictureTileSystem& t, int maxH, int maxW) {
  std::set<Picture> out;
  for (int h = 1; h <= maxH; ++h)
    for (int w = 1; w <= maxW; ++w)
      search_labelings(t, h, w, nullptr, [&](const std::vector<std::vector<std::string>>& q) {
        std::vector<std::vector<std::string>> img(h, std::vector<std::string>(w));
        for (int r = 0; r < h; ++r)
          for (int c = 0; c < w; ++c) img[r][c] = t.pi.at(q[r][c]);
        out.insert(Picture::fromRows(std::move(img)));
        return true;
      });
  return {out.begin(), out.end()};
}

}  // namespace gridlang
