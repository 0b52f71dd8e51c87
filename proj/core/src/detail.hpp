#pragma once

#include <bit>
#include <vector>

#include "iposets/iposet.hpp"

namespace iposets::detail {

// Dense renumbering of the points in `keep`, ascending; -1 elsewhere.
inline std::vector<int> compact_map(const Iposet& p, Mask keep) {
  std::vector<int> map(p.size(), -1);
  int next = 0;
  for (int x = 0; x < p.size(); ++x) {
    if ((keep >> x) & 1) {
      map[x] = next++;
    }
  }
  return map;
}

// Induced restriction to `keep` carrying the given interface sequences
// (which must consist of points inside `keep`, minimal/maximal there).
inline Iposet induced_interfaced(const Iposet& p, Mask keep,
                                 const std::vector<int>& sources,
                                 const std::vector<int>& targets) {
  const std::vector<int> map = compact_map(p, keep);
  const int m = std::popcount(keep);
  std::vector<Mask> up(m, 0);
  for (int x = 0; x < p.size(); ++x) {
    if (map[x] < 0) {
      continue;
    }
    Mask rest = p.up(x) & keep;
    while (rest) {
      int y = std::countr_zero(rest);
      rest &= rest - 1;
      up[map[x]] |= Mask{1} << map[y];
    }
  }
  auto remap = [&map](const std::vector<int>& seq) {
    std::vector<int> out;
    out.reserve(seq.size());
    for (int x : seq) {
      out.push_back(map[x]);
    }
    return out;
  };
  return Iposet::unchecked(m, std::move(up), remap(sources), remap(targets));
}

}  // namespace iposets::detail
