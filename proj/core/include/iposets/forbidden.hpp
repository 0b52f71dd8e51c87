#pragma once

#include <string>
#include <utility>
#include <vector>

#include "iposets/iposet.hpp"

namespace iposets {

/// A named minimal forbidden poset, stored as generating relation pairs;
/// poset() applies the transitive closure.
struct ForbiddenFixture {
  std::string name;
  int points = 0;
  std::vector<std::pair<int, int>> relation;

  Iposet poset() const { return Iposet::poset(points, relation); }
};

/// True iff an order-preserving and order-reflecting injection from the
/// underlying order of pattern into the underlying order of host exists.
/// Interfaces play no role.
bool contains_induced(const Iposet& host, const Iposet& pattern);

/// The eleven known minimal forbidden posets for the gluing-parallel class:
/// five on 6 points, one on 8 and five on 10.
const std::vector<ForbiddenFixture>& known_forbidden();

/// All posets on at most max_points points that are not gluing-parallel
/// while every proper induced subposet is, as canonical representatives
/// sorted by canonical key. Capped at 8 points, 10 with extended set; the
/// result is identical for every jobs value.
std::vector<Iposet> minimal_forbidden(int max_points, bool extended = false,
                                      int jobs = 1);

}  // namespace iposets
