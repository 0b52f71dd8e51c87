#pragma once

#include <functional>
#include <vector>

#include "iposets/algebra.hpp"
#include "iposets/iposet.hpp"

namespace iposets {

/// Visits exactly one representative per isomorphism class of posets on n
/// points, in a deterministic order. Representatives carry canonical labels
/// and empty interfaces. Capped at 8 points, 10 with extended set; throws
/// SizeCapExceeded beyond the cap.
void for_each_poset(int n, const std::function<void(const Iposet&)>& visit,
                    bool extended = false);

/// Deterministic partition of for_each_poset(n) for parallel traversal: the
/// classes visited by shards 0..num_shards-1 are disjoint and cover all of
/// them. Requires 0 <= shard < num_shards.
void for_each_poset_sharded(int n, int shard, int num_shards,
                            const std::function<void(const Iposet&)>& visit,
                            bool extended = false);

std::vector<Iposet> enumerate_posets(int n, bool extended = false);

/// Visits one representative per isomorphism class of iposets on n points:
/// every poset class combined with every orbit of interface assignments
/// under its automorphism group. Labelling of the visited value is
/// unspecified (use canonical_representative when labels matter). Capped at
/// 7 points, 8 with extended set.
void for_each_iposet(int n, const std::function<void(const Iposet&)>& visit,
                     bool extended = false);

void for_each_iposet_sharded(int n, int shard, int num_shards,
                             const std::function<void(const Iposet&)>& visit,
                             bool extended = false);

/// One canonical representative per isomorphism class, sorted by canonical
/// key.
std::vector<Iposet> enumerate_iposets(int n, bool extended = false);

/// Visits one representative per automorphism orbit of interface assignments
/// over the underlying order of p (p's own interfaces are ignored). Every
/// iposet class with underlying poset isomorphic to p appears exactly once.
void for_each_interface_assignment(
    const Iposet& p, const std::function<void(const Iposet&)>& visit);

/// Closure of the given generators under glue and par, restricted to results
/// with at most max_n points. Returns one canonical representative per class
/// reached, sorted by canonical key.
std::vector<Iposet> generate_closure(const std::vector<Iposet>& generators,
                                     int max_n);

/// Canonical keys of every gluing-parallel iposet with at most max_points
/// points: the closure of the empty iposet and the four singletons under
/// glue and par, sorted ascending. Capped at 7 points.
std::vector<CanonicalKey> generate_gp_closure(int max_points);

}  // namespace iposets
