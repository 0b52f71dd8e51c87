#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iposets/iposet.hpp"

namespace iposets {

/// True iff the underlying order satisfies the interval-order condition:
/// w < y and x < z imply w < z or x < y. Interfaces are ignored.
bool is_interval_order(const Iposet& p);

/// Interval representation into a finite linear order 0..length-1 with
/// sentinels bottom = 0 and top = length-1: y < z in the poset iff
/// end[y] < begin[z]; begin[x] = bottom iff x is a source; end[x] = top iff
/// x is a target; begin[x] < top and end[x] > bottom for every point.
struct IntervalRep {
  int length = 0;
  std::vector<int> begin;
  std::vector<int> end;

  int bottom() const { return 0; }
  int top() const { return length - 1; }
};

/// Builds an IntervalRep from the linear order of distinct strict down-sets.
/// Throws NotIntervalOrder when the underlying order is not an interval
/// order.
IntervalRep interval_representation(const Iposet& p);

/// True iff the underlying order is series-parallel: no induced subposet
/// shaped like N. Interfaces are ignored.
bool is_sp(const Iposet& p);

/// True iff the incomparability relation of the underlying order is
/// transitive. Interfaces are ignored.
bool is_step_sequence(const Iposet& p);

/// Necessary-condition filter for gluing decompositions: with P_a the points
/// of maximal up-set size and P_b those of maximal down-set size, returns
/// true (reject) iff some x in P_a and y in P_b are not ordered x < y.
/// Reject implies no non-trivial gluing decomposition exists.
bool quick_reject_gluing(const Iposet& p);

enum class CharLabel : std::uint8_t { Past, Cut, Future };

/// Total labelling of the points of a host iposet; candidate gluing
/// decompositions correspond to valid labellings: Past points go to the left
/// part only, Future points to the right part only, Cut points become the
/// shared interface.
using CharFn = std::vector<CharLabel>;

/// All valid non-trivial characteristic functions of p: Past and Future
/// nonempty, every Past point below every Future point, Cut an antichain,
/// nothing below a Past point or above a Future point mislabelled, sources
/// never Future, targets never Past.
std::vector<CharFn> enumerate_char_fns(const Iposet& p);

struct SplitResult {
  Iposet first;
  Iposet second;
  /// glue(first, second).relabel(unshuffle) reconstructs the input exactly:
  /// entry i is the input point sitting at composite position i. When
  /// Past and Cut points precede all Future points in the input labelling,
  /// unshuffle is the identity and glue(first, second) equals the input
  /// directly.
  std::vector<int> unshuffle;
};

/// Cuts p along phi: first = induced order on Past and Cut with p's sources
/// and the Cut points, in middle_order, as targets; second = induced order
/// on Cut and Future with middle_order as sources and p's targets. Throws
/// PreNotSatisfied if phi is not a valid characteristic function of p and
/// IncompatibleOrdering if middle_order is not a permutation of the Cut
/// points respecting the source order on Cut-sources and the target order
/// on Cut-targets.
SplitResult split_by_char_fn(const Iposet& p, const CharFn& phi,
                             const std::vector<int>& middle_order);

/// True iff p is gluing-parallel: generated from the empty iposet and the
/// four singletons by glue and par. Memoized on canonical form; safe to call
/// concurrently.
bool is_gp(const Iposet& p);

/// Certificate term over the gp generators.
struct GpTerm {
  enum class Kind : std::uint8_t { Empty, S00, S01, S10, S11, Glue, Par };
  Kind kind = Kind::Empty;
  std::vector<GpTerm> children;
};

Iposet eval(const GpTerm& term);

/// Renders the grammar
/// term := empty | s00 | s01 | s10 | s11 | glue(term,...) | par(term,...).
std::string to_string(const GpTerm& term);

/// Least i such that the term witnesses membership in S_i, where S_0 holds
/// the generators and S_{i+1} is the glue-closure of the par-closure of S_i.
/// Glue and Par nodes are flattened before counting, and a Par layer sitting
/// directly under a Glue node is absorbed into it.
int alternation_depth(const GpTerm& term);

/// A gp certificate for p: a term whose value is isomorphic to p, or nothing
/// iff is_gp(p) is false. Deterministic: among the decompositions the search
/// visits, the lexicographically least rendering is kept at every level.
std::optional<GpTerm> gp_term(const Iposet& p);

/// Hierarchy level: the least i with p in S_i (see alternation_depth), or
/// nothing iff p is not gp. Minimized over all decompositions, not just the
/// certificate gp_term returns.
std::optional<int> gp_level(const Iposet& p);

/// The interface-free separator witness P_n: build_witness(1) is the two
/// point chain and P_{n+1} = glue(S00, par(P_n, P_n)). Requires n >= 1;
/// sizes are 2, 5, 11, 23, 47, so n > 5 exceeds the point limit.
Iposet build_witness(int n);

}  // namespace iposets
