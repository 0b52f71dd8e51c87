#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iposets/iposet.hpp"

namespace iposets {

/// Complete isomorphism invariant: two iposets have equal keys iff they are
/// isomorphic (order-preserving bijection commuting with both interface
/// sequences). Keys are deterministic byte strings, independent of thread
/// count or memoisation state, and totally ordered.
struct CanonicalKey {
  std::string bytes;
  auto operator<=>(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes);
  }
};

CanonicalKey canonical_form(const Iposet& p);

/// Canonical form of the pair (p, marked): equal iff there is an isomorphism
/// carrying one marked set onto the other.
CanonicalKey canonical_form_marked(const Iposet& p, Mask marked);

/// The relabelling old-index -> canonical-index realising canonical_form.
std::vector<int> canonical_permutation(const Iposet& p);

/// The canonically relabelled copy: isomorphic inputs yield identical
/// (labelled) representatives.
Iposet canonical_representative(const Iposet& p);

/// All automorphisms (as old->new relabellings) of p, interfaces respected.
std::vector<std::vector<int>> automorphisms(const Iposet& p);

/// Gluing composition P * Q, defined when cod(P) = dom(Q): the k-th target of
/// P is identified with the k-th source of Q and every non-target point of P
/// is placed below every non-source point of Q. P's points keep their
/// indices; the non-source points of Q follow in Q's index order. Throws
/// ArityMismatch / Overflow.
Iposet glue(const Iposet& p, const Iposet& q);

/// Parallel composition P (x) Q: disjoint union with concatenated interface
/// sequences (P's part first). Throws Overflow.
Iposet par(const Iposet& p, const Iposet& q);

/// Left fold of glue over a non-empty list.
Iposet glue_many(const std::vector<Iposet>& ps);

/// Left fold of par; the empty list yields the empty iposet.
Iposet par_many(const std::vector<Iposet>& ps);

/// Isomorphism witness: an order-preserving and order-reflecting bijection
/// a -> b (as the vector f[i] = image of point i) commuting with both
/// interface sequences, or nothing when the iposets are not isomorphic.
/// Always consistent with canonical_form equality.
std::optional<std::vector<int>> is_isomorphic(const Iposet& a,
                                              const Iposet& b);

/// Subsumption witness: a bijection f : P -> Q (as the vector f[i] = image of
/// point i) with f(x) < f(y) implying x < y and f commuting with both
/// interface sequences. Present iff P is subsumed by Q, i.e. P has at least
/// all of Q's order.
std::optional<std::vector<int>> subsumes(const Iposet& p, const Iposet& q);

enum class InterchangeResult { IsoHolds, StrictSubsumption };

/// Checks the lax interchange law on a composable quadruple:
/// (P (x) P') * (Q (x) Q')  is subsumed by  (P * Q) (x) (P' * Q').
/// Returns whether the subsumption is an isomorphism or strict. Throws
/// ArityMismatch when the gluings are undefined and InternalLawViolation if
/// the subsumption unexpectedly fails to hold.
InterchangeResult verify_lax_interchange(const Iposet& p, const Iposet& p2,
                                         const Iposet& q, const Iposet& q2);

/// The symmetries (sigma, tau) with
/// par(p1, p2) isomorphic to glue(sigma, glue(par(p2, p1), tau)).
std::pair<Iposet, Iposet> commute_symmetries(const Iposet& p1,
                                             const Iposet& p2);

struct Refinement {
  /// ExtendsP: glue(P, r) = U and glue(r, V) = Q (U refines P on the left).
  /// ExtendsU: glue(U, r) = P and glue(r, Q) = V (P refines U on the left).
  enum class Side { ExtendsP, ExtendsU };
  Side side;
  Iposet r;
};

/// Searches for an interpolating iposet between two gluing decompositions of
/// the same composite: given glue(P, Q) isomorphic to glue(U, V), looks for R
/// with either glue(P, R) = U and glue(R, V) = Q, or glue(U, R) = P and
/// glue(R, Q) = V (all up to isomorphism). The search is exhaustive over all
/// iposets of the forced size and arities, so an empty result is a proof that
/// no such refinement exists. Throws PreNotSatisfied when the two composites
/// are not isomorphic.
std::optional<Refinement> find_refinement(const Iposet& p, const Iposet& q,
                                          const Iposet& u, const Iposet& v);

}  // namespace iposets
