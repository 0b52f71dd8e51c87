#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iposets {

/// Hard cap on the number of points. The strict order is stored as one 64-bit
/// reachability row per point, so everything above this would need a different
/// representation.
inline constexpr int kMaxPoints = 64;

/// Bit set over point indices (bit i = point i).
using Mask = std::uint64_t;

/// Error codes carried by IposetError.
enum class Errc {
  CycleDetected,
  NotMinimal,
  NotMaximal,
  DuplicateInterfacePoint,
  IndexOutOfRange,
  ArityMismatch,
  Overflow,
  NotInterfaceConsistent,
  NotIntervalOrder,
  IncompatibleOrdering,
  PreNotSatisfied,
  SizeCapExceeded,
  ParseError,
  InternalLawViolation,
};

const char* errc_name(Errc code);

class IposetError : public std::runtime_error {
 public:
  IposetError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void throw_error(Errc code, const std::string& what);

/// A poset with interfaces: a finite strict partial order together with an
/// injective source sequence enumerating some minimal points and an injective
/// target sequence enumerating some maximal points.
///
/// Values are immutable once built. Points are dense 0-based indices. The
/// order is kept transitively closed; less(i, j) answers in O(1) from the
/// closure rows. A plain poset is an Iposet with empty interfaces.
class Iposet {
 public:
  /// Validating constructor. `rel` may be any generating set of strict pairs;
  /// the transitive closure is applied. Throws IposetError with
  /// IndexOutOfRange, CycleDetected, DuplicateInterfacePoint, NotMinimal or
  /// NotMaximal when the input is not a well-formed iposet.
  static Iposet make(int n, const std::vector<std::pair<int, int>>& rel,
                     const std::vector<int>& sources,
                     const std::vector<int>& targets);

  /// Interface-free poset from a generating relation.
  static Iposet poset(int n, const std::vector<std::pair<int, int>>& rel);

  /// Trusted constructor for internal use: `up` must already be a transitive
  /// closure of a strict order and the interfaces must be valid. Checked with
  /// assertions in debug builds only.
  static Iposet unchecked(int n, std::vector<Mask> up,
                          std::vector<int> sources, std::vector<int> targets);

  /// The empty iposet (unit of parallel composition).
  static Iposet empty();

  /// One-point iposet; `as_source` / `as_target` select which interfaces the
  /// point carries.
  static Iposet singleton(bool as_source, bool as_target);

  /// Discrete iposet on n points with sources = targets = (0, ..., n-1).
  static Iposet identity(int n);

  /// Discrete iposet encoding `perm`: sources are the identity sequence and
  /// targets are arranged so that the target position of source k is perm[k].
  static Iposet symmetry_from_permutation(const std::vector<int>& perm);

  int size() const noexcept { return n_; }
  /// Arity n of P : n -> m, i.e. the number of sources.
  int dom() const noexcept { return static_cast<int>(sources_.size()); }
  /// Arity m of P : n -> m, i.e. the number of targets.
  int cod() const noexcept { return static_cast<int>(targets_.size()); }

  const std::vector<int>& sources() const noexcept { return sources_; }
  const std::vector<int>& targets() const noexcept { return targets_; }

  /// Strict order: true iff i < j.
  bool less(int i, int j) const { return (up_[i] >> j) & 1u; }
  /// Points strictly above i.
  Mask up(int i) const { return up_[i]; }
  /// Points strictly below i.
  Mask down(int i) const { return down_[i]; }
  /// Points comparable to i (excluding i).
  Mask comparable(int i) const { return up_[i] | down_[i]; }

  /// 0-based position of point i in the source sequence, or -1.
  int source_pos(int i) const { return spos_[i]; }
  /// 0-based position of point i in the target sequence, or -1.
  int target_pos(int i) const { return tpos_[i]; }
  bool is_source(int i) const { return spos_[i] >= 0; }
  bool is_target(int i) const { return tpos_[i] >= 0; }

  Mask all_points() const noexcept {
    return n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
  }
  Mask source_set() const noexcept { return source_set_; }
  Mask target_set() const noexcept { return target_set_; }
  Mask minimal_points() const;
  Mask maximal_points() const;

  /// True iff the order relation is empty.
  bool is_discrete() const;
  /// Discrete with bijective target sequence.
  bool is_starter() const;
  /// Discrete with bijective source sequence.
  bool is_terminator() const;
  /// Both a starter and a terminator.
  bool is_symmetry() const;

  /// True iff the source order and the target order agree on points that are
  /// both sources and targets.
  bool is_interface_consistent() const;

  /// Reversed order with sources and targets swapped.
  Iposet opposite() const;

  /// Connected components of the comparability graph, each as a point mask,
  /// ordered by smallest contained index. The empty iposet has none.
  std::vector<Mask> connected_components() const;

  /// Interface-free induced subposet on the points of `keep`, with labels
  /// compacted in increasing index order.
  Iposet induced_subposet(Mask keep) const;

  /// Image under a relabelling: point i becomes perm[i].
  Iposet relabel(const std::vector<int>& perm) const;

  /// Labelled equality (same point names, order, and interface sequences).
  bool operator==(const Iposet& other) const;
  bool operator!=(const Iposet& other) const { return !(*this == other); }

 private:
  Iposet() = default;
  void index_interfaces();
  void check_invariants() const;

  int n_ = 0;
  std::vector<Mask> up_;
  std::vector<Mask> down_;
  std::vector<int> sources_;
  std::vector<int> targets_;
  std::vector<std::int8_t> spos_;
  std::vector<std::int8_t> tpos_;
  Mask source_set_ = 0;
  Mask target_set_ = 0;
};

/// The interface precedence relation on source and target points: the source
/// order joined with the target order, transitively closed. Throws
/// NotInterfaceConsistent when the two orders conflict.
std::vector<std::pair<int, int>> interface_order(const Iposet& p);

}  // namespace iposets
