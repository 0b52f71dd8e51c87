#include "iposets/iposet.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace iposets {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NotMinimal: return "NotMinimal";
    case Errc::NotMaximal: return "NotMaximal";
    case Errc::DuplicateInterfacePoint: return "DuplicateInterfacePoint";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::Overflow: return "Overflow";
    case Errc::NotInterfaceConsistent: return "NotInterfaceConsistent";
    case Errc::NotIntervalOrder: return "NotIntervalOrder";
    case Errc::IncompatibleOrdering: return "IncompatibleOrdering";
    case Errc::PreNotSatisfied: return "PreNotSatisfied";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::InternalLawViolation: return "InternalLawViolation";
  }
  return "UnknownError";
}

void throw_error(Errc code, const std::string& what) {
  throw IposetError(code, std::string(errc_name(code)) + ": " + what);
}

namespace {

// In-place Warshall closure over bit rows.
void transitive_closure(std::vector<Mask>& up) {
  const int n = static_cast<int>(up.size());
  for (int k = 0; k < n; ++k) {
    const Mask reach_k = up[k];
    const Mask bit_k = Mask{1} << k;
    for (int i = 0; i < n; ++i) {
      if (up[i] & bit_k) up[i] |= reach_k;
    }
  }
}

std::vector<Mask> invert_rows(const std::vector<Mask>& up) {
  const int n = static_cast<int>(up.size());
  std::vector<Mask> down(n, 0);
  for (int i = 0; i < n; ++i) {
    Mask row = up[i];
    while (row) {
      const int j = std::countr_zero(row);
      row &= row - 1;
      down[j] |= Mask{1} << i;
    }
  }
  return down;
}

}  // namespace

void Iposet::index_interfaces() {
  spos_.assign(n_, -1);
  tpos_.assign(n_, -1);
  source_set_ = 0;
  target_set_ = 0;
  for (int k = 0; k < static_cast<int>(sources_.size()); ++k) {
    spos_[sources_[k]] = static_cast<std::int8_t>(k);
    source_set_ |= Mask{1} << sources_[k];
  }
  for (int k = 0; k < static_cast<int>(targets_.size()); ++k) {
    tpos_[targets_[k]] = static_cast<std::int8_t>(k);
    target_set_ |= Mask{1} << targets_[k];
  }
}

Iposet Iposet::make(int n, const std::vector<std::pair<int, int>>& rel,
                    const std::vector<int>& sources,
                    const std::vector<int>& targets) {
  if (n < 0 || n > kMaxPoints)
    throw_error(Errc::IndexOutOfRange,
                "point count " + std::to_string(n) + " outside [0, " +
                    std::to_string(kMaxPoints) + "]");
  std::vector<Mask> up(n, 0);
  for (const auto& [a, b] : rel) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw_error(Errc::IndexOutOfRange,
                  "relation pair (" + std::to_string(a) + ", " +
                      std::to_string(b) + ") outside [0, " +
                      std::to_string(n) + ")");
    if (a == b)
      throw_error(Errc::CycleDetected,
                  "reflexive pair at point " + std::to_string(a));
    up[a] |= Mask{1} << b;
  }
  transitive_closure(up);
  for (int i = 0; i < n; ++i)
    if ((up[i] >> i) & 1u)
      throw_error(Errc::CycleDetected,
                  "cycle through point " + std::to_string(i));

  Iposet p;
  p.n_ = n;
  p.up_ = std::move(up);
  p.down_ = invert_rows(p.up_);

  auto check_interface = [&](const std::vector<int>& seq, bool source_side) {
    Mask seen = 0;
    for (int x : seq) {
      if (x < 0 || x >= n)
        throw_error(Errc::IndexOutOfRange,
                    "interface point " + std::to_string(x) + " outside [0, " +
                        std::to_string(n) + ")");
      if ((seen >> x) & 1u)
        throw_error(Errc::DuplicateInterfacePoint,
                    "point " + std::to_string(x) + " listed twice");
      seen |= Mask{1} << x;
      if (source_side && p.down_[x] != 0)
        throw_error(Errc::NotMinimal,
                    "source point " + std::to_string(x) + " is not minimal");
      if (!source_side && p.up_[x] != 0)
        throw_error(Errc::NotMaximal,
                    "target point " + std::to_string(x) + " is not maximal");
    }
  };
  check_interface(sources, true);
  check_interface(targets, false);

  p.sources_ = sources;
  p.targets_ = targets;
  p.index_interfaces();
  return p;
}

Iposet Iposet::poset(int n, const std::vector<std::pair<int, int>>& rel) {
  return make(n, rel, {}, {});
}

Iposet Iposet::unchecked(int n, std::vector<Mask> up, std::vector<int> sources,
                         std::vector<int> targets) {
  Iposet p;
  p.n_ = n;
  p.up_ = std::move(up);
  p.down_ = invert_rows(p.up_);
  p.sources_ = std::move(sources);
  p.targets_ = std::move(targets);
  p.index_interfaces();
#ifndef NDEBUG
  p.check_invariants();
#endif
  return p;
}

void Iposet::check_invariants() const {
  assert(n_ >= 0 && n_ <= kMaxPoints);
  for (int i = 0; i < n_; ++i) {
    assert(((up_[i] >> i) & 1u) == 0);
    Mask row = up_[i];
    while (row) {
      const int j = std::countr_zero(row);
      row &= row - 1;
      // Transitivity: everything above j is above i.
      assert((up_[j] & ~up_[i]) == 0);
      // Asymmetry.
      assert(!less(j, i));
    }
  }
  for (int x : sources_) assert(down_[x] == 0);
  for (int x : targets_) assert(up_[x] == 0);
}

Iposet Iposet::empty() { return unchecked(0, {}, {}, {}); }

Iposet Iposet::singleton(bool as_source, bool as_target) {
  std::vector<int> s, t;
  if (as_source) s.push_back(0);
  if (as_target) t.push_back(0);
  return unchecked(1, {0}, std::move(s), std::move(t));
}

Iposet Iposet::identity(int n) {
  if (n < 0 || n > kMaxPoints)
    throw_error(Errc::IndexOutOfRange, "identity arity " + std::to_string(n));
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i;
  return unchecked(n, std::vector<Mask>(n, 0), seq, seq);
}

Iposet Iposet::symmetry_from_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (n > kMaxPoints)
    throw_error(Errc::IndexOutOfRange, "permutation size " + std::to_string(n));
  std::vector<int> inverse(n, -1);
  for (int k = 0; k < n; ++k) {
    if (perm[k] < 0 || perm[k] >= n)
      throw_error(Errc::IndexOutOfRange,
                  "permutation value " + std::to_string(perm[k]));
    if (inverse[perm[k]] != -1)
      throw_error(Errc::DuplicateInterfacePoint,
                  "permutation value " + std::to_string(perm[k]) +
                      " appears twice");
    inverse[perm[k]] = k;
  }
  std::vector<int> sources(n);
  for (int i = 0; i < n; ++i) sources[i] = i;
  return unchecked(n, std::vector<Mask>(n, 0), std::move(sources),
                   std::move(inverse));
}

Mask Iposet::minimal_points() const {
  Mask m = 0;
  for (int i = 0; i < n_; ++i)
    if (down_[i] == 0) m |= Mask{1} << i;
  return m;
}

Mask Iposet::maximal_points() const {
  Mask m = 0;
  for (int i = 0; i < n_; ++i)
    if (up_[i] == 0) m |= Mask{1} << i;
  return m;
}

bool Iposet::is_discrete() const {
  for (int i = 0; i < n_; ++i)
    if (up_[i]) return false;
  return true;
}

bool Iposet::is_starter() const {
  return is_discrete() && cod() == n_;
}

bool Iposet::is_terminator() const {
  return is_discrete() && dom() == n_;
}

bool Iposet::is_symmetry() const {
  return is_discrete() && dom() == n_ && cod() == n_;
}

bool Iposet::is_interface_consistent() const {
  Mask shared = source_set_ & target_set_;
  std::vector<int> pts;
  while (shared) {
    pts.push_back(std::countr_zero(shared));
    shared &= shared - 1;
  }
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b) {
      const bool s_before = spos_[pts[a]] < spos_[pts[b]];
      const bool t_before = tpos_[pts[a]] < tpos_[pts[b]];
      if (s_before != t_before) return false;
    }
  return true;
}

Iposet Iposet::opposite() const {
  Iposet p;
  p.n_ = n_;
  p.up_ = down_;
  p.down_ = up_;
  p.sources_ = targets_;
  p.targets_ = sources_;
  p.index_interfaces();
  return p;
}

std::vector<Mask> Iposet::connected_components() const {
  std::vector<Mask> components;
  Mask remaining = all_points();
  while (remaining) {
    const int seed = std::countr_zero(remaining);
    Mask comp = Mask{1} << seed;
    Mask frontier = comp;
    while (frontier) {
      const int x = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const Mask next = (up_[x] | down_[x]) & ~comp;
      comp |= next;
      frontier |= next;
    }
    components.push_back(comp);
    remaining &= ~comp;
  }
  return components;
}

Iposet Iposet::induced_subposet(Mask keep) const {
  if (keep & ~all_points())
    throw_error(Errc::IndexOutOfRange, "subset contains unknown points");
  std::vector<int> new_index(n_, -1);
  std::vector<int> points;
  {
    Mask m = keep;
    while (m) {
      const int x = std::countr_zero(m);
      m &= m - 1;
      new_index[x] = static_cast<int>(points.size());
      points.push_back(x);
    }
  }
  const int k = static_cast<int>(points.size());
  std::vector<Mask> up(k, 0);
  for (int i = 0; i < k; ++i) {
    Mask row = up_[points[i]] & keep;
    while (row) {
      const int x = std::countr_zero(row);
      row &= row - 1;
      up[i] |= Mask{1} << new_index[x];
    }
  }
  return unchecked(k, std::move(up), {}, {});
}

Iposet Iposet::relabel(const std::vector<int>& perm) const {
  assert(static_cast<int>(perm.size()) == n_);
  std::vector<Mask> up(n_, 0);
  for (int i = 0; i < n_; ++i) {
    Mask row = up_[i];
    Mask out = 0;
    while (row) {
      const int j = std::countr_zero(row);
      row &= row - 1;
      out |= Mask{1} << perm[j];
    }
    up[perm[i]] = out;
  }
  std::vector<int> sources(sources_.size());
  std::vector<int> targets(targets_.size());
  for (size_t k = 0; k < sources_.size(); ++k) sources[k] = perm[sources_[k]];
  for (size_t k = 0; k < targets_.size(); ++k) targets[k] = perm[targets_[k]];
  return unchecked(n_, std::move(up), std::move(sources), std::move(targets));
}

bool Iposet::operator==(const Iposet& other) const {
  return n_ == other.n_ && up_ == other.up_ && sources_ == other.sources_ &&
         targets_ == other.targets_;
}

std::vector<std::pair<int, int>> interface_order(const Iposet& p) {
  if (!p.is_interface_consistent())
    throw_error(Errc::NotInterfaceConsistent,
                "source and target orders conflict");
  const int n = p.size();
  std::vector<Mask> above(n, 0);
  auto add_chain = [&](const std::vector<int>& seq) {
    for (size_t a = 0; a < seq.size(); ++a)
      for (size_t b = a + 1; b < seq.size(); ++b)
        above[seq[a]] |= Mask{1} << seq[b];
  };
  add_chain(p.sources());
  add_chain(p.targets());
  // The union of two agreeing linear orders is acyclic; close it.
  for (int k = 0; k < n; ++k) {
    const Mask bit_k = Mask{1} << k;
    for (int i = 0; i < n; ++i)
      if (above[i] & bit_k) above[i] |= above[k];
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    Mask row = above[i];
    while (row) {
      const int j = std::countr_zero(row);
      row &= row - 1;
      pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

}  // namespace iposets
