#include "iposets/algebra.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "iposets/enumerate.hpp"

namespace iposets {

Iposet glue(const Iposet& p, const Iposet& q) {
  if (p.cod() != q.dom()) {
    throw_error(Errc::ArityMismatch,
                "glue needs cod(left) = dom(right), got " +
                    std::to_string(p.cod()) + " and " +
                    std::to_string(q.dom()));
  }
  const int m = p.cod();
  const int total = p.size() + q.size() - m;
  if (total > kMaxPoints) {
    throw_error(Errc::Overflow, "gluing would have " + std::to_string(total) +
                                    " points, limit is " +
                                    std::to_string(kMaxPoints));
  }

  // Composite labels: P's points keep their indices, the non-source points
  // of Q follow in Q's index order. The k-th source of Q becomes the k-th
  // target of P.
  std::vector<int> qmap(q.size());
  int next = p.size();
  for (int j = 0; j < q.size(); ++j) {
    int k = q.source_pos(j);
    qmap[j] = k >= 0 ? p.targets()[k] : next++;
  }

  std::vector<Mask> up(total, 0);
  for (int i = 0; i < p.size(); ++i) {
    up[i] = p.up(i);
  }
  for (int a = 0; a < q.size(); ++a) {
    for (int b = 0; b < q.size(); ++b) {
      if (q.less(a, b)) {
        up[qmap[a]] |= Mask{1} << qmap[b];
      }
    }
  }
  Mask strict_future = 0;
  for (int j = 0; j < q.size(); ++j) {
    if (!q.is_source(j)) {
      strict_future |= Mask{1} << qmap[j];
    }
  }
  for (int i = 0; i < p.size(); ++i) {
    if (!p.is_target(i)) {
      up[i] |= strict_future;
    }
  }

  std::vector<int> targets;
  targets.reserve(q.cod());
  for (int k : q.targets()) {
    targets.push_back(qmap[k]);
  }
  return Iposet::unchecked(total, std::move(up), p.sources(),
                           std::move(targets));
}

Iposet par(const Iposet& p, const Iposet& q) {
  const int total = p.size() + q.size();
  if (total > kMaxPoints) {
    throw_error(Errc::Overflow,
                "parallel composition would have " + std::to_string(total) +
                    " points, limit is " + std::to_string(kMaxPoints));
  }
  std::vector<Mask> up(total, 0);
  for (int i = 0; i < p.size(); ++i) {
    up[i] = p.up(i);
  }
  for (int j = 0; j < q.size(); ++j) {
    up[p.size() + j] = q.up(j) << p.size();
  }
  std::vector<int> sources = p.sources();
  for (int i : q.sources()) {
    sources.push_back(p.size() + i);
  }
  std::vector<int> targets = p.targets();
  for (int i : q.targets()) {
    targets.push_back(p.size() + i);
  }
  return Iposet::unchecked(total, std::move(up), std::move(sources),
                           std::move(targets));
}

Iposet glue_many(const std::vector<Iposet>& ps) {
  if (ps.empty()) {
    throw_error(Errc::ArityMismatch, "glue_many needs at least one factor");
  }
  Iposet acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) {
    acc = glue(acc, ps[i]);
  }
  return acc;
}

Iposet par_many(const std::vector<Iposet>& ps) {
  Iposet acc = Iposet::empty();
  for (const Iposet& p : ps) {
    acc = par(acc, p);
  }
  return acc;
}

namespace {

// Searches g : Q -> P order-preserving with g after the interface sequences
// of Q equal to those of P. Such a g exists iff P is subsumed by Q, and the
// subsumption witness P -> Q is its inverse. With `reflect` set the map must
// also be order-reflecting, making it an isomorphism.
class SubsumptionSearch {
 public:
  SubsumptionSearch(const Iposet& p, const Iposet& q, bool reflect)
      : p_(&p), q_(&q), reflect_(reflect) {
    n_ = p.size();
    image_.assign(n_, -1);
  }

  std::optional<std::vector<int>> run() {
    if (p_->size() != q_->size() || p_->dom() != q_->dom() ||
        p_->cod() != q_->cod()) {
      return std::nullopt;
    }
    for (int k = 0; k < q_->dom(); ++k) {
      if (!assign(q_->sources()[k], p_->sources()[k])) {
        return std::nullopt;
      }
    }
    for (int k = 0; k < q_->cod(); ++k) {
      if (!assign(q_->targets()[k], p_->targets()[k])) {
        return std::nullopt;
      }
    }
    order_.clear();
    for (int x = 0; x < n_; ++x) {
      if (image_[x] < 0) {
        order_.push_back(x);
      }
    }
    std::sort(order_.begin(), order_.end(), [this](int a, int b) {
      int da = std::popcount(q_->comparable(a));
      int db = std::popcount(q_->comparable(b));
      if (da != db) {
        return da > db;
      }
      return a < b;
    });
    if (!consistent_prefix() || !dfs(0)) {
      return std::nullopt;
    }
    std::vector<int> witness(n_, -1);
    for (int x = 0; x < n_; ++x) {
      witness[image_[x]] = x;
    }
    return witness;
  }

 private:
  bool assign(int x, int y) {
    if (image_[x] >= 0) {
      return image_[x] == y;
    }
    if ((used_ >> y) & 1) {
      return false;
    }
    image_[x] = y;
    used_ |= Mask{1} << y;
    return true;
  }

  bool pair_ok(int x, int z, int y, int yz) const {
    if (q_->less(x, z) && !p_->less(y, yz)) {
      return false;
    }
    if (q_->less(z, x) && !p_->less(yz, y)) {
      return false;
    }
    if (reflect_ && (q_->less(x, z) != p_->less(y, yz) ||
                     q_->less(z, x) != p_->less(yz, y))) {
      return false;
    }
    return true;
  }

  // Order conditions among all points forced by the interfaces.
  bool consistent_prefix() const {
    for (int x = 0; x < n_; ++x) {
      if (image_[x] < 0) {
        continue;
      }
      for (int z = 0; z < n_; ++z) {
        if (z != x && image_[z] >= 0 &&
            !pair_ok(x, z, image_[x], image_[z])) {
          return false;
        }
      }
    }
    return true;
  }

  bool degree_ok(int x, int y) const {
    int qu = std::popcount(q_->up(x));
    int qd = std::popcount(q_->down(x));
    int pu = std::popcount(p_->up(y));
    int pd = std::popcount(p_->down(y));
    if (reflect_) {
      return qu == pu && qd == pd;
    }
    return qu <= pu && qd <= pd;
  }

  bool dfs(std::size_t idx) {
    if (idx == order_.size()) {
      return true;
    }
    int x = order_[idx];
    for (int y = 0; y < n_; ++y) {
      if ((used_ >> y) & 1) {
        continue;
      }
      if (!degree_ok(x, y)) {
        continue;
      }
      bool ok = true;
      for (int z = 0; z < n_; ++z) {
        if (z != x && image_[z] >= 0 && !pair_ok(x, z, y, image_[z])) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        continue;
      }
      image_[x] = y;
      used_ |= Mask{1} << y;
      if (dfs(idx + 1)) {
        return true;
      }
      used_ &= ~(Mask{1} << y);
      image_[x] = -1;
    }
    return false;
  }

  const Iposet* p_;
  const Iposet* q_;
  bool reflect_;
  int n_ = 0;
  std::vector<int> image_;
  std::vector<int> order_;
  Mask used_ = 0;
};

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Iposet& a,
                                              const Iposet& b) {
  if (a.size() != b.size() || a.dom() != b.dom() || a.cod() != b.cod()) {
    return std::nullopt;
  }
  if (canonical_form(a) != canonical_form(b)) {
    return std::nullopt;
  }
  auto witness = SubsumptionSearch(a, b, true).run();
  if (!witness) {
    throw_error(Errc::InternalLawViolation,
                "canonical forms agree but no isomorphism was found");
  }
  return witness;
}

std::optional<std::vector<int>> subsumes(const Iposet& p, const Iposet& q) {
  return SubsumptionSearch(p, q, false).run();
}

InterchangeResult verify_lax_interchange(const Iposet& p, const Iposet& p2,
                                         const Iposet& q, const Iposet& q2) {
  if (p.cod() != q.dom() || p2.cod() != q2.dom()) {
    throw_error(Errc::ArityMismatch,
                "interchange needs cod(p) = dom(q) and cod(p2) = dom(q2)");
  }
  Iposet glued_first = glue(par(p, p2), par(q, q2));
  Iposet pared_first = par(glue(p, q), glue(p2, q2));
  if (!subsumes(glued_first, pared_first)) {
    throw_error(Errc::InternalLawViolation,
                "lax interchange subsumption failed");
  }
  return is_isomorphic(glued_first, pared_first)
             ? InterchangeResult::IsoHolds
             : InterchangeResult::StrictSubsumption;
}

std::pair<Iposet, Iposet> commute_symmetries(const Iposet& p1,
                                             const Iposet& p2) {
  const int d1 = p1.dom();
  const int d2 = p2.dom();
  const int c1 = p1.cod();
  const int c2 = p2.cod();
  std::vector<int> sigma(d1 + d2);
  for (int i = 0; i < d1 + d2; ++i) {
    sigma[i] = i < d1 ? i + d2 : i - d1;
  }
  std::vector<int> tau(c1 + c2);
  for (int i = 0; i < c1 + c2; ++i) {
    tau[i] = i < c2 ? i + c1 : i - c2;
  }
  return {Iposet::symmetry_from_permutation(sigma),
          Iposet::symmetry_from_permutation(tau)};
}

namespace {

std::optional<Iposet> search_refinement(const Iposet& left,
                                        const Iposet& mid_target,
                                        const Iposet& right,
                                        const Iposet& rest_target) {
  // Looks for r with glue(left, r) = mid_target and glue(r, right) =
  // rest_target, both up to isomorphism. The size and arities of r are
  // forced.
  const int size = mid_target.size() - left.size() + left.cod();
  if (size < 0 || size > kMaxPoints) {
    return std::nullopt;
  }
  const int want_dom = left.cod();
  const int want_cod = mid_target.cod();
  if (want_dom > size || want_cod > size || right.dom() != want_cod) {
    return std::nullopt;
  }
  for (const Iposet& r : enumerate_iposets(size)) {
    if (r.dom() != want_dom || r.cod() != want_cod) {
      continue;
    }
    if (is_isomorphic(glue(left, r), mid_target) &&
        is_isomorphic(glue(r, right), rest_target)) {
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Refinement> find_refinement(const Iposet& p, const Iposet& q,
                                          const Iposet& u, const Iposet& v) {
  Iposet via_pq = glue(p, q);
  Iposet via_uv = glue(u, v);
  if (!is_isomorphic(via_pq, via_uv)) {
    throw_error(Errc::PreNotSatisfied,
                "find_refinement needs glue(p, q) isomorphic to glue(u, v)");
  }
  if (auto r = search_refinement(p, u, v, q)) {
    return Refinement{Refinement::Side::ExtendsP, std::move(*r)};
  }
  if (auto r = search_refinement(u, p, q, v)) {
    return Refinement{Refinement::Side::ExtendsU, std::move(*r)};
  }
  return std::nullopt;
}

}  // namespace iposets
