#include "iposets/recognition.hpp"

#include <algorithm>
#include <bit>

#include "detail.hpp"

namespace iposets {

bool is_interval_order(const Iposet& p) {
  const int n = p.size();
  // Violation of (w < y, x < z => w < z or x < y): some x outside down(y)
  // whose up-set leaves up(w). Points x with up(x) contained in up(w) can
  // never violate for this w.
  for (int w = 0; w < n; ++w) {
    Mask trouble = 0;
    for (int x = 0; x < n; ++x) {
      if (p.up(x) & ~p.up(w)) {
        trouble |= Mask{1} << x;
      }
    }
    Mask above = p.up(w);
    while (above) {
      int y = std::countr_zero(above);
      above &= above - 1;
      if (trouble & ~p.down(y)) {
        return false;
      }
    }
  }
  return true;
}

IntervalRep interval_representation(const Iposet& p) {
  if (!is_interval_order(p)) {
    throw_error(Errc::NotIntervalOrder,
                "no interval representation: the order contains an induced "
                "2+2");
  }
  const int n = p.size();
  IntervalRep rep;
  if (n == 0) {
    rep.length = 3;
    return rep;
  }

  // For interval orders the distinct strict down-sets form a chain under
  // inclusion, as do the distinct up-sets; both chains have the same length.
  std::vector<Mask> downs;
  std::vector<Mask> ups;
  for (int x = 0; x < n; ++x) {
    downs.push_back(p.down(x));
    ups.push_back(p.up(x));
  }
  auto dedup_sorted = [](std::vector<Mask>& masks) {
    std::sort(masks.begin(), masks.end(), [](Mask a, Mask b) {
      return std::popcount(a) < std::popcount(b);
    });
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  };
  dedup_sorted(downs);
  dedup_sorted(ups);
  const int k = static_cast<int>(downs.size());

  auto rank_of = [](const std::vector<Mask>& chain, Mask m) {
    return static_cast<int>(
        std::find(chain.begin(), chain.end(), m) - chain.begin());
  };

  rep.length = k + 2;
  rep.begin.resize(n);
  rep.end.resize(n);
  for (int x = 0; x < n; ++x) {
    rep.begin[x] = p.is_source(x) ? 0 : rank_of(downs, p.down(x)) + 1;
    rep.end[x] = p.is_target(x) ? k + 1 : k - rank_of(ups, p.up(x));
  }
  return rep;
}

bool is_sp(const Iposet& p) {
  const int n = p.size();
  // Induced N: a < c, b < c, b < d with c,d incomparable and a incomparable
  // to both b and d.
  for (int b = 0; b < n; ++b) {
    Mask cs = p.up(b);
    while (cs) {
      int c = std::countr_zero(cs);
      cs &= cs - 1;
      Mask ds = p.up(b) & ~p.comparable(c) & ~(Mask{1} << c);
      while (ds) {
        int d = std::countr_zero(ds);
        ds &= ds - 1;
        Mask as = p.down(c) & ~p.comparable(b) & ~p.comparable(d);
        as &= ~(Mask{1} << b) & ~(Mask{1} << d);
        if (as) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_step_sequence(const Iposet& p) {
  const int n = p.size();
  for (int y = 0; y < n; ++y) {
    Mask beside = p.all_points() & ~p.comparable(y) & ~(Mask{1} << y);
    Mask rest = beside;
    while (rest) {
      int x = std::countr_zero(rest);
      rest &= rest - 1;
      if (p.comparable(x) & beside) {
        return false;
      }
    }
  }
  return true;
}

bool quick_reject_gluing(const Iposet& p) {
  const int n = p.size();
  if (n == 0) {
    return false;
  }
  int max_up = 0;
  int max_down = 0;
  for (int x = 0; x < n; ++x) {
    max_up = std::max(max_up, std::popcount(p.up(x)));
    max_down = std::max(max_down, std::popcount(p.down(x)));
  }
  for (int x = 0; x < n; ++x) {
    if (std::popcount(p.up(x)) != max_up) {
      continue;
    }
    for (int y = 0; y < n; ++y) {
      if (std::popcount(p.down(y)) != max_down) {
        continue;
      }
      if (!p.less(x, y)) {
        return true;
      }
    }
  }
  return false;
}

namespace {

// Down-closed subsets (for the reversed order: up-closed), enumerated by an
// include/exclude walk over a topological point order; each leaf is a valid
// set and every set appears exactly once.
void closed_sets_dfs(const Iposet& p, const std::vector<int>& order,
                     std::size_t idx, Mask current, Mask forbidden, bool up,
                     std::vector<Mask>& out) {
  if (idx == order.size()) {
    out.push_back(current);
    return;
  }
  int x = order[idx];
  closed_sets_dfs(p, order, idx + 1, current, forbidden, up, out);
  if ((forbidden >> x) & 1) {
    return;
  }
  Mask need = up ? p.up(x) : p.down(x);
  if ((need & ~current) == 0) {
    closed_sets_dfs(p, order, idx + 1, current | (Mask{1} << x), forbidden, up,
                    out);
  }
}

std::vector<Mask> closed_sets(const Iposet& p, Mask universe, Mask forbidden,
                              bool up) {
  std::vector<int> order;
  for (int x = 0; x < p.size(); ++x) {
    if ((universe >> x) & 1) {
      order.push_back(x);
    }
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int da = std::popcount(up ? p.up(a) : p.down(a));
    int db = std::popcount(up ? p.up(b) : p.down(b));
    if (da != db) {
      return da < db;
    }
    return a < b;
  });
  std::vector<Mask> out;
  closed_sets_dfs(p, order, 0, 0, forbidden, up, out);
  return out;
}

bool is_antichain(const Iposet& p, Mask m) {
  Mask rest = m;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    if (p.comparable(x) & m) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CharFn> enumerate_char_fns(const Iposet& p) {
  std::vector<CharFn> out;
  const int n = p.size();
  if (n < 2) {
    return out;
  }
  for (Mask past : closed_sets(p, p.all_points(), p.target_set(), false)) {
    if (past == 0) {
      continue;
    }
    Mask above_all = p.all_points();
    Mask rest = past;
    while (rest) {
      int x = std::countr_zero(rest);
      rest &= rest - 1;
      above_all &= p.up(x);
    }
    Mask zone = above_all & ~p.source_set();
    if (zone == 0) {
      continue;
    }
    for (Mask future : closed_sets(p, zone, 0, true)) {
      if (future == 0) {
        continue;
      }
      Mask cut = p.all_points() & ~past & ~future;
      if (!is_antichain(p, cut)) {
        continue;
      }
      CharFn phi(n, CharLabel::Cut);
      for (int x = 0; x < n; ++x) {
        if ((past >> x) & 1) {
          phi[x] = CharLabel::Past;
        } else if ((future >> x) & 1) {
          phi[x] = CharLabel::Future;
        }
      }
      out.push_back(std::move(phi));
    }
  }
  return out;
}

namespace {

struct PhiMasks {
  Mask past = 0;
  Mask cut = 0;
  Mask future = 0;
};

PhiMasks validate_char_fn(const Iposet& p, const CharFn& phi) {
  const int n = p.size();
  if (static_cast<int>(phi.size()) != n) {
    throw_error(Errc::PreNotSatisfied,
                "characteristic function has wrong length");
  }
  PhiMasks m;
  for (int x = 0; x < n; ++x) {
    switch (phi[x]) {
      case CharLabel::Past:
        m.past |= Mask{1} << x;
        break;
      case CharLabel::Cut:
        m.cut |= Mask{1} << x;
        break;
      case CharLabel::Future:
        m.future |= Mask{1} << x;
        break;
      default:
        throw_error(Errc::PreNotSatisfied,
                    "characteristic function has an invalid label");
    }
  }
  if (m.past == 0 || m.future == 0) {
    throw_error(Errc::PreNotSatisfied,
                "characteristic function must be non-trivial: Past and "
                "Future must both be nonempty");
  }
  if ((m.past & p.target_set()) || (m.future & p.source_set())) {
    throw_error(Errc::PreNotSatisfied,
                "targets cannot be Past and sources cannot be Future");
  }
  Mask rest = m.past;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    if (m.future & ~p.up(x)) {
      throw_error(Errc::PreNotSatisfied,
                  "every Past point must lie below every Future point");
    }
    if (p.down(x) & (m.cut | m.future)) {
      throw_error(Errc::PreNotSatisfied,
                  "nothing may lie below a Past point except Past points");
    }
  }
  rest = m.cut;
  while (rest) {
    int x = std::countr_zero(rest);
    rest &= rest - 1;
    if (p.down(x) & m.future) {
      throw_error(Errc::PreNotSatisfied,
                  "no Future point may lie below a Cut point");
    }
  }
  if (!is_antichain(p, m.cut)) {
    throw_error(Errc::PreNotSatisfied, "Cut points must form an antichain");
  }
  return m;
}

}  // namespace

SplitResult split_by_char_fn(const Iposet& p, const CharFn& phi,
                             const std::vector<int>& middle_order) {
  const PhiMasks masks = validate_char_fn(p, phi);

  Mask seen = 0;
  for (int x : middle_order) {
    if (x < 0 || x >= p.size() || !((masks.cut >> x) & 1) ||
        ((seen >> x) & 1)) {
      throw_error(Errc::IncompatibleOrdering,
                  "middle order must be a permutation of the Cut points");
    }
    seen |= Mask{1} << x;
  }
  if (seen != masks.cut) {
    throw_error(Errc::IncompatibleOrdering,
                "middle order must cover all Cut points");
  }
  for (std::size_t i = 0; i < middle_order.size(); ++i) {
    for (std::size_t j = i + 1; j < middle_order.size(); ++j) {
      int x = middle_order[i];
      int y = middle_order[j];
      if (p.is_source(x) && p.is_source(y) &&
          p.source_pos(x) > p.source_pos(y)) {
        throw_error(Errc::IncompatibleOrdering,
                    "middle order disagrees with the source order on Cut");
      }
      if (p.is_target(x) && p.is_target(y) &&
          p.target_pos(x) > p.target_pos(y)) {
        throw_error(Errc::IncompatibleOrdering,
                    "middle order disagrees with the target order on Cut");
      }
    }
  }

  SplitResult result{
      detail::induced_interfaced(p, masks.past | masks.cut, p.sources(),
                                 middle_order),
      detail::induced_interfaced(p, masks.cut | masks.future, middle_order,
                                 p.targets()),
      {}};
  for (int x = 0; x < p.size(); ++x) {
    if (!((masks.future >> x) & 1)) {
      result.unshuffle.push_back(x);
    }
  }
  for (int x = 0; x < p.size(); ++x) {
    if ((masks.future >> x) & 1) {
      result.unshuffle.push_back(x);
    }
  }
  return result;
}

}  // namespace iposets
