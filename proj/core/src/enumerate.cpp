#include <algorithm>
#include <bit>
#include <set>
#include <string>
#include <unordered_set>

#include "iposets/algebra.hpp"
#include "iposets/enumerate.hpp"

namespace iposets {

namespace {

constexpr int kPosetCap = 8;
constexpr int kPosetCapExtended = 10;
constexpr int kIposetCap = 7;
constexpr int kIposetCapExtended = 8;

void check_cap(int n, int cap, int cap_extended, bool extended,
               const char* what) {
  if (n < 0) {
    throw_error(Errc::IndexOutOfRange, "negative point count");
  }
  const int limit = extended ? cap_extended : cap;
  if (n > limit) {
    throw_error(Errc::SizeCapExceeded,
                std::string(what) + " enumeration capped at " +
                    std::to_string(limit) + " points");
  }
}

std::vector<Mask> down_closed_sets(const Iposet& p) {
  const int n = p.size();
  std::vector<int> order(n);
  for (int x = 0; x < n; ++x) {
    order[x] = x;
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::popcount(p.down(a)) < std::popcount(p.down(b));
  });
  std::vector<Mask> out;
  auto rec = [&](auto&& self, int idx, Mask cur) -> void {
    if (idx == n) {
      out.push_back(cur);
      return;
    }
    const int x = order[idx];
    self(self, idx + 1, cur);
    if ((p.down(x) & ~cur) == 0) {
      self(self, idx + 1, cur | (Mask{1} << x));
    }
  };
  rec(rec, 0, 0);
  return out;
}

// p plus one new maximal point whose strict down-set is d (down-closed in p).
Iposet extend_by_point(const Iposet& p, Mask d) {
  const int n = p.size();
  std::vector<Mask> up(n + 1, 0);
  for (int x = 0; x < n; ++x) {
    up[x] = p.up(x);
    if ((d >> x) & 1) {
      up[x] |= Mask{1} << n;
    }
  }
  return Iposet::unchecked(n + 1, std::move(up), {}, {});
}

// Orderly acceptance: the newly added point (index n-1) must realise the
// least marked canonical form among all maximal points, so each isomorphism
// class is kept from exactly one parent extension.
bool new_point_is_canonical(const Iposet& child) {
  const int last = child.size() - 1;
  const std::string key_new =
      canonical_form_marked(child, Mask{1} << last).bytes;
  Mask maximal = child.maximal_points() & ~(Mask{1} << last);
  while (maximal) {
    const int w = std::countr_zero(maximal);
    maximal &= maximal - 1;
    if (canonical_form_marked(child, Mask{1} << w).bytes < key_new) {
      return false;
    }
  }
  return true;
}

struct PosetWalk {
  int target = 0;
  int root_depth = 0;
  int shard = 0;
  int num_shards = 1;
  long root_index = 0;
  const std::function<void(const Iposet&)>* visit = nullptr;

  void run() {
    step(Iposet::empty());
  }

  void step(const Iposet& p) {
    const int n = p.size();
    if (n == root_depth) {
      const bool mine = root_index % num_shards == shard;
      ++root_index;
      if (!mine) {
        return;
      }
    }
    if (n == target) {
      (*visit)(p);
      return;
    }
    std::set<std::string> seen;
    for (Mask d : down_closed_sets(p)) {
      if (!seen.insert(canonical_form_marked(p, d).bytes).second) {
        continue;
      }
      Iposet child = extend_by_point(p, d);
      if (!new_point_is_canonical(child)) {
        continue;
      }
      step(canonical_representative(child));
    }
  }
};

void run_poset_walk(int n, int shard, int num_shards,
                    const std::function<void(const Iposet&)>& visit) {
  PosetWalk walk;
  walk.target = n;
  walk.root_depth = std::max(0, std::min(n - 1, 6));
  walk.shard = shard;
  walk.num_shards = num_shards;
  walk.visit = &visit;
  walk.run();
}

struct AssignWalk {
  const Iposet* p = nullptr;
  const std::function<void(const Iposet&)>* visit = nullptr;
  Mask minimal = 0;
  Mask maximal = 0;
  std::vector<int> sources;
  std::vector<int> targets;

  bool orbit_least(int x, const std::vector<std::vector<int>>& auts) const {
    for (const std::vector<int>& a : auts) {
      if (a[x] < x) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::vector<int>> stabilise(
      int x, const std::vector<std::vector<int>>& auts) const {
    std::vector<std::vector<int>> kept;
    for (const std::vector<int>& a : auts) {
      if (a[x] == x) {
        kept.push_back(a);
      }
    }
    return kept;
  }

  void emit() {
    const int n = p->size();
    std::vector<Mask> up(n);
    for (int x = 0; x < n; ++x) {
      up[x] = p->up(x);
    }
    (*visit)(Iposet::unchecked(n, std::move(up), sources, targets));
  }

  void choose_targets(Mask used, const std::vector<std::vector<int>>& auts) {
    emit();
    for (int x = 0; x < p->size(); ++x) {
      const Mask bit = Mask{1} << x;
      if (!(maximal & bit) || (used & bit) || !orbit_least(x, auts)) {
        continue;
      }
      targets.push_back(x);
      choose_targets(used | bit, stabilise(x, auts));
      targets.pop_back();
    }
  }

  void choose_sources(Mask used, const std::vector<std::vector<int>>& auts) {
    choose_targets(0, auts);
    for (int x = 0; x < p->size(); ++x) {
      const Mask bit = Mask{1} << x;
      if (!(minimal & bit) || (used & bit) || !orbit_least(x, auts)) {
        continue;
      }
      sources.push_back(x);
      choose_sources(used | bit, stabilise(x, auts));
      sources.pop_back();
    }
  }
};

}  // namespace

void for_each_poset(int n, const std::function<void(const Iposet&)>& visit,
                    bool extended) {
  for_each_poset_sharded(n, 0, 1, visit, extended);
}

void for_each_poset_sharded(int n, int shard, int num_shards,
                            const std::function<void(const Iposet&)>& visit,
                            bool extended) {
  check_cap(n, kPosetCap, kPosetCapExtended, extended, "poset");
  if (shard < 0 || num_shards < 1 || shard >= num_shards) {
    throw_error(Errc::IndexOutOfRange, "invalid shard");
  }
  run_poset_walk(n, shard, num_shards, visit);
}

std::vector<Iposet> enumerate_posets(int n, bool extended) {
  std::vector<Iposet> out;
  for_each_poset(
      n, [&](const Iposet& p) { out.push_back(p); }, extended);
  return out;
}

void for_each_interface_assignment(
    const Iposet& p, const std::function<void(const Iposet&)>& visit) {
  const int n = p.size();
  std::vector<Mask> up(n);
  for (int x = 0; x < n; ++x) {
    up[x] = p.up(x);
  }
  const Iposet bare = Iposet::unchecked(n, std::move(up), {}, {});
  AssignWalk walk;
  walk.p = &bare;
  walk.visit = &visit;
  walk.minimal = bare.minimal_points();
  walk.maximal = bare.maximal_points();
  walk.choose_sources(0, automorphisms(bare));
}

void for_each_iposet(int n, const std::function<void(const Iposet&)>& visit,
                     bool extended) {
  for_each_iposet_sharded(n, 0, 1, visit, extended);
}

void for_each_iposet_sharded(int n, int shard, int num_shards,
                             const std::function<void(const Iposet&)>& visit,
                             bool extended) {
  check_cap(n, kIposetCap, kIposetCapExtended, extended, "iposet");
  if (shard < 0 || num_shards < 1 || shard >= num_shards) {
    throw_error(Errc::IndexOutOfRange, "invalid shard");
  }
  run_poset_walk(n, shard, num_shards, [&](const Iposet& p) {
    for_each_interface_assignment(p, visit);
  });
}

std::vector<Iposet> enumerate_iposets(int n, bool extended) {
  std::vector<Iposet> reps;
  for_each_iposet(
      n, [&](const Iposet& q) { reps.push_back(canonical_representative(q)); },
      extended);
  std::sort(reps.begin(), reps.end(), [](const Iposet& a, const Iposet& b) {
    return canonical_form(a).bytes < canonical_form(b).bytes;
  });
  return reps;
}

std::vector<Iposet> generate_closure(const std::vector<Iposet>& generators,
                                     int max_n) {
  if (max_n < 0) {
    throw_error(Errc::IndexOutOfRange, "negative point bound");
  }
  std::unordered_set<std::string> seen;
  std::vector<Iposet> items;
  // Partner indices bucketed for the composability filters: par needs only a
  // size bound, glue joins cod on the left to dom on the right.
  std::vector<std::vector<int>> by_size(max_n + 1);
  std::vector<std::vector<std::vector<int>>> by_size_dom(
      max_n + 1, std::vector<std::vector<int>>(max_n + 1));
  std::vector<std::vector<std::vector<int>>> by_size_cod(
      max_n + 1, std::vector<std::vector<int>>(max_n + 1));

  auto add = [&](const Iposet& q) {
    if (q.size() > max_n) {
      return;
    }
    CanonicalKey key = canonical_form(q);
    if (!seen.insert(std::move(key.bytes)).second) {
      return;
    }
    const int idx = static_cast<int>(items.size());
    items.push_back(canonical_representative(q));
    const Iposet& rep = items.back();
    by_size[rep.size()].push_back(idx);
    by_size_dom[rep.size()][rep.dom()].push_back(idx);
    by_size_cod[rep.size()][rep.cod()].push_back(idx);
  };

  for (const Iposet& g : generators) {
    if (g.size() <= max_n) {
      add(g);
    }
  }

  for (std::size_t i = 0; i < items.size(); ++i) {
    const Iposet a = items[i];
    const int budget = max_n - a.size();
    for (int s = 0; s <= budget; ++s) {
      for (std::size_t pos = 0;
           pos < by_size[s].size() && by_size[s][pos] <= static_cast<int>(i);
           ++pos) {
        const Iposet b = items[by_size[s][pos]];
        add(par(a, b));
        if (by_size[s][pos] != static_cast<int>(i)) {
          add(par(b, a));
        }
      }
    }
    // Bucket vectors may grow while add() runs, so index by path each time.
    for (int s = a.cod(); s <= max_n && s - a.cod() <= budget; ++s) {
      for (std::size_t pos = 0; pos < by_size_dom[s][a.cod()].size() &&
                                by_size_dom[s][a.cod()][pos] <=
                                    static_cast<int>(i);
           ++pos) {
        const Iposet b = items[by_size_dom[s][a.cod()][pos]];
        add(glue(a, b));
      }
    }
    for (int s = a.dom(); s <= max_n && s - a.dom() <= budget; ++s) {
      for (std::size_t pos = 0; pos < by_size_cod[s][a.dom()].size() &&
                                by_size_cod[s][a.dom()][pos] <
                                    static_cast<int>(i);
           ++pos) {
        const Iposet b = items[by_size_cod[s][a.dom()][pos]];
        add(glue(b, a));
      }
    }
  }

  std::sort(items.begin(), items.end(), [](const Iposet& a, const Iposet& b) {
    return canonical_form(a).bytes < canonical_form(b).bytes;
  });
  return items;
}

std::vector<CanonicalKey> generate_gp_closure(int max_points) {
  if (max_points < 0) {
    throw_error(Errc::IndexOutOfRange, "negative point count");
  }
  if (max_points > 7) {
    throw_error(Errc::SizeCapExceeded,
                "gp closure generation capped at 7 points");
  }
  const std::vector<Iposet> generators = {
      Iposet::empty(), Iposet::singleton(false, false),
      Iposet::singleton(false, true), Iposet::singleton(true, false),
      Iposet::singleton(true, true)};
  std::vector<Iposet> items = generate_closure(generators, max_points);
  std::vector<CanonicalKey> keys;
  keys.reserve(items.size());
  for (const Iposet& q : items) {
    keys.push_back(canonical_form(q));
  }
  return keys;
}

}  // namespace iposets
