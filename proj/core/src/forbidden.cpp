#include <algorithm>
#include <bit>
#include <exception>
#include <string>
#include <thread>

#include "iposets/algebra.hpp"
#include "iposets/enumerate.hpp"
#include "iposets/forbidden.hpp"
#include "iposets/recognition.hpp"

namespace iposets {

namespace {

constexpr int kMiningCap = 8;
constexpr int kMiningCapExtended = 10;

struct InducedSearch {
  const Iposet& host;
  const Iposet& pattern;
  std::vector<int> order;
  std::vector<int> image;
  Mask used = 0;

  InducedSearch(const Iposet& h, const Iposet& p) : host(h), pattern(p) {
    // Most-constrained-first: repeatedly pick the point with the most
    // comparabilities into the already ordered part, then overall.
    const int pn = pattern.size();
    Mask chosen = 0;
    for (int step = 0; step < pn; ++step) {
      int best = -1;
      int best_linked = -1;
      int best_degree = -1;
      for (int x = 0; x < pn; ++x) {
        if ((chosen >> x) & 1) {
          continue;
        }
        const Mask comp = pattern.up(x) | pattern.down(x);
        const int linked = std::popcount(comp & chosen);
        const int degree = std::popcount(comp);
        if (linked > best_linked ||
            (linked == best_linked && degree > best_degree)) {
          best = x;
          best_linked = linked;
          best_degree = degree;
        }
      }
      order.push_back(best);
      chosen |= Mask{1} << best;
    }
    image.assign(pn, -1);
  }

  bool dfs(int k) {
    if (k == static_cast<int>(order.size())) {
      return true;
    }
    const int pk = order[k];
    for (int h = 0; h < host.size(); ++h) {
      if ((used >> h) & 1) {
        continue;
      }
      if (std::popcount(host.up(h)) < std::popcount(pattern.up(pk)) ||
          std::popcount(host.down(h)) < std::popcount(pattern.down(pk))) {
        continue;
      }
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        const int pp = order[j];
        const int hp = image[j];
        ok = pattern.less(pk, pp) == host.less(h, hp) &&
             pattern.less(pp, pk) == host.less(hp, h);
      }
      if (!ok) {
        continue;
      }
      image[k] = h;
      used |= Mask{1} << h;
      if (dfs(k + 1)) {
        return true;
      }
      used &= ~(Mask{1} << h);
    }
    return false;
  }
};

bool deletions_all_gp(const Iposet& p) {
  for (int x = 0; x < p.size(); ++x) {
    if (!is_gp(p.induced_subposet(p.all_points() & ~(Mask{1} << x)))) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool contains_induced(const Iposet& host, const Iposet& pattern) {
  if (pattern.size() > host.size()) {
    return false;
  }
  if (pattern.size() == 0) {
    return true;
  }
  InducedSearch search(host, pattern);
  return search.dfs(0);
}

const std::vector<ForbiddenFixture>& known_forbidden() {
  static const std::vector<ForbiddenFixture> fixtures = {
      {"NN", 6, {{0, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}}},
      {"NPLUS", 6, {{0, 2}, {0, 3}, {0, 5}, {1, 3}, {1, 4}, {2, 5}}},
      {"NMINUS", 6, {{2, 0}, {3, 0}, {5, 0}, {3, 1}, {4, 1}, {5, 2}}},
      {"3C", 6, {{0, 3}, {0, 4}, {1, 3}, {1, 5}, {2, 4}, {2, 5}}},
      {"LN", 6, {{0, 2}, {0, 4}, {2, 4}, {1, 3}, {1, 4}, {1, 5}, {3, 5}}},
      {"F8",
       8,
       {{0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}, {3, 7}, {4, 6}, {5, 7}}},
      {"F10A",
       10,
       {{0, 4},
        {0, 5},
        {1, 3},
        {1, 6},
        {1, 9},
        {2, 3},
        {2, 7},
        {2, 8},
        {4, 8},
        {5, 9},
        {6, 8},
        {7, 9}}},
      {"F10B",
       10,
       {{0, 7},
        {0, 8},
        {1, 3},
        {1, 4},
        {1, 8},
        {2, 5},
        {2, 6},
        {2, 7},
        {3, 9},
        {4, 7},
        {5, 8},
        {6, 9}}},
      {"F10C",
       10,
       {{0, 2},
        {0, 3},
        {0, 4},
        {1, 2},
        {1, 5},
        {1, 6},
        {2, 7},
        {2, 8},
        {3, 9},
        {4, 7},
        {5, 8},
        {6, 9}}},
      {"F10D",
       10,
       {{0, 3},
        {0, 4},
        {0, 7},
        {1, 2},
        {1, 5},
        {1, 6},
        {2, 8},
        {3, 9},
        {4, 6},
        {4, 9},
        {5, 7},
        {5, 8},
        {6, 8},
        {7, 9}}},
      {"F10E",
       10,
       {{0, 3},
        {0, 4},
        {1, 3},
        {1, 5},
        {2, 6},
        {2, 7},
        {3, 8},
        {3, 9},
        {4, 8},
        {5, 9},
        {6, 8},
        {7, 9}}},
  };
  return fixtures;
}

std::vector<Iposet> minimal_forbidden(int max_points, bool extended,
                                      int jobs) {
  if (max_points < 0) {
    throw_error(Errc::IndexOutOfRange, "negative point count");
  }
  if (jobs < 1) {
    throw_error(Errc::IndexOutOfRange, "jobs must be at least 1");
  }
  const int cap = extended ? kMiningCapExtended : kMiningCap;
  if (max_points > cap) {
    throw_error(Errc::SizeCapExceeded, "forbidden mining capped at " +
                                           std::to_string(cap) + " points");
  }

  std::vector<Iposet> found;
  for (int n = 0; n <= max_points; ++n) {
    const int workers = std::min(jobs, std::max(1, n));
    std::vector<std::vector<Iposet>> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int shard = 0; shard < workers; ++shard) {
      threads.emplace_back([&, shard, n] {
        try {
          for_each_poset_sharded(
              n, shard, workers,
              [&](const Iposet& q) {
                for (const Iposet& smaller : found) {
                  if (contains_induced(q, smaller)) {
                    return;
                  }
                }
                if (is_gp(q)) {
                  return;
                }
                if (!deletions_all_gp(q)) {
                  throw_error(Errc::InternalLawViolation,
                              "non-minimal candidate passed the containment "
                              "filter");
                }
                partial[shard].push_back(q);
              },
              extended);
        } catch (...) {
          errors[shard] = std::current_exception();
        }
      });
    }
    for (std::thread& t : threads) {
      t.join();
    }
    for (const std::exception_ptr& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
    std::vector<Iposet> level;
    for (std::vector<Iposet>& part : partial) {
      for (Iposet& q : part) {
        level.push_back(std::move(q));
      }
    }
    std::sort(level.begin(), level.end(),
              [](const Iposet& a, const Iposet& b) {
                return canonical_form(a).bytes < canonical_form(b).bytes;
              });
    for (Iposet& q : level) {
      found.push_back(std::move(q));
    }
  }
  return found;
}

}  // namespace iposets
