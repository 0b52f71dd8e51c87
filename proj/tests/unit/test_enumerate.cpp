#include <functional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "iposets/algebra.hpp"
#include "iposets/enumerate.hpp"
#include "iposets/iposet.hpp"
#include "iposets/recognition.hpp"
#include "oracle.hpp"

using iposets::canonical_form;
using iposets::CanonicalKey;
using iposets::Errc;
using iposets::Iposet;
using iposets::IposetError;

namespace {

Errc code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const IposetError& e) {
    return e.code();
  }
  FAIL("expected an IposetError");
  return Errc::InternalLawViolation;
}

std::set<std::string> canonical_keys(const std::vector<Iposet>& ps) {
  std::set<std::string> keys;
  for (const Iposet& p : ps) {
    keys.insert(canonical_form(p).bytes);
  }
  return keys;
}

const std::vector<Iposet>& gp_generators() {
  static const std::vector<Iposet> gens = {
      Iposet::empty(), Iposet::singleton(false, false),
      Iposet::singleton(false, true), Iposet::singleton(true, false),
      Iposet::singleton(true, true)};
  return gens;
}

}  // namespace

TEST_SUITE("enumerate") {

TEST_CASE("poset class counts") {
  const std::vector<int> expected = {1, 1, 2, 5, 16, 63};
  for (int n = 0; n <= 5; ++n) {
    const std::vector<Iposet> reps = iposets::enumerate_posets(n);
    CHECK(static_cast<int>(reps.size()) == expected[n]);
    CHECK(static_cast<int>(reps.size()) == oracle::count_poset_classes(n));
    for (const Iposet& p : reps) {
      CHECK(p.size() == n);
      CHECK(p.dom() == 0);
      CHECK(p.cod() == 0);
    }
  }
}

TEST_CASE("iposet class counts") {
  const std::vector<int> expected = {1, 4, 17, 86, 532};
  for (int n = 0; n <= 4; ++n) {
    const std::vector<Iposet> reps = iposets::enumerate_iposets(n);
    CHECK(static_cast<int>(reps.size()) == expected[n]);
    if (n <= 3) {
      CHECK(static_cast<int>(reps.size()) == oracle::count_iposet_classes(n));
    }
  }
}

TEST_CASE("streams are duplicate free under the full matcher") {
  for (int n = 0; n <= 4; ++n) {
    const std::vector<Iposet> posets = iposets::enumerate_posets(n);
    for (std::size_t i = 0; i < posets.size(); ++i) {
      for (std::size_t j = i + 1; j < posets.size(); ++j) {
        CHECK(!iposets::is_isomorphic(posets[i], posets[j]).has_value());
      }
    }
    const std::vector<Iposet> all = iposets::enumerate_iposets(n);
    CHECK(canonical_keys(all).size() == all.size());
    std::set<std::string> naive;
    for (const Iposet& p : all) {
      naive.insert(oracle::naive_key(p));
    }
    CHECK(naive.size() == all.size());
  }
  const std::vector<Iposet> four = iposets::enumerate_iposets(4);
  for (std::size_t i = 0; i < four.size(); ++i) {
    for (std::size_t j = i + 1; j < four.size(); ++j) {
      CHECK(!iposets::is_isomorphic(four[i], four[j]).has_value());
    }
  }
}

TEST_CASE("sharded traversal partitions the stream") {
  auto check_partition = [](int n, int shards, bool iposet_stream,
                            std::size_t expected_total) {
    std::multiset<std::string> merged;
    for (int shard = 0; shard < shards; ++shard) {
      auto visit = [&](const Iposet& p) {
        merged.insert(canonical_form(p).bytes);
      };
      if (iposet_stream) {
        iposets::for_each_iposet_sharded(n, shard, shards, visit);
      } else {
        iposets::for_each_poset_sharded(n, shard, shards, visit);
      }
    }
    CHECK(merged.size() == expected_total);
    const std::vector<Iposet> full = iposet_stream
                                         ? iposets::enumerate_iposets(n)
                                         : iposets::enumerate_posets(n);
    CHECK(std::set<std::string>(merged.begin(), merged.end()) ==
          canonical_keys(full));
    CHECK(merged.size() ==
          std::set<std::string>(merged.begin(), merged.end()).size());
  };
  check_partition(5, 3, false, 63);
  check_partition(5, 1, false, 63);
  check_partition(4, 3, true, 532);
  check_partition(4, 7, true, 532);
}

TEST_CASE("interface assignment orbits") {
  auto count_orbits = [](const Iposet& p) {
    int count = 0;
    iposets::for_each_interface_assignment(p, [&](const Iposet& q) {
      CHECK(oracle::poset_iso(q, p));
      ++count;
    });
    return count;
  };
  CHECK(count_orbits(Iposet::poset(2, {})) == 13);
  CHECK(count_orbits(Iposet::poset(2, {{0, 1}})) == 4);
  CHECK(count_orbits(Iposet::poset(4, {{0, 2}, {1, 2}, {1, 3}})) == 25);
  CHECK(count_orbits(Iposet::make(4, {{0, 2}, {1, 2}, {1, 3}}, {1}, {2})) ==
        25);

  int total = 0;
  for (const Iposet& p : iposets::enumerate_posets(3)) {
    total += count_orbits(p);
  }
  CHECK(total == 86);
}

TEST_CASE("closure of the interface-free singleton") {
  const std::vector<Iposet> closure =
      iposets::generate_closure({Iposet::singleton(false, false)}, 3);
  CHECK(closure.size() == 8);
  std::vector<Iposet> expected;
  for (int n = 1; n <= 3; ++n) {
    for (const Iposet& p : iposets::enumerate_posets(n)) {
      if (iposets::is_sp(p)) {
        expected.push_back(p);
      }
    }
  }
  CHECK(canonical_keys(closure) == canonical_keys(expected));
  for (std::size_t i = 1; i < closure.size(); ++i) {
    CHECK(canonical_form(closure[i - 1]).bytes <
          canonical_form(closure[i]).bytes);
  }
}

TEST_CASE("gp closure sizes and consistency") {
  CHECK(iposets::generate_gp_closure(0).size() == 1);
  CHECK(iposets::generate_gp_closure(1).size() == 5);
  CHECK(iposets::generate_gp_closure(2).size() == 21);
  CHECK(iposets::generate_gp_closure(3).size() == 95);

  const std::vector<CanonicalKey> keys = iposets::generate_gp_closure(3);
  std::set<std::string> closure_keys;
  for (const CanonicalKey& key : keys) {
    closure_keys.insert(key.bytes);
  }
  CHECK(closure_keys.size() == keys.size());

  std::set<std::string> filtered;
  for (int n = 0; n <= 3; ++n) {
    for (const Iposet& p : iposets::enumerate_iposets(n)) {
      if (iposets::is_gp(p)) {
        filtered.insert(canonical_form(p).bytes);
      }
    }
  }
  CHECK(closure_keys == filtered);

  for (const Iposet& p : iposets::generate_closure(gp_generators(), 4)) {
    CHECK(p.is_interface_consistent());
    CHECK(iposets::is_gp(p));
  }
}

TEST_CASE("caps and argument validation") {
  CHECK(code_of([] { iposets::enumerate_posets(9); }) ==
        Errc::SizeCapExceeded);
  CHECK(code_of([] { iposets::enumerate_posets(11, true); }) ==
        Errc::SizeCapExceeded);
  CHECK(code_of([] { iposets::enumerate_posets(-1); }) ==
        Errc::IndexOutOfRange);
  CHECK(code_of([] { iposets::enumerate_iposets(8); }) ==
        Errc::SizeCapExceeded);
  CHECK(code_of([] { iposets::enumerate_iposets(9, true); }) ==
        Errc::SizeCapExceeded);
  CHECK(code_of([] { iposets::enumerate_iposets(-2); }) ==
        Errc::IndexOutOfRange);
  CHECK(code_of([] { iposets::generate_gp_closure(8); }) ==
        Errc::SizeCapExceeded);
  CHECK(code_of([] { iposets::generate_gp_closure(-1); }) ==
        Errc::IndexOutOfRange);
  CHECK(code_of([] { iposets::generate_closure({}, -2); }) ==
        Errc::IndexOutOfRange);
  auto ignore = [](const Iposet&) {};
  CHECK(code_of([&] { iposets::for_each_poset_sharded(4, 3, 3, ignore); }) ==
        Errc::IndexOutOfRange);
  CHECK(code_of([&] { iposets::for_each_poset_sharded(4, -1, 2, ignore); }) ==
        Errc::IndexOutOfRange);
  CHECK(code_of([&] { iposets::for_each_iposet_sharded(4, 0, 0, ignore); }) ==
        Errc::IndexOutOfRange);
}

}  // TEST_SUITE
