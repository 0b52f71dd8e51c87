#include <algorithm>
#include <bit>
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

using iposets::CharFn;
using iposets::CharLabel;
using iposets::Errc;
using iposets::GpTerm;
using iposets::Iposet;
using iposets::IposetError;
using iposets::is_gp;

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
    keys.insert(iposets::canonical_form(p).bytes);
  }
  return keys;
}

GpTerm leaf(GpTerm::Kind kind) { return GpTerm{kind, {}}; }

GpTerm node(GpTerm::Kind kind, std::vector<GpTerm> children) {
  return GpTerm{kind, std::move(children)};
}

const std::vector<Iposet>& generators() {
  static const std::vector<Iposet> gens = {
      Iposet::empty(), Iposet::singleton(false, false),
      Iposet::singleton(false, true), Iposet::singleton(true, false),
      Iposet::singleton(true, true)};
  return gens;
}

}  // namespace

TEST_SUITE("gp") {

TEST_CASE("gp membership on landmark shapes") {
  CHECK(is_gp(Iposet::empty()));
  CHECK(is_gp(Iposet::singleton(true, true)));
  CHECK(is_gp(Iposet::poset(2, {{0, 1}})));
  CHECK(is_gp(Iposet::poset(4, {{0, 2}, {1, 2}, {1, 3}})));
  CHECK(is_gp(Iposet::poset(4, {{0, 2}, {1, 3}})));
  CHECK(is_gp(Iposet::identity(5)));
  CHECK(!is_gp(Iposet::symmetry_from_permutation({1, 0})));
  CHECK(!is_gp(Iposet::make(4, {{0, 3}, {1, 2}}, {0, 1}, {2, 3})));
  CHECK(!is_gp(Iposet::poset(6, {{0, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}})));
}

TEST_CASE("non-gp census on small interface enumerations") {
  const std::vector<int> expected = {0, 0, 1, 12, 113};
  for (int n = 2; n <= 4; ++n) {
    std::vector<Iposet> non_gp;
    for (const Iposet& p : iposets::enumerate_iposets(n)) {
      if (!is_gp(p)) {
        non_gp.push_back(p);
      }
    }
    CHECK(static_cast<int>(non_gp.size()) == expected[n]);
    for (const Iposet& p : non_gp) {
      CHECK(!(p.is_discrete() && p.is_interface_consistent()));
    }
    if (n == 2) {
      CHECK(iposets::is_isomorphic(non_gp[0],
                                   Iposet::symmetry_from_permutation({1, 0}))
                .has_value());
    }
    if (n == 3) {
      for (const Iposet& p : non_gp) {
        CHECK(p.is_discrete());
        CHECK(!p.is_interface_consistent());
      }
    }
    if (n == 4) {
      std::vector<Iposet> consistent;
      for (const Iposet& p : non_gp) {
        CHECK(!is_gp(p.opposite()));
        if (p.is_interface_consistent()) {
          consistent.push_back(p);
        }
      }
      REQUIRE(consistent.size() == 1);
      CHECK(iposets::is_isomorphic(
                consistent[0], Iposet::make(4, {{0, 3}, {1, 2}}, {0, 1}, {2, 3}))
                .has_value());
    }
  }
}

TEST_CASE("terms certify membership") {
  for (int n = 0; n <= 4; ++n) {
    for (const Iposet& p : iposets::enumerate_iposets(n)) {
      const auto term = iposets::gp_term(p);
      const auto level = iposets::gp_level(p);
      CHECK(term.has_value() == is_gp(p));
      CHECK(level.has_value() == is_gp(p));
      if (term.has_value()) {
        CHECK(iposets::is_isomorphic(iposets::eval(*term), p).has_value());
        CHECK(*level <= iposets::alternation_depth(*term));
        CHECK(*level >= 0);
      }
    }
  }
}

TEST_CASE("term rendering and evaluation") {
  CHECK(iposets::to_string(leaf(GpTerm::Kind::Empty)) == "empty");
  CHECK(iposets::to_string(leaf(GpTerm::Kind::S01)) == "s01");
  CHECK(iposets::eval(leaf(GpTerm::Kind::S01)) ==
        Iposet::singleton(false, true));
  CHECK(iposets::eval(leaf(GpTerm::Kind::Empty)) == Iposet::empty());

  const GpTerm chain = node(GpTerm::Kind::Glue,
                            {leaf(GpTerm::Kind::S00), leaf(GpTerm::Kind::S00)});
  CHECK(iposets::to_string(chain) == "glue(s00,s00)");
  CHECK(iposets::eval(chain) == Iposet::poset(2, {{0, 1}}));

  const auto chain_term = iposets::gp_term(Iposet::poset(2, {{0, 1}}));
  REQUIRE(chain_term.has_value());
  CHECK(iposets::to_string(*chain_term) == "glue(s00,s00)");

  const auto n_term =
      iposets::gp_term(Iposet::poset(4, {{0, 2}, {1, 2}, {1, 3}}));
  REQUIRE(n_term.has_value());
  CHECK(iposets::to_string(*n_term) ==
        "glue(par(s00,s01),par(s01,s11),par(s11,s10),par(s00,s10))");

  CHECK(!iposets::gp_term(
             Iposet::poset(6, {{0, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}}))
             .has_value());
}

TEST_CASE("alternation depth flattens nested layers") {
  using Kind = GpTerm::Kind;
  CHECK(iposets::alternation_depth(leaf(Kind::Empty)) == 0);
  CHECK(iposets::alternation_depth(leaf(Kind::S11)) == 0);
  const GpTerm chain = node(Kind::Glue, {leaf(Kind::S00), leaf(Kind::S00)});
  CHECK(iposets::alternation_depth(chain) == 1);
  CHECK(iposets::alternation_depth(
            node(Kind::Par, {leaf(Kind::S00), leaf(Kind::S00)})) == 1);
  CHECK(iposets::alternation_depth(node(
            Kind::Glue, {node(Kind::Par, {leaf(Kind::S00), leaf(Kind::S00)}),
                         leaf(Kind::S00)})) == 1);
  CHECK(iposets::alternation_depth(node(Kind::Par, {chain, leaf(Kind::S00)})) ==
        2);
  CHECK(iposets::alternation_depth(
            node(Kind::Glue, {node(Kind::Par, {chain, leaf(Kind::S00)}),
                              leaf(Kind::S00)})) == 2);
}

TEST_CASE("hierarchy levels on landmark shapes") {
  auto level_of = [](const Iposet& p) {
    const auto level = iposets::gp_level(p);
    REQUIRE(level.has_value());
    return *level;
  };
  CHECK(level_of(Iposet::empty()) == 0);
  CHECK(level_of(Iposet::singleton(false, true)) == 0);
  CHECK(level_of(Iposet::poset(2, {})) == 1);
  CHECK(level_of(Iposet::poset(2, {{0, 1}})) == 1);
  CHECK(level_of(Iposet::poset(4, {{0, 2}, {1, 2}, {1, 3}})) == 1);
  CHECK(level_of(Iposet::poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}})) == 1);
  CHECK(level_of(Iposet::poset(4, {{0, 2}, {1, 3}})) == 2);
  CHECK(level_of(iposets::build_witness(2)) == 2);
  CHECK(!iposets::gp_level(Iposet::symmetry_from_permutation({1, 0}))
             .has_value());
}

TEST_CASE("level one is the interface-consistent interval class") {
  for (int n = 0; n <= 4; ++n) {
    for (const Iposet& p : iposets::enumerate_iposets(n)) {
      const auto level = iposets::gp_level(p);
      const bool low = level.has_value() && *level <= 1;
      CHECK(low == (p.is_interface_consistent() &&
                    iposets::is_interval_order(p)));
    }
  }
  for (int n = 0; n <= 5; ++n) {
    for (const Iposet& p : iposets::enumerate_posets(n)) {
      const auto level = iposets::gp_level(p);
      REQUIRE(level.has_value());
      CHECK((*level <= 1) == iposets::is_interval_order(p));
      if (n >= 2 && iposets::is_interval_order(p)) {
        CHECK(*level == 1);
      }
    }
  }
}

TEST_CASE("closure phases match the level predicates") {
  const int cap = 4;
  const std::vector<Iposet> s1 = oracle::close_under(
      oracle::close_under(generators(), false, true, cap), true, false, cap);
  std::vector<Iposet> expected1;
  std::vector<Iposet> expected2;
  for (int n = 0; n <= cap; ++n) {
    for (const Iposet& p : iposets::enumerate_iposets(n)) {
      const auto level = iposets::gp_level(p);
      if (level.has_value() && *level <= 1) {
        expected1.push_back(p);
      }
      if (level.has_value() && *level <= 2) {
        expected2.push_back(p);
      }
    }
  }
  CHECK(canonical_keys(s1) == canonical_keys(expected1));

  const std::vector<Iposet> s2 = oracle::close_under(
      oracle::close_under(s1, false, true, cap), true, false, cap);
  CHECK(canonical_keys(s2) == canonical_keys(expected2));
}

TEST_CASE("step sequences are the serial closure of discrete posets") {
  const int cap = 4;
  const std::vector<Iposet> seeds = {Iposet::empty(),
                                     Iposet::singleton(false, false)};
  const std::vector<Iposet> t1 = oracle::close_under(
      oracle::close_under(seeds, false, true, cap), true, false, cap);
  std::vector<Iposet> expected;
  for (int n = 0; n <= cap; ++n) {
    for (const Iposet& p : iposets::enumerate_posets(n)) {
      if (iposets::is_step_sequence(p)) {
        expected.push_back(p);
      }
    }
  }
  CHECK(canonical_keys(t1) == canonical_keys(expected));
}

TEST_CASE("discrete consistent iposets are parallel products of singletons") {
  const int cap = 4;
  const std::vector<Iposet> closure =
      oracle::close_under(generators(), false, true, cap);
  std::vector<Iposet> expected;
  for (int n = 0; n <= cap; ++n) {
    for (const Iposet& p : iposets::enumerate_iposets(n)) {
      if (p.is_discrete() && p.is_interface_consistent()) {
        expected.push_back(p);
      }
    }
  }
  CHECK(canonical_keys(closure) == canonical_keys(expected));
}

TEST_CASE("witness posets") {
  const std::vector<int> sizes = {2, 5, 11, 23, 47};
  for (int n = 1; n <= 5; ++n) {
    CHECK(iposets::build_witness(n).size() == sizes[n - 1]);
  }
  CHECK(iposets::build_witness(1) == Iposet::poset(2, {{0, 1}}));

  const Iposet w2 = iposets::build_witness(2);
  CHECK(w2.dom() == 0);
  CHECK(w2.cod() == 0);
  CHECK(std::popcount(w2.minimal_points()) == 1);
  CHECK(iposets::is_sp(w2));
  CHECK(iposets::is_sp(iposets::build_witness(3)));
  CHECK(!iposets::is_interval_order(w2));
  CHECK(is_gp(w2));

  CHECK(code_of([] { iposets::build_witness(0); }) == Errc::IndexOutOfRange);
  CHECK(code_of([] { iposets::build_witness(-2); }) == Errc::IndexOutOfRange);
  CHECK(code_of([] { iposets::build_witness(6); }) == Errc::Overflow);
}

TEST_CASE("every split of the second witness leaves a 2+2 tail") {
  const Iposet w2 = iposets::build_witness(2);
  const Iposet twotwo = Iposet::poset(4, {{0, 2}, {1, 3}});
  int splits = 0;
  for (const CharFn& phi : iposets::enumerate_char_fns(w2)) {
    std::vector<int> cut;
    for (int x = 0; x < w2.size(); ++x) {
      if (phi[x] == CharLabel::Cut) {
        cut.push_back(x);
      }
    }
    std::vector<int> middle = cut;
    do {
      ++splits;
      const iposets::SplitResult split =
          iposets::split_by_char_fn(w2, phi, middle);
      CHECK(oracle::poset_iso(split.second, twotwo));
    } while (std::next_permutation(middle.begin(), middle.end()));
  }
  CHECK(splits == 5);
}

}  // TEST_SUITE
