#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "iposets/algebra.hpp"
#include "iposets/enumerate.hpp"
#include "iposets/iposet.hpp"
#include "iposets/recognition.hpp"
#include "oracle.hpp"

using iposets::Errc;
using iposets::glue;
using iposets::glue_many;
using iposets::Iposet;
using iposets::IposetError;
using iposets::is_isomorphic;
using iposets::par;
using iposets::par_many;
using iposets::subsumes;

namespace {

std::vector<Iposet> iposets_up_to(int n) {
  std::vector<Iposet> out;
  for (int k = 0; k <= n; ++k) {
    for (Iposet& p : iposets::enumerate_iposets(k)) {
      out.push_back(std::move(p));
    }
  }
  return out;
}

Errc code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const IposetError& e) {
    return e.code();
  }
  FAIL("expected an IposetError");
  return Errc::InternalLawViolation;
}

bool valid_subsumption_witness(const Iposet& p, const Iposet& q,
                               const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != p.size() || p.size() != q.size()) {
    return false;
  }
  std::vector<bool> hit(q.size(), false);
  for (int x : f) {
    if (x < 0 || x >= q.size() || hit[x]) {
      return false;
    }
    hit[x] = true;
  }
  for (int i = 0; i < p.size(); ++i) {
    for (int j = 0; j < p.size(); ++j) {
      if (q.less(f[i], f[j]) && !p.less(i, j)) {
        return false;
      }
    }
  }
  if (p.dom() != q.dom() || p.cod() != q.cod()) {
    return false;
  }
  for (int k = 0; k < p.dom(); ++k) {
    if (f[p.sources()[k]] != q.sources()[k]) {
      return false;
    }
  }
  for (int k = 0; k < p.cod(); ++k) {
    if (f[p.targets()[k]] != q.targets()[k]) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("glue and par match the naive constructions") {
  const std::vector<Iposet> all = iposets_up_to(3);
  for (const Iposet& a : all) {
    for (const Iposet& b : all) {
      if (a.cod() == b.dom()) {
        CHECK(glue(a, b) == oracle::naive_glue(a, b));
      }
      CHECK(par(a, b) == oracle::naive_par(a, b));
    }
  }
}

TEST_CASE("gluings of interfaced singletons") {
  const Iposet s00 = Iposet::singleton(false, false);
  const Iposet s01 = Iposet::singleton(false, true);
  const Iposet s10 = Iposet::singleton(true, false);
  const Iposet s11 = Iposet::singleton(true, true);
  CHECK(glue(s01, s10) == s00);
  CHECK(glue(s10, s01) == Iposet::make(2, {{0, 1}}, {0}, {1}));
  CHECK(glue(s11, s11) == s11);
  CHECK(glue(s00, s00) == Iposet::poset(2, {{0, 1}}));
  CHECK(glue(s01, s11) == s01);
  CHECK(glue(s11, s10) == s10);
}

TEST_CASE("identity units") {
  for (const Iposet& p : iposets_up_to(3)) {
    CHECK(glue(p, Iposet::identity(p.cod())) == p);
    const Iposet left = glue(Iposet::identity(p.dom()), p);
    CHECK(is_isomorphic(left, p).has_value());
    bool prefix = true;
    for (int k = 0; k < p.dom(); ++k) {
      prefix = prefix && p.sources()[k] == k;
    }
    CHECK((left == p) == prefix);
    CHECK(par(p, Iposet::empty()) == p);
    CHECK(par(Iposet::empty(), p) == p);
  }
}

TEST_CASE("associativity") {
  const std::vector<Iposet> small = iposets_up_to(2);
  int composable = 0;
  for (const Iposet& a : small) {
    for (const Iposet& b : small) {
      if (a.cod() != b.dom()) {
        continue;
      }
      const Iposet ab = glue(a, b);
      for (const Iposet& c : small) {
        if (b.cod() != c.dom()) {
          continue;
        }
        ++composable;
        CHECK(glue(ab, c) == glue(a, glue(b, c)));
      }
    }
  }
  CHECK(composable == 1322);

  for (const Iposet& a : small) {
    for (const Iposet& b : small) {
      for (const Iposet& c : small) {
        CHECK(par(par(a, b), c) == par(a, par(b, c)));
      }
    }
  }
}

TEST_CASE("variadic folds") {
  const Iposet s00 = Iposet::singleton(false, false);
  const Iposet chain = Iposet::poset(2, {{0, 1}});
  CHECK(glue_many({chain}) == chain);
  CHECK(glue_many({s00, s00, s00}) == glue(glue(s00, s00), s00));
  CHECK(par_many({}) == Iposet::empty());
  CHECK(par_many({Iposet::identity(1), Iposet::identity(1),
                  Iposet::identity(1)}) == Iposet::identity(3));
  CHECK(code_of([&] {
          glue_many({Iposet::singleton(false, true), Iposet::identity(2)});
        }) == Errc::ArityMismatch);
  CHECK(code_of([] { glue_many({}); }) == Errc::ArityMismatch);
}

TEST_CASE("size overflow") {
  const Iposet big = Iposet::poset(40, {});
  CHECK(code_of([&] { glue(big, big); }) == Errc::Overflow);
  CHECK(code_of([&] { par(big, big); }) == Errc::Overflow);
}

TEST_CASE("the N shape arises only through interfaces") {
  const Iposet f1 = Iposet::make(2, {}, {}, {0});
  const Iposet f2 = Iposet::make(2, {}, {0}, {1});
  const Iposet f3 = Iposet::make(2, {}, {1}, {});
  const Iposet composite = glue(glue(f1, f2), f3);
  CHECK(composite == Iposet::poset(4, {{1, 2}, {0, 3}, {1, 3}}));
  const Iposet n = Iposet::poset(4, {{0, 2}, {1, 2}, {1, 3}});
  CHECK(is_isomorphic(composite, n).has_value());
}

TEST_CASE("composition is not commutative") {
  const Iposet p1 = Iposet::make(2, {{0, 1}}, {}, {1});
  const Iposet p2 = Iposet::make(1, {}, {}, {0});
  const Iposet p3 = Iposet::make(3, {{0, 1}}, {0, 2}, {});

  CHECK(!is_isomorphic(par(p1, p2), par(p2, p1)).has_value());
  CHECK(iposets::canonical_form(par(p1, p2)) !=
        iposets::canonical_form(par(p2, p1)));
  CHECK(oracle::poset_iso(par(p1, p2), par(p2, p1)));

  const Iposet left = glue(par(p1, p2), p3);
  const Iposet right = glue(par(p2, p1), p3);
  CHECK(!oracle::poset_iso(left, right));
  const Iposet chain3_plus_point = Iposet::poset(4, {{0, 1}, {1, 3}});
  const Iposet n = Iposet::poset(4, {{0, 2}, {1, 2}, {1, 3}});
  CHECK(oracle::poset_iso(left, chain3_plus_point));
  CHECK(oracle::poset_iso(right, n));

  const Iposet s01 = Iposet::singleton(false, true);
  const Iposet s10 = Iposet::singleton(true, false);
  CHECK(glue(s01, s10).size() == 1);
  CHECK(glue(s10, s01).size() == 2);
}

TEST_CASE("commutativity characterization for connected factors") {
  std::vector<Iposet> connected;
  for (const Iposet& p : iposets_up_to(3)) {
    if (p.size() > 0 && p.connected_components().size() == 1) {
      connected.push_back(p);
    }
  }
  for (const Iposet& a : connected) {
    for (const Iposet& b : connected) {
      if (is_isomorphic(a, b).has_value()) {
        continue;
      }
      const bool commutes = is_isomorphic(par(a, b), par(b, a)).has_value();
      const bool predicted = (a.dom() == 0 || b.dom() == 0) &&
                             (a.cod() == 0 || b.cod() == 0);
      CHECK(commutes == predicted);
    }
  }
}

TEST_CASE("subsumption examples") {
  const Iposet chain = Iposet::poset(2, {{0, 1}});
  const Iposet antichain = Iposet::poset(2, {});
  CHECK(subsumes(chain, antichain).has_value());
  CHECK(!subsumes(antichain, chain).has_value());

  const Iposet k22 = Iposet::poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const Iposet twotwo = Iposet::poset(4, {{0, 2}, {1, 3}});
  const auto witness = subsumes(k22, twotwo);
  REQUIRE(witness.has_value());
  CHECK(valid_subsumption_witness(k22, twotwo, *witness));
  CHECK(!subsumes(twotwo, k22).has_value());

  CHECK(!subsumes(Iposet::identity(2),
                  Iposet::symmetry_from_permutation({1, 0}))
             .has_value());
  for (const Iposet& p : iposets_up_to(3)) {
    const auto self = subsumes(p, p);
    REQUIRE(self.has_value());
    CHECK(valid_subsumption_witness(p, p, *self));
  }
}

TEST_CASE("subsumption is antisymmetric up to isomorphism") {
  std::map<std::tuple<int, int, int>, std::vector<const Iposet*>> groups;
  const std::vector<Iposet> all = iposets_up_to(4);
  for (const Iposet& p : all) {
    groups[{p.size(), p.dom(), p.cod()}].push_back(&p);
  }
  for (const auto& [key, members] : groups) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const bool forward = subsumes(*members[i], *members[j]).has_value();
        const bool backward = subsumes(*members[j], *members[i]).has_value();
        CHECK(!(forward && backward));
      }
    }
  }
}

TEST_CASE("lax interchange") {
  const Iposet s00 = Iposet::singleton(false, false);
  CHECK(iposets::verify_lax_interchange(s00, s00, s00, s00) ==
        iposets::InterchangeResult::StrictSubsumption);
  const Iposet k22 = Iposet::poset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const Iposet twotwo = Iposet::poset(4, {{0, 1}, {2, 3}});
  CHECK(glue(par(s00, s00), par(s00, s00)) == k22);
  CHECK(par(glue(s00, s00), glue(s00, s00)) == twotwo);

  CHECK(iposets::verify_lax_interchange(Iposet::singleton(false, true), s00,
                                        Iposet::singleton(true, false),
                                        s00) ==
        iposets::InterchangeResult::IsoHolds);
  CHECK(iposets::verify_lax_interchange(Iposet::empty(), s00, Iposet::empty(),
                                        s00) ==
        iposets::InterchangeResult::IsoHolds);

  CHECK(code_of([&] {
          iposets::verify_lax_interchange(Iposet::singleton(false, true), s00,
                                          s00, s00);
        }) == Errc::ArityMismatch);

  const std::vector<Iposet> small = iposets_up_to(2);
  for (const Iposet& a : small) {
    for (const Iposet& c : small) {
      if (a.cod() != c.dom()) {
        continue;
      }
      for (const Iposet& b : small) {
        for (const Iposet& d : small) {
          if (b.cod() != d.dom()) {
            continue;
          }
          const auto result = iposets::verify_lax_interchange(a, b, c, d);
          const Iposet lhs = glue(par(a, b), par(c, d));
          const Iposet rhs = par(glue(a, c), glue(b, d));
          const bool iso = is_isomorphic(lhs, rhs).has_value();
          CHECK(subsumes(lhs, rhs).has_value());
          CHECK((result == iposets::InterchangeResult::IsoHolds) == iso);
        }
      }
    }
  }
}

TEST_CASE("singleton interchange") {
  const Iposet s01 = Iposet::singleton(false, true);
  const Iposet s10 = Iposet::singleton(true, false);
  const Iposet s11 = Iposet::singleton(true, true);
  for (const Iposet& starter : {s01, s11}) {
    for (const Iposet& terminator : {s10, s11}) {
      if (starter.cod() != terminator.dom()) {
        continue;
      }
      const std::vector<Iposet> partners = iposets_up_to(3);
      for (const Iposet& b : partners) {
        for (const Iposet& d : partners) {
          if (b.cod() != d.dom()) {
            continue;
          }
          CHECK(iposets::verify_lax_interchange(starter, b, terminator, d) ==
                iposets::InterchangeResult::IsoHolds);
          CHECK(iposets::verify_lax_interchange(b, starter, d, terminator) ==
                iposets::InterchangeResult::IsoHolds);
        }
      }
    }
  }
}

TEST_CASE("symmetries commute parallel factors") {
  using iposets::commute_symmetries;
  const Iposet s01 = Iposet::singleton(false, true);

  const auto [sigma0, tau0] = commute_symmetries(Iposet::empty(),
                                                 Iposet::empty());
  CHECK(sigma0 == Iposet::empty());
  CHECK(tau0 == Iposet::empty());

  const auto [sigma1, tau1] = commute_symmetries(s01, s01);
  CHECK(sigma1 == Iposet::identity(0));
  CHECK(tau1 == Iposet::symmetry_from_permutation({1, 0}));

  const auto [sigma2, tau2] =
      commute_symmetries(Iposet::identity(1), Iposet::identity(2));
  CHECK(sigma2 == Iposet::symmetry_from_permutation({2, 0, 1}));
  const auto [sigma3, tau3] =
      commute_symmetries(Iposet::identity(2), Iposet::identity(1));
  CHECK(sigma3 == Iposet::symmetry_from_permutation({1, 2, 0}));

  const std::vector<Iposet> small = iposets_up_to(2);
  for (const Iposet& a : small) {
    for (const Iposet& b : small) {
      const auto [sigma, tau] = commute_symmetries(a, b);
      CHECK(sigma.is_symmetry());
      CHECK(tau.is_symmetry());
      const Iposet rebuilt = glue(sigma, glue(par(b, a), tau));
      CHECK(is_isomorphic(rebuilt, par(a, b)).has_value());
    }
  }
}

TEST_CASE("refinements between factorizations") {
  using iposets::find_refinement;
  using iposets::Refinement;

  const Iposet levi_p = Iposet::make(3, {{0, 1}}, {}, {2});
  const Iposet levi_u = Iposet::make(3, {{0, 1}}, {}, {1});
  const Iposet levi_v = Iposet::make(2, {{0, 1}}, {0}, {});
  CHECK(glue(levi_p, levi_v) == glue(levi_u, levi_v));
  CHECK(!find_refinement(levi_p, levi_v, levi_u, levi_v).has_value());

  const auto same = find_refinement(levi_p, levi_v, levi_p, levi_v);
  REQUIRE(same.has_value());
  CHECK(is_isomorphic(same->r, Iposet::identity(levi_p.cod())).has_value());

  const Iposet f1 = Iposet::make(2, {}, {}, {0});
  const Iposet f2 = Iposet::make(2, {}, {0}, {1});
  const Iposet f3 = Iposet::make(2, {}, {1}, {});
  const auto left = find_refinement(glue(f1, f2), f3, f1, glue(f2, f3));
  REQUIRE(left.has_value());
  CHECK(left->side == Refinement::Side::ExtendsU);
  CHECK(is_isomorphic(left->r, f2).has_value());
  const auto right = find_refinement(f1, glue(f2, f3), glue(f1, f2), f3);
  REQUIRE(right.has_value());
  CHECK(right->side == Refinement::Side::ExtendsP);
  CHECK(is_isomorphic(right->r, f2).has_value());

  const Iposet chain = Iposet::poset(2, {{0, 1}});
  const Iposet anti = Iposet::poset(2, {});
  CHECK(code_of([&] { find_refinement(chain, chain, anti, anti); }) ==
        Errc::PreNotSatisfied);
}

TEST_CASE("parallel factors of a glued pair force a discrete side") {
  std::vector<Iposet> edges;
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      edges.push_back(Iposet::make(
          2, {{0, 1}}, s ? std::vector<int>{0} : std::vector<int>{},
          t ? std::vector<int>{1} : std::vector<int>{}));
    }
  }
  for (const Iposet& a : edges) {
    for (const Iposet& b : edges) {
      CHECK(iposets::enumerate_char_fns(par(a, b)).empty());
    }
  }
  CHECK(!iposets::enumerate_char_fns(
             par(Iposet::poset(2, {{0, 1}}), Iposet::singleton(false, false)))
             .empty());
}

}  // TEST_SUITE
