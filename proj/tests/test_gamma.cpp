#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "mublp/gamma.hpp"
#include "oracles.hpp"

using namespace mublp;

TEST_CASE("l1 norm and canonical representative") {
  CHECK(l1_norm({0, 0}) == 0);
  CHECK(l1_norm({2, -3, 1}) == 6);
  CHECK(canonical_rep({0, -2}) == ExponentVector{2, 0});
  CHECK(canonical_rep({-1, 1, 0}) == ExponentVector{1, 0, -1});
  CHECK(canonical_rep({1, 1}) == ExponentVector{1, 1});
  CHECK(canonical_rep({-1, -1}) == ExponentVector{1, 1});
  CHECK(canonical_rep({3, -3, 0}) == ExponentVector{3, 0, -3});
}

TEST_CASE("canonicalize sizes for hand cases") {
  CHECK_THROWS_AS(canonicalize({}), DimensionError);

  GammaOrbit o = canonicalize({0, -2});
  CHECK(o.rep == ExponentVector{2, 0});
  CHECK(o.orbit_size == 4);
  CHECK(o.l1_norm == 2);

  o = canonicalize({-1, 1, 0});
  CHECK(o.rep == ExponentVector{1, 0, -1});
  CHECK(o.orbit_size == 6);  // sign flip is itself a permutation here

  o = canonicalize({1, 1});
  CHECK(o.orbit_size == 2);

  o = canonicalize({1, -1});
  CHECK(o.orbit_size == 2);

  o = canonicalize({0, 0, 0});
  CHECK(o.orbit_size == 1);
  CHECK(o.l1_norm == 0);
}

TEST_CASE("orbits partition the raw lattice") {
  for (auto [d, l] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 2}}) {
    auto raw = oracle::box_points(d, l);
    std::map<ExponentVector, std::set<ExponentVector>> groups;
    for (const auto& pt : raw) groups[canonical_rep(pt)].insert(pt);

    auto orbits = enumerate_gamma(d, l);
    REQUIRE(orbits.size() == groups.size());
    std::uint64_t total = 0;
    for (const auto& o : orbits) {
      REQUIRE(groups.count(o.rep) == 1);
      const auto& pts = groups.at(o.rep);
      CHECK(static_cast<std::size_t>(o.orbit_size) == pts.size());
      auto expanded = expand_orbit(o.rep);
      CHECK(std::set<ExponentVector>(expanded.begin(), expanded.end()) == pts);
      total += static_cast<std::uint64_t>(o.orbit_size);
    }
    CHECK(total == raw.size());
    CHECK(raw_point_count(d, l) == raw.size());
  }
}

TEST_CASE("raw point counts against direct enumeration") {
  for (int d = 1; d <= 4; ++d)
    for (int l = 0; l <= 5; ++l)
      CHECK(raw_point_count(d, l) == oracle::box_points(d, l).size());
  CHECK(raw_point_count(2, 2) == 13);
  CHECK_THROWS_AS(raw_point_count(0, 3), DimensionError);
  CHECK_THROWS_AS(raw_point_count(2, -1), DimensionError);
}

TEST_CASE("enumeration order for d=2 l=2") {
  auto orbits = enumerate_gamma(2, 2);
  REQUIRE(orbits.size() == 5);
  CHECK(orbits[0].rep == ExponentVector{0, 0});
  CHECK(orbits[1].rep == ExponentVector{1, 0});
  CHECK(orbits[2].rep == ExponentVector{2, 0});
  CHECK(orbits[3].rep == ExponentVector{1, 1});
  CHECK(orbits[4].rep == ExponentVector{1, -1});
  CHECK(orbits[0].orbit_size == 1);
  CHECK(orbits[1].orbit_size == 4);
  CHECK(orbits[2].orbit_size == 4);
  CHECK(orbits[3].orbit_size == 2);
  CHECK(orbits[4].orbit_size == 2);
  std::int64_t total = 0;
  for (const auto& o : orbits) total += o.orbit_size;
  CHECK(total == 13);
}

TEST_CASE("sorted by shell then lexicographically descending") {
  auto orbits = enumerate_gamma(3, 4);
  for (std::size_t i = 1; i < orbits.size(); ++i) {
    const auto& a = orbits[i - 1];
    const auto& b = orbits[i];
    bool ordered = a.l1_norm < b.l1_norm || (a.l1_norm == b.l1_norm && a.rep > b.rep);
    CHECK(ordered);
  }
  for (const auto& o : orbits) {
    CHECK(o.rep == canonical_rep(o.rep));
    CHECK(l1_norm(o.rep) == o.l1_norm);
  }
}

TEST_CASE("large-space tallies stay consistent") {
  auto o6 = enumerate_gamma(6, 6);
  CHECK(o6.size() == 73);

  auto o12 = enumerate_gamma(6, 12);
  CHECK(o12.size() == 1118);
  std::uint64_t total = 0;
  for (const auto& o : o12) total += static_cast<std::uint64_t>(o.orbit_size);
  CHECK(total == raw_point_count(6, 12));
  CHECK(raw_point_count(6, 12) == 369305u);

  GammaOrbit rho = canonicalize({1, 1, 1, -1, -1, -1});
  CHECK(rho.orbit_size == 20);
}

TEST_CASE("preconditions and formatting") {
  CHECK_THROWS_AS(enumerate_gamma(0, 2), DimensionError);
  CHECK_THROWS_AS(enumerate_gamma(2, -1), DimensionError);
  CHECK(format_exponents({1, 0, -1}) == "(1,0,-1)");
  CHECK(format_exponents({7}) == "(7)");
}
