#include <catch2/catch_amalgamated.hpp>

#include "mublp/mub_sets.hpp"

using namespace mublp;

TEST_CASE("complete sets exist for d=2 and d=3") {
  for (int d : {2, 3}) {
    auto ms = standard_mub_set(d);
    REQUIRE(static_cast<int>(ms.size()) == d);
    for (const auto& m : ms) {
      CHECK(m.dim() == d);
      CHECK(is_hadamard(m));
    }
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j) CHECK(is_unbiased_pair(ms[i], ms[j], 1e-9));
  }
}

TEST_CASE("cross-basis inner products have modulus sqrt d") {
  auto ms = standard_mub_set(3);
  const auto& m1 = ms[0];
  const auto& m2 = ms[1];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex ip{0, 0};
      for (int k = 0; k < 3; ++k) ip += std::conj(m1(k, i)) * m2(k, j);
      CHECK(std::abs(ip) == Catch::Approx(std::sqrt(3.0)).margin(1e-12));
    }
}

TEST_CASE("labels distinguish the members") {
  auto m2 = standard_mub_set(2);
  CHECK(m2[0].label() == "F2");
  CHECK(m2[1].label() == "H2_i");
  auto m3 = standard_mub_set(3);
  CHECK(m3[0].label() == "H3_0");
  CHECK(m3[1].label() == "H3_1");
  CHECK(m3[2].label() == "H3_2");
}

TEST_CASE("unsupported dimensions are rejected") {
  CHECK_THROWS_AS(standard_mub_set(4), DimensionError);
  CHECK_THROWS_AS(standard_mub_set(6), DimensionError);
  CHECK_THROWS_AS(standard_mub_set(1), DimensionError);
}
