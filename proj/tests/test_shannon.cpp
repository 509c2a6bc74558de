#include <doctest.h>

#include <cmath>

#include "skapid/catalog.hpp"
#include "skapid/shannon.hpp"
#include "support.hpp"

using namespace skapid;
using skapid::testing::dist;

TEST_SUITE("shannon") {
  TEST_CASE("entropy of simple masses") {
    const double fair[] = {0.5, 0.5};
    CHECK(entropy_of(fair) == doctest::Approx(1.0));
    const double skew[] = {0.25, 0.75, 0.0};
    CHECK(entropy_of(skew) == doctest::Approx(0.8112781244591328));
  }

  TEST_CASE("problem distribution values") {
    const auto d = catalog::get("problem");
    CHECK(mutual_information(d, {"S0"}, {"T"}) == doctest::Approx(0.31127812445913283).epsilon(1e-12));
    CHECK(std::abs(mutual_information(d, {"S1"}, {"T"}) - 0.5) < 1e-12);
    CHECK(mutual_information(d, {"S0", "S1"}, {"T"}) == doctest::Approx(1.0));
  }

  TEST_CASE("xor is purely synergistic") {
    const auto d = catalog::get("xor");
    CHECK(mutual_information(d, {"S0"}, {"T"}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(conditional_mutual_information(d, {"S0"}, {"T"}, {"S1"}) == doctest::Approx(1.0));
    CHECK(conditional_mutual_information(d, {"S0"}, {"T"}, {}) ==
          doctest::Approx(mutual_information(d, {"S0"}, {"T"})));
  }

  TEST_CASE("conditional entropy chain") {
    const auto d = catalog::get("problem");
    CHECK(conditional_entropy(d, {"T"}, {"S0"}) ==
          doctest::Approx(entropy(d, {"S0", "T"}) - entropy(d, {"S0"})));
  }

  TEST_CASE("relative entropy") {
    const auto p = dist({"X"}, {{{"a"}, 0.5}, {{"b"}, 0.5}});
    const auto q = dist({"X"}, {{{"a"}, 0.25}, {{"b"}, 0.75}});
    CHECK(relative_entropy(p, p) == doctest::Approx(0.0));
    CHECK(relative_entropy(p, q) == doctest::Approx(0.5 * std::log2(2.0) + 0.5 * std::log2(0.5 / 0.75)));
    const auto r = dist({"X"}, {{{"a"}, 1.0}});
    CHECK_THROWS_WITH_AS(relative_entropy(p, r), doctest::Contains("SupportViolation"), Error);
    const auto s = dist({"Y"}, {{{"a"}, 1.0}});
    CHECK_THROWS_WITH_AS(relative_entropy(r, s), doctest::Contains("AlphabetMismatch"), Error);
  }

  TEST_CASE("overlapping argument sets are rejected") {
    const auto d = catalog::get("xor");
    CHECK_THROWS_WITH_AS(mutual_information(d, {"S0"}, {"S0", "T"}), doctest::Contains("OverlappingSets"),
                         Error);
    CHECK_THROWS_AS(conditional_mutual_information(d, {"S0"}, {"T"}, {"T"}), Error);
  }

  TEST_CASE("clamp_nonnegative") {
    CHECK(clamp_nonnegative(-1e-13, "x") == 0.0);
    CHECK(clamp_nonnegative(0.25, "x") == 0.25);
    CHECK_THROWS_AS(clamp_nonnegative(-1e-6, "x"), Error);
  }
}
