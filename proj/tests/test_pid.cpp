#include <doctest.h>

#include <cmath>

#include "skapid/catalog.hpp"
#include "skapid/pid.hpp"
#include "skapid/shannon.hpp"

using namespace skapid;

namespace {

constexpr double kH34 = 0.31127812445913283;  // I(S0:T) on `problem`
constexpr double kGap = 0.18872187554086717;  // 0.5 - kH34

PidComponents inconsistent_partial(const JointDistribution& d, PidScheme s) {
  try {
    decompose(d, {}, s);
  } catch (const InconsistentDecomposition& e) {
    return e.partial();
  }
  FAIL("expected InconsistentDecomposition");
  return {};
}

}  // namespace

TEST_SUITE("pid") {
  TEST_CASE("scheme names round trip") {
    for (auto s : {PidScheme::NoComm, PidScheme::CamelOneWay, PidScheme::ElephantOneWay, PidScheme::TwoWay,
                   PidScheme::Broja}) {
      CHECK(parse_scheme(to_string(s)) == s);
    }
    CHECK_THROWS_AS(parse_scheme("giraffe"), Error);
  }

  TEST_CASE("assemble obeys the PID identities") {
    const auto p = assemble(0.0, kGap, kH34, 0.5, 1.0, 1e-3);
    CHECK(p.consistent);
    CHECK(p.redundancy.lo == doctest::Approx(kH34));
    CHECK(p.synergy.lo == doctest::Approx(0.5));
    CHECK(p.redundancy.lo + p.unique_0.lo + p.unique_1.lo + p.synergy.lo == doctest::Approx(1.0));
  }

  TEST_CASE("assemble rejects inconsistent uniques") {
    CHECK_THROWS_AS(assemble(0.0, 0.5, kH34, 0.5, 1.0, 1e-3), InconsistentDecomposition);
    try {
      assemble(0.0, 0.5, kH34, 0.5, 1.0, 1e-3);
    } catch (const InconsistentDecomposition& e) {
      CHECK(e.kind() == ErrorKind::InconsistentDecomposition);
      CHECK_FALSE(e.partial().consistent);
      CHECK(e.partial().residual == doctest::Approx(kH34));
    }
  }

  TEST_CASE("assemble clamps tiny negatives and flags them") {
    const auto p = assemble(0.5 + 1e-5, 0.0, 0.5, 0.0, 0.5 + 1e-5, 1e-3);
    CHECK(p.consistent);
    CHECK(p.redundancy.lo == 0.0);
    CHECK(p.clamped);
    CHECK_THROWS_AS(assemble(0.6, 0.1, 0.5, 0.0, 0.6, 1e-3), InconsistentDecomposition);
  }

  TEST_CASE("no-communication scheme") {
    const auto pwu = decompose(catalog::get("pointwise-unique"), {}, PidScheme::NoComm);
    CHECK(pwu.redundancy.lo == 0.5);
    CHECK(pwu.unique_0.lo == 0.0);
    CHECK(pwu.unique_1.lo == 0.0);
    CHECK(pwu.synergy.lo == 0.5);
    const auto bad = inconsistent_partial(catalog::get("problem"), PidScheme::NoComm);
    CHECK(bad.redundancy_via_0.lo == doctest::Approx(kH34).epsilon(1e-4));
    CHECK(bad.redundancy_via_1.lo == doctest::Approx(0.5).epsilon(1e-4));
  }

  TEST_CASE("camel scheme is inconsistent on problem") {
    const auto bad = inconsistent_partial(catalog::get("problem"), PidScheme::CamelOneWay);
    CHECK(bad.unique_0.lo == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(bad.unique_1.lo == doctest::Approx(0.5).epsilon(1e-3));
    const auto pwu = decompose(catalog::get("pointwise-unique"), {}, PidScheme::CamelOneWay);
    CHECK(pwu.unique_0.lo == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(pwu.unique_1.lo == doctest::Approx(0.5).epsilon(1e-3));
  }

  TEST_CASE("elephant scheme") {
    const auto p = decompose(catalog::get("problem"), {}, PidScheme::ElephantOneWay);
    CHECK(p.consistent);
    CHECK(std::abs(p.redundancy.lo - kH34) < 1e-3);
    CHECK(std::abs(p.unique_0.lo) < 1e-3);
    CHECK(std::abs(p.unique_1.lo - kGap) < 1e-3);
    CHECK(std::abs(p.synergy.lo - 0.5) < 1e-3);
  }

  TEST_CASE("two-way intervals cannot be reconciled on problem") {
    const auto bad = inconsistent_partial(catalog::get("problem"), PidScheme::TwoWay);
    CHECK(bad.unique_1.lo == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(bad.unique_0.hi == doctest::Approx(kGap).epsilon(1e-3));
  }

  TEST_CASE("assemble_bounds intersects the two consistency intervals") {
    const auto p = assemble_bounds({0.0, 0.2, false}, {0.1, 0.3, false}, 0.5, 0.5, 1.0, 1e-3);
    CHECK(p.consistent);
    CHECK(p.unique_0.lo == doctest::Approx(0.1));
    CHECK(p.unique_0.hi == doctest::Approx(0.2));
  }

  TEST_CASE("custom roles") {
    const auto d = catalog::get("problem").renamed({"X", "Y", "Z"});
    const auto p = decompose(d, {"X", "Y", "Z"}, PidScheme::ElephantOneWay);
    CHECK(std::abs(p.unique_1.lo - kGap) < 1e-3);
    CHECK_THROWS_AS(decompose(d, {"X", "X", "Z"}, PidScheme::ElephantOneWay), Error);
    CHECK_THROWS_AS(decompose(d, {}, PidScheme::ElephantOneWay), Error);
  }

  TEST_CASE("conditional mutual information identity") {
    const auto d = catalog::get("problem");
    const auto p = decompose(d, {}, PidScheme::ElephantOneWay);
    const auto r = cmi_identity_report(d, {}, p);
    CHECK(r.cmi_0 == doctest::Approx(conditional_mutual_information(d, {"S0"}, {"T"}, {"S1"})));
    CHECK(std::abs(r.defect_0) < 1e-3);
    CHECK(std::abs(r.defect_1) < 1e-3);
  }
}
