#include <fstream>
#include <sstream>

#include "doctest.h"
#include "error.hpp"
#include "verify.hpp"

using namespace qfdiv;
using namespace qfdiv::verify;

TEST_CASE("thresholds round trip through JSON") {
  const Thresholds t;
  CHECK(thresholdsToJson(thresholdsFromJson(thresholdsToJson(t))) == thresholdsToJson(t));
  const Thresholds partial = thresholdsFromJson(R"({"slopeMax": 1.5, "theoremGrid": [64, 128]})");
  CHECK(partial.slopeMax == 1.5);
  CHECK(partial.theoremGrid == std::vector<u64>{64, 128});
  CHECK(partial.engineMaxX == t.engineMaxX);
  CHECK_THROWS_AS(thresholdsFromJson(R"({"slopeMaximum": 1.5})"), DomainError);
  CHECK_THROWS_AS(thresholdsFromJson(R"({"slopeMax": "steep"})"), DomainError);
  CHECK_THROWS_AS(thresholdsFromJson("[1, 2]"), DomainError);
  CHECK_THROWS_AS(thresholdsFromJson("{"), DomainError);
}

TEST_CASE("checked-in thresholds equal the built-in values") {
  std::ifstream f(QFDIV_DATA_DIR "/thresholds.json");
  REQUIRE(f);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(thresholdsToJson(thresholdsFromJson(ss.str())) == thresholdsToJson(Thresholds{}));
}

TEST_CASE("small suites") {
  CHECK(anchors(1).passed);
  CHECK(engineEquivalence({2}, 30, {}, 2).passed);
  CHECK(bijection({7}, 200, false).passed);
  const CheckResult units = bijection({1}, 50, false);
  CHECK_FALSE(units.passed);
  CHECK(approximation({2}, 500, 0.05).passed);
  CHECK_FALSE(approximation({2}, 500, 0.9).passed);
  CHECK(latticeApproximation({2}, 40, 2.0).passed);
  CHECK_FALSE(latticeApproximation({2}, 40, 0.0).passed);
  Thresholds t;
  t.identityNMax = 200;
  t.ramanujanDMax = 30;
  t.geometricSamples = 20;
  CHECK(identities({2}, t, 1).passed);
  // The lattice-point form of the identity breaks for N = 3 (mod 4).
  for (int n : {7, 67}) {
    const CheckResult r = identities({n}, t, 1);
    CHECK_FALSE(r.passed);
    CHECK(r.detail.find("maximal order 0") != std::string::npos);
  }
}

TEST_CASE("suite dispatch") {
  CHECK(suiteNames().back() == "all");
  Thresholds t;
  CHECK_THROWS_AS(runSuite("everything", {}, 0, t, 1, 1), DomainError);
  const auto r = runSuite("bijection", {2}, 300, t, 1, 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0].passed);
  CHECK_THROWS_AS(criterion(11, t, 1, 1), DomainError);
  CheckResult c;
  c.id = "3";
  c.name = "x";
  c.passed = true;
  c.detail = "ok";
  CHECK(formatLine(c) == "PASS 3 x: ok (0.0 s)");
}
