#include <gtest/gtest.h>

#include <cmath>

#include "gpw/checks.hpp"
#include "gpw/errors.hpp"

#include "fixtures.hpp"

using namespace gpw;
using testing_support::share;

TEST(Checks, ObserveKeepsFirstCounterexample) {
  PropertyResult r;
  r.tolerance = 1e-3;
  r.observe(1e-4, [] { return "a"; });
  r.observe(1.0, [] { return "b"; });
  r.observe(2.0, [] { return "c"; });
  r.observe(NAN, [] { return "d"; });
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.cases, 4u);
  EXPECT_EQ(r.counterexample, "b");
  EXPECT_TRUE(std::isinf(r.worst));
}

TEST(Checks, Pair3SuitePasses) {
  const SuiteReport r = verify_suite(share(build::pair(3)), 100, 42);
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.results.size(), 24u);
}

TEST(Checks, SuiteIsDeterministic) {
  const GroupoidPtr g = testing_support::load("pair3_z4.gpd");
  EXPECT_EQ(verify_suite(g, 30, 9).to_text(), verify_suite(g, 30, 9).to_text());
  EXPECT_NE(verify_suite(g, 30, 9).to_text(), verify_suite(g, 30, 10).to_text());
}

TEST(Checks, CorruptedTableFailsBeforeProperties) {
  GroupoidTables t = build::pair(3).tables();
  t.product(1, 3) = 2;  // (0 <- 1)(1 <- 0) should be (0 <- 0)
  EXPECT_THROW((void)FiniteGroupoid::from_tables(t), AxiomViolation);
}

TEST(Checks, SufficiencySkipsBorderlineElements) {
  const GroupoidPtr g = share(build::cyclic(2));
  // sigma_min = 5e-8 lies within 10 tol of tol = 1e-8.
  const std::vector<Element> elements{Element::unit(g) * Complex(5e-8), Element::zero(g),
                                      Element::unit(g)};
  const PropertyResult r = checks::sufficiency(elements, 1e-8);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_EQ(r.cases, 2u);
}

TEST(Checks, ReportText) {
  const SuiteReport r = verify_suite(share(build::pair(1)), 5, 1);
  const std::string text = r.to_text();
  EXPECT_EQ(text.rfind("verify: 1 arrows, 1 units, 1 orbits; trials 5, seed 1\n", 0), 0u) << text;
  EXPECT_NE(text.find("result: all 24 properties passed"), std::string::npos);
}
