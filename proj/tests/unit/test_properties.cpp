#include <gtest/gtest.h>

#include "checks.hpp"

TEST(Properties, DigitalEquivalence) {
  auto r = checks::digital_equivalence(60, 11);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Properties, AdjointIdentity) {
  auto r = checks::adjoint_identity(30, 12);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Properties, IntervalSoundness) {
  auto r = checks::interval_soundness(100, 13);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Properties, CorpusHygiene) {
  auto r = checks::corpus_hygiene();
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Properties, RecyclingInvariance) {
  auto r = checks::recycling_invariance(10, 14);
  EXPECT_TRUE(r.pass) << r.detail;
}
