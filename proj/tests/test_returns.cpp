#include <gtest/gtest.h>

#include "frobdyn/instance.hpp"
#include "frobdyn/lifting.hpp"
#include "frobdyn/returns.hpp"
#include "support.hpp"

namespace frobdyn {
namespace {

using testing::Gen;

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

std::vector<int> range(int lo, int hi, int step = 1) {
  std::vector<int> v;
  for (int n = lo; n <= hi; n += step) v.push_back(n);
  return v;
}

TEST(Returns, F4OrbitPointAlternates) {
  const Instance I = parse_instance(testing::fixture("f4.json"));
  const ProjPoint x = resolve_point(I, "Ptilde");
  const Subvariety V = resolve_variety(I, "orbitpt");
  const ReturnSet rs = return_set(I.dml(), x, V, 10, 20);
  EXPECT_EQ(rs.hits, (std::vector<int>{1, 3, 5, 7, 9}));
  EXPECT_EQ(rs.valuations.size(), 11u);
  const APDecomposition d = ap_decompose(rs, 12);
  EXPECT_EQ(d.status, DecompositionStatus::ExactUpToHorizon);
  EXPECT_TRUE(d.sporadic.empty());
  EXPECT_EQ(d.progressions, (std::vector<Progression>{{1, 2}}));
  EXPECT_EQ(d.preperiod, 0);
}

TEST(Returns, F1OrbitMissesAxis) {
  const Instance I = parse_instance(testing::fixture("f1.json"));
  const ReturnSet rs = return_set(I.dml(), resolve_point(I, "Q"), resolve_variety(I, "axis"), 10, 8);
  EXPECT_TRUE(rs.hits.empty());
  const APDecomposition d = ap_decompose(rs, 12);
  EXPECT_EQ(d.status, DecompositionStatus::ExactUpToHorizon);
  EXPECT_TRUE(d.progressions.empty());
  EXPECT_TRUE(d.sporadic.empty());
}

TEST(Returns, WholeSpaceIsHitAlways) {
  const Instance I = parse_instance(testing::fixture("f1.json"));
  const Subvariety whole = make_subvariety({HomogPoly(I.field, 2, 1)});
  const ReturnSet rs = return_set(I.dml(), resolve_point(I, "P"), whole, 7, 4);
  EXPECT_EQ(rs.hits, range(0, 7));
}

TEST(Returns, ThresholdAboveCoordinatePrecision) {
  const Instance I = parse_instance(testing::fixture("f1.json"));
  EXPECT_EQ(error_of([&] { return_set(I.dml(), resolve_point(I, "P"), resolve_variety(I, "axis"), 5, 17); }),
            ErrorKind::PrecisionBelowThreshold);
}

TEST(Returns, DecomposeExamples) {
  APDecomposition d = ap_decompose({1, 3, 5, 7, 9}, 10, 12);
  EXPECT_EQ(d.progressions, (std::vector<Progression>{{1, 2}}));
  EXPECT_EQ(d.preperiod, 0);
  EXPECT_TRUE(d.sporadic.empty());

  d = ap_decompose({}, 10, 12);
  EXPECT_EQ(d.status, DecompositionStatus::ExactUpToHorizon);
  EXPECT_TRUE(d.progressions.empty());

  d = ap_decompose({3}, 100, 12);
  EXPECT_EQ(d.sporadic, (std::vector<int>{3}));
  EXPECT_TRUE(d.progressions.empty());
  EXPECT_EQ(d.preperiod, 4);

  d = ap_decompose(range(0, 40, 2), 40, 12);
  EXPECT_EQ(d.progressions, (std::vector<Progression>{{0, 2}}));

  d = ap_decompose(range(0, 40), 40, 12);
  EXPECT_EQ(d.progressions, (std::vector<Progression>{{0, 1}}));
}

TEST(Returns, TwoFullPeriodsRequired) {
  // A hit at the last index leaves no window with two agreeing periods.
  const APDecomposition d = ap_decompose({8}, 8, 4);
  EXPECT_EQ(d.status, DecompositionStatus::NoDecompositionWithinBounds);
  EXPECT_EQ(d.period, 0);
}

TEST(Returns, DecomposeRejectsBadInput) {
  EXPECT_EQ(error_of([] { ap_decompose({11}, 10, 3); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(error_of([] { ap_decompose({1}, 10, 0); }), ErrorKind::InvalidArgument);
}

TEST(Returns, AgreesWithOracle) {
  Gen g(testing::base_seed() + 60);
  for (int i = 0; i < 300; ++i) {
    const int H = g.uniform(0, 120);
    const auto hits = testing::eventually_periodic(g, H, g.uniform(0, 20), g.uniform(1, 12));
    const APDecomposition d = ap_decompose(hits, H, 12);
    ASSERT_TRUE(testing::same_decomposition(d, testing::decompose_oracle(hits, H, 12))) << i;
    if (d.status == DecompositionStatus::ExactUpToHorizon) {
      ASSERT_EQ(expand(d, H), hits);
      for (int s : d.sporadic) ASSERT_LT(s, d.preperiod);
    }
  }
}

TEST(Returns, AgreesWithOracleOnArbitrarySets) {
  Gen g(testing::base_seed() + 61);
  for (int i = 0; i < 300; ++i) {
    const int H = g.uniform(0, 40);
    std::vector<int> hits;
    for (int n = 0; n <= H; ++n)
      if (g.uniform(0, 3) == 0) hits.push_back(n);
    ASSERT_TRUE(testing::same_decomposition(ap_decompose(hits, H, 6), testing::decompose_oracle(hits, H, 6)));
  }
}

TEST(Returns, HorizonMonotonicity) {
  const Instance I = parse_instance(testing::fixture("f4.json"));
  const ProjPoint x = resolve_point(I, "Ptilde");
  const Subvariety V = resolve_variety(I, "orbitpt");
  const ReturnSet big = return_set(I.dml(), x, V, 40, 20);
  const APDecomposition ref = ap_decompose(big, 12);
  for (int H = 4; H <= 40; ++H) {
    const ReturnSet rs = return_set(I.dml(), x, V, H, 20);
    const APDecomposition d = ap_decompose(rs, 12);
    ASSERT_EQ(d.status, DecompositionStatus::ExactUpToHorizon);
    ASSERT_EQ(d.progressions, ref.progressions);
    ASSERT_EQ(expand(ref, H), rs.hits);
  }
}

TEST(Returns, SingleOrbitPointOfRandomLifts) {
  // For a sigma-fixed lift and V a single orbit point, the return set is one
  // progression whose step is the minimal period.
  Gen g(testing::base_seed() + 62);
  for (int i = 0; i < 20; ++i) {
    const std::uint32_t p = g.pick(std::vector<std::uint32_t>{2, 3});
    const FieldPtr k = standard_field(p, g.uniform(1, 3));
    const DmlMap f = g.dml_identity(k, p, 1, g.uniform(1, 2));
    const SigmaFixedLift L = sigma_fixed_lift(f, g.residue_point(k, f.N + 1), 24);
    const int period = minimal_period(f, L);
    const int j = g.uniform(0, period - 1);
    ProjPoint target = L.lift;
    for (int s = 0; s < j; ++s) target = apply_map(f, target);
    const ReturnSet rs = return_set(f, L.lift, point_variety(target), 30, 20);
    const APDecomposition d = ap_decompose(rs, 12);
    ASSERT_EQ(d.status, DecompositionStatus::ExactUpToHorizon);
    ASSERT_TRUE(d.sporadic.empty());
    ASSERT_EQ(d.progressions, (std::vector<Progression>{{j, period}}));
  }
}

}  // namespace
}  // namespace frobdyn
