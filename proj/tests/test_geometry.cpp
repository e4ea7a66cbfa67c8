#include <gtest/gtest.h>

#include "frobdyn/geometry.hpp"
#include "support.hpp"

namespace frobdyn {
namespace {

using testing::Gen;

FieldPtr f2() { return standard_field(2, 1); }
FieldPtr f4() { return make_field(2, 2, {1, 1, 1}); }

TruncSeries S(const FieldPtr& k, const char* text, int prec = 8) { return parse_series(k, text, prec); }

HomogPoly poly(const FieldPtr& k, int nvars, int degree, std::vector<std::pair<Exponents, const char*>> terms) {
  HomogPoly h(k, nvars, degree);
  for (auto& [e, c] : terms) h.add_term(e, parse_series(k, c, kExactPrecision));
  return h;
}

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

TEST(Geometry, NormalizeShiftsAndScales) {
  const auto k = f2();
  const ProjPoint P = normalize({S(k, "t", 4), S(k, "t^2", 4)});
  EXPECT_EQ(to_string(P), "[1, t] + O(t^3)");
  EXPECT_EQ(P.shift, 1);
  EXPECT_EQ(to_string(normalize({S(k, "1"), S(k, "0")})), "[1, 0] + O(t^8)");
  const auto k3 = standard_field(3, 1);
  EXPECT_EQ(to_string(normalize({S(k3, "2"), S(k3, "t")})), "[1, 2*t] + O(t^8)");
}

TEST(Geometry, NormalizeErrors) {
  const auto k = f2();
  EXPECT_EQ(error_of([&] { normalize({S(k, "0", 4), S(k, "0", 4)}); }), ErrorKind::IndistinguishableFromZero);
}

TEST(Geometry, NormalizeIsIdempotentAndScaleInvariant) {
  Gen g(testing::base_seed() + 20);
  const FieldPtr k = standard_field(3, 2);
  for (int i = 0; i < 200; ++i) {
    const int n = g.uniform(1, 4);
    const ProjPoint P = g.point(k, n, g.uniform(2, 16));
    ASSERT_TRUE(is_canonical(P));
    const ProjPoint again = normalize(P.coords);
    ASSERT_EQ(again.coords, P.coords);
    const TruncSeries lambda = g.unit_series(k, P.prec());
    std::vector<TruncSeries> scaled;
    for (const auto& c : P.coords) scaled.push_back(c * lambda);
    const ProjPoint Q = normalize(scaled);
    ASSERT_TRUE(proj_eq(P, Q));
    ASSERT_EQ(reduce_point(P), reduce_point(Q));
  }
}

TEST(Geometry, ReducePoint) {
  EXPECT_EQ(to_string(reduce_point(normalize({S(f2(), "1"), S(f2(), "t")}))), "(1, 0)");
  EXPECT_EQ(to_string(reduce_point(normalize({S(f4(), "1"), S(f4(), "a + t")}))), "(1, a)");
  EXPECT_EQ(to_string(reduce_point(normalize({S(f2(), "t", 4), S(f2(), "t^2", 4)}))), "(1, 0)");
}

TEST(Geometry, EvalHom) {
  const auto k = f2();
  const ProjPoint P = normalize({S(k, "1"), S(k, "t")});
  EXPECT_EQ(format_terms(eval_hom(HomogPoly::variable(k, 2, 1), P)), "t");
  const ProjPoint one = normalize({S(k, "1"), S(k, "1")});
  EXPECT_TRUE(eval_hom(poly(k, 2, 2, {{{1, 1}, "1"}, {{0, 2}, "1"}}), one).zero_at_precision());
  EXPECT_EQ(format_terms(eval_hom(poly(k, 2, 2, {{{0, 2}, "1"}, {{2, 0}, "t"}}), P)), "t + t^2");
  EXPECT_EQ(eval_hom(HomogPoly::variable(k, 2, 1), P).prec(), P.prec());
  EXPECT_EQ(error_of([&] { eval_hom(HomogPoly::variable(k, 3, 1), P); }), ErrorKind::DimensionMismatch);
}

TEST(Geometry, EvalScalesByDegreePower) {
  Gen g(testing::base_seed() + 21);
  const FieldPtr k = standard_field(5, 1);
  for (int i = 0; i < 100; ++i) {
    const int d = g.uniform(1, 4);
    HomogPoly h(k, 3, d);
    for (int t = 0; t < 3; ++t) {
      HomogPoly m(k, 3, d);
      m.add_term(g.exponents(3, d), TruncSeries::constant(g.nonzero(k), kExactPrecision));
      h += m;
    }
    std::vector<TruncSeries> x;
    for (int j = 0; j < 3; ++j) x.push_back(g.series(k, 10));
    const TruncSeries lambda = g.unit_series(k, 10);
    std::vector<TruncSeries> lx;
    TruncSeries ld = one_like(lambda);
    for (const auto& c : x) lx.push_back(c * lambda);
    for (int j = 0; j < d; ++j) ld = ld * lambda;
    ASSERT_EQ(h.evaluate(lx), h.evaluate(x) * ld);
  }
}

TEST(Geometry, ProjectiveEquality) {
  const auto k = f2();
  EXPECT_TRUE(proj_eq(normalize({S(k, "1"), S(k, "t")}), normalize({S(k, "t"), S(k, "t^2")})));
  EXPECT_FALSE(proj_eq(normalize({S(k, "1", 2), S(k, "0", 2)}), normalize({S(k, "1", 2), S(k, "t", 2)})));
  EXPECT_TRUE(proj_eq(normalize({S(k, "1", 1), S(k, "0", 1)}), normalize({S(k, "1", 1), S(k, "t", 1)})));
}

TEST(Geometry, ProjEqMatchesCrossProducts) {
  Gen g(testing::base_seed() + 22);
  const FieldPtr k = standard_field(2, 2);
  for (int i = 0; i < 300; ++i) {
    const ProjPoint P = g.point(k, 2, 4);
    ProjPoint Q = g.coin() ? normalize({P.coords[0] * g.unit_series(k, 4), P.coords[1] * g.unit_series(k, 4)})
                           : g.point(k, 2, 4);
    const TruncSeries cross = P.coords[0] * Q.coords[1] - P.coords[1] * Q.coords[0];
    ASSERT_EQ(proj_eq(P, Q), cross.zero_at_precision());
  }
}

TEST(Geometry, PolynomialValidation) {
  const auto k = f2();
  HomogPoly h(k, 2, 2);
  EXPECT_EQ(error_of([&] { h.add_term({1, 0}, S(k, "1")); }), ErrorKind::DegreeMismatch);
  EXPECT_EQ(error_of([&] { h.add_term({1, 0, 1}, S(k, "1")); }), ErrorKind::DimensionMismatch);
  h.add_term({1, 1}, S(k, "0"));
  EXPECT_TRUE(h.is_zero());
  h.add_term({1, 1}, S(k, "1"));
  h.add_term({1, 1}, S(k, "1"));
  EXPECT_TRUE(h.is_zero());
}

TEST(Geometry, PolynomialPrinting) {
  const auto k = f2();
  const HomogPoly h = poly(k, 2, 2, {{{2, 0}, "1"}, {{1, 1}, "1 + t"}});
  EXPECT_EQ(to_string(h), "x0^2 + (1 + t)*x0*x1");
  EXPECT_EQ(to_string(h, 'y'), "y0^2 + (1 + t)*y0*y1");
  EXPECT_EQ(to_string(HomogPoly(k, 2, 3)), "0");
}

TEST(Geometry, MultiplyRespectsTermBound) {
  const auto k = f2();
  const HomogPoly a = poly(k, 3, 1, {{{1, 0, 0}, "1"}, {{0, 1, 0}, "1"}, {{0, 0, 1}, "1"}});
  EXPECT_EQ(multiply(a, a, 100).size(), 3u);  // (x0 + x1 + x2)^2 in characteristic 2
  const HomogPoly b = poly(k, 3, 1, {{{1, 0, 0}, "1"}, {{0, 1, 0}, "t"}});
  EXPECT_EQ(error_of([&] { multiply(a, b, 2); }), ErrorKind::DegreeOverflow);
}

TEST(Geometry, PointVarietyContainsItsPoint) {
  Gen g(testing::base_seed() + 23);
  const FieldPtr k = standard_field(3, 2);
  for (int i = 0; i < 100; ++i) {
    const int n = g.uniform(1, 4);
    const ProjPoint c = g.point(k, n, 12);
    const Subvariety V = point_variety(c);
    for (int v : generator_valuations(V, c)) ASSERT_GE(v, 12);
    const ProjPoint other = g.point(k, n, 12);
    const auto vals = generator_valuations(V, other);
    const bool on = std::all_of(vals.begin(), vals.end(), [](int v) { return v >= 12; });
    ASSERT_EQ(on, proj_eq(c, other));
  }
}

TEST(Geometry, GaloisOnPoints) {
  const auto k = f4();
  const ProjPoint P = normalize({S(k, "1"), S(k, "a + a*t")});
  EXPECT_EQ(to_string(galois(P, GaloisAction{1})), "[1, 1+a + (1+a)*t] + O(t^8)");
  EXPECT_TRUE(proj_eq(galois(galois(P, GaloisAction{1}), GaloisAction{1}, Direction::Inverse), P));
}

TEST(Geometry, EmbedPointIntoExtension) {
  const FieldEmbedding emb = embed_field(f2(), f4());
  const ProjPoint P = normalize({S(f2(), "1"), S(f2(), "t + t^3")});
  const ProjPoint Q = embed(emb, P);
  EXPECT_EQ(Q.field()->m(), 2);
  EXPECT_EQ(to_string(Q), to_string(P));
}

}  // namespace
}  // namespace frobdyn
