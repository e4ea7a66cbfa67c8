#include <gtest/gtest.h>

#include "frobdyn/dynamics.hpp"
#include "frobdyn/instance.hpp"
#include "support.hpp"

namespace frobdyn {
namespace {

using testing::Gen;

FieldPtr f2() { return standard_field(2, 1); }
FieldPtr f4() { return make_field(2, 2, {1, 1, 1}); }

TruncSeries S(const FieldPtr& k, const char* text, int prec = kExactPrecision) { return parse_series(k, text, prec); }

HomogPoly poly(const FieldPtr& k, int nvars, int degree, std::vector<std::pair<Exponents, const char*>> terms) {
  HomogPoly h(k, nvars, degree);
  for (auto& [e, c] : terms) h.add_term(e, S(k, c));
  return h;
}

DmlMap raw_map(const FieldPtr& k, std::uint32_t p, int e, std::vector<std::vector<const char*>> A,
               std::vector<HomogPoly> G) {
  DmlMap f;
  f.N = static_cast<int>(A.size()) - 1;
  f.p = p;
  f.e = e;
  f.A = Matrix<TruncSeries>(A.size(), A.size(), TruncSeries(k, kExactPrecision));
  for (std::size_t r = 0; r < A.size(); ++r)
    for (std::size_t c = 0; c < A.size(); ++c) f.A(r, c) = S(k, A[r][c]);
  f.G = std::move(G);
  return f;
}

DmlMap f1_map(const FieldPtr& k = f2()) {
  return checked_map(raw_map(k, 2, 1, {{"1", "0"}, {"0", "1"}}, {HomogPoly(k, 2, 1), poly(k, 2, 1, {{{1, 0}, "t"}})}));
}

ProjPoint pt(const FieldPtr& k, std::vector<const char*> coords, int prec) {
  std::vector<TruncSeries> c;
  for (const char* s : coords) c.push_back(parse_series(k, s, prec));
  return normalize(std::move(c));
}

GeneralMap general(int N, std::vector<HomogPoly> coords) {
  GeneralMap g;
  g.N = N;
  g.coords = std::move(coords);
  return g;
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

TEST(Dynamics, F1IsValid) {
  const MapValidation v = validate_map(f1_map());
  EXPECT_TRUE(v.ok());
  EXPECT_TRUE(v.diagnostics.empty());
}

TEST(Dynamics, UnitCoefficientInGIsRejected) {
  const auto k = f2();
  const MapValidation v =
      validate_map(raw_map(k, 2, 1, {{"1", "0"}, {"0", "1"}}, {HomogPoly(k, 2, 1), poly(k, 2, 1, {{{1, 0}, "1"}})}));
  ASSERT_FALSE(v.ok());
  ASSERT_EQ(v.diagnostics.size(), 1u);
  EXPECT_EQ(v.diagnostics[0].kind, DiagnosticKind::CoefficientNotInMaximalIdeal);
  EXPECT_EQ(v.diagnostics[0].row, 1);
  EXPECT_EQ(v.diagnostics[0].term, (Exponents{1, 0}));
}

TEST(Dynamics, SingularMatrixIsRejected) {
  const auto k = f2();
  const MapValidation v = validate_map(raw_map(k, 2, 1, {{"1", "1"}, {"1", "1"}}, {HomogPoly(k, 2, 1), HomogPoly(k, 2, 1)}));
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.diagnostics.front().kind, DiagnosticKind::NonUnitDeterminant);
}

TEST(Dynamics, DiagnosticsAreCompleteAndOrdered) {
  const auto k = f4();
  // e = 1 over F_4: coefficients must lie in F_2. A has a non-fixed entry; G0 has the wrong degree;
  // G1 has a unit coefficient and a non-fixed one.
  DmlMap f = raw_map(k, 2, 1, {{"1", "a*t"}, {"0", "1"}},
                     {poly(k, 2, 2, {{{2, 0}, "t"}}), poly(k, 2, 1, {{{1, 0}, "1"}, {{0, 1}, "a*t"}})});
  const MapValidation v = validate_map(f);
  ASSERT_FALSE(v.ok());
  std::vector<DiagnosticKind> kinds;
  for (const auto& d : v.diagnostics) kinds.push_back(d.kind);
  EXPECT_EQ(kinds, (std::vector<DiagnosticKind>{DiagnosticKind::CoefficientFieldTooLarge, DiagnosticKind::WrongDegree,
                                                DiagnosticKind::CoefficientFieldTooLarge,
                                                DiagnosticKind::CoefficientNotInMaximalIdeal}));
  EXPECT_EQ(v.diagnostics[0].row, 0);
  EXPECT_EQ(v.diagnostics[0].col, 1);
  EXPECT_EQ(error_of([&] { checked_map(f); }), ErrorKind::ValidationFailure);
}

TEST(Dynamics, ShapeErrorsThrow) {
  DmlMap f = f1_map();
  f.G.pop_back();
  EXPECT_EQ(error_of([&] { validate_map(f); }), ErrorKind::DimensionMismatch);
  DmlMap g = f1_map();
  g.G[1] = poly(f4(), 2, 1, {{{1, 0}, "t"}});
  EXPECT_EQ(error_of([&] { validate_map(g); }), ErrorKind::FieldMismatch);
}

TEST(Dynamics, ApplyF1) {
  const auto k = f2();
  const DmlMap f = f1_map();
  EXPECT_EQ(to_string(apply_map(f, pt(k, {"1", "0"}, 8))), "[1, t] + O(t^8)");
  EXPECT_EQ(to_string(apply_map(f, pt(k, {"1", "t"}, 8))), "[1, t + t^2] + O(t^8)");
}

TEST(Dynamics, PureFrobeniusOnConstants) {
  const auto k = f4();
  const DmlMap f = checked_map(raw_map(k, 2, 1, {{"1", "0"}, {"0", "1"}}, {HomogPoly(k, 2, 1), HomogPoly(k, 2, 1)}));
  const auto orb = orbit(f, pt(k, {"1", "a"}, 6), 2);
  ASSERT_EQ(orb.size(), 3u);
  EXPECT_EQ(to_string(orb[0]), "[1, a] + O(t^6)");
  EXPECT_EQ(to_string(orb[1]), "[1, 1+a] + O(t^6)");
  EXPECT_EQ(to_string(orb[2]), "[1, a] + O(t^6)");
}

TEST(Dynamics, OrbitF1) {
  const auto k = f2();
  const auto orb = orbit(f1_map(), pt(k, {"1", "0"}, 5), 3);
  ASSERT_EQ(orb.size(), 4u);
  EXPECT_EQ(to_string(orb[3]), "[1, t + t^2 + t^4] + O(t^5)");
  EXPECT_EQ(orbit(f1_map(), orb[1], 0).size(), 1u);
}

TEST(Dynamics, ApplyMapFieldAndDimensionErrors) {
  const DmlMap f = f1_map();
  EXPECT_EQ(error_of([&] { apply_map(f, pt(f2(), {"1", "0", "0"}, 4)); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(error_of([&] { apply_map(f, pt(standard_field(3, 1), {"1", "0"}, 4)); }), ErrorKind::FieldMismatch);
}

TEST(Dynamics, ConditionsExamples) {
  const auto k = f2();
  const ConditionReport r = check_conditions(f1_map());
  EXPECT_TRUE(r.zero_differential);
  EXPECT_TRUE(r.special_fiber_is_frobenius);
  EXPECT_EQ(r.frobenius_power, 2);

  const GeneralMap g = general(1, {poly(k, 2, 2, {{{2, 0}, "1"}}), poly(k, 2, 2, {{{1, 1}, "1"}})});
  EXPECT_FALSE(check_conditions(g).zero_differential);

  const DmlMap h = checked_map(raw_map(k, 2, 1, {{"1", "0"}, {"1", "1"}}, {HomogPoly(k, 2, 1), HomogPoly(k, 2, 1)}));
  const ConditionReport rh = check_conditions(h);
  EXPECT_TRUE(rh.zero_differential);
  EXPECT_FALSE(rh.special_fiber_is_frobenius);
}

TEST(Dynamics, ConditionsUpToScalar) {
  const auto k = standard_field(3, 1);
  const DmlMap f = checked_map(raw_map(k, 3, 1, {{"2", "0"}, {"0", "2"}}, {HomogPoly(k, 2, 1), HomogPoly(k, 2, 1)}));
  const ConditionReport r = check_conditions(f);
  EXPECT_TRUE(r.special_fiber_is_frobenius);
  EXPECT_EQ(r.frobenius_power, 3);
}

TEST(Dynamics, ComposeF3) {
  const Instance I = parse_instance(testing::fixture("f3.json"));
  const GeneralMap& f = std::get<GeneralMap>(I.map);
  const GeneralMap ff = compose_maps(f, f);
  const auto k = I.field;
  EXPECT_EQ(ff.coords[0], poly(k, 3, 4, {{{4, 0, 0}, "1"}}));
  EXPECT_EQ(ff.coords[1], poly(k, 3, 4, {{{0, 4, 0}, "1"}}));
  EXPECT_EQ(ff.coords[2], poly(k, 3, 4, {{{0, 0, 4}, "1"}, {{2, 2, 0}, "t + t^2"}}));
  EXPECT_EQ(iterate_map(f, 2).coords, ff.coords);
}

TEST(Dynamics, ComposeWithIdentityAndFrobenius) {
  const auto k = f2();
  const GeneralMap id = general(1, {HomogPoly::variable(k, 2, 0), HomogPoly::variable(k, 2, 1)});
  const GeneralMap fr = general(1, {poly(k, 2, 2, {{{2, 0}, "1"}}), poly(k, 2, 2, {{{0, 2}, "1"}})});
  const GeneralMap f1 = to_general(f1_map());
  EXPECT_EQ(compose_maps(f1, id).coords, f1.coords);
  EXPECT_EQ(compose_maps(id, f1).coords, f1.coords);
  const GeneralMap fr2 = compose_maps(fr, fr);
  EXPECT_EQ(fr2.coords[0], poly(k, 2, 4, {{{4, 0}, "1"}}));
  EXPECT_EQ(fr2.coords[1], poly(k, 2, 4, {{{0, 4}, "1"}}));
}

TEST(Dynamics, ComposeDegreeOverflow) {
  const Instance I = parse_instance(testing::fixture("f3.json"));
  const GeneralMap& f = std::get<GeneralMap>(I.map);
  EXPECT_EQ(error_of([&] { compose_maps(f, f, 1); }), ErrorKind::DegreeOverflow);
}

TEST(Dynamics, ComposeIsAssociative) {
  Gen g(testing::base_seed() + 30);
  for (int i = 0; i < 15; ++i) {
    const std::uint32_t p = g.pick(std::vector<std::uint32_t>{2, 3});
    const FieldPtr k = standard_field(p, g.uniform(1, 2));
    const int N = g.uniform(1, 2);
    const GeneralMap a = to_general(g.dml_general(k, p, 1, N));
    const GeneralMap b = to_general(g.dml_general(k, p, 1, N));
    const GeneralMap c = to_general(g.dml_general(k, p, 1, N));
    ASSERT_EQ(compose_maps(compose_maps(a, b), c).coords, compose_maps(a, compose_maps(b, c)).coords);
  }
}

TEST(Dynamics, RecognizeF3Square) {
  const Instance I = parse_instance(testing::fixture("f3.json"));
  const auto k = I.field;
  const auto rec = recognize_dml_form(iterate_map(std::get<GeneralMap>(I.map), 2), 2, 2);
  ASSERT_TRUE(std::holds_alternative<DmlMap>(rec));
  const DmlMap& f = std::get<DmlMap>(rec);
  EXPECT_EQ(f.q(), 4);
  const TruncSeries one = S(k, "1"), zero(k, kExactPrecision);
  EXPECT_EQ(f.A, Matrix<TruncSeries>::identity(3, zero, one));
  EXPECT_TRUE(f.G[0].is_zero());
  EXPECT_TRUE(f.G[1].is_zero());
  EXPECT_EQ(f.G[2], poly(k, 3, 2, {{{1, 1, 0}, "t + t^2"}}));
}

TEST(Dynamics, RecognizeRejectsOddExponent) {
  const auto k = f2();
  const GeneralMap g = general(1, {poly(k, 2, 2, {{{2, 0}, "1"}}), poly(k, 2, 2, {{{1, 1}, "1"}})});
  const auto rec = recognize_dml_form(g, 2, 1);
  ASSERT_TRUE(std::holds_alternative<NotInForm>(rec));
  const NotInForm& bad = std::get<NotInForm>(rec);
  EXPECT_EQ(bad.coordinate, 1);
  EXPECT_EQ(bad.term, (Exponents{1, 1}));
}

TEST(Dynamics, RecognizePureFrobenius) {
  const auto k = standard_field(3, 1);
  const GeneralMap g = general(2, {poly(k, 3, 3, {{{3, 0, 0}, "1"}}), poly(k, 3, 3, {{{0, 3, 0}, "1"}}),
                                      poly(k, 3, 3, {{{0, 0, 3}, "1"}})});
  const auto rec = recognize_dml_form(g, 3, 1);
  ASSERT_TRUE(std::holds_alternative<DmlMap>(rec));
  for (const auto& G : std::get<DmlMap>(rec).G) EXPECT_TRUE(G.is_zero());
}

TEST(Dynamics, RecognizeRoundTripsValidMaps) {
  Gen g(testing::base_seed() + 31);
  for (int i = 0; i < 40; ++i) {
    const std::uint32_t p = g.pick(std::vector<std::uint32_t>{2, 3, 5});
    const int e = g.uniform(1, 2);
    const FieldPtr k = standard_field(p, g.uniform(1, 2));
    const DmlMap f = g.dml_general(k, p, e, g.uniform(0, 2));
    const auto rec = recognize_dml_form(to_general(f), p, e);
    ASSERT_TRUE(std::holds_alternative<DmlMap>(rec));
    ASSERT_EQ(to_general(std::get<DmlMap>(rec)).coords, to_general(f).coords);
  }
}

TEST(Dynamics, SemilinearReduction) {
  Gen g(testing::base_seed() + 32);
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t p = g.pick(std::vector<std::uint32_t>{2, 3, 5});
    const int e = g.uniform(1, 2);
    const FieldPtr k = standard_field(p, g.uniform(1, 3));
    const int N = g.uniform(0, 3);
    const DmlMap f = g.dml_general(k, p, e, N);
    const ProjPoint P = g.point(k, N + 1, 6);
    const auto r = reduce_point(apply_map(f, P));
    const auto r0 = reduce_point(P);
    std::vector<TruncSeries> expected;
    for (int a = 0; a <= N; ++a) {
      FqElem acc = FqElem::zero(k);
      for (int b = 0; b <= N; ++b) acc += f.A(a, b).constant_term() * frobenius_pow(r0[b], e);
      expected.push_back(TruncSeries::constant(acc, 1));
    }
    ASSERT_EQ(r, reduce_point(normalize(expected)));
  }
}

TEST(Dynamics, ValidMapsHaveZeroDifferential) {
  Gen g(testing::base_seed() + 33);
  for (int i = 0; i < 60; ++i) {
    const std::uint32_t p = g.pick(std::vector<std::uint32_t>{2, 3, 5});
    const int e = g.uniform(1, 2);
    const FieldPtr k = standard_field(p, g.uniform(1, 3));
    const DmlMap f = g.dml_general(k, p, e, g.uniform(0, 3));
    ASSERT_TRUE(check_conditions(f).zero_differential);
  }
}

TEST(Dynamics, PreimageRoundTripF1) {
  const auto k = f2();
  const DmlMap f = f1_map();
  const ProjPoint P = apply_map(f, pt(k, {"1", "t"}, 8));
  const ProjPoint Q = preimage_qp(f, P);
  EXPECT_EQ(Q.prec(), 4);
  EXPECT_TRUE(proj_eq(Q, pt(k, {"1", "t"}, 4)));
  EXPECT_TRUE(proj_eq(apply_map(f, Q, 8), P));
}

TEST(Dynamics, PreimageOfPureFrobeniusConstant) {
  const auto k = f4();
  const DmlMap f = checked_map(raw_map(k, 2, 1, {{"1", "0"}, {"0", "1"}}, {HomogPoly(k, 2, 1), HomogPoly(k, 2, 1)}));
  const ProjPoint Q = preimage_qp(f, pt(k, {"1", "a"}, 6));
  EXPECT_EQ(to_string(Q), "[1, 1+a] + O(t^3)");
}

TEST(Dynamics, PreimageNotInImage) {
  const auto k = f2();
  // M^{-1}[1, t^3] = [1, t^3 + t], which has odd exponents.
  EXPECT_EQ(error_of([&] { preimage_qp(f1_map(), pt(k, {"1", "t^3"}, 8)); }), ErrorKind::NotInImage);
  const DmlMap q4 = checked_map(raw_map(k, 2, 2, {{"1", "0"}, {"0", "1"}}, {HomogPoly(k, 2, 2), HomogPoly(k, 2, 2)}));
  EXPECT_EQ(error_of([&] { preimage_qp(q4, pt(k, {"1", "0"}, 8)); }), ErrorKind::UnsupportedQ);
}

TEST(Dynamics, PrecisionPreservedAndEquivariant) {
  Gen g(testing::base_seed() + 34);
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t p = g.pick(std::vector<std::uint32_t>{2, 3, 5});
    const int e = g.uniform(1, 2);
    const int m = g.uniform(1, 3);
    const FieldPtr k = standard_field(p, m);
    const DmlMap f = g.dml_general(k, p, e, g.uniform(0, 3));
    const ProjPoint P = g.point(k, f.N + 1, g.uniform(1, 20));
    const ProjPoint fP = apply_map(f, P);
    ASSERT_EQ(fP.prec(), P.prec());
    const GaloisAction sigma{e};
    ASSERT_EQ(apply_map(f, galois(P, sigma)).coords, galois(fP, sigma).coords);
  }
}

TEST(Dynamics, TermBoundFromEnvironment) {
  ::setenv("FROBDYN_TERM_BOUND", "17", 1);
  EXPECT_EQ(default_term_bound(), 17u);
  ::unsetenv("FROBDYN_TERM_BOUND");
  EXPECT_EQ(default_term_bound(), 1000000u);
}

TEST(Dynamics, MapPrinting) {
  EXPECT_EQ(to_string(to_general(f1_map())), "f0 = x0^2\nf1 = t*x0^2 + x1^2\n");
}

}  // namespace
}  // namespace frobdyn
