#include <gtest/gtest.h>

#include "nabla/error.hpp"
#include "nabla/serieskit/series.hpp"
#include "test_support.hpp"

using namespace nabla;
using namespace nabla::testing;

namespace {

SchemePresentation S(const RingPtr& ring, std::initializer_list<const char*> gens) {
  return SchemePresentation(I(ring, gens));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

MotivicClass L(long e) { return MotivicClass::lefschetz_power(e); }

PointSystem lsys() { return make_lsystem(FieldSpec::rationals()); }

SchemePresentation a1() { return SchemePresentation::affine_space(FieldSpec::rationals(), {"x"}); }

TruncatedSeries series_of(std::vector<MotivicClass> coeffs) {
  TruncatedSeries s;
  s.coefficients = std::move(coeffs);
  s.lengths.assign(s.coefficients.size(), 0);
  return s;
}

void expect_all_one(const TruncatedSeries& s) {
  for (std::size_t n = 1; n <= s.order(); ++n) EXPECT_EQ(s.coefficient(n), MotivicClass::one()) << n;
}

}  // namespace

TEST(IgusaZeta, AffineLineIsAllOnes) {
  auto s = igusa_zeta_truncated(a1(), lsys(), 4, 1);
  ASSERT_EQ(s.order(), 4u);
  expect_all_one(s);
  EXPECT_EQ(s.lengths, (std::vector<std::size_t>{1, 2, 3, 4}));
}

TEST(IgusaZeta, DoublePointMatchesArcClasses) {
  auto x = S(qq({"x"}), {"x^2"});
  auto s = igusa_zeta_truncated(x, lsys(), 3, 0);
  for (unsigned n = 1; n <= 3; ++n) {
    // independent: the arc ideal built directly from the weil restriction
    auto arc = weil_restrict(x, lsys().member(n));
    EXPECT_EQ(s.coefficient(n), class_of_scheme(arc.presentation));
  }
  // over 𝔩_2 the equations are a0^2, 2 a0 a1
  EXPECT_EQ(s.coefficient(2), class_of_scheme(S(qq({"u", "w"}), {"u^2", "u*w"})));
}

TEST(IgusaZeta, PointIsAllOnes) {
  SchemePresentation pt(Ideal(qq({}), {}));
  expect_all_one(igusa_zeta_truncated(pt, lsys(), 2, 0));
  auto jets = make_jet_system(S(qq({"x", "y"}), {"y^2 - x^3"}), {Rational(0), Rational(0)});
  expect_all_one(igusa_zeta_truncated(pt, jets, 2, 0));
}

TEST(IgusaZeta, DimensionMismatch) {
  EXPECT_EQ(code_of([&] { igusa_zeta_truncated(a1(), lsys(), 2, 0); }), ErrorCode::DimensionMismatch);
}

TEST(Poincare, AffineLineMatchesStableForm) {
  auto s = poincare_truncated(a1(), lsys(), 5, 1, 4);
  expect_all_one(s);
  auto form = stable_closed_form(s, 0, MotivicClass::one(), 0, 0);
  EXPECT_EQ(form.to_string(), "t/(1 - t)");
}

TEST(Poincare, SmoothEqualsIgusaZeta) {
  auto parabola = S(qq({"x", "y"}), {"y - x^2"});
  auto plane = SchemePresentation::affine_space(FieldSpec::rationals(), {"x", "y"});
  for (const auto& [x, d] : {std::pair{parabola, 1L}, std::pair{plane, 2L}}) {
    auto p = poincare_truncated(x, lsys(), 3, d, 4);
    auto z = igusa_zeta_truncated(x, lsys(), 3, d);
    EXPECT_EQ(p.coefficients, z.coefficients);
  }
  auto jets = make_jet_system(S(qq({"u", "w"}), {"w - u^2"}), {Rational(0), Rational(0)});
  EXPECT_EQ(poincare_truncated(parabola, jets, 2, 1, 4).coefficients,
            igusa_zeta_truncated(parabola, jets, 2, 1).coefficients);
}

TEST(Poincare, SmoothTailIsStableVolume) {
  auto parabola = S(qq({"x", "y"}), {"y - x^2"});
  auto p = poincare_truncated(parabola, lsys(), 4, 1, 4);
  auto mu = measure_stable(parabola, lsys(), 1, 1, 4).value;
  auto form = stable_closed_form(p, 0, mu, 0, 0);
  EXPECT_EQ(form.expand(4), p.coefficients);
}

TEST(Poincare, FatPointReducedSeriesIsGeometric) {
  // the double point is simple: its reduced traces are points, so σ of the series is all ones
  auto n = S(qq({"x"}), {"x^2"});
  auto p = sigma_series(poincare_truncated(n, lsys(), 2, 0, 4));
  expect_all_one(p);
  EXPECT_EQ(stable_closed_form(p, 0, MotivicClass::one(), 0, 0).expand(2), p.coefficients);
  // the scheme-theoretic trace at level 3 has not settled by depth 5
  EXPECT_EQ(code_of([&] { poincare_truncated(n, lsys(), 3, 0, 4); }), ErrorCode::TraceNotStabilized);
}

TEST(AutoIgusaWeightless, LineSystemCoefficients) {
  auto s = auto_igusa_weightless_truncated(lsys(), 4);
  for (unsigned n = 1; n <= 4; ++n) {
    auto arc = auto_arc(lsys().member(n));
    EXPECT_EQ(arc.presentation.dimension(), static_cast<long>(n) - 1);
    EXPECT_EQ(s.coefficient(n), class_of_scheme(arc.presentation).scale_l(1 - static_cast<long>(n)));
  }
  expect_all_one(sigma_series(s));
  EXPECT_EQ(s.coefficient(1), MotivicClass::one());
}

TEST(StableClosedForm, Examples) {
  auto ones = series_of({MotivicClass::one(), MotivicClass::one(), MotivicClass::one()});
  auto form = stable_closed_form(ones, 0, MotivicClass::one(), 0, 0);
  EXPECT_TRUE(form.polynomial.empty());
  EXPECT_EQ(form.expand(3), ones.coefficients);
  EXPECT_EQ(code_of([&] { stable_closed_form(ones, 0, L(1), 0, 0); }), ErrorCode::TailMismatch);
  EXPECT_EQ(code_of([&] { stable_closed_form(ones, 3, L(1), 0, 0); }), ErrorCode::InvalidArgument);
  try {
    stable_closed_form(ones, 1, L(1), 0, 0);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos);
  }
}

TEST(StableClosedForm, RoundTripWithPolynomialPart) {
  auto x = MotivicClass::one() - L(1);
  auto s = series_of({x, L(5), L(-1), L(-2), L(-3)});
  auto form = stable_closed_form(s, 2, MotivicClass::one(), -1, 2);
  EXPECT_EQ(form.expand(5), s.coefficients);
  EXPECT_EQ(form.to_string(), "(-L + 1)*t^1 + L^5*t^2 + L^2*(L^-1*t)^3/(1 - L^-1*t)");
}

TEST(RecognizeRational, Examples) {
  auto ones = series_of(std::vector<MotivicClass>(6, MotivicClass::one()));
  auto form = recognize_rational(ones);
  ASSERT_TRUE(form.has_value());
  EXPECT_EQ(form->tail.k, 0u);
  EXPECT_EQ(form->tail.q, 0);
  EXPECT_EQ(form->tail.numerator, MotivicClass::one());

  std::vector<MotivicClass> geo;
  for (long n = 1; n <= 6; ++n) geo.push_back(L(n));
  auto g = recognize_rational(series_of(geo));
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->tail.q, 1);
  EXPECT_EQ(g->expand(6), geo);

  auto cusp = class_of_scheme(S(qq({"x", "y"}), {"y^2 - x^3"}));
  auto noise = series_of({L(1), cusp, L(3), MotivicClass::one() + L(1), cusp * cusp, L(-4)});
  EXPECT_FALSE(recognize_rational(noise).has_value());
}

TEST(RecognizeRational, NeedsThreeTailTerms) {
  auto down = recognize_rational(series_of({L(-1), L(-2), L(-3)}));
  ASSERT_TRUE(down.has_value());
  EXPECT_EQ(down->tail.q, -1);
  EXPECT_EQ(down->tail.numerator, MotivicClass::one());
  // a tail from index 2 is only reported once three of its terms are visible
  EXPECT_FALSE(recognize_rational(series_of({L(7), L(1), L(1)})).has_value());
  auto late = recognize_rational(series_of({L(7), L(1), L(1), L(1)}));
  ASSERT_TRUE(late.has_value());
  EXPECT_EQ(late->tail.k, 1u);
  EXPECT_EQ(late->polynomial, std::vector<MotivicClass>{L(7)});
}
