#include <gtest/gtest.h>

#include <random>

#include "nabla/error.hpp"
#include "nabla/grotkit/motivic.hpp"
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

SchemePresentation affine(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(prefix + std::to_string(i + 1));
  return SchemePresentation::affine_space(FieldSpec::rationals(), vars);
}

SchemePresentation point_scheme() { return SchemePresentation(Ideal(qq({}), {})); }

SchemePresentation l2() { return S(qq({"x"}), {"x^2"}); }

}  // namespace

TEST(ClassOfScheme, AffineSpaceIsLefschetzPower) {
  for (std::size_t n = 0; n <= 4; ++n) {
    auto a = affine(n);
    EXPECT_EQ(class_of_scheme(a), L(static_cast<long>(n))) << n;
  }
  EXPECT_EQ(class_of_scheme(point_scheme()), MotivicClass::one());
  EXPECT_EQ(MotivicClass::one().to_string(), "1");
}

TEST(ClassOfScheme, UnitIdealIsZero) {
  auto c = class_of_scheme(S(qq({"x", "y"}), {"x*y - 1", "x"}));
  EXPECT_TRUE(c.is_zero());
  EXPECT_EQ(c.to_string(), "0");
}

TEST(ClassOfScheme, FreeVariablesSplitOff) {
  auto x = S(qq({"x"}), {"x^2"});
  auto xa2 = S(qq({"x", "y", "z"}), {"x^2"});
  EXPECT_EQ(class_of_scheme(xa2), class_of_scheme(x) * L(2));
  EXPECT_EQ(class_of_scheme(xa2).to_string(), "[V(v1^2)]*L^2");
}

TEST(ClassOfScheme, LinearVariablesAreEliminated) {
  // the parabola is a graph over the line
  EXPECT_EQ(class_of_scheme(S(qq({"x", "y"}), {"y - x^2"})), L(1));
  EXPECT_EQ(class_of_scheme(S(qq({"x", "y", "z"}), {"z - x*y", "y^2"})),
            class_of_scheme(S(qq({"u", "w"}), {"w^2"})));
}

TEST(ClassOfScheme, PositionalRenamingIsCanonical) {
  auto a = class_of_scheme(S(qq({"p", "q"}), {"q^2 - p^3"}));
  auto b = class_of_scheme(S(qq({"s", "t"}), {"t^2 - s^3"}));
  EXPECT_EQ(a, b);
}

TEST(ClassOfScheme, DisjointVariableBlocksFactor) {
  auto both = class_of_scheme(S(qq({"x", "y"}), {"x^2", "y^3"}));
  EXPECT_EQ(both, class_of_scheme(S(qq({"x"}), {"x^2"})) * class_of_scheme(S(qq({"y"}), {"y^3"})));
}

TEST(ClassOfScheme, ProductWithAffineSpaceProperty) {
  std::mt19937 rng(7);
  auto R = qq({"x", "y"});
  for (int trial = 0; trial < 15; ++trial) {
    auto f = random_polynomial(rng, R, 3, 3);
    auto g = random_polynomial(rng, R, 2, 2);
    SchemePresentation x(Ideal(R, {f, g}));
    for (std::size_t n = 1; n <= 2; ++n) {
      auto prod = scheme_product(x, affine(n, "z"));
      EXPECT_EQ(class_of_scheme(prod), class_of_scheme(x) * L(static_cast<long>(n)))
          << f.to_string() << ", " << g.to_string();
    }
  }
}

TEST(ConeClass, ReductionFoldsToScheme) {
  auto R = qq({"x", "y"});
  auto x = S(R, {"x^2"});
  auto red = S(R, {"x"});
  EXPECT_EQ(cone_class(x, red), class_of_scheme(x));
}

TEST(ConeClass, AffineConeIsLefschetzPower) {
  for (std::size_t r = 0; r <= 3; ++r) {
    auto a = affine(r);
    EXPECT_EQ(cone_class(a, a), L(static_cast<long>(r)));
  }
}

TEST(ConeClass, FatPointOverPoint) {
  EXPECT_EQ(cone_class(l2(), S(qq({"x"}), {"x"})), class_of_scheme(l2()));
}

TEST(ConeClass, NonReducedSubschemeStaysAsCone) {
  auto R = qq({"x", "y", "z"});
  auto c = cone_class(S(R, {"x^3"}), S(R, {"x^2", "y"}));
  EXPECT_EQ(c.to_string(), "[C(V() | V(v1))]*[C(V(v1^3) | V(v1^2))]*L");
  EXPECT_EQ(class_dim(c), 1);
}

TEST(ConeClass, ContainmentViolated) {
  auto R = qq({"x", "y"});
  EXPECT_EQ(code_of([&] { cone_class(S(R, {"x"}), S(R, {"y"})); }), ErrorCode::ContainmentViolated);
}

TEST(ClassCombine, Examples) {
  EXPECT_EQ(class_combine(CombineKind::Mul, L(1), L(1)), L(2));
  auto x = class_of_scheme(l2());
  EXPECT_TRUE(class_combine(CombineKind::Sub, x, x).is_zero());
  auto l2a2 = scheme_product(l2(), affine(2, "z"));
  EXPECT_EQ(class_combine(CombineKind::Mul, x, L(2)), class_of_scheme(l2a2));
  EXPECT_EQ(class_combine(CombineKind::ScaleL, x, {}, -1), x * L(-1));
  EXPECT_EQ(class_combine(CombineKind::Mul, x, x), class_of_scheme(scheme_product(l2(), l2())));
}

TEST(ClassCombine, RingLaws) {
  auto a = class_of_scheme(l2());
  auto b = L(2) - MotivicClass::one();
  auto c = class_of_scheme(S(qq({"x", "y"}), {"y^2 - x^3"}));
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a + b, b + a);
  EXPECT_EQ((b).to_string(), "L^2 - 1");
  EXPECT_EQ((-b).to_string(), "-L^2 + 1");
  EXPECT_EQ((a.scaled(3) - L(-1)).to_string(), "-L^-1 + 3*[V(v1^2)]");
}

TEST(ClassDim, Examples) {
  EXPECT_EQ(class_dim(L(-3)), -3);
  auto m = S(qq({"x", "y"}), {"x^2", "x*y", "y^2"});
  EXPECT_EQ(class_dim(class_of_scheme(m) * L(-2)), -2);
  EXPECT_EQ(class_dim(MotivicClass::zero()), std::nullopt);
  EXPECT_EQ(dim_to_string(class_dim(MotivicClass::zero())), "-inf");
}

TEST(ClassDim, ShiftsWithLefschetzScaling) {
  auto c = class_of_scheme(S(qq({"x", "y", "z"}), {"y^2 - x^3"}));
  ASSERT_EQ(class_dim(c), 2);
  for (long e = -3; e <= 3; ++e) EXPECT_EQ(class_dim(c.scale_l(e)), 2 + e);
}

TEST(Filtration, Examples) {
  EXPECT_TRUE(filtration_member(L(-3), 0));
  EXPECT_FALSE(filtration_member(L(2), 2));
  EXPECT_TRUE(filtration_member(L(2), 3));
  for (long m = -5; m <= 5; ++m) EXPECT_TRUE(filtration_member(MotivicClass::zero(), m));
}

TEST(SigmaReduce, Examples) {
  EXPECT_EQ(sigma_reduce(class_of_scheme(l2())), MotivicClass::one());
  auto R = qq({"x", "y"});
  auto x = S(R, {"x^2*y"});
  auto xred = S(R, {"x*y"});
  EXPECT_EQ(sigma_reduce(cone_class(x, xred)), class_of_scheme(xred));
  for (long e = -2; e <= 2; ++e) EXPECT_EQ(sigma_reduce(L(e)), L(e));
  auto R3 = qq({"x", "y", "z"});
  EXPECT_EQ(sigma_reduce(cone_class(S(R3, {"x^3"}), S(R3, {"x^2", "y"}))), L(1));
}

TEST(SigmaReduce, IsRingHomomorphismOnFixtures) {
  auto R = qq({"x", "y"});
  std::vector<MotivicClass> fixtures = {
      class_of_scheme(l2()),
      class_of_scheme(S(R, {"x^2*y"})),
      class_of_scheme(S(R, {"x^2", "x*y", "y^2"})),
      L(1) - MotivicClass::one(),
      cone_class(S(R, {"x^3"}), S(R, {"x^2", "y"})),
      class_of_scheme(S(R, {"y^3"})) * L(-2),
  };
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    for (std::size_t j = 0; j < fixtures.size(); ++j) {
      const auto& a = fixtures[i];
      const auto& b = fixtures[j];
      EXPECT_EQ(sigma_reduce(a * b), sigma_reduce(a) * sigma_reduce(b)) << i << "," << j;
      EXPECT_EQ(sigma_reduce(a + b), sigma_reduce(a) + sigma_reduce(b)) << i << "," << j;
    }
  }
}

TEST(MeasureStable, AffineSpaceHasUnitVolume) {
  auto sys = make_lsystem(FieldSpec::rationals());
  for (long d = 1; d <= 2; ++d) {
    auto a = affine(static_cast<std::size_t>(d));
    for (std::size_t s = 1; s <= 2; ++s) {
      EXPECT_EQ(measure_stable(a, sys, s, d, 4).value, MotivicClass::one()) << d << " " << s;
    }
  }
}

TEST(MeasureStable, PointHasUnitVolume) {
  auto sys = make_lsystem(FieldSpec::rationals());
  EXPECT_EQ(measure_stable(point_scheme(), sys, 1, 0, 3).value, MotivicClass::one());
}

TEST(MeasureStable, SmoothCurveGivesClassTimesInverseL) {
  auto sys = make_lsystem(FieldSpec::rationals());
  auto parabola = S(qq({"x", "y"}), {"y - x^2"});
  for (std::size_t s = 1; s <= 2; ++s) {
    auto m = measure_stable(parabola, sys, s, 1, 4);
    EXPECT_EQ(m.value, class_of_scheme(parabola) * L(-1));
    EXPECT_EQ(m.level, s);
  }
  auto jets = make_jet_system(S(qq({"u", "w"}), {"w - u^2"}), {Rational(0), Rational(0)});
  auto m = measure_stable(parabola, jets, 2, 1, 4);
  EXPECT_EQ(m.value, class_of_scheme(parabola) * L(-1));
}

TEST(MeasureStable, Errors) {
  auto sys = make_lsystem(FieldSpec::rationals());
  auto a = affine(1);
  EXPECT_EQ(code_of([&] { measure_stable(a, sys, 1, 2, 4); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { measure_stable(a, sys, 9, 1, 4); }), ErrorCode::InvalidArgument);
}

TEST(MeasureRationalLax, Examples) {
  auto sys = make_lsystem(FieldSpec::rationals());
  auto dl = S(qq({"x", "y"}), {"x^2"});
  EXPECT_EQ(measure_rational_lax(dl, sys, 1, 1, 0, 4).value, class_of_scheme(dl) * L(-1));
  auto n = S(qq({"x", "y"}), {"x^2", "x*y", "y^2"});
  EXPECT_EQ(measure_rational_lax(n, sys, 1, 0, 0, 4).value, class_of_scheme(n));
  auto a1 = affine(1);
  EXPECT_EQ(measure_rational_lax(a1, sys, 1, 1, 0, 4).value, MotivicClass::one());
  EXPECT_EQ(measure_rational_lax(a1, sys, 2, 1, 0, 4).value, measure_stable(a1, sys, 2, 1, 4).value);
}

TEST(MeasureRationalLax, SigmaMatchesReducedTrace) {
  auto sys = make_lsystem(FieldSpec::rationals());
  struct Case {
    SchemePresentation x;
    long d;
    unsigned max_level;
  };
  std::vector<Case> cases = {
      {S(qq({"x", "y"}), {"x^2"}), 1, 2},
      {S(qq({"x", "y"}), {"x^2", "x*y", "y^2"}), 0, 2},
      {S(qq({"x", "y"}), {"y - x^2"}), 1, 2},
      // the level-2 trace of the node has not settled by depth 4
      {S(qq({"x", "y"}), {"x*y"}), 1, 1},
  };
  for (const auto& c : cases) {
    for (unsigned n = 1; n <= c.max_level; ++n) {
      for (long l = 0; l <= 1; ++l) {
        SCOPED_TRACE(c.x.ideal().generators().front().to_string() + " n=" + std::to_string(n));
        auto m = measure_rational_lax(c.x, sys, n, c.d, l, 4);
        auto reduced = radical_closure(m.trace.ideal);
        ASSERT_TRUE(reduced.certified);
        auto expect = class_of_scheme(SchemePresentation(reduced.ideal))
                          .scale_l(-c.d * static_cast<long>(m.length) - l);
        EXPECT_EQ(sigma_reduce(m.value), expect) << c.x.ideal().generators().front().to_string() << " n=" << n;
      }
    }
  }
}
