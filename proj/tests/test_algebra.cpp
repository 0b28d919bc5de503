#include <asw/errors.hpp>
#include <asw/parse.hpp>
#include <asw/ratfunc.hpp>
#include <gtest/gtest.h>

#include "generators.hpp"

using namespace asw;
using asw::testing::Rng;

namespace {

FieldValue el(const Field& f, const std::string& s) { return parse_field_value(s, f); }
RatFunc rf(const Field& f, const std::string& s) { return parse_ratfunc(s, f); }

}  // namespace

TEST(FieldArith, CharacteristicTwoSum) {
  const Field f2 = Field::prime(2);
  EXPECT_TRUE((FieldValue::one(f2) + FieldValue::one(f2)).is_zero());
}

TEST(FieldArith, ParameterDividedByItself) {
  const Field k = Field::parse("F2(t)");
  const FieldValue t = FieldValue::parameter(k);
  EXPECT_TRUE((t / t).is_one());
}

TEST(FieldArith, GeneratorSquaredInF4) {
  const Field f4 = Field::finite(2, 2u);
  EXPECT_EQ(f4.modulus(), (GfPoly{1, 1, 1}));
  const FieldValue g = FieldValue::generator(f4);
  EXPECT_EQ(g * g, g + FieldValue::one(f4));
  EXPECT_EQ((g * g).to_string(), "g + 1");
}

TEST(FieldArith, DivisionByZeroThrows) {
  const Field f5 = Field::prime(5);
  EXPECT_THROW(FieldValue::one(f5) / FieldValue::zero(f5), DivisionByZeroError);
  EXPECT_THROW(FieldValue::zero(f5).inverse(), DivisionByZeroError);
}

TEST(FieldArith, DescriptorMismatchThrows) {
  EXPECT_THROW(FieldValue::one(Field::prime(5)) + FieldValue::one(Field::prime(3)), FieldMismatchError);
}

TEST(FieldArith, ParametricFractionsAreReduced) {
  const Field k = Field::parse("F3(t)");
  const FieldValue v = el(k, "(t^2 - 1)/(2t + 2)");
  EXPECT_EQ(v.denominator(), GfPoly{1});
  EXPECT_EQ(v, el(k, "2t + 1"));  // (t-1)/2 = 2t - 2 = 2t + 1 over F_3
  const FieldValue w = el(k, "1/(2t)");
  EXPECT_EQ(w.denominator(), (GfPoly{0, 1}));
  EXPECT_EQ(w.numerator(), (GfPoly{2}));
}

TEST(FieldArith, ExtensionModuli) {
  EXPECT_EQ(Field::finite(2, 3u).modulus(), (GfPoly{1, 1, 0, 1}));
  EXPECT_EQ(Field::finite(3, 2u).modulus(), (GfPoly{1, 0, 1}));
  EXPECT_TRUE(is_irreducible_over_prime(5, {2, 0, 1}));
  EXPECT_FALSE(is_irreducible_over_prime(5, {1, 0, 1}));  // x^2+1 = (x-2)(x-3)
  EXPECT_THROW(Field::finite(5, GfPoly{1, 0, 1}), Error);
}

TEST(FieldArith, FieldNamesParse) {
  EXPECT_EQ(Field::parse("F9").degree(), 2u);
  EXPECT_EQ(Field::parse("F5(a)").parameter(), 'a');
  EXPECT_EQ(Field::parse("F4"), Field::finite(2, 2u));
  EXPECT_THROW(Field::parse("F6"), ParseError);
  EXPECT_THROW(Field::parse("G5"), ParseError);
}

class FieldAxioms : public ::testing::TestWithParam<const char*> {};

TEST_P(FieldAxioms, ExhaustiveOnSmallField) {
  const Field f = Field::parse(GetParam());
  std::vector<FieldValue> all;
  for (GfIndex i = 0; i < f.base_order(); ++i) all.push_back(FieldValue::from_index(f, i));
  for (const auto& a : all) {
    EXPECT_EQ(a + FieldValue::zero(f), a);
    EXPECT_EQ(a * FieldValue::one(f), a);
    EXPECT_TRUE((a + (-a)).is_zero());
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    for (const auto& b : all) {
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      for (const auto& c : all) {
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms, ::testing::Values("F2", "F3", "F4", "F5", "F8", "F9"));

TEST(FieldAxiomsParametric, RandomTriples) {
  const Field k = Field::parse("F3(t)");
  Rng rng(11);
  auto random_value = [&] {
    Poly n = asw::testing::random_poly(k.base(), rng, 3);
    Poly d = asw::testing::random_poly(k.base(), rng, 2);
    GfPoly num, den;
    for (const auto& c : n.coeffs()) num.push_back(c.index());
    for (const auto& c : d.coeffs()) den.push_back(c.index());
    if (den.empty()) den = {1};
    return FieldValue::fraction(k, num, den);
  };
  for (int it = 0; it < 300; ++it) {
    const FieldValue a = random_value(), b = random_value(), c = random_value();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

TEST(FrobeniusInverse, Examples) {
  const Field f2 = Field::prime(2);
  EXPECT_TRUE(FieldValue::one(f2).frobenius_inverse().is_one());
  const Field f4 = Field::finite(2, 2u);
  const FieldValue g = FieldValue::generator(f4);
  EXPECT_EQ(g.frobenius_inverse(), g * g);
  EXPECT_TRUE(FieldValue::zero(f4).frobenius_inverse().is_zero());
  EXPECT_THROW(FieldValue::parameter(Field::parse("F2(t)")).frobenius_inverse(), UnsupportedError);
}

TEST(FrobeniusInverse, IsInverseOnEveryElement) {
  for (const char* name : {"F2", "F3", "F4", "F5", "F7", "F8", "F9", "F16", "F25", "F27"}) {
    const Field f = Field::parse(name);
    for (GfIndex i = 0; i < f.base_order(); ++i) {
      const FieldValue a = FieldValue::from_index(f, i);
      EXPECT_EQ(a.frobenius_inverse().pow(f.characteristic()), a) << name << " " << i;
    }
  }
}

TEST(FrobeniusInverse, ParametricRootsOnlyForPowers) {
  const Field k = Field::parse("F2(t)");
  EXPECT_EQ(el(k, "(t^8 + t^6 + t^2 + 1)").pth_root(), el(k, "t^4 + t^3 + t + 1"));
  EXPECT_FALSE(el(k, "t").pth_root().has_value());
  EXPECT_EQ(el(k, "1/t^4").pth_root(), el(k, "1/t^2"));
}

TEST(PartialFractions, TwoPolesOverF5) {
  const Field f5 = Field::prime(5);
  const RatFunc f = rf(f5, "1/(x-1)^7 + 1/(x-2)^12");
  const PartialFractions pf = f.partial_fractions();
  EXPECT_TRUE(pf.polynomial.is_zero());
  ASSERT_EQ(pf.poles.size(), 2u);
  EXPECT_EQ(pf.poles.at(el(f5, "1")).size(), 7u);
  EXPECT_EQ(pf.poles.at(el(f5, "2")).size(), 12u);
  EXPECT_EQ(pf.recombine(), f);
}

TEST(PartialFractions, PolynomialInput) {
  const Field f5 = Field::prime(5);
  const RatFunc f = rf(f5, "x^3 + x");
  const PartialFractions pf = f.partial_fractions();
  EXPECT_TRUE(pf.poles.empty());
  EXPECT_EQ(RatFunc(pf.polynomial), f);
}

TEST(PartialFractions, SimpleFractionSplit) {
  const Field f5 = Field::prime(5);
  const RatFunc f = rf(f5, "1/(x(x-1))");
  const PartialFractions pf = f.partial_fractions();
  ASSERT_EQ(pf.poles.size(), 2u);
  EXPECT_EQ(pf.poles.at(el(f5, "0")), std::vector<FieldValue>{el(f5, "-1")});
  EXPECT_EQ(pf.poles.at(el(f5, "1")), std::vector<FieldValue>{el(f5, "1")});
  EXPECT_EQ(f, rf(f5, "1/(x-1) - 1/x"));
}

TEST(PartialFractions, UnsplitPoleNamesFactor) {
  const Field f3 = Field::prime(3);
  try {
    rf(f3, "1/(x^2 + 1)").partial_fractions();
    FAIL() << "expected an unsplit pole";
  } catch (const UnsplitPoleError& e) {
    EXPECT_EQ(e.factor(), "x^2 + 1");
    EXPECT_EQ(e.extension_degree(), 2u);
  }
  try {
    rf(Field::prime(2), "1/((x^2 + x + 1)(x^3 + x + 1)x)").partial_fractions();
    FAIL() << "expected an unsplit pole";
  } catch (const UnsplitPoleError& e) {
    EXPECT_EQ(e.factor(), "x^2 + x + 1");
    EXPECT_EQ(e.extension_degree(), 6u);
  }
}

TEST(PartialFractions, ParametricPolesFromHints) {
  const Field k = Field::parse("F2(t)");
  const RatFunc f = rf(k, "1/(x^2(x - t^4))");
  const auto poles = f.finite_poles();
  ASSERT_EQ(poles.size(), 2u);
  EXPECT_EQ(f.partial_fractions().recombine(), f);
  EXPECT_EQ(f.pole_order(Place::finite(el(k, "t^4"))), 1);
  EXPECT_EQ(f.pole_order(Place::finite(el(k, "0"))), 2);
}

TEST(PartialFractions, RecombineRandom) {
  Rng rng(2024);
  for (const char* name : {"F2", "F3", "F4", "F5", "F9"}) {
    const Field f = Field::parse(name);
    for (int it = 0; it < 60; ++it) {
      const RatFunc r = asw::testing::random_split_ratfunc(f, rng, 4, 6, 5);
      EXPECT_EQ(r.partial_fractions().recombine(), r) << name << ": " << r.to_string();
    }
  }
}

TEST(PoleOrder, Examples) {
  const Field f5 = Field::prime(5);
  EXPECT_EQ(rf(f5, "1/x + 1/(x-1)").pole_order(Place::finite(el(f5, "0"))), 1);
  EXPECT_EQ(rf(Field::prime(3), "x").pole_order(Place::infinity()), 1);
  EXPECT_EQ(rf(f5, "x").pole_order(Place::finite(el(f5, "0"))), 0);
  EXPECT_EQ(rf(f5, "(x^4 + 1)/(x - 3)").pole_order(Place::infinity()), 3);
}

TEST(PoleOrder, SumBound) {
  Rng rng(7);
  const Field f = Field::prime(5);
  std::vector<Place> places;
  for (GfIndex i = 0; i < 5; ++i) places.push_back(Place::finite(FieldValue::from_index(f, i)));
  places.push_back(Place::infinity());
  for (int it = 0; it < 250; ++it) {
    const RatFunc a = asw::testing::random_split_ratfunc(f, rng, 3, 5, 4);
    const RatFunc b = asw::testing::random_split_ratfunc(f, rng, 3, 5, 4);
    for (const auto& P : places) {
      const int oa = a.pole_order(P), ob = b.pole_order(P), os = (a + b).pole_order(P);
      EXPECT_LE(os, std::max(oa, ob));
      if (oa != ob) EXPECT_EQ(os, std::max(oa, ob));
    }
  }
}

TEST(Specialize, Examples) {
  const Field k = Field::parse("F5(t)");
  const FieldValue zero = FieldValue::zero(k.base());
  EXPECT_EQ(rf(k, "(x - t)/x").specialize(zero), rf(Field::prime(5), "1"));
  EXPECT_EQ(rf(k, "1/(x - t^2)").specialize(zero), rf(Field::prime(5), "1/x"));
  EXPECT_THROW(rf(k, "1/(t x)").specialize(zero), SpecializationPoleError);
}

TEST(Printing, RoundTripThroughParser) {
  Rng rng(99);
  for (const char* name : {"F2", "F3", "F4", "F5", "F9"}) {
    const Field f = Field::parse(name);
    for (int it = 0; it < 40; ++it) {
      const RatFunc r = asw::testing::random_split_ratfunc(f, rng, 3, 4, 4);
      EXPECT_EQ(rf(f, r.to_string()), r) << r.to_string();
      EXPECT_EQ(rf(f, r.to_pretty_string()), r) << r.to_pretty_string();
    }
  }
  const Field k = Field::parse("F2(t)");
  const RatFunc fam = rf(k, "1/(x^3(x - t^4)^2(x - t^2)^2) + (t^6 + 1)/(t^8 x)");
  EXPECT_EQ(rf(k, fam.to_pretty_string()), fam) << fam.to_pretty_string();
  EXPECT_EQ(rf(k, fam.to_string()), fam) << fam.to_string();
}

TEST(Printing, PrettyForm) {
  const Field f5 = Field::prime(5);
  EXPECT_EQ(rf(f5, "1/x + 1/(x-1)").to_pretty_string(), "1/x + 1/(x + 4)");
  EXPECT_EQ(rf(f5, "x^2 + 3/x^2").to_pretty_string(), "x^2 + 3/x^2");
  EXPECT_EQ(rf(f5, "0").to_pretty_string(), "0");
}

TEST(Parser, Errors) {
  const Field f5 = Field::prime(5);
  EXPECT_THROW(rf(f5, "1/(x-"), ParseError);
  EXPECT_THROW(rf(f5, "y + 1"), ParseError);
  EXPECT_THROW(rf(f5, "1/0"), ParseError);
  EXPECT_THROW(rf(f5, "g"), ParseError);
  EXPECT_THROW(parse_field_value("x", f5), ParseError);
}
