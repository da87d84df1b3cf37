#include <gtest/gtest.h>

#include "formint/gm_action.hpp"
#include "oracles.hpp"

using namespace formint;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

std::string coaction(const FormalAction& a) { return a.coaction.at(0).to_string(); }

MultiPoly x_times(const Field& f, long n) {
  return MultiPoly::variable(f, {"x"}, "x") * Coefficient(f, n);
}

}  // namespace

TEST(GmAction, BinomialExpansion) {
  FormalAction a = gm_action(3, Q, 3);
  EXPECT_EQ(a.group, GroupType::Gm);
  EXPECT_EQ(a.weight, 3);
  EXPECT_EQ(a.coaction[0].coefficient(0U), x_times(Q, 1));
  EXPECT_EQ(a.coaction[0].coefficient(1U), x_times(Q, 3));
  EXPECT_EQ(a.coaction[0].coefficient(2U), x_times(Q, 3));
  EXPECT_EQ(a.coaction[0].coefficient(3U), x_times(Q, 1));
  EXPECT_TRUE(check_action_counit(a).pass);
}

TEST(GmAction, WeightTwoInCharacteristicTwo) {
  FormalAction a = gm_action(2, F2, 2);
  EXPECT_TRUE(a.coaction[0].coefficient(1U).is_zero());
  EXPECT_EQ(a.coaction[0].coefficient(2U), x_times(F2, 1));
}

TEST(GmAction, WeightZeroIsTrivial) {
  for (const Field& f : {Q, F2, F3}) {
    FormalAction a = gm_action(0, f, 2);
    EXPECT_EQ(coaction(a), "x");
    EXPECT_TRUE(action_is_trivial(a, 2));
  }
}

TEST(GmAction, TruncatesAtOrder) {
  FormalAction a = gm_action(5, Q, 2);
  EXPECT_EQ(a.coaction[0].coefficient(2U), x_times(Q, 10));
  EXPECT_TRUE(a.coaction[0].coefficient(3U).is_zero());
  EXPECT_THROW(gm_action(1, Q, 0), Error);
}

TEST(Anchor, EulerMultiple) {
  AnchorField rho = anchor(gm_action(3, Q, 3));
  EXPECT_FALSE(rho.is_zero);
  EXPECT_EQ(rho.field.components[0], x_times(Q, 3));

  AnchorField zero = anchor(gm_action(2, F2, 2));
  EXPECT_TRUE(zero.is_zero);
  EXPECT_TRUE(zero.field.components[0].is_zero());
}

TEST(Anchor, FlowDerivedActionRecoversVectorField) {
  for (const Field& f : {Q, F2, F3}) {
    const VarList vars{"x", "y"};
    VectorField v = VectorField::parse(f, vars, "x + y; y^2");
    FormalAction a = action_from_flow(integrate_flow(v, 4, Basis::DividedPower));
    EXPECT_EQ(a.group, GroupType::GaSharp);
    AnchorField rho = anchor(a);
    EXPECT_EQ(rho.field, v);
    EXPECT_TRUE(check_action_coassociativity(a).pass);
    EXPECT_TRUE(check_action_counit(a).pass);
  }
  FormalAction mono = action_from_flow(integrate_flow(VectorField::parse(Q, {"x"}, "x^2 + 1"), 3,
                                                      Basis::Monomial));
  EXPECT_EQ(mono.group, GroupType::Ga);
  EXPECT_EQ(anchor(mono).field.components[0].to_string(), "x^2 + 1");
}

TEST(RestrictPower, Examples) {
  FormalAction r = restrict_power(gm_action(1, Q, 2), 2);
  EXPECT_EQ(r.coaction, gm_action(2, Q, 2).coaction);
  EXPECT_EQ(r.weight, 2);

  FormalAction frob = restrict_power(gm_action(1, F3, 3), 3);
  EXPECT_EQ(coaction(frob), "x + x * t^3");
  EXPECT_EQ(frob.coaction, gm_action(3, F3, 3).coaction);

  FormalAction g = gm_action(4, Q, 5);
  EXPECT_EQ(restrict_power(g, 1).coaction, g.coaction);
}

TEST(RestrictPower, Errors) {
  FormalAction ga = action_from_flow(integrate_flow(VectorField::parse(Q, {"x"}, "1"), 2, Basis::Monomial));
  try {
    restrict_power(ga, 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GroupMismatch);
  }
  EXPECT_THROW(restrict_power(gm_action(1, Q, 2), 0), Error);
}

TEST(ActionIsTrivial, OrderRelative) {
  EXPECT_FALSE(action_is_trivial(gm_action(2, F2, 2), 2));
  FormalAction a = gm_action(4, F2, 4);
  EXPECT_TRUE(action_is_trivial(a, 3));
  EXPECT_FALSE(action_is_trivial(a, 4));
  try {
    action_is_trivial(gm_action(4, F2, 3), 4);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderMismatch);
  }
}

TEST(GmInvariants, AnchorIsWeightModCharacteristic) {
  for (unsigned p : {2U, 3U, 5U}) {
    const Field f = Field::prime(p);
    for (unsigned n = 0; n <= 20; ++n) {
      AnchorField rho = anchor(gm_action(n, f, 1));
      EXPECT_EQ(rho.field.components[0], x_times(f, static_cast<long>(n % p))) << n << " mod " << p;
      EXPECT_EQ(rho.is_zero, n % p == 0);
    }
  }
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(anchor(gm_action(n, Q, 1)).is_zero, n == 0);
}

TEST(GmInvariants, RestrictionIdentity) {
  for (const Field& f : {Q, F2, F3, Field::prime(5)})
    for (unsigned n = 0; n <= 12; ++n)
      for (unsigned l = 1; l <= 12 && n * l <= 12; ++l)
        for (unsigned order = std::max(1U, n * l); order <= 12; order += 3) {
          FormalAction r = restrict_power(gm_action(n, f, order), l);
          EXPECT_EQ(r.coaction, gm_action(n * l, f, order).coaction)
              << "n=" << n << " l=" << l << " N=" << order << " over " << f.name();
        }
}

TEST(GmInvariants, RestrictionComposes) {
  for (const Field& f : {Q, F2, F3})
    for (unsigned n : {1U, 2U, 3U})
      for (unsigned l : {1U, 2U, 3U})
        for (unsigned m : {1U, 2U, 5U}) {
          FormalAction g = gm_action(n, f, 9);
          EXPECT_EQ(restrict_power(restrict_power(g, l), m).coaction, restrict_power(g, l * m).coaction);
        }
}

TEST(GmInvariants, PrimePowerWeightsHaveZeroAnchorButActNontrivially) {
  for (unsigned p : {2U, 3U, 5U, 7U}) {
    const Field f = Field::prime(p);
    for (unsigned q = p; q <= 8; q *= p) {
      FormalAction a = gm_action(q, f, q);
      EXPECT_TRUE(anchor(a).is_zero) << q;
      EXPECT_FALSE(action_is_trivial(a, q)) << q;
      if (q > 1) {
        EXPECT_TRUE(action_is_trivial(a, q - 1)) << q;
      }
    }
  }
}

TEST(GmInvariants, MultiplicativeCoassociativity) {
  for (const Field& f : {Q, F2, F3})
    for (unsigned n = 0; n <= 10; ++n) {
      FormalAction a = gm_action(n, f, 8);
      EXPECT_TRUE(check_action_coassociativity(a).pass) << n;
      EXPECT_TRUE(check_action_counit(a).pass);
    }
  // the additive law does not fit a nontrivial Gm coaction
  FormalAction a = gm_action(2, Q, 4);
  EXPECT_FALSE(check_coaction_coassociativity(a.coaction, a.state_vars, GroupLaw::Additive).pass);
}

TEST(GmInvariants, CoefficientsAreBinomials) {
  for (unsigned p : {2U, 3U, 5U}) {
    const Field f = Field::prime(p);
    for (unsigned n = 0; n <= 12; ++n) {
      FormalAction a = gm_action(n, f, 12);
      for (unsigned k = 0; k <= 12; ++k) {
        Coefficient expected = k <= n ? oracle::binomial_gmp(f, n, k) : Coefficient::zero(f);
        EXPECT_EQ(a.coaction[0].coefficient(k), MultiPoly::variable(f, {"x"}, "x") * expected);
      }
    }
  }
}
