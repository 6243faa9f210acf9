#include <gtest/gtest.h>

#include "lamping/formula.hpp"

using namespace lamping;

TEST(Formula, ParsesAndPrints) {
  Formula f = parse_formula("!(A -o A) -o !(A -o A) -o B");
  ASSERT_TRUE(f.is(Formula::Kind::Lolli));
  EXPECT_TRUE(f.left().is(Formula::Kind::Bang));
  EXPECT_EQ(to_string(f), "!(A -o A) -o !(A -o A) -o B");
  EXPECT_EQ(to_string(parse_formula("forall a. !(a -o a) -o $(a -o a)")), "forall a. !(a -o a) -o $(a -o a)");
  EXPECT_EQ(to_string(parse_formula("mu t. t -o t")), "mu t. t -o t");
  EXPECT_EQ(to_string(parse_formula("(A -o B) -o C")), "(A -o B) -o C");
  EXPECT_THROW(parse_formula("A -o"), SyntaxError);
  EXPECT_THROW(parse_formula("forall. A"), SyntaxError);
}

TEST(Formula, AlphaEquality) {
  EXPECT_TRUE(formula_eq(parse_formula("forall a. a -o a"), parse_formula("forall b. b -o b")));
  EXPECT_FALSE(formula_eq(parse_formula("forall a. a -o b"), parse_formula("forall b. b -o b")));
  EXPECT_TRUE(formula_eq(parse_formula("mu t. !t"), parse_formula("mu s. !s")));
  EXPECT_FALSE(formula_eq(parse_formula("!A"), parse_formula("$A")));
}

TEST(Formula, SubstitutionIsCaptureAvoiding) {
  Formula body = parse_formula("forall b. a -o b");
  Formula r = subst_formula(body, "a", parse_formula("b"));
  // the bound b must be renamed so the substituted b stays free
  EXPECT_EQ(free_type_vars(r), (std::set<std::string>{"b"}));
  EXPECT_TRUE(formula_eq(r, parse_formula("forall c. b -o c")));
}

TEST(Formula, MuUnfolding) {
  Formula m = parse_formula("mu t. t -o A");
  EXPECT_TRUE(formula_eq(unfold_mu(m), parse_formula("(mu t. t -o A) -o A")));
}

TEST(Formula, ParaErasure) {
  Formula f = parse_formula("forall a. !(a -o a) -o $(a -o a)");
  EXPECT_TRUE(contains_para(f));
  EXPECT_FALSE(contains_para(erase_para(f)));
  EXPECT_TRUE(formula_eq(erase_para(f), parse_formula("forall a. !(a -o a) -o !(a -o a)")));
}
