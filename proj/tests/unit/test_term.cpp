#include <gtest/gtest.h>

#include "entropica/constructions.hpp"
#include "entropica/errors.hpp"
#include "entropica/term.hpp"
#include "support.hpp"

using namespace entropica;
using namespace entropica::testing;

namespace {

Term v(const char* name) { return Term::variable(name); }
Term mul(Term a, Term b) { return Term::apply("*", {std::move(a), std::move(b)}); }

// Independent oracle for the focal decomposition: peel right arguments.
std::string naive_focal(const Term& t) { return t.is_variable() ? t.symbol() : naive_focal(t.arg(1)); }

}  // namespace

TEST(Term, Parse) {
  EXPECT_EQ(parse_term("(x*y)*(u*v)"), mul(mul(v("x"), v("y")), mul(v("u"), v("v"))));
  EXPECT_EQ(parse_term("x*y*z"), mul(mul(v("x"), v("y")), v("z")));
  const Signature sig({{"f", 2}, {"g", 1}});
  const Identity id = parse_identity("f(x,g(y)) = y", sig);
  EXPECT_EQ(id.lhs, Term::apply("f", {v("x"), Term::apply("g", {v("y")})}));
  EXPECT_EQ(id.rhs, v("y"));
  const Signature grp({{"+", 2}, {"-", 1}, {"0", 0}});
  EXPECT_EQ(to_string(parse_term("x+0", grp)), "x+0");
  EXPECT_EQ(to_string(parse_term("-(x)+y", grp)), "-(x)+y");
  EXPECT_EQ(parse_term("-(x)+y", grp), parse_term("(-(x))+y", grp));
}

TEST(Term, ParseErrors) {
  EXPECT_THROW(parse_term("(x*y"), ParseError);
  EXPECT_THROW(parse_term("x*"), ParseError);
  EXPECT_THROW(parse_identity("x*y"), ParseError);
  EXPECT_THROW(parse_term("f(x)"), Error);
  EXPECT_THROW(parse_term("f(x)", Signature({{"f", 2}})), ParseError);
  EXPECT_THROW(check_well_formed(Term::apply("f", {v("x")}), Signature({{"f", 2}})), SignatureError);
  try {
    parse_term("x*)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Term, PrintParseRoundTrip) {
  auto rng = engine(21);
  const std::vector<std::string> vars = {"x", "y", "z", "u"};
  for (int round = 0; round < 500; ++round) {
    const Term t = random_term(rng, vars, 5);
    EXPECT_EQ(parse_term(to_string(t)), t) << to_string(t);
  }
}

TEST(Term, Structure) {
  EXPECT_TRUE(is_linear(parse_term("(x*y)*(u*v)")));
  EXPECT_FALSE(is_linear(parse_term("x*(x*y)")));
  EXPECT_TRUE(is_regular(parse_identity("(x*x)*y = x*y")));
  EXPECT_FALSE(is_balanced(parse_identity("(x*x)*y = x*y")));
  EXPECT_FALSE(is_regular(parse_identity("(x*y)*x = x")));
  EXPECT_EQ(variables(parse_identity("y*x = z")), (std::vector<std::string>{"y", "x", "z"}));
  EXPECT_EQ(parse_term("(x*y)*(x*x)").leaf_count(), 4u);
  EXPECT_EQ(parse_term("(x*y)*(x*x)").depth(), 2u);
  EXPECT_EQ(mirror(parse_term("(x*y)*z")), parse_term("z*(y*x)"));
  EXPECT_EQ(substitute(parse_term("x*y"), {{"x", parse_term("y*y")}}), parse_term("(y*y)*y"));
}

TEST(Term, Linearize) {
  const Linearization a = linearize(parse_term("x*(x*y)"));
  EXPECT_EQ(to_string(a.star), "x_1*(x_2*y_1)");
  EXPECT_EQ(a.counts(), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(to_string(linearize(parse_term("x")).star), "x_1");
  EXPECT_EQ(to_string(linearize(parse_term("(x*y)*(x*z)")).star), "(x_1*y_1)*(x_2*z_1)");
}

TEST(Term, LinearizeIsLinearAndRecoversTerm) {
  auto rng = engine(22);
  const std::vector<std::string> vars = {"x", "y", "z"};
  for (int round = 0; round < 300; ++round) {
    const Term t = random_term(rng, vars, 5);
    const Linearization L = linearize(t);
    EXPECT_TRUE(is_linear(L.star));
    std::map<std::string, Term> back;
    for (std::size_t i = 0; i < L.variables.size(); ++i)
      for (const auto& name : L.groups[i]) back.emplace(name, Term::variable(L.variables[i]));
    EXPECT_EQ(substitute(L.star, back), t);
  }
}

TEST(Term, FocalDecompose) {
  const auto a = focal_decompose(parse_term("(x*y)*x"));
  ASSERT_EQ(a.multipliers.size(), 1u);
  EXPECT_EQ(a.multipliers[0], parse_term("x*y"));
  EXPECT_EQ(a.focal, "x");
  EXPECT_TRUE(focal_decompose(parse_term("x")).multipliers.empty());
  const auto c = focal_decompose(parse_term("a*(b*(c*x))"));
  EXPECT_EQ(c.multipliers.size(), 3u);
  EXPECT_EQ(c.focal, "x");
}

TEST(Term, FocalMatchesRightSpine) {
  auto rng = engine(23);
  const std::vector<std::string> vars = {"x", "y", "z"};
  for (int round = 0; round < 300; ++round) {
    const Term t = random_term(rng, vars, 5);
    EXPECT_EQ(focal_decompose(t).focal, naive_focal(t));
    const Term star = linearize(t).star;
    EXPECT_TRUE(focally_equivalent(star, star)) << to_string(star);
  }
}

TEST(Term, FocalEquivalence) {
  const Algebra g1 = example_algebra("g1");
  EXPECT_FALSE(focally_equivalent(parse_term("(x*y)*z"), parse_term("(y*x)*z")));
  EXPECT_FALSE(holds(g1, parse_identity("(x*y)*z = (y*x)*z")));
  EXPECT_TRUE(focally_equivalent(parse_term("x"), parse_term("x")));
  EXPECT_TRUE(focally_equivalent(parse_term("x*(y*z)"), parse_term("y*(x*z)")));
  EXPECT_TRUE(holds(g1, parse_identity("x*(y*z) = y*(x*z)")));
}

TEST(Term, Enumeration) {
  // Catalan numbers.
  EXPECT_EQ(binary_shapes(1, "*").size(), 1u);
  EXPECT_EQ(binary_shapes(3, "*").size(), 2u);
  EXPECT_EQ(binary_shapes(4, "*").size(), 5u);
  const std::vector<std::string> xy = {"x", "y"};
  // 1 + 4 + 2*8 terms over {x, y} with up to 3 leaves.
  EXPECT_EQ(enumerate_terms(3, xy, "*", false).size(), 2u + 4u + 16u);
  EXPECT_EQ(enumerate_terms(3, xy, "*", true).size(), 2u + 2u);
}

TEST(Term, IdentityEnumerationCoversRenamingClasses) {
  // Identities with 1 leaf per side: x=x, x=y.
  std::size_t count = 0;
  for_each_identity(1, "*", false, [&](const Identity&) { ++count; });
  EXPECT_EQ(count, 2u);
  // Up to 2 leaves: set partitions (Bell numbers) of the joint leaves.
  count = 0;
  for_each_identity(2, "*", false, [&](const Identity&) { ++count; });
  EXPECT_EQ(count, 2u + 5u + 5u + 15u);
}

TEST(Term, RegularLinearIsBalanced) {
  for_each_identity(4, "*", true, [](const Identity& id) {
    if (is_regular(id)) EXPECT_TRUE(is_balanced(id)) << to_string(id);
  });
}
