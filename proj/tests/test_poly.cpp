#include <gtest/gtest.h>

#include "lca/frac.hpp"
#include "support.hpp"

using namespace lca;
using lca::testkit::Rng;

namespace {

VarTablePtr table() { return VarTable::make({"Delta", "alpha", "Delta2", "alpha2"}); }

Poly P(const VarTablePtr& vt, const char* s) { return parse(s, vt); }

}  // namespace

TEST(Poly, ParsesAndPrintsInFixedOrder) {
  auto vt = table();
  EXPECT_EQ(P(vt, "alpha + del + lam*Delta").to_string(), "Delta*lam + del + alpha");
  EXPECT_EQ(P(vt, "(1 - Delta)*lam + del - alpha").to_string(), "-Delta*lam + lam + del - alpha");
  EXPECT_EQ(P(vt, "(1 - Delta)*lam + del - alpha").to_grouped_string(), "(-Delta + 1)*lam + del - alpha");
  EXPECT_EQ(P(vt, "2*lam + del").to_string(), "2*lam + del");
  EXPECT_EQ(P(vt, "0").to_string(), "0");
  EXPECT_EQ(P(vt, "lam^3/6 - 1/2").to_string(), "1/6*lam^3 - 1/2");
}

TEST(Poly, PrintedFormParsesBack) {
  auto vt = table();
  Rng rng(11);
  std::vector<Var> formal{vars::lam, vars::mu, vars::gam, vars::del};
  std::vector<Var> params{vt->require("Delta"), vt->require("alpha")};
  for (int trial = 0; trial < 50; ++trial) {
    Poly p = testkit::random_poly(rng, vt, formal, 4, 6, params);
    EXPECT_EQ(parse(p.to_string(), vt), p) << p.to_string();
    EXPECT_EQ(parse(p.to_grouped_string(), vt), p) << p.to_grouped_string();
  }
}

TEST(Poly, ParseErrors) {
  auto vt = table();
  EXPECT_THROW(parse("beta + 1", vt), ParseError);
  EXPECT_THROW(parse("lam +", vt), ParseError);
  EXPECT_THROW(parse("lam / del", vt), ParseError);
  EXPECT_THROW(parse("lam^-1", vt), ParseError);
  EXPECT_THROW(parse("(lam", vt), ParseError);
  EXPECT_THROW(parse("1/0", vt), ParseError);
  try {
    parse("lam + beta", vt);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("beta"), std::string::npos);
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Poly, ReservedAndDuplicateParametersRejected) {
  EXPECT_THROW(VarTable::make({"lam"}), Error);
  EXPECT_THROW(VarTable::make({"del"}), Error);
  EXPECT_THROW(VarTable::make({"a", "a"}), Error);
}

TEST(Poly, RingAxiomsOnRandomPolynomials) {
  auto vt = table();
  Rng rng(7);
  std::vector<Var> formal{vars::lam, vars::mu, vars::del};
  std::vector<Var> params{vt->require("Delta")};
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = testkit::random_poly(rng, vt, formal, 3, 4, params);
    Poly b = testkit::random_poly(rng, vt, formal, 3, 4, params);
    Poly c = testkit::random_poly(rng, vt, formal, 2, 3, params);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a.pow(3), a * a * a);
  }
}

TEST(Poly, SubstitutionIsARingMapAndReflectionIsAnInvolution) {
  auto vt = table();
  Rng rng(3);
  Poly lam = Poly::variable(vt, vars::lam), del = Poly::variable(vt, vars::del);
  std::vector<Var> formal{vars::lam, vars::mu, vars::del};
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = testkit::random_poly(rng, vt, formal, 3, 4);
    Poly b = testkit::random_poly(rng, vt, formal, 3, 4);
    Poly r = -lam - del;
    EXPECT_EQ((a * b).substitute(vars::lam, r), a.substitute(vars::lam, r) * b.substitute(vars::lam, r));
    EXPECT_EQ(a.substitute(vars::lam, r).substitute(vars::lam, r), a);
  }
}

TEST(Poly, SimultaneousSubstitutionSwaps) {
  auto vt = table();
  Poly p = P(vt, "lam^2*mu + 3*mu");
  Poly swapped = p.substitute({{vars::lam, Poly::variable(vt, vars::mu)}, {vars::mu, Poly::variable(vt, vars::lam)}});
  EXPECT_EQ(swapped, P(vt, "mu^2*lam + 3*lam"));
}

TEST(Poly, CoefficientsTruncationSplit) {
  auto vt = table();
  Poly p = P(vt, "Delta*lam^2*del + lam*mu - 2*mu^3 + alpha");
  EXPECT_EQ(p.coeff(vars::lam, 2), P(vt, "Delta*del"));
  EXPECT_EQ(p.degree(vars::mu), 3u);
  std::vector<Var> lm{vars::lam, vars::mu};
  EXPECT_EQ(p.truncate(lm, 2), P(vt, "Delta*lam^2*del + lam*mu + alpha"));
  EXPECT_EQ(p.truncate(lm, 1), P(vt, "alpha"));
  auto parts = p.split(lm);
  Poly back(vt);
  for (const auto& [e, c] : parts) back += c * Poly::variable(vt, vars::lam).pow(e[0]) * Poly::variable(vt, vars::mu).pow(e[1]);
  EXPECT_EQ(back, p);
}

TEST(Poly, ExactDivisionAndGcd) {
  auto vt = table();
  Poly a = P(vt, "Delta^2 - 1"), b = P(vt, "Delta + 1");
  auto q = divide_exact(a, b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, P(vt, "Delta - 1"));
  EXPECT_FALSE(divide_exact(P(vt, "Delta^2 + 1"), b).has_value());
  EXPECT_EQ(gcd(P(vt, "(Delta+1)*(alpha-2)*3"), P(vt, "(Delta+1)*(Delta-5)")), P(vt, "Delta + 1"));
  EXPECT_EQ(gcd(P(vt, "2*Delta*alpha"), P(vt, "4*alpha^2")), P(vt, "alpha"));
}

TEST(Poly, FactorialAndBinomial) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(6), 720);
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(3, 5), 0);
}

TEST(Frac, NormalizesAndSolves) {
  auto vt = table();
  Frac f(P(vt, "Delta^2 - 1"), P(vt, "2*Delta + 2"));
  EXPECT_EQ(f.num(), P(vt, "1/2*Delta - 1/2"));
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f.to_poly(), P(vt, "1/2*Delta - 1/2"));

  // Delta * x = 1, x + y = 0
  Frac zero{Poly(vt)}, one{Poly::constant(vt, 1)};
  std::vector<std::vector<Frac>> rows{{Frac(P(vt, "Delta")), zero}, {one, one}};
  auto sol = solve_linear(rows, {one, zero}, 2);
  ASSERT_TRUE(sol.consistent);
  EXPECT_EQ(sol.values[0], Frac(Poly::constant(vt, 1), P(vt, "Delta")));
  EXPECT_EQ(sol.values[1], Frac(Poly::constant(vt, -1), P(vt, "Delta")));
  ASSERT_EQ(sol.side_conditions.size(), 1u);
  EXPECT_EQ(sol.side_conditions[0], P(vt, "Delta"));

  auto bad = solve_linear({{one}, {one}}, {one, zero}, 1);
  EXPECT_FALSE(bad.consistent);
}
