#include <gtest/gtest.h>

#include "lca/chom.hpp"
#include "support.hpp"

using namespace lca;
using lca::testkit::Rng;

namespace {

struct Fixture {
  VarTablePtr vt = VarTable::make({"Delta", "alpha", "Delta2", "alpha2"});
  AlgebraPtr vir = virasoro(vt);
  ModulePtr M = rank1_virasoro(vir, p("Delta"), p("alpha"), "M");
  ModulePtr N = rank1_virasoro(vir, p("Delta2"), p("alpha2"), "N");
  AlgElement L = AlgElement::generator(vir, 0);
  Poly p(const std::string& s) const { return parse(s, vt); }
};

ConformalLinearMap random_map(Rng& rng, const ModulePtr& src, const ModulePtr& tgt) {
  const VarTablePtr& vt = src->table();
  ConformalLinearMap phi = ConformalLinearMap::zero(src, tgt);
  std::vector<Var> among = tgt ? std::vector<Var>{vars::mu, vars::del} : std::vector<Var>{vars::mu};
  for (auto& row : phi.matrix)
    for (auto& e : row) e = testkit::random_poly(rng, vt, among, 2, 3);
  return phi;
}

}  // namespace

TEST(Dual, VirasoroFamily) {
  Fixture f;
  DualModule d = dual_module(f.M);
  EXPECT_EQ(d.dual->action_table()[0][0][0], f.p("(1 - Delta)*lam + del - alpha"));
  EXPECT_TRUE(d.verification.passed) << d.verification.summary();
  EXPECT_TRUE(check_module(*d.dual).passed);
  EXPECT_EQ(d.dual->dual_of(), f.M);
}

TEST(Dual, DoubleDualReturnsTheModule) {
  Fixture f;
  DoubleDual dd = double_dual_iso(f.M);
  EXPECT_EQ(dd.double_dual.dual->action_table()[0][0][0], f.p("Delta*lam + del + alpha"));
  EXPECT_TRUE(dd.verification.passed) << dd.verification.summary();

  Rng rng(5);
  auto sum = testkit::conjugated_sum(f.vir, f.p("Delta"), f.p("alpha"), f.p("Delta2"), f.p("alpha2"),
                                     testkit::random_invertible(rng), "S");
  DoubleDual d2 = double_dual_iso(sum);
  EXPECT_TRUE(d2.verification.passed) << d2.verification.summary();
  EXPECT_EQ(d2.double_dual.dual->action_table(), sum->action_table());
}

TEST(Dual, TableMatchesDirectPairingExpansion) {
  // (L_lam m*)_mu(m) = -m*_{mu-lam}(P(lam, del) m) = -P(lam, mu - lam), while
  // the dual table gives Q(lam, -mu); compare for random (non-module) tables.
  Fixture f;
  Rng rng(21);
  Poly lam = Poly::variable(f.vt, vars::lam), mu = Poly::variable(f.vt, vars::mu);
  for (int trial = 0; trial < 20; ++trial) {
    Poly P = testkit::random_poly(rng, f.vt, {vars::lam, vars::del}, 3, 4, {f.vt->require("Delta")});
    auto m = std::make_shared<const ConformalModule>("X", f.vir, std::vector<std::string>{"x"}, Table3{{{P}}});
    DualModule d = dual_module(m);
    Poly Q = d.dual->action_table()[0][0][0];
    EXPECT_EQ(Q.substitute(vars::del, -mu), -P.substitute(vars::del, mu - lam));
    EXPECT_TRUE(d.verification.passed);
  }
}

TEST(Chom, ActionOnTheDualGenerator) {
  Fixture f;
  DualModule d = dual_module(f.M);
  ConformalLinearMap fm = d.functional(ModElement::generator(d.dual, 0));
  ConformalLinearMap act = chom_action(f.L, fm, "lam");
  EXPECT_EQ(act.matrix[0][0], f.p("-(Delta*lam + mu - lam + alpha)"));
}

TEST(Chom, DerivativeOfAMap) {
  Fixture f;
  ConformalLinearMap phi = ConformalLinearMap::identity(f.M);
  EXPECT_EQ(phi.derivative().matrix[0][0], f.p("-mu"));
  auto u = ModElement::generator(f.M, 0);
  EXPECT_EQ(clm_apply(phi, u.derivative(), "mu").comps[0], f.p("mu + del"));
}

TEST(Chom, ModuleLawsOnRandomMaps) {
  Fixture f;
  Rng rng(99);
  auto S = testkit::conjugated_sum(f.vir, f.p("Delta"), f.p("alpha"), f.p("Delta2"), f.p("alpha2"),
                                   testkit::random_invertible(rng), "S");
  std::vector<std::pair<ModulePtr, ModulePtr>> shapes{{f.M, f.N}, {f.M, ModulePtr{}}, {S, f.N}, {f.M, S}, {S, S}};
  int count = 0;
  for (int trial = 0; trial < 5; ++trial)
    for (const auto& [src, tgt] : shapes) {
      ConformalLinearMap phi = random_map(rng, src, tgt);
      Report r = check_chom_laws(f.L, f.L, phi);
      EXPECT_TRUE(r.passed) << r.summary();
      Report r2 = check_chom_laws(f.L.derivative(), f.L, phi);
      EXPECT_TRUE(r2.passed) << r2.summary();
      ++count;
    }
  EXPECT_GE(count, 20);
}

TEST(Hom, DerivativePlusAlphaAndItsDual) {
  Fixture f;
  auto m1 = rank1_virasoro(f.vir, f.p("1"), f.p("alpha"), "M1");
  auto m0 = rank1_virasoro(f.vir, f.p("0"), f.p("alpha"), "M0");
  ModuleHom T{m1, m0, {{f.p("del + alpha")}}};
  EXPECT_TRUE(check_homomorphism(T).passed);
  DualHom d = dual_hom(T);
  EXPECT_EQ(d.hom.matrix[0][0], f.p("-del + alpha"));
  EXPECT_TRUE(d.verification.passed) << d.verification.summary();

  ModuleHom bad{m1, m0, {{f.p("del")}}};
  EXPECT_FALSE(check_homomorphism(bad).passed);
  EXPECT_THROW(dual_hom(bad), Error);

  EXPECT_EQ(compose(T, ModuleHom::identity(m1)), T);
  EXPECT_EQ(compose(ModuleHom::identity(m0), T), T);
  EXPECT_EQ(dual_hom(ModuleHom::identity(f.M)).hom.matrix, ModuleHom::identity(f.M).matrix);
}

TEST(Ident, TensorOfDualAndModuleAsAMap) {
  Fixture f;
  DualModule d = dual_module(f.M);
  auto fm = ModElement::generator(d.dual, 0);
  auto n = ModElement::generator(f.N, 0);
  EXPECT_EQ(ident_41(fm, n).matrix[0][0], f.p("1"));
  EXPECT_EQ(ident_41(fm.derivative(), n).matrix[0][0], f.p("-mu - del"));

  Rng rng(4);
  Poly del = Poly::variable(f.vt, vars::del);
  for (int trial = 0; trial < 10; ++trial) {
    ModElement a{d.dual, {testkit::random_poly(rng, f.vt, {vars::del}, 2, 2)}};
    ModElement b{f.N, {testkit::random_poly(rng, f.vt, {vars::del}, 2, 2)}};
    TensorElement x = TensorElement::pure(a, b);
    EXPECT_EQ(ident_41(x), ident_41(a, b));
    // the identification intertwines the tensor action with the Chom action
    ConformalLinearMap lhs = chom_action(f.L, ident_41(x), "lam");
    ConformalLinearMap rhs = ident_41(ordinary_tensor_action(f.L, x, "lam"));
    EXPECT_EQ(lhs, rhs) << lhs.to_string() << " vs " << rhs.to_string();
  }
}

TEST(Chom, DegenerateCases) {
  Fixture f;
  DualModule d = dual_module(f.M);
  Poly mu = Poly::variable(f.vt, vars::mu), del = Poly::variable(f.vt, vars::del);
  // (m*)_mu(p(del) m) = p(mu)
  Poly p = f.p("3*del^2 - Delta*del + 1");
  ModElement pm{f.M, {p}};
  EXPECT_EQ(pair(ModElement::generator(d.dual, 0), pm, "mu"), p.substitute(vars::del, mu));
  EXPECT_TRUE(chom_action(f.L, ConformalLinearMap::zero(f.M, f.N), "lam").is_zero());

  auto T = trivial_module(f.vir, 2);
  DualModule dt = dual_module(T);
  EXPECT_EQ(dt.dual->action_table(), T->action_table());
  EXPECT_TRUE(double_dual_iso(T).verification.passed);

  ModuleHom zero{f.M, f.M, {{Poly(f.vt)}}};
  EXPECT_TRUE(dual_hom(zero).hom.matrix[0][0].is_zero());
  ModuleHom scalar{f.M, f.M, {{f.p("5/2")}}};
  EXPECT_EQ(dual_hom(scalar).hom.matrix[0][0], f.p("5/2"));

  EXPECT_TRUE(ident_41(ModElement::generator(d.dual, 0), ModElement::zero(f.N)).is_zero());
  // (m* (x) n)_lam(p(del) m) = p(lam + del) n
  auto phi = ident_41(ModElement::generator(d.dual, 0), ModElement::generator(f.N, 0));
  EXPECT_EQ(clm_apply(phi, pm, "lam").comps[0], p.substitute(vars::del, Poly::variable(f.vt, vars::lam) + del));
}

TEST(Dual, RankTwoTableMatchesDirectPairingExpansion) {
  Fixture f;
  Rng rng(22);
  Poly lam = Poly::variable(f.vt, vars::lam), mu = Poly::variable(f.vt, vars::mu);
  for (int trial = 0; trial < 10; ++trial) {
    Table3 t(1, std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(f.vt))));
    for (auto& row : t[0])
      for (auto& e : row) e = testkit::random_poly(rng, f.vt, {vars::lam, vars::del}, 2, 3);
    auto m = std::make_shared<const ConformalModule>("X", f.vir, std::vector<std::string>{"x1", "x2"}, t);
    DualModule d = dual_module(m);
    // (L_lam x_k*)_mu(x_j) = -(x_k*)_{mu-lam}(sum_l P[j][l] x_l) = -P[j][k](lam, mu - lam)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j)
        EXPECT_EQ(d.dual->action_table()[0][k][j].substitute(vars::del, -mu),
                  -t[0][j][k].substitute(vars::del, mu - lam));
  }
}
