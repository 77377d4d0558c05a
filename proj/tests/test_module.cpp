#include <gtest/gtest.h>

#include "lca/module.hpp"

using namespace lca;

namespace {

VarTablePtr table() { return VarTable::make({"Delta", "alpha", "Delta2", "alpha2"}); }

ModulePtr rank1(const AlgebraPtr& vir, const std::string& entry) {
  return std::make_shared<const ConformalModule>("X", vir, std::vector<std::string>{"x"},
                                                 Table3{{{parse(entry, vir->table())}}});
}

}  // namespace

TEST(Module, VirasoroFamilyIsSymbolicallyAModule) {
  auto vt = table();
  auto vir = virasoro(vt);
  auto m = rank1_virasoro(vir, parse("Delta", vt), parse("alpha", vt));
  EXPECT_EQ(m->action_table()[0][0][0], parse("Delta*lam + del + alpha", vt));
  Report r = check_module(*m);
  EXPECT_TRUE(r.passed) << r.summary();
}

TEST(Module, MutatedActionsFail) {
  auto vt = table();
  auto vir = virasoro(vt);
  for (const char* entry : {"Delta*lam + 2*del + alpha", "Delta*lam + alpha", "Delta*lam + del + lam^2",
                            "Delta*lam + del + alpha*del"})
    EXPECT_FALSE(check_module(*rank1(vir, entry)).passed) << entry;
  EXPECT_TRUE(check_module(*rank1(vir, "0")).passed);
}

TEST(Module, ActionOnDerivatives) {
  auto vt = table();
  auto vir = virasoro(vt);
  auto m = rank1_virasoro(vir, parse("Delta", vt), parse("alpha", vt));
  auto L = AlgElement::generator(vir, "L");
  auto x = ModElement::generator(m, "m");
  Poly lam = Poly::variable(vt, vars::lam), del = Poly::variable(vt, vars::del);
  Poly base = action(L, x, "lam").comps[0];
  EXPECT_EQ(action(L, x.derivative(), "lam").comps[0], (lam + del) * base);
  EXPECT_EQ(action(L.derivative(), x, "lam").comps[0], -lam * base);
}

TEST(Module, RegularAndTrivialModules) {
  auto vt = table();
  auto vir = virasoro(vt);
  EXPECT_TRUE(check_module(*regular_module(vir)).passed);
  EXPECT_TRUE(check_module(*trivial_module(vir, 2)).passed);
}

TEST(Module, ParentAxiomFailureIsNoted) {
  auto vt = table();
  auto bad = std::make_shared<const LieConformalAlgebra>("B", vt, std::vector<std::string>{"L"},
                                                         Table3{{{parse("3*lam + del", vt)}}});
  Report r = check_module(*trivial_module(bad, 1));
  EXPECT_TRUE(r.passed);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes[0].find("fails its own axioms"), std::string::npos);
}

TEST(Module, OrdinaryTensorElements) {
  auto vt = table();
  auto vir = virasoro(vt);
  auto m = rank1_virasoro(vir, parse("Delta", vt), parse("alpha", vt));
  auto n = rank1_virasoro(vir, parse("Delta2", vt), parse("alpha2", vt), "N");
  auto u = ModElement::generator(m, 0), v = ModElement::generator(n, 0);
  Poly del = Poly::variable(vt, vars::del);
  TensorElement x = TensorElement::pure((del + Poly::constant(vt, 1)) * u, v);
  EXPECT_EQ(x.terms().size(), 2u);
  TensorElement d = TensorElement::pure(u, v).total_derivative();
  EXPECT_EQ(d, TensorElement::pure(u.derivative(), v) += TensorElement::pure(u, v.derivative()));

  // L_lam (m (x) n) = (Delta lam + del + alpha) m (x) n + m (x) (Delta2 lam + del + alpha2) n
  auto L = AlgElement::generator(vir, 0);
  TensorElement act = ordinary_tensor_action(L, TensorElement::pure(u, v), "lam");
  TensorElement expect = TensorElement::pure(action(L, u, "lam"), v);
  expect += TensorElement::pure(u, action(L, v, "lam"));
  EXPECT_EQ(act, expect);
  EXPECT_THROW(x.add({0, 0, 0, 0}, del), Error);
}
