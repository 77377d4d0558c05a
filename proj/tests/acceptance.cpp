// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "lca/workspace.hpp"
#include "support.hpp"

using namespace lca;
using Clock = std::chrono::steady_clock;

namespace {

// wall-clock limits in seconds; 0 means untimed
constexpr double kLimitAlgebra = 1.0;
constexpr double kLimitModule = 1.0;
constexpr double kLimitSecond = 5.0;
constexpr double kLimitFirst = 5.0;
constexpr int kRandomOperators = 20;
constexpr int kRandomMaps = 20;
constexpr unsigned kF0Bound = 3;

int failures = 0;

void criterion(int id, const std::string& title, double limit, const std::function<std::string()>& body) {
  auto start = Clock::now();
  std::string problem;
  try {
    problem = body();
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (problem.empty() && limit > 0 && secs >= limit) problem = "took " + std::to_string(secs) + " s";
  bool ok = problem.empty();
  failures += !ok;
  std::printf("%s  %2d  %-52s %8.3f s%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs, ok ? "" : "  ",
              problem.c_str());
}

struct Env {
  VarTablePtr vt;
  AlgebraPtr vir;
  ModulePtr M, N;
  Poly p(const std::string& s) const { return parse(s, vt); }
};

Env make_env(std::vector<std::string> extra = {}) {
  std::vector<std::string> names{"Delta", "alpha", "Delta2", "alpha2"};
  names.insert(names.end(), extra.begin(), extra.end());
  Env e;
  e.vt = VarTable::make(names);
  e.vir = virasoro(e.vt);
  e.M = rank1_virasoro(e.vir, e.p("Delta"), e.p("alpha"), "M");
  e.N = rank1_virasoro(e.vir, e.p("Delta2"), e.p("alpha2"), "N");
  return e;
}

bool any_nonzero(const Report& r) {
  for (const auto& res : r.residuals)
    for (const auto& c : res.components)
      if (!c.is_zero()) return true;
  return false;
}

IntertwiningOperator map_table(IntertwiningOperator op, const std::function<Poly(const Poly&)>& f) {
  for (auto& plane : op.table)
    for (auto& row : plane)
      for (auto& e : row) e = f(e);
  return op;
}

std::string c1() {
  Workspace ws = Workspace::builtin();
  CommandResult r = cmd_check_algebra(ws, "Vir");
  if (r.status != 0) return "check-algebra Vir failed";
  for (const auto& rep : r.reports)
    if (!rep.residuals.empty()) return "nonzero residual on Vir";
  const VarTablePtr& vt = ws.table();
  int caught = 0;
  const char* mutations[] = {"3*lam + del", "2*lam + 2*del", "2*lam + del + 1",
                             "lam + del",   "2*lam",         "2*lam + del + lam^2"};
  for (const char* m : mutations) {
    LieConformalAlgebra a("V", vt, {"L"}, Table3{{{parse(m, vt)}}});
    Report s = check_skew(a), j = check_jacobi(a);
    if (!(s.passed && j.passed) && (any_nonzero(s) || any_nonzero(j))) ++caught;
  }
  return caught == 6 ? "" : "only " + std::to_string(caught) + " of 6 mutations caught";
}

std::string c2() {
  Workspace ws = Workspace::builtin();
  CommandResult r = cmd_check_module(ws, "M(Delta,alpha)");
  return r.status == 0 ? "" : "check-module M(Delta,alpha) failed";
}

std::string c3() {
  Env e = make_env();
  DualModule d = dual_module(e.M);
  if (d.dual->action_table()[0][0][0] != e.p("(1 - Delta)*lam + del - alpha")) return "dual table differs";
  if (!d.verification.passed) return "pairing replay failed";
  DoubleDual dd = double_dual_iso(e.M);
  if (dd.double_dual.dual->action_table()[0][0][0] != e.p("Delta*lam + del + alpha")) return "double dual differs";
  return dd.verification.passed ? "" : "double dual iso failed";
}

std::string c4() {
  Env e = make_env();
  TensorSecond r = tensor_second(e.M, e.N);
  if (!r.module || !r.report.passed) return "construction failed";
  if (r.candidate.module->action_table()[0][0][0] != e.p("(2 - Delta - Delta2)*lam + del - alpha - alpha2"))
    return "candidate table differs";
  if (r.module->rank() != 1 ||
      r.module->action_table()[0][0][0] != e.p("(Delta + Delta2 - 1)*lam + del + alpha + alpha2"))
    return "result table differs";
  return check_iop(*r.canonical).passed ? "" : "canonical operator fails check_iop";
}

std::string c5() {
  Env e = make_env();
  auto T = TruncationTable::uniform(*e.M, *e.N, 1);
  auto key = [&](std::uint32_t n, std::uint32_t a, std::uint32_t b) { return StringElement::basis(e.M, e.N, {n, a, 0, b, 0}); };
  auto base = [&](std::uint32_t s, const Rational& c) {
    StringElement x(e.M, e.N, true);
    x.add({0, 0, 0, s, 0}, Poly::constant(e.vt, c));
    return x;
  };
  for (std::uint32_t n = 1; n <= 6; ++n) {
    if (!normalize(key(n, 0, 0), T).is_zero()) return "(t1) fails at n=" + std::to_string(n);
    if (normalize(key(n, 1, 0), T) != Poly::constant(e.vt, -static_cast<long>(n)) * normalize(key(n - 1, 0, 0), T))
      return "(t2) fails at n=" + std::to_string(n);
  }
  for (std::uint32_t k = 0; k <= 5; ++k)
    for (std::uint32_t l = 0; l <= 5; ++l) {
      StringElement want = k == l ? base(0, Rational(k % 2 ? -1 : 1) * factorial(k)) : StringElement(e.M, e.N, true);
      if (normalize(key(k, l, 0), T) != want) return "t^k del^l identity fails at " + std::to_string(k) + "," + std::to_string(l);
    }
  for (std::uint32_t n = 0; n <= 4; ++n)
    for (std::uint32_t i = 0; i <= 3; ++i) {
      if (normalize(key(n, 0, n + i), T) != base(i, Rational(factorial(n + i)) / factorial(i)))
        return "right-slot identity fails at " + std::to_string(n) + "," + std::to_string(i);
      for (std::uint32_t l = 0; l < n; ++l)
        if (!normalize(key(n, 0, l), T).is_zero()) return "t^n (x) m (x) del^l m' is not zero for n > l";
    }
  InducedModule r = induced_module(e.M, e.N, T);
  if (!r.module || !r.report.passed) return "induced module failed";
  if (r.module->action_table()[0][0][0] != e.p("(Delta + Delta2 - 1)*lam + del + alpha + alpha2"))
    return "action table differs";
  return "";
}

std::string c6() {
  Env e = make_env();
  Report r = cross_check(e.M, e.N, TruncationTable::uniform(*e.M, *e.N, 1));
  return r.passed ? "" : r.summary();
}

std::string c7() {
  Env e = make_env(testkit::unknown_names(64));
  auto act = from_module_action(e.M);
  if (!check_iop(act).passed) return "module action fails check_iop";
  auto gam = Poly::variable(e.vt, vars::gam), del = Poly::variable(e.vt, vars::del);
  if (check_iop(map_table(transpose(act), [&](const Poly& x) { return x.substitute(vars::gam, -gam); })).passed)
    return "reflected transpose of the action not caught";
  IntertwiningOperator wrong_action("A", e.M, regular_module(e.vir), e.M, Table3{{{e.p("Delta*gam + 2*del + alpha")}}});
  if (check_iop(wrong_action).passed) return "mutated action operator not caught";

  testkit::Rng rng(7);
  int valid = 0, attempts = 0;
  while (valid < kRandomOperators && attempts++ < 400) {
    Rational a = rng.rational(4, 2), b = rng.rational(4, 2), x = rng.rational(3, 1), y = rng.rational(3, 1);
    auto num = [&](const Rational& q) { return Poly::constant(e.vt, q); };
    ModulePtr M = rank1_virasoro(e.vir, num(a), num(x), "A"), N = rank1_virasoro(e.vir, num(b), num(y), "B");
    ModulePtr W = rank1_virasoro(e.vir, num(a + b - 1), num(x + y), "C");
    switch (rng.uniform(0, 2)) {
      case 1:
        M = testkit::conjugated_sum(e.vir, num(a), num(x), num(rng.rational(4, 2)), num(rng.rational(3, 1)),
                                    testkit::random_invertible(rng), "S");
        break;
      case 2:
        M = rank1_virasoro(e.vir, num(2), num(0), "A");
        W = rank1_virasoro(e.vir, num(b), num(y), "C");
        break;
    }
    auto op = testkit::random_valid_operator(rng, W, M, N, 2);
    if (!op) continue;
    ++valid;
    auto t = transpose(*op);
    if (!check_iop(t).passed) return "transpose breaks check_iop";
    if (!(transpose(t) == *op)) return "transpose is not an involution";
    auto adj = adjoint(*op);
    if (!check_iop(adj.op).passed || !adj.verification.passed) return "adjoint breaks check_iop";
    // mutations: shifted transpose is no involution, sign-flipped adjoint breaks the pairing
    auto shift = [&](const Poly& p) { return p.substitute(vars::gam, gam + del); };
    bool depends_on_gam = false;
    for (const auto& plane : op->table)
      for (const auto& row : plane)
        for (const auto& p : row) depends_on_gam = depends_on_gam || p.degree(vars::gam) > 0;
    if (depends_on_gam && map_table(map_table(*op, shift), shift) == *op) return "shifted transpose not caught";
    auto flipped = map_table(adj.op, [](const Poly& p) { return -p; });
    auto u = ModElement::generator(op->M, 0), v = ModElement::generator(op->N, 0), f = ModElement::generator(flipped.N, 0);
    Poly mu = Poly::variable(e.vt, vars::mu), lam = Poly::variable(e.vt, vars::lam);
    Poly lhs = pair_at(iop_apply(flipped, u, f, "lam"), v, mu);
    Poly rhs = -pair_at(f, iop_apply(*op, u, v, "lam"), mu - lam);
    if (lhs == rhs && !rhs.is_zero()) return "sign-flipped adjoint not caught";
  }
  return valid >= kRandomOperators ? "" : "only " + std::to_string(valid) + " random operators";
}

std::string c8() {
  Env e = make_env();
  testkit::Rng rng(8);
  auto S = testkit::conjugated_sum(e.vir, e.p("Delta"), e.p("alpha"), e.p("Delta2"), e.p("alpha2"),
                                   testkit::random_invertible(rng), "S");
  std::vector<std::pair<ModulePtr, ModulePtr>> shapes{{e.M, e.N}, {e.M, ModulePtr{}}, {S, e.N}, {e.M, S}, {S, S}};
  auto L = AlgElement::generator(e.vir, 0);
  int checked = 0;
  while (checked < kRandomMaps)
    for (const auto& [src, tgt] : shapes) {
      ConformalLinearMap phi = ConformalLinearMap::zero(src, tgt);
      std::vector<Var> among = tgt ? std::vector<Var>{vars::mu, vars::del} : std::vector<Var>{vars::mu};
      for (auto& row : phi.matrix)
        for (auto& x : row) x = testkit::random_poly(rng, e.vt, among, 2, 3);
      Report r = check_chom_laws(L, L, phi);
      if (!r.passed) return r.summary();
      ++checked;
    }
  return "";
}

std::string c9() {
  Env e = make_env();
  Report r = check_f0_module(e.M, e.N, kF0Bound);
  return r.passed ? "" : r.summary();
}

std::string c10() {
  Env e = make_env();
  Report a = swap_check_first(e.M, e.N, TruncationTable::uniform(*e.M, *e.N, 1));
  if (!a.passed) return a.summary();
  Report b = swap_check_second(e.M, e.N);
  return b.passed ? "" : b.summary();
}

}  // namespace

int main() {
  criterion(1, "Virasoro axioms and six mutations", kLimitAlgebra, c1);
  criterion(2, "module family M(Delta, alpha)", kLimitModule, c2);
  criterion(3, "conformal dual and double dual", 0, c3);
  criterion(4, "tensor product, second construction", kLimitSecond, c4);
  criterion(5, "tensor product, first construction", kLimitFirst, c5);
  criterion(6, "cross-construction equivalence", 0, c6);
  criterion(7, "intertwining operators: transpose and adjoint", 0, c7);
  criterion(8, "Chom module law on random maps", 0, c8);
  criterion(9, "F0 module law to degree 3", 0, c9);
  criterion(10, "commutativity of both constructions", 0, c10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
