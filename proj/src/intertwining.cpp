#include "lca/intertwining.hpp"

namespace lca {

IntertwiningOperator::IntertwiningOperator(std::string name_, ModulePtr W_, ModulePtr M_, ModulePtr N_, Table3 table_)
    : name(std::move(name_)), W(std::move(W_)), M(std::move(M_)), N(std::move(N_)), table(std::move(table_)) {
  if (W->algebra() != M->algebra() || W->algebra() != N->algebra())
    throw Error("operator " + name + ": modules over different algebras");
  bool ok = table.size() == M->rank();
  for (const auto& plane : table) {
    ok = ok && plane.size() == N->rank();
    for (const auto& row : plane) ok = ok && row.size() == W->rank();
  }
  if (!ok) throw Error("operator " + name + " has a table of the wrong shape");
  for (auto& plane : table)
    for (auto& row : plane)
      for (auto& p : row)
        if (!p.table()) p = Poly(W->table());
  detail::check_table_vars(table, {vars::gam, vars::del}, "operator " + name);
}

IntertwiningOperator IntertwiningOperator::zero(std::string name, ModulePtr W, ModulePtr M, ModulePtr N) {
  Table3 t(M->rank(), std::vector<std::vector<Poly>>(N->rank(), detail::zeros(W->table(), W->rank())));
  return {std::move(name), std::move(W), std::move(M), std::move(N), std::move(t)};
}

std::string IntertwiningOperator::type_string() const {
  return "(" + W->name() + "; " + M->name() + ", " + N->name() + ")";
}

ModElement iop_apply_at(const IntertwiningOperator& op, const ModElement& u, const ModElement& v, const Poly& shift) {
  if (u.parent != op.M || v.parent != op.N) throw Error("arguments do not match the type of " + op.name);
  return {op.W, detail::sesquilinear(u.comps, v.comps, op.table, vars::gam, shift, op.W->rank())};
}

ModElement iop_apply(const IntertwiningOperator& op, const ModElement& u, const ModElement& v, std::string_view var) {
  Var x = detail::fresh_variable(op.vars(), var, {&u.comps, &v.comps});
  return iop_apply_at(op, u, v, Poly::variable(op.vars(), x));
}

Report check_iop(const IntertwiningOperator& op) {
  Report rep{.check = "iop-jacobi", .subject = op.name + " " + op.type_string()};
  const auto& alg = op.W->algebra();
  Poly shift = Poly::variable(op.vars(), vars::lam) + Poly::variable(op.vars(), vars::gam);
  for (std::size_t g = 0; g < alg->rank(); ++g) {
    auto a = AlgElement::generator(alg, g);
    for (std::size_t i = 0; i < op.M->rank(); ++i) {
      auto ui = ModElement::generator(op.M, i);
      for (std::size_t j = 0; j < op.N->rank(); ++j) {
        auto vj = ModElement::generator(op.N, j);
        ModElement lhs = action(a, iop_apply(op, ui, vj, "gam"), "lam");
        ModElement first = iop_apply_at(op, action(a, ui, "lam"), vj, shift);
        ModElement second = iop_apply(op, ui, action(a, vj, "lam"), "gam");
        ModElement res = lhs - first - second;
        record_if_nonzero(rep, "(" + alg->gens()[g] + ", " + op.M->gens()[i] + ", " + op.N->gens()[j] + ")",
                          std::move(res.comps), op.W->gens());
      }
    }
  }
  return rep;
}

IntertwiningOperator from_module_action(const ModulePtr& m) {
  Poly gam = Poly::variable(m->table(), vars::gam);
  Table3 t = m->action_table();
  for (auto& plane : t)
    for (auto& row : plane)
      for (auto& p : row) p = p.substitute(vars::lam, gam);
  return {"action(" + m->name() + ")", m, regular_module(m->algebra()), m, std::move(t)};
}

IntertwiningOperator transpose(const IntertwiningOperator& op) {
  const VarTablePtr& vt = op.vars();
  Poly flip = -(Poly::variable(vt, vars::gam) + Poly::variable(vt, vars::del));
  IntertwiningOperator out = IntertwiningOperator::zero(op.name + "^t", op.W, op.N, op.M);
  for (std::size_t i = 0; i < op.M->rank(); ++i)
    for (std::size_t j = 0; j < op.N->rank(); ++j)
      for (std::size_t k = 0; k < op.W->rank(); ++k) out.table[j][i][k] = op.table[i][j][k].substitute(vars::gam, flip);
  return out;
}

AdjointResult adjoint(const IntertwiningOperator& op, const DualModule& n_dual, const DualModule& w_dual) {
  if (n_dual.base != op.N || w_dual.base != op.W) throw Error("dual modules do not match " + op.name);
  const VarTablePtr& vt = op.vars();
  Poly gam = Poly::variable(vt, vars::gam), d = Poly::variable(vt, vars::del);
  IntertwiningOperator adj = IntertwiningOperator::zero(op.name + "^*", n_dual.dual, op.M, w_dual.dual);
  for (std::size_t i = 0; i < op.M->rank(); ++i)
    for (std::size_t j = 0; j < op.N->rank(); ++j)
      for (std::size_t k = 0; k < op.W->rank(); ++k)
        adj.table[i][k][j] = -op.table[i][j][k].substitute(vars::del, -d - gam);

  AdjointResult out{adj, n_dual, w_dual, {.check = "adjoint", .subject = op.name + " " + op.type_string()}};
  Poly lam = Poly::variable(vt, vars::lam), mu = Poly::variable(vt, vars::mu);
  for (std::size_t i = 0; i < op.M->rank(); ++i) {
    auto ui = ModElement::generator(op.M, i);
    for (std::size_t k = 0; k < op.W->rank(); ++k) {
      auto fk = ModElement::generator(w_dual.dual, k);
      ModElement image = iop_apply(adj, ui, fk, "lam");
      for (std::size_t j = 0; j < op.N->rank(); ++j) {
        auto vj = ModElement::generator(op.N, j);
        Poly res = pair(image, vj, "mu") + pair_at(fk, iop_apply(op, ui, vj, "lam"), mu - lam);
        record_if_nonzero(out.verification,
                          "(" + op.M->gens()[i] + ", " + w_dual.dual->gens()[k] + ", " + op.N->gens()[j] + ")", {res},
                          {});
      }
    }
  }
  return out;
}

AdjointResult adjoint(const IntertwiningOperator& op) { return adjoint(op, dual_module(op.N), dual_module(op.W)); }

std::vector<ConformalLinearMap> to_hom_psi(const IntertwiningOperator& op) {
  Poly mu = Poly::variable(op.vars(), vars::mu);
  std::vector<ConformalLinearMap> out;
  for (std::size_t i = 0; i < op.M->rank(); ++i) {
    ConformalLinearMap phi = ConformalLinearMap::zero(op.N, op.W);
    for (std::size_t j = 0; j < op.N->rank(); ++j)
      for (std::size_t k = 0; k < op.W->rank(); ++k) phi.matrix[k][j] = op.table[i][j][k].substitute(vars::gam, mu);
    out.push_back(std::move(phi));
  }
  return out;
}

ConformalLinearMap psi_of(const IntertwiningOperator& op, const ModElement& u) {
  if (u.parent != op.M) throw Error("element is not in the first module of " + op.name);
  Poly mu = Poly::variable(op.vars(), vars::mu);
  auto psi = to_hom_psi(op);
  ConformalLinearMap out = ConformalLinearMap::zero(op.N, op.W);
  for (std::size_t i = 0; i < u.comps.size(); ++i)
    if (!u.comps[i].is_zero()) out += u.comps[i].substitute(vars::del, -mu) * psi[i];
  return out;
}

Report verify_psi(const IntertwiningOperator& op) {
  Report rep{.check = "psi-correspondence", .subject = op.name + " " + op.type_string()};
  const auto& alg = op.W->algebra();
  for (std::size_t i = 0; i < op.M->rank(); ++i) {
    auto ui = ModElement::generator(op.M, i);
    ConformalLinearMap psi_u = psi_of(op, ui);
    ConformalLinearMap psi_du = psi_of(op, ui.derivative());
    for (std::size_t j = 0; j < op.N->rank(); ++j) {
      auto vj = ModElement::generator(op.N, j);
      for (const auto& v : {vj, vj.derivative()}) {
        ModElement res = clm_apply(psi_u, v, "mu") - iop_apply(op, ui, v, "mu");
        record_if_nonzero(rep, "I_mu(" + op.M->gens()[i] + ", .) vs psi", std::move(res.comps), op.W->gens());
        res = clm_apply(psi_du, v, "mu") - iop_apply(op, ui.derivative(), v, "mu");
        record_if_nonzero(rep, "I_mu(del " + op.M->gens()[i] + ", .) vs psi", std::move(res.comps), op.W->gens());
      }
    }
    ConformalLinearMap dres = psi_du - psi_u.derivative();
    std::vector<Poly> flat;
    for (const auto& row : dres.matrix) flat.insert(flat.end(), row.begin(), row.end());
    record_if_nonzero(rep, "psi(del " + op.M->gens()[i] + ") - del psi", std::move(flat), {});
    for (std::size_t g = 0; g < alg->rank(); ++g) {
      auto a = AlgElement::generator(alg, g);
      ConformalLinearMap res = psi_of(op, action(a, ui, "lam")) - chom_action(a, psi_u, "lam");
      std::vector<Poly> comps;
      for (const auto& row : res.matrix) comps.insert(comps.end(), row.begin(), row.end());
      record_if_nonzero(rep, "psi(" + alg->gens()[g] + "_lam " + op.M->gens()[i] + ") - " + alg->gens()[g] + "_lam psi",
                        std::move(comps), {});
    }
  }
  return rep;
}

bool same_presentation(const ConformalModule& a, const ConformalModule& b) {
  return a.algebra() == b.algebra() && a.rank() == b.rank() && a.action_table() == b.action_table();
}

IntertwiningOperator retype(const IntertwiningOperator& op, ModulePtr W, ModulePtr M, ModulePtr N) {
  if (!same_presentation(*op.W, *W) || !same_presentation(*op.M, *M) || !same_presentation(*op.N, *N))
    throw Error("retype of " + op.name + ": presentations differ");
  return {op.name, std::move(W), std::move(M), std::move(N), op.table};
}

}  // namespace lca
