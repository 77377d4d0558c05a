#include "lca/chom.hpp"

#include <algorithm>

namespace lca {

namespace {

Poly var_poly(const VarTablePtr& vt, Var v) { return Poly::variable(vt, v); }

std::vector<Poly> flatten(const Matrix& m) {
  std::vector<Poly> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- conformal linear maps

ConformalLinearMap ConformalLinearMap::zero(const ModulePtr& source, const ModulePtr& target) {
  std::size_t rows = target ? target->rank() : 1;
  return {source, target, Matrix(rows, detail::zeros(source->table(), source->rank()))};
}

ConformalLinearMap ConformalLinearMap::identity(const ModulePtr& m) {
  ConformalLinearMap id = zero(m, m);
  for (std::size_t i = 0; i < m->rank(); ++i) id.matrix[i][i] = Poly::constant(m->table(), 1);
  return id;
}

bool ConformalLinearMap::is_zero() const {
  for (const auto& row : matrix)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

ConformalLinearMap ConformalLinearMap::derivative() const {
  ConformalLinearMap r = *this;
  Poly mu = var_poly(source->table(), vars::mu);
  for (auto& row : r.matrix)
    for (auto& p : row) p = -(mu * p);
  return r;
}

ConformalLinearMap& ConformalLinearMap::operator+=(const ConformalLinearMap& o) {
  if (source != o.source || target != o.target) throw Error("maps between different modules");
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = 0; j < matrix[i].size(); ++j) matrix[i][j] += o.matrix[i][j];
  return *this;
}

ConformalLinearMap operator-(ConformalLinearMap a, const ConformalLinearMap& b) {
  if (a.source != b.source || a.target != b.target) throw Error("maps between different modules");
  for (std::size_t i = 0; i < a.matrix.size(); ++i)
    for (std::size_t j = 0; j < a.matrix[i].size(); ++j) a.matrix[i][j] -= b.matrix[i][j];
  return a;
}

ConformalLinearMap operator*(const Poly& c, ConformalLinearMap a) {
  for (auto& row : a.matrix)
    for (auto& p : row) p = c * p;
  return a;
}

std::string ConformalLinearMap::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < source->rank(); ++j) {
    if (!out.empty()) out += "; ";
    out += source->gens()[j] + " -> ";
    std::string col;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      if (matrix[i][j].is_zero()) continue;
      if (!col.empty()) col += " + ";
      col += "(" + matrix[i][j].to_string() + ")" + (target ? "*" + target->gens()[i] : std::string());
    }
    out += col.empty() ? "0" : col;
  }
  return out;
}

std::vector<Poly> clm_apply_at(const ConformalLinearMap& phi, const ModElement& u, const Poly& shift) {
  if (u.parent != phi.source) throw Error("element is not in the source of the map");
  const VarTablePtr& vt = u.parent->table();
  Poly d = var_poly(vt, vars::del);
  std::vector<Poly> out = detail::zeros(vt, phi.target_rank());
  for (std::size_t j = 0; j < u.comps.size(); ++j) {
    if (u.comps[j].is_zero()) continue;
    Poly pj = u.comps[j].substitute(vars::del, shift + d);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Poly& entry = phi.matrix[i][j];
      if (entry.is_zero()) continue;
      out[i] += pj * entry.substitute(vars::mu, shift);
    }
  }
  if (!phi.target)
    for (auto& p : out) p = p.substitute(vars::del, Poly(vt));
  return out;
}

ModElement clm_apply(const ConformalLinearMap& phi, const ModElement& u, std::string_view var) {
  if (!phi.target) throw Error("clm_apply on a scalar-valued map; use evaluate_functional");
  auto entries = flatten(phi.matrix);
  Var v = u.parent->table()->require(var);
  if (!(v == vars::mu)) v = detail::fresh_variable(u.parent->table(), var, {&u.comps, &entries});
  return {phi.target, clm_apply_at(phi, u, var_poly(u.parent->table(), v))};
}

Poly evaluate_functional(const ConformalLinearMap& phi, const ModElement& u, std::string_view var) {
  if (phi.target) throw Error("evaluate_functional needs a scalar-valued map");
  Var v = u.parent->table()->require(var);
  return clm_apply_at(phi, u, var_poly(u.parent->table(), v)).front();
}

ConformalLinearMap chom_action_at(const AlgElement& a, const ConformalLinearMap& phi, const Poly& shift) {
  const auto& src = phi.source;
  if (src->algebra() != a.parent || (phi.target && phi.target->algebra() != a.parent))
    throw Error("map is not between modules over this algebra");
  const VarTablePtr& vt = src->table();
  Poly mu = var_poly(vt, vars::mu);
  Poly inner = mu - shift;
  ConformalLinearMap out = ConformalLinearMap::zero(src, phi.target);
  for (std::size_t j = 0; j < src->rank(); ++j) {
    if (phi.target) {
      ModElement col = ModElement::zero(phi.target);
      for (std::size_t i = 0; i < phi.target->rank(); ++i) col.comps[i] = phi.matrix[i][j].substitute(vars::mu, inner);
      ModElement first = action_at(a, col, shift);
      for (std::size_t k = 0; k < phi.target->rank(); ++k) out.matrix[k][j] += first.comps[k];
    }
    ModElement au = action_at(a, ModElement::generator(src, j), shift);
    auto second = clm_apply_at(phi, au, inner);
    for (std::size_t k = 0; k < second.size(); ++k) out.matrix[k][j] -= second[k];
  }
  return out;
}

ConformalLinearMap chom_action(const AlgElement& a, const ConformalLinearMap& phi, std::string_view var) {
  auto entries = flatten(phi.matrix);
  Var v = detail::fresh_variable(phi.source->table(), var, {&a.comps, &entries});
  if (v == vars::mu) throw Error("mu is the map variable and cannot act");
  return chom_action_at(a, phi, var_poly(phi.source->table(), v));
}

Report check_chom_laws(const AlgElement& a, const AlgElement& b, const ConformalLinearMap& phi) {
  Report rep{.check = "chom-module-laws", .subject = phi.to_string()};
  const VarTablePtr& vt = phi.source->table();
  Poly lam = var_poly(vt, vars::lam), gam = var_poly(vt, vars::gam), mu = var_poly(vt, vars::mu);
  ConformalLinearMap base = chom_action(a, phi, "lam");

  ConformalLinearMap s1 = chom_action(a.derivative(), phi, "lam") + lam * base;
  record_if_nonzero(rep, "(del a)_lam phi + lam a_lam phi", flatten(s1.matrix), {});
  ConformalLinearMap s2 = chom_action(a, phi.derivative(), "lam") - (lam - mu) * base;
  record_if_nonzero(rep, "a_lam (del phi) - (lam + del) a_lam phi", flatten(s2.matrix), {});

  ConformalLinearMap lhs = chom_action(a, chom_action(b, phi, "gam"), "lam");
  ConformalLinearMap swapped = chom_action(b, base, "gam");
  ConformalLinearMap mid = chom_action_at(bracket(a, b, "lam"), phi, lam + gam);
  ConformalLinearMap res = lhs - swapped - mid;
  record_if_nonzero(rep, "jacobi", flatten(res.matrix), {});
  return rep;
}

// ---------------------------------------------------------------- duals

Poly pair_at(const ModElement& f, const ModElement& u, const Poly& shift) {
  if (f.parent->dual_of() != u.parent) throw Error("pairing between unrelated modules");
  Poly out(u.parent->table());
  for (std::size_t l = 0; l < u.comps.size(); ++l) {
    if (f.comps[l].is_zero() || u.comps[l].is_zero()) continue;
    out += f.comps[l].substitute(vars::del, -shift) * u.comps[l].substitute(vars::del, shift);
  }
  return out;
}

Poly pair(const ModElement& f, const ModElement& u, std::string_view var) {
  return pair_at(f, u, var_poly(u.parent->table(), u.parent->table()->require(var)));
}

ConformalLinearMap DualModule::functional(const ModElement& f) const {
  if (f.parent != dual) throw Error("element is not in this dual module");
  ConformalLinearMap phi = ConformalLinearMap::zero(base, nullptr);
  Poly mu = var_poly(base->table(), vars::mu);
  for (std::size_t l = 0; l < f.comps.size(); ++l) phi.matrix[0][l] = f.comps[l].substitute(vars::del, -mu);
  return phi;
}

DualModule dual_module(const ModulePtr& m) {
  const VarTablePtr& vt = m->table();
  Poly lam = var_poly(vt, vars::lam), d = var_poly(vt, vars::del);
  const auto& p = m->action_table();
  std::size_t n = m->rank();
  Table3 q(p.size(), std::vector<std::vector<Poly>>(n, detail::zeros(vt, n)));
  for (std::size_t g = 0; g < p.size(); ++g)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) q[g][k][j] = -p[g][j][k].substitute(vars::del, -lam - d);
  std::vector<std::string> gens;
  for (const auto& s : m->gens()) gens.push_back(s + "*");
  DualModule out{m, std::make_shared<const ConformalModule>(m->name() + "*", m->algebra(), gens, std::move(q), m), {}};

  Report& rep = out.verification;
  rep.check = "dual-pairing";
  rep.subject = m->name();
  const auto& alg = m->algebra();
  for (std::size_t g = 0; g < alg->rank(); ++g) {
    auto gen = AlgElement::generator(alg, g);
    for (std::size_t k = 0; k < n; ++k) {
      auto fk = ModElement::generator(out.dual, k);
      ConformalLinearMap acted = chom_action(gen, out.functional(fk), "lam");
      ModElement image = action(gen, fk, "lam");
      for (std::size_t j = 0; j < n; ++j) {
        Poly res = acted.matrix[0][j] - pair(image, ModElement::generator(m, j), "mu");
        record_if_nonzero(rep, "(" + alg->gens()[g] + "_lam " + gens[k] + ")_mu(" + m->gens()[j] + ")", {res}, {});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- homomorphisms

ModuleHom ModuleHom::identity(const ModulePtr& m) {
  ModuleHom h{m, m, Matrix(m->rank(), detail::zeros(m->table(), m->rank()))};
  for (std::size_t i = 0; i < m->rank(); ++i) h.matrix[i][i] = Poly::constant(m->table(), 1);
  return h;
}

ModElement ModuleHom::apply(const ModElement& u) const {
  if (u.parent != source) throw Error("element is not in the source of the homomorphism");
  ModElement out = ModElement::zero(target);
  for (std::size_t j = 0; j < u.comps.size(); ++j)
    for (std::size_t i = 0; i < target->rank(); ++i) out.comps[i] += u.comps[j] * matrix[i][j];
  return out;
}

Report check_homomorphism(const ModuleHom& t) {
  Report rep{.check = "homomorphism", .subject = t.source->name() + " -> " + t.target->name()};
  for (const auto& row : t.matrix)
    for (const auto& p : row)
      for (Var v : p.variables())
        if (!p.table()->is_param(v) && !(v == vars::del))
          rep.fail_note("entry " + p.to_string() + " is not a polynomial in del");
  if (!rep.passed) return rep;
  if (t.source->algebra() != t.target->algebra()) {
    rep.fail_note("modules over different algebras");
    return rep;
  }
  const auto& alg = t.source->algebra();
  for (std::size_t g = 0; g < alg->rank(); ++g) {
    auto gen = AlgElement::generator(alg, g);
    for (std::size_t j = 0; j < t.source->rank(); ++j) {
      auto uj = ModElement::generator(t.source, j);
      ModElement res = t.apply(action(gen, uj, "lam")) - action(gen, t.apply(uj), "lam");
      record_if_nonzero(rep, "T(" + alg->gens()[g] + "_lam " + t.source->gens()[j] + ")", std::move(res.comps),
                        t.target->gens());
    }
  }
  return rep;
}

ModuleHom compose(const ModuleHom& s, const ModuleHom& t) {
  if (t.target != s.source) throw Error("homomorphisms are not composable");
  ModuleHom r{t.source, s.target, Matrix(s.target->rank(), detail::zeros(t.source->table(), t.source->rank()))};
  for (std::size_t k = 0; k < s.target->rank(); ++k)
    for (std::size_t j = 0; j < t.source->rank(); ++j)
      for (std::size_t i = 0; i < t.target->rank(); ++i) r.matrix[k][j] += s.matrix[k][i] * t.matrix[i][j];
  return r;
}

DualHom dual_hom(const ModuleHom& t, const DualModule& source_dual, const DualModule& target_dual) {
  if (source_dual.base != t.source || target_dual.base != t.target)
    throw Error("dual modules do not match the homomorphism");
  Report hom = check_homomorphism(t);
  if (!hom.passed) throw Error("not a homomorphism: " + hom.summary());
  const VarTablePtr& vt = t.source->table();
  Poly d = var_poly(vt, vars::del);
  DualHom out{{target_dual.dual, source_dual.dual,
               Matrix(t.source->rank(), detail::zeros(vt, t.target->rank()))},
              {.check = "dual-homomorphism", .subject = t.source->name() + " -> " + t.target->name()}};
  for (std::size_t j = 0; j < t.source->rank(); ++j)
    for (std::size_t k = 0; k < t.target->rank(); ++k) out.hom.matrix[j][k] = t.matrix[k][j].substitute(vars::del, -d);

  for (std::size_t k = 0; k < t.target->rank(); ++k) {
    auto fk = ModElement::generator(target_dual.dual, k);
    ModElement image = out.hom.apply(fk);
    for (std::size_t j = 0; j < t.source->rank(); ++j) {
      auto uj = ModElement::generator(t.source, j);
      Poly res = pair(image, uj, "lam") - pair(fk, t.apply(uj), "lam");
      record_if_nonzero(out.verification, "[T*(" + target_dual.dual->gens()[k] + ")]_lam(" + t.source->gens()[j] + ")",
                        {res}, {});
    }
  }
  out.verification.absorb(check_homomorphism(out.hom));
  return out;
}

DualHom dual_hom(const ModuleHom& t) { return dual_hom(t, dual_module(t.source), dual_module(t.target)); }

DoubleDual double_dual_iso(const ModulePtr& m) {
  DualModule d = dual_module(m);
  DualModule dd = dual_module(d.dual);
  ModuleHom iso{m, dd.dual, ModuleHom::identity(m).matrix};
  DoubleDual out{d, dd, iso, {.check = "double-dual", .subject = m->name()}};
  Report& rep = out.verification;
  rep.absorb(d.verification);
  rep.absorb(dd.verification);
  const auto& p = m->action_table();
  const auto& pp = dd.dual->action_table();
  for (std::size_t g = 0; g < p.size(); ++g)
    for (std::size_t j = 0; j < m->rank(); ++j) {
      std::vector<Poly> diff;
      for (std::size_t k = 0; k < m->rank(); ++k) diff.push_back(pp[g][j][k] - p[g][j][k]);
      record_if_nonzero(rep, "table entry (" + m->algebra()->gens()[g] + ", " + m->gens()[j] + ")", std::move(diff),
                        m->gens());
    }
  Poly minus_lam = -var_poly(m->table(), vars::lam);
  for (std::size_t i = 0; i < m->rank(); ++i)
    for (std::size_t j = 0; j < m->rank(); ++j) {
      auto ui = ModElement::generator(m, i);
      auto fj = ModElement::generator(d.dual, j);
      Poly res = pair(iso.apply(ui), fj, "lam") - pair_at(fj, ui, minus_lam);
      record_if_nonzero(rep, "[phi(" + m->gens()[i] + ")]_lam(" + d.dual->gens()[j] + ")", {res}, {});
    }
  rep.absorb(check_homomorphism(iso));
  return out;
}

// ---------------------------------------------------------------- Chom(U, V) ~ U* (x) V

ConformalLinearMap ident_41(const ModElement& f, const ModElement& v) {
  const ModulePtr& u = f.parent->dual_of();
  if (!u) throw Error("first factor must be an element of a conformal dual");
  const VarTablePtr& vt = u->table();
  Poly shift = -(var_poly(vt, vars::mu) + var_poly(vt, vars::del));
  ConformalLinearMap phi = ConformalLinearMap::zero(u, v.parent);
  for (std::size_t k = 0; k < u->rank(); ++k) {
    if (f.comps[k].is_zero()) continue;
    Poly fk = f.comps[k].substitute(vars::del, shift);
    for (std::size_t i = 0; i < v.comps.size(); ++i) phi.matrix[i][k] += fk * v.comps[i];
  }
  return phi;
}

ConformalLinearMap ident_41(const TensorElement& x) {
  const ModulePtr& u = x.left()->dual_of();
  if (!u) throw Error("first factor must be a conformal dual");
  const VarTablePtr& vt = u->table();
  Poly shift = -(var_poly(vt, vars::mu) + var_poly(vt, vars::del));
  Poly d = var_poly(vt, vars::del);
  ConformalLinearMap phi = ConformalLinearMap::zero(u, x.right());
  for (const auto& [k, c] : x.terms()) phi.matrix[k.j][k.i] += c * shift.pow(k.a) * d.pow(k.b);
  return phi;
}

}  // namespace lca
