#include "lca/module.hpp"

#include <algorithm>

namespace lca {

ConformalModule::ConformalModule(std::string name, AlgebraPtr parent, std::vector<std::string> gens,
                                 Table3 action, ModulePtr dual_of)
    : name_(std::move(name)),
      parent_(std::move(parent)),
      gens_(std::move(gens)),
      action_(std::move(action)),
      dual_of_(std::move(dual_of)) {
  bool ok = action_.size() == parent_->rank();
  for (const auto& plane : action_) {
    ok = ok && plane.size() == gens_.size();
    for (const auto& row : plane) ok = ok && row.size() == gens_.size();
  }
  if (!ok) throw Error("action table of " + name_ + " has the wrong shape");
  for (auto& plane : action_)
    for (auto& row : plane)
      for (auto& p : row)
        if (!p.table()) p = Poly(parent_->table());
  detail::check_table_vars(action_, {vars::lam, vars::del}, "action table of " + name_);
}

std::size_t ConformalModule::gen_index(std::string_view name) const {
  auto it = std::find(gens_.begin(), gens_.end(), name);
  if (it == gens_.end()) throw Error("module " + name_ + " has no generator '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - gens_.begin());
}

ModElement ModElement::zero(const ModulePtr& m) { return {m, detail::zeros(m->table(), m->rank())}; }

ModElement ModElement::generator(const ModulePtr& m, std::size_t i) {
  ModElement e = zero(m);
  e.comps.at(i) = Poly::constant(m->table(), 1);
  return e;
}

ModElement ModElement::generator(const ModulePtr& m, std::string_view name) {
  return generator(m, m->gen_index(name));
}

bool ModElement::is_zero() const {
  return std::all_of(comps.begin(), comps.end(), [](const Poly& p) { return p.is_zero(); });
}

ModElement ModElement::derivative() const {
  ModElement r = *this;
  Poly d = Poly::variable(parent->table(), vars::del);
  for (auto& c : r.comps) c *= d;
  return r;
}

ModElement& ModElement::operator+=(const ModElement& o) {
  if (parent != o.parent) throw Error("elements of different modules");
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += o.comps[i];
  return *this;
}

ModElement operator-(ModElement a, const ModElement& b) {
  if (a.parent != b.parent) throw Error("elements of different modules");
  for (std::size_t i = 0; i < a.comps.size(); ++i) a.comps[i] -= b.comps[i];
  return a;
}

ModElement operator*(const Poly& c, ModElement a) {
  for (auto& p : a.comps) p = c * p;
  return a;
}

std::string ModElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + comps[i].to_string() + ")*" + parent->gens()[i];
  }
  return out.empty() ? "0" : out;
}

ModElement action_at(const AlgElement& a, const ModElement& v, const Poly& shift) {
  if (a.parent != v.parent->algebra()) throw Error("module " + v.parent->name() + " is not over this algebra");
  const auto& m = *v.parent;
  return {v.parent, detail::sesquilinear(a.comps, v.comps, m.action_table(), vars::lam, shift, m.rank())};
}

ModElement action(const AlgElement& a, const ModElement& v, std::string_view var) {
  if (a.parent != v.parent->algebra()) throw Error("module " + v.parent->name() + " is not over this algebra");
  Var x = detail::fresh_variable(v.parent->table(), var, {&a.comps, &v.comps});
  return action_at(a, v, Poly::variable(v.parent->table(), x));
}

Report check_module(const ConformalModule& m) {
  Report rep{.check = "module-jacobi", .subject = m.name()};
  const auto& alg = m.algebra();
  Report skew = check_skew(*alg), jac = check_jacobi(*alg);
  if (!skew.passed || !jac.passed)
    rep.notes.push_back("warning: parent algebra " + alg->name() + " fails its own axioms");
  auto mod = std::make_shared<const ConformalModule>(m);
  const VarTablePtr& vt = m.table();
  Poly shift = Poly::variable(vt, vars::lam) + Poly::variable(vt, vars::mu);
  for (std::size_t a = 0; a < alg->rank(); ++a) {
    for (std::size_t b = 0; b < alg->rank(); ++b) {
      for (std::size_t j = 0; j < m.rank(); ++j) {
        auto ga = AlgElement::generator(alg, a), gb = AlgElement::generator(alg, b);
        auto vj = ModElement::generator(mod, j);
        ModElement lhs = action(ga, action(gb, vj, "mu"), "lam");
        ModElement mid = action_at(bracket(ga, gb, "lam"), vj, shift);
        ModElement right = action(gb, action(ga, vj, "lam"), "mu");
        ModElement res = lhs - mid - right;
        record_if_nonzero(rep, "(" + alg->gens()[a] + ", " + alg->gens()[b] + ", " + m.gens()[j] + ")",
                          std::move(res.comps), m.gens());
      }
    }
  }
  return rep;
}

namespace {

bool is_parameter_expression(const Poly& p) {
  auto vs = p.variables();
  return std::all_of(vs.begin(), vs.end(), [&](Var v) { return p.table()->is_param(v); });
}

}  // namespace

ModulePtr rank1_virasoro(const AlgebraPtr& vir, const Poly& delta, const Poly& alpha, std::string name) {
  if (vir->rank() != 1) throw Error("rank1_virasoro needs a rank-1 algebra");
  const VarTablePtr& vt = vir->table();
  Poly d = delta.table() ? delta : Poly(vt);
  Poly a = alpha.table() ? alpha : Poly(vt);
  if (!is_parameter_expression(d) || !is_parameter_expression(a))
    throw Error("Delta and alpha must be parameter expressions");
  Poly entry = d * Poly::variable(vt, vars::lam) + Poly::variable(vt, vars::del) + a;
  return std::make_shared<const ConformalModule>(std::move(name), vir, std::vector<std::string>{"m"},
                                                 Table3{{{entry}}});
}

ModulePtr trivial_module(const AlgebraPtr& a, std::size_t rank, std::string name) {
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < rank; ++i) gens.push_back("e" + std::to_string(i + 1));
  Table3 t(a->rank(), std::vector<std::vector<Poly>>(rank, detail::zeros(a->table(), rank)));
  return std::make_shared<const ConformalModule>(std::move(name), a, std::move(gens), std::move(t));
}

ModulePtr regular_module(const AlgebraPtr& a) {
  return std::make_shared<const ConformalModule>(a->name(), a, a->gens(), a->bracket_table());
}

// ---------------------------------------------------------------- tensors

TensorElement::TensorElement(ModulePtr left, ModulePtr right) : left_(std::move(left)), right_(std::move(right)) {}

void TensorElement::add(const TensorKey& k, const Poly& c) {
  if (c.is_zero()) return;
  if (c.uses(vars::del)) throw Error("tensor coefficients must be free of del");
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement TensorElement::pure(const ModElement& u, const ModElement& v) {
  TensorElement x(u.parent, v.parent);
  std::vector<Var> d{vars::del};
  for (std::size_t i = 0; i < u.comps.size(); ++i) {
    for (const auto& [ea, ca] : u.comps[i].split(d)) {
      for (std::size_t j = 0; j < v.comps.size(); ++j) {
        for (const auto& [eb, cb] : v.comps[j].split(d)) x.add({ea[0], i, eb[0], j}, ca * cb);
      }
    }
  }
  return x;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  if (left_ != o.left_ || right_ != o.right_) throw Error("tensor elements of different spaces");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  if (left_ != o.left_ || right_ != o.right_) throw Error("tensor elements of different spaces");
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

TensorElement operator*(const Poly& c, TensorElement x) {
  TensorElement r(x.left_, x.right_);
  for (const auto& [k, v] : x.terms_) r.add(k, c * v);
  return r;
}

TensorElement TensorElement::total_derivative() const {
  TensorElement r(left_, right_);
  for (const auto& [k, c] : terms_) {
    r.add({k.a + 1, k.i, k.b, k.j}, c);
    r.add({k.a, k.i, k.b + 1, k.j}, c);
  }
  return r;
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  auto factor = [](std::uint32_t e, const std::string& g) {
    if (e == 0) return g;
    return "del" + (e > 1 ? "^" + std::to_string(e) : std::string()) + " " + g;
  };
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*[" + factor(k.a, left_->gens()[k.i]) + " (x) " +
           factor(k.b, right_->gens()[k.j]) + "]";
  }
  return out;
}

TensorElement ordinary_tensor_action_at(const AlgElement& a, const TensorElement& x, const Poly& shift) {
  const auto& left = x.left();
  const auto& right = x.right();
  if (left->algebra() != a.parent || right->algebra() != a.parent)
    throw Error("tensor factors are not modules over this algebra");
  const VarTablePtr& vt = left->table();
  Poly d = Poly::variable(vt, vars::del);
  std::vector<Var> dv{vars::del};
  TensorElement out(left, right);
  for (const auto& [k, c] : x.terms()) {
    ModElement u = ModElement::zero(left);
    u.comps[k.i] = d.pow(k.a);
    ModElement v = ModElement::zero(right);
    v.comps[k.j] = d.pow(k.b);
    ModElement au = action_at(a, u, shift);
    for (std::size_t i = 0; i < au.comps.size(); ++i)
      for (const auto& [e, p] : au.comps[i].split(dv)) out.add({e[0], i, k.b, k.j}, c * p);
    ModElement av = action_at(a, v, shift);
    for (std::size_t j = 0; j < av.comps.size(); ++j)
      for (const auto& [e, p] : av.comps[j].split(dv)) out.add({k.a, k.i, e[0], j}, c * p);
  }
  return out;
}

TensorElement ordinary_tensor_action(const AlgElement& a, const TensorElement& x, std::string_view var) {
  std::vector<Poly> coefs;
  for (const auto& [k, c] : x.terms()) coefs.push_back(c);
  Var v = detail::fresh_variable(x.left()->table(), var, {&a.comps, &coefs});
  return ordinary_tensor_action_at(a, x, Poly::variable(x.left()->table(), v));
}

}  // namespace lca
