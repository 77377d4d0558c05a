#include "lca/algebra.hpp"

#include <algorithm>

namespace lca {

namespace detail {

std::vector<Poly> zeros(const VarTablePtr& vt, std::size_t n) { return std::vector<Poly>(n, Poly(vt)); }

std::vector<Poly> sesquilinear(const std::vector<Poly>& x, const std::vector<Poly>& y, const Table3& table,
                               Var table_var, const Poly& shift, std::size_t out_rank) {
  const VarTablePtr& vt = shift.table();
  Poly d = Poly::variable(vt, vars::del);
  std::vector<Poly> out = zeros(vt, out_rank);
  bool rename = !(shift == Poly::variable(vt, table_var));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    Poly xi = x[i].substitute(vars::del, -shift);
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j].is_zero()) continue;
      Poly coef = xi * y[j].substitute(vars::del, shift + d);
      for (std::size_t k = 0; k < out_rank; ++k) {
        const Poly& entry = table[i][j][k];
        if (entry.is_zero()) continue;
        out[k] += coef * (rename ? entry.substitute(table_var, shift) : entry);
      }
    }
  }
  return out;
}

Var fresh_variable(const VarTablePtr& vt, std::string_view name,
                   std::initializer_list<const std::vector<Poly>*> in_use) {
  Var v = vt->require(name);
  if (!(v == vars::lam || v == vars::mu || v == vars::gam))
    throw Error("'" + std::string(name) + "' cannot be used as a lambda-variable");
  for (const auto* comps : in_use)
    for (const auto& p : *comps)
      if (p.uses(v)) throw Error("variable '" + std::string(name) + "' is already in use");
  return v;
}

void check_table_vars(const Table3& table, std::initializer_list<Var> allowed, const std::string& what) {
  for (const auto& plane : table)
    for (const auto& row : plane)
      for (const auto& p : row)
        for (Var v : p.variables()) {
          if (p.table()->is_param(v)) continue;
          if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
            throw Error(what + " entry " + p.to_string() + " uses variable '" + p.table()->name(v) + "'");
        }
}

}  // namespace detail

namespace {

void check_shape(const Table3& t, std::size_t a, std::size_t b, std::size_t c, const std::string& what) {
  bool ok = t.size() == a;
  for (const auto& plane : t) {
    ok = ok && plane.size() == b;
    for (const auto& row : plane) ok = ok && row.size() == c;
  }
  if (!ok) throw Error(what + " has the wrong shape");
}

}  // namespace

LieConformalAlgebra::LieConformalAlgebra(std::string name, VarTablePtr vt, std::vector<std::string> gens,
                                         Table3 bracket)
    : name_(std::move(name)), vt_(std::move(vt)), gens_(std::move(gens)), bracket_(std::move(bracket)) {
  std::size_t n = gens_.size();
  check_shape(bracket_, n, n, n, "bracket table of " + name_);
  for (auto& plane : bracket_)
    for (auto& row : plane)
      for (auto& p : row)
        if (!p.table()) p = Poly(vt_);
  detail::check_table_vars(bracket_, {vars::lam, vars::del}, "bracket table of " + name_);
}

std::size_t LieConformalAlgebra::gen_index(std::string_view name) const {
  auto it = std::find(gens_.begin(), gens_.end(), name);
  if (it == gens_.end()) throw Error("algebra " + name_ + " has no generator '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - gens_.begin());
}

AlgElement AlgElement::zero(const AlgebraPtr& a) { return {a, detail::zeros(a->table(), a->rank())}; }

AlgElement AlgElement::generator(const AlgebraPtr& a, std::size_t i) {
  AlgElement e = zero(a);
  e.comps.at(i) = Poly::constant(a->table(), 1);
  return e;
}

AlgElement AlgElement::generator(const AlgebraPtr& a, std::string_view name) {
  return generator(a, a->gen_index(name));
}

bool AlgElement::is_zero() const {
  return std::all_of(comps.begin(), comps.end(), [](const Poly& p) { return p.is_zero(); });
}

AlgElement AlgElement::derivative() const {
  AlgElement r = *this;
  Poly d = Poly::variable(parent->table(), vars::del);
  for (auto& c : r.comps) c *= d;
  return r;
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  if (parent != o.parent) throw Error("elements of different algebras");
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += o.comps[i];
  return *this;
}

AlgElement operator-(AlgElement a, const AlgElement& b) {
  if (a.parent != b.parent) throw Error("elements of different algebras");
  for (std::size_t i = 0; i < a.comps.size(); ++i) a.comps[i] -= b.comps[i];
  return a;
}

AlgElement operator*(const Poly& c, AlgElement a) {
  for (auto& p : a.comps) p = c * p;
  return a;
}

std::string AlgElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + comps[i].to_string() + ")*" + parent->gens()[i];
  }
  return out.empty() ? "0" : out;
}

AlgElement bracket_at(const AlgElement& x, const AlgElement& y, const Poly& shift) {
  if (x.parent != y.parent) throw Error("bracket of elements of different algebras");
  const auto& a = *x.parent;
  return {x.parent, detail::sesquilinear(x.comps, y.comps, a.bracket_table(), vars::lam, shift, a.rank())};
}

AlgElement bracket(const AlgElement& x, const AlgElement& y, std::string_view var) {
  if (x.parent != y.parent) throw Error("bracket of elements of different algebras");
  Var v = detail::fresh_variable(x.parent->table(), var, {&x.comps, &y.comps});
  return bracket_at(x, y, Poly::variable(x.parent->table(), v));
}

AlgElement nth_product(const AlgElement& x, const AlgElement& y, unsigned n) {
  AlgElement b = bracket(x, y, "lam");
  for (auto& c : b.comps) c = c.coeff(vars::lam, n) * factorial(n);
  return b;
}

Report check_skew(const LieConformalAlgebra& a) {
  Report rep{.check = "skew-commutativity", .subject = a.name()};
  auto alg = std::make_shared<const LieConformalAlgebra>(a);
  const VarTablePtr& vt = a.table();
  Poly lam = Poly::variable(vt, vars::lam), d = Poly::variable(vt, vars::del);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j) {
      auto gi = AlgElement::generator(alg, i), gj = AlgElement::generator(alg, j);
      AlgElement lhs = bracket(gi, gj, "lam");
      AlgElement opp = bracket(gj, gi, "lam");
      std::vector<Poly> res(a.rank());
      for (std::size_t k = 0; k < a.rank(); ++k)
        res[k] = lhs.comps[k] + opp.comps[k].substitute(vars::lam, -lam - d);
      record_if_nonzero(rep, "[" + a.gens()[i] + " lam " + a.gens()[j] + "]", std::move(res), a.gens());
    }
  }
  return rep;
}

Report check_jacobi(const LieConformalAlgebra& a) {
  Report rep{.check = "jacobi", .subject = a.name()};
  auto alg = std::make_shared<const LieConformalAlgebra>(a);
  const VarTablePtr& vt = a.table();
  Poly shift = Poly::variable(vt, vars::lam) + Poly::variable(vt, vars::mu);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j) {
      for (std::size_t k = 0; k < a.rank(); ++k) {
        auto gi = AlgElement::generator(alg, i), gj = AlgElement::generator(alg, j),
             gk = AlgElement::generator(alg, k);
        AlgElement lhs = bracket(gi, bracket(gj, gk, "mu"), "lam");
        AlgElement mid = bracket_at(bracket(gi, gj, "lam"), gk, shift);
        AlgElement right = bracket(gj, bracket(gi, gk, "lam"), "mu");
        AlgElement res = lhs - mid - right;
        record_if_nonzero(rep, "(" + a.gens()[i] + ", " + a.gens()[j] + ", " + a.gens()[k] + ")",
                          std::move(res.comps), a.gens());
      }
    }
  }
  return rep;
}

AlgebraPtr virasoro(const VarTablePtr& vt, std::string name) {
  Poly entry = Poly::constant(vt, 2) * Poly::variable(vt, vars::lam) + Poly::variable(vt, vars::del);
  return std::make_shared<const LieConformalAlgebra>(std::move(name), vt, std::vector<std::string>{"L"},
                                                     Table3{{{entry}}});
}

AlgebraPtr abelian(const VarTablePtr& vt, std::size_t rank, std::string name) {
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < rank; ++i) gens.push_back("a" + std::to_string(i + 1));
  Table3 t(rank, std::vector<std::vector<Poly>>(rank, detail::zeros(vt, rank)));
  return std::make_shared<const LieConformalAlgebra>(std::move(name), vt, std::move(gens), std::move(t));
}

}  // namespace lca
