#include "lca/tensor_first.hpp"

#include <cstdlib>
#include <tuple>

namespace lca {

StringElement::StringElement(ModulePtr left, ModulePtr right, bool reduced)
    : left_(std::move(left)), right_(std::move(right)), reduced_(reduced) {
  if (left_->algebra() != right_->algebra()) throw Error("string factors are modules over different algebras");
}

StringElement StringElement::basis(ModulePtr left, ModulePtr right, const StringKey& k) {
  StringElement x(left, right);
  x.add(k, Poly::constant(left->table(), 1));
  return x;
}

void StringElement::add(const StringKey& k, const Poly& c) {
  if (c.is_zero()) return;
  if (c.uses(vars::del) || c.uses(vars::t)) throw Error("string coefficients must be free of del and t");
  if (reduced_ && k.a != 0) throw Error("reduced strings carry no left-slot derivative");
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

StringElement& StringElement::operator+=(const StringElement& o) {
  if (left_ != o.left_ || right_ != o.right_ || reduced_ != o.reduced_) throw Error("strings of different spaces");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

StringElement& StringElement::operator-=(const StringElement& o) {
  if (left_ != o.left_ || right_ != o.right_ || reduced_ != o.reduced_) throw Error("strings of different spaces");
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

StringElement operator*(const Poly& c, StringElement x) {
  StringElement r(x.left_, x.right_, x.reduced_);
  for (const auto& [k, v] : x.terms_) r.add(k, c * v);
  return r;
}

StringElement StringElement::derivative() const {
  StringElement r(left_, right_, reduced_);
  for (const auto& [k, c] : terms_) {
    if (reduced_) {
      r.add({k.n, 0, k.i, k.b + 1, k.j}, c);
      continue;
    }
    r.add({k.n, k.a + 1, k.i, k.b, k.j}, c);
    r.add({k.n, k.a, k.i, k.b + 1, k.j}, c);
  }
  return r;
}

StringElement StringElement::truncate(std::span<const Var> among, std::uint32_t max_degree) const {
  StringElement r(left_, right_, reduced_);
  for (const auto& [k, c] : terms_) r.add(k, c.truncate(among, max_degree));
  return r;
}

StringElement StringElement::substitute(Var v, const Poly& p) const {
  StringElement r(left_, right_, reduced_);
  for (const auto& [k, c] : terms_) r.add(k, c.substitute(v, p));
  return r;
}

std::string StringElement::to_string() const {
  if (terms_.empty()) return "0";
  auto power = [](const std::string& base, std::uint32_t e) {
    if (e == 0) return std::string();
    return base + (e > 1 ? "^" + std::to_string(e) : std::string()) + " ";
  };
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*[";
    if (reduced_) out += power("delx", k.b);
    out += "t^" + std::to_string(k.n) + " (x) " + power("del", k.a) + left_->gens()[k.i] + " (x) " +
           (reduced_ ? std::string() : power("del", k.b)) + right_->gens()[k.j] + "]";
  }
  return out;
}

TruncationTable TruncationTable::uniform(const ConformalModule& m, const ConformalModule& n, std::uint32_t k) {
  return {std::vector<std::vector<std::uint32_t>>(m.rank(), std::vector<std::uint32_t>(n.rank(), k))};
}

std::uint32_t TruncationTable::max() const {
  std::uint32_t out = 0;
  for (const auto& row : l)
    for (auto v : row) out = std::max(out, v);
  return out;
}

std::string TruncationTable::to_string() const {
  std::string out;
  for (const auto& row : l) {
    if (!out.empty()) out += "; ";
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + std::to_string(row[j]);
  }
  return out;
}

// ---------------------------------------------------------------- F0 action

namespace {

Rational default_binomial(unsigned m, unsigned i) { return binomial(m, i); }

// Action of a single generator, truncated at `degree` in v.
StringElement generator_action(const AlgebraPtr& alg, std::size_t g, const StringElement& x, const Poly& v,
                               Var var, unsigned degree, const BinomialRule& binom) {
  const VarTablePtr& vt = alg->table();
  Poly d = Poly::variable(vt, vars::del);
  std::vector<Var> split_vars{var, vars::del};
  auto gen = AlgElement::generator(alg, g);
  StringElement out(x.left(), x.right());
  for (const auto& [k, c] : x.terms()) {
    ModElement u = ModElement::zero(x.left());
    u.comps[k.i] = d.pow(k.a);
    ModElement au = action_at(gen, u, v);
    for (std::size_t l = 0; l < au.comps.size(); ++l) {
      for (const auto& [e, p] : au.comps[l].split(split_vars)) {
        unsigned q = e[0];
        if (q > degree) continue;
        Poly base = c * p * factorial(q);
        for (unsigned m = q; m <= degree; ++m) {
          Rational w = binom(m, q) / factorial(m);
          if (w == 0) continue;
          out.add({k.n + m - q, e[1], l, k.b, k.j}, base * v.pow(m) * w);
        }
      }
    }
    ModElement w = ModElement::zero(x.right());
    w.comps[k.j] = d.pow(k.b);
    ModElement aw = action_at(gen, w, v);
    for (std::size_t l = 0; l < aw.comps.size(); ++l)
      for (const auto& [e, p] : aw.comps[l].split(split_vars))
        if (e[0] <= degree) out.add({k.n, k.a, k.i, e[1], l}, c * p * v.pow(e[0]));
  }
  return out;
}

}  // namespace

StringElement f0_action(const AlgElement& a, const StringElement& x, std::string_view var, unsigned degree,
                        const BinomialRule& binom) {
  if (x.reduced()) throw Error("f0_action acts on unreduced strings");
  if (a.parent != x.left()->algebra()) throw Error("strings are not over this algebra");
  const VarTablePtr& vt = a.parent->table();
  std::vector<Poly> coefs;
  for (const auto& [k, c] : x.terms()) coefs.push_back(c);
  Var v = detail::fresh_variable(vt, var, {&a.comps, &coefs});
  Poly vp = Poly::variable(vt, v);
  const BinomialRule& rule = binom ? binom : BinomialRule(default_binomial);
  std::vector<Var> trunc_vars{v};
  StringElement out(x.left(), x.right());
  for (std::size_t g = 0; g < a.comps.size(); ++g) {
    if (a.comps[g].is_zero()) continue;
    Poly factor = a.comps[g].substitute(vars::del, -vp);
    out += factor * generator_action(a.parent, g, x, vp, v, degree, rule);
  }
  return out.truncate(trunc_vars, degree);
}

Report check_f0_module(const ModulePtr& m, const ModulePtr& n, unsigned degree_bound, const BinomialRule& binom) {
  Report rep{.check = "f0-module", .subject = m->name() + " (x) " + n->name()};
  rep.details["degree_bound"] = degree_bound;
  const auto& alg = m->algebra();
  const VarTablePtr& vt = alg->table();
  Poly lam = Poly::variable(vt, vars::lam), mu = Poly::variable(vt, vars::mu);
  std::vector<Var> lm{vars::lam, vars::mu}, lv{vars::lam};
  unsigned D = degree_bound;
  for (std::uint32_t nn = 0; nn <= D; ++nn)
    for (std::uint32_t a = 0; a <= D; ++a)
      for (std::uint32_t b = 0; b <= D; ++b)
        for (std::size_t i = 0; i < m->rank(); ++i)
          for (std::size_t j = 0; j < n->rank(); ++j) {
            StringElement x = StringElement::basis(m, n, {nn, a, i, b, j});
            std::string where = "t^" + std::to_string(nn) + " (x) del^" + std::to_string(a) + " " + m->gens()[i] +
                                " (x) del^" + std::to_string(b) + " " + n->gens()[j];
            auto record = [&](const std::string& what, const StringElement& res) {
              if (res.is_zero()) return;
              rep.fail({what + " at " + where, {}, {}});
              rep.residuals.back().location += ": " + res.to_string();
            };
            for (std::size_t g = 0; g < alg->rank(); ++g) {
              auto ga = AlgElement::generator(alg, g);
              StringElement y = f0_action(ga, x, "lam", D, binom);
              StringElement s1 = f0_action(ga.derivative(), x, "lam", D, binom) + lam * y;
              record("(del a)_lam x + lam a_lam x", s1.truncate(lv, D));
              StringElement s2 = f0_action(ga, x.derivative(), "lam", D, binom) - lam * y - y.derivative();
              record("a_lam del x - (lam + del) a_lam x", s2.truncate(lv, D));
            }
            for (std::size_t g = 0; g < alg->rank(); ++g)
              for (std::size_t h = 0; h < alg->rank(); ++h) {
                auto ga = AlgElement::generator(alg, g), gb = AlgElement::generator(alg, h);
                StringElement lhs = f0_action(ga, f0_action(gb, x, "mu", D, binom), "lam", D, binom);
                StringElement right = f0_action(gb, f0_action(ga, x, "lam", D, binom), "mu", D, binom);
                StringElement mid(m, n);
                AlgElement br = bracket(ga, gb, "lam");
                for (std::size_t c = 0; c < alg->rank(); ++c) {
                  if (br.comps[c].is_zero()) continue;
                  StringElement yc = f0_action(AlgElement::generator(alg, c), x, "gam", D, binom);
                  Poly factor = br.comps[c].substitute(vars::del, -lam - mu);
                  mid += factor * yc.substitute(vars::gam, lam + mu);
                }
                record("jacobi (" + alg->gens()[g] + ", " + alg->gens()[h] + ")",
                       (lhs - mid - right).truncate(lm, D));
              }
          }
  return rep;
}

// ---------------------------------------------------------------- rewriting

std::size_t step_budget() {
  if (const char* env = std::getenv("LCA_STEP_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

StringElement normalize(const StringElement& x, const TruncationTable& trunc, std::optional<std::size_t> budget) {
  if (trunc.l.size() != x.left()->rank()) throw Error("truncation table has the wrong number of rows");
  for (const auto& row : trunc.l)
    if (row.size() != x.right()->rank()) throw Error("truncation table has the wrong number of columns");
  std::size_t limit = budget ? *budget : step_budget();

  // (a + b, s, n, a, i, b, j); the largest weight is rewritten first
  using State = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t, std::size_t, std::uint32_t,
                           std::size_t>;
  std::map<State, Poly, std::greater<>> work;
  auto push = [&](std::uint32_t s, std::uint32_t n, std::uint32_t a, std::size_t i, std::uint32_t b, std::size_t j,
                  const Poly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = work.try_emplace(State{a + b, s, n, a, i, b, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) work.erase(it);
    }
  };
  for (const auto& [k, c] : x.terms()) {
    if (x.reduced())
      push(k.b, k.n, 0, k.i, 0, k.j, c);
    else
      push(0, k.n, k.a, k.i, k.b, k.j, c);
  }

  StringElement out(x.left(), x.right(), true);
  std::size_t steps = 0;
  while (!work.empty()) {
    if (++steps > limit)
      throw StepBudgetExceeded("rewriting exceeded the step budget of " + std::to_string(limit) + " steps with " +
                               std::to_string(work.size()) + " pending strings");
    auto node = work.extract(work.begin());
    auto [w, s, n, a, i, b, j] = node.key();
    const Poly& c = node.mapped();
    if (a > 0) {
      if (n > 0) push(s, n - 1, a - 1, i, b, j, c * Rational(-static_cast<long>(n)));
    } else if (b > 0) {
      push(s + 1, n, 0, i, b - 1, j, c);
      push(s, n, 1, i, b - 1, j, -c);
    } else if (n < trunc.at(i, j)) {
      out.add({n, 0, i, s, j}, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------- induced module

namespace {

std::uint32_t max_degree_in(const Table3& t, Var v) {
  std::uint32_t out = 0;
  for (const auto& plane : t)
    for (const auto& row : plane)
      for (const auto& p : row) out = std::max(out, p.degree(v));
  return out;
}

}  // namespace

InducedModule induced_module(const ModulePtr& m, const ModulePtr& n, const TruncationTable& trunc) {
  const auto& alg = m->algebra();
  if (n->algebra() != alg) throw Error("modules over different algebras");
  const VarTablePtr& vt = alg->table();
  InducedModule out{nullptr, std::nullopt, {}, {.check = "tensor-first", .subject = m->name() + " (x) " + n->name()}};
  Report& rep = out.report;
  rep.notes.push_back("conditional on truncation table [" + trunc.to_string() + "]");

  std::map<StringKey, std::size_t> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m->rank(); ++i)
    for (std::size_t j = 0; j < n->rank(); ++j)
      for (std::uint32_t r = 0; r < trunc.at(i, j); ++r) {
        StringKey k{r, 0, i, 0, j};
        index[k] = out.generators.size();
        out.generators.push_back(k);
        names.push_back((r ? "t^" + std::to_string(r) + " " : std::string()) + m->gens()[i] + "(x)" + n->gens()[j]);
      }

  std::uint32_t dmax = std::max(max_degree_in(m->action_table(), vars::del), max_degree_in(n->action_table(), vars::del));
  std::uint32_t lmax = std::max(max_degree_in(m->action_table(), vars::lam), max_degree_in(n->action_table(), vars::lam));
  unsigned D = trunc.max() + dmax + lmax + 1;
  rep.details["series_degree"] = D;

  std::size_t rank = out.generators.size();
  Poly d = Poly::variable(vt, vars::del);
  Table3 table(alg->rank(), std::vector<std::vector<Poly>>(rank, detail::zeros(vt, rank)));
  for (std::size_t g = 0; g < alg->rank(); ++g) {
    auto gen = AlgElement::generator(alg, g);
    for (std::size_t s = 0; s < rank; ++s) {
      StringElement x = StringElement::basis(m, n, out.generators[s]);
      StringElement y = normalize(f0_action(gen, x, "lam", D), trunc);
      StringElement y2 = normalize(f0_action(gen, x, "lam", D + 1), trunc);
      if (!(y == y2)) {
        rep.fail_note("closure failure: " + alg->gens()[g] + "_lam " + names[s] +
                      " keeps growing in lam beyond degree " + std::to_string(D) + ": " + y2.to_string());
        return out;
      }
      for (const auto& [k, c] : y.terms()) table[g][s][index.at({k.n, 0, k.i, 0, k.j})] += c * d.pow(k.b);
    }
  }
  out.module = std::make_shared<const ConformalModule>(m->name() + "(x)" + n->name(), alg, names, std::move(table));

  Poly gam = Poly::variable(vt, vars::gam);
  IntertwiningOperator op = IntertwiningOperator::zero("(x)", out.module, m, n);
  for (std::size_t s = 0; s < rank; ++s) {
    const auto& k = out.generators[s];
    op.table[k.i][k.j][s] = gam.pow(k.n) * (Rational(1) / factorial(k.n));
  }
  out.canonical = op;

  rep.absorb(check_module(*out.module));
  rep.absorb(check_iop(op));
  return out;
}

}  // namespace lca
