#include "lca/tensor_second.hpp"

namespace lca {

namespace {

std::vector<Poly> flatten(const Matrix& m) {
  std::vector<Poly> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::uint32_t max_degree(const std::vector<Poly>& ps, Var v) {
  std::uint32_t out = 0;
  for (const auto& p : ps) out = std::max(out, p.degree(v));
  return out;
}

// Finds c_s'(lam, del) with target = sum_s' c_s'(lam, -mu) basis_s' by
// matching every (lam, mu, del) monomial over the parameter fraction field.
std::optional<std::vector<Poly>> solve_membership(const ConformalLinearMap& target,
                                                  const std::vector<ConformalLinearMap>& basis, Report& rep,
                                                  const std::string& where) {
  const VarTablePtr& vt = target.source->table();
  Poly lam = Poly::variable(vt, vars::lam), mu = Poly::variable(vt, vars::mu), d = Poly::variable(vt, vars::del);
  std::vector<Var> among{vars::lam, vars::mu, vars::del};
  auto lhs = flatten(target.matrix);
  std::uint32_t dl = max_degree(lhs, vars::lam), dm = max_degree(lhs, vars::mu);

  struct Unknown {
    std::size_t s;
    std::uint32_t p, q;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t s = 0; s < basis.size(); ++s)
    for (std::uint32_t p = 0; p <= dl; ++p)
      for (std::uint32_t q = 0; q <= dm; ++q) unknowns.push_back({s, p, q});

  Frac zero{Poly(vt)};
  std::map<std::pair<std::size_t, Exponents>, std::size_t> row_of;
  std::vector<std::vector<Frac>> rows;
  std::vector<Frac> rhs;
  auto row = [&](std::size_t pos, const Exponents& e) {
    auto [it, inserted] = row_of.try_emplace({pos, e}, rows.size());
    if (inserted) {
      rows.emplace_back(unknowns.size(), zero);
      rhs.push_back(zero);
    }
    return it->second;
  };
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    auto entries = flatten(basis[unknowns[u].s].matrix);
    Poly mono = lam.pow(unknowns[u].p) * mu.pow(unknowns[u].q);
    for (std::size_t pos = 0; pos < entries.size(); ++pos) {
      if (entries[pos].is_zero()) continue;
      for (const auto& [e, c] : (mono * entries[pos]).split(among)) {
        std::size_t r = row(pos, e);
        rows[r][u] = rows[r][u] + Frac(c);
      }
    }
  }
  for (std::size_t pos = 0; pos < lhs.size(); ++pos)
    for (const auto& [e, c] : lhs[pos].split(among)) {
      std::size_t r = row(pos, e);
      rhs[r] = rhs[r] + Frac(c);
    }

  std::vector<Poly> coeffs = detail::zeros(vt, basis.size());
  if (rows.empty()) return coeffs;
  LinearSolution sol = solve_linear(rows, rhs, unknowns.size());
  for (const auto& s : sol.side_conditions)
    if (std::find(rep.side_conditions.begin(), rep.side_conditions.end(), s) == rep.side_conditions.end())
      rep.side_conditions.push_back(s);
  if (!sol.consistent) {
    rep.fail({"closure failure: " + where + " is not in the span of the candidate generators", lhs, {}});
    return std::nullopt;
  }
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const Frac& x = sol.values[u];
    if (x.is_zero()) continue;
    if (!x.is_polynomial()) {
      rep.fail_note(where + ": coefficient " + x.to_string() + " is not polynomial in the parameters");
      return std::nullopt;
    }
    coeffs[unknowns[u].s] += x.to_poly() * lam.pow(unknowns[u].p) * (-d).pow(unknowns[u].q);
  }
  return coeffs;
}

// a[g][k][k2] == b[g][perm k][perm k2]
void compare_tables(Report& rep, const Table3& a, const Table3& b, const std::vector<std::size_t>& perm,
                    const std::string& label) {
  if (a.size() != b.size()) {
    rep.fail_note(label + ": different numbers of algebra generators");
    return;
  }
  for (std::size_t g = 0; g < a.size(); ++g)
    for (std::size_t k = 0; k < perm.size(); ++k) {
      std::vector<Poly> diff;
      for (std::size_t k2 = 0; k2 < perm.size(); ++k2) diff.push_back(a[g][k][k2] - b[g][perm[k]][perm[k2]]);
      record_if_nonzero(rep, label + " row " + std::to_string(k), std::move(diff), {});
    }
}

// x[i][j][k] == y[i][j][perm k]
void compare_operators(Report& rep, const Table3& x, const Table3& y, const std::vector<std::size_t>& perm,
                       const std::string& label) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j) {
      std::vector<Poly> diff;
      for (std::size_t k = 0; k < perm.size(); ++k) diff.push_back(x[i][j][k] - y[i][j][perm[k]]);
      record_if_nonzero(rep, label + " (" + std::to_string(i) + ", " + std::to_string(j) + ")", std::move(diff), {});
    }
}

nlohmann::ordered_json table_json(const ConformalModule& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  const auto& alg = m.algebra();
  for (std::size_t g = 0; g < alg->rank(); ++g)
    for (std::size_t k = 0; k < m.rank(); ++k) {
      nlohmann::ordered_json row = nlohmann::ordered_json::object();
      for (std::size_t k2 = 0; k2 < m.rank(); ++k2)
        if (!m.action_table()[g][k][k2].is_zero()) row[m.gens()[k2]] = m.action_table()[g][k][k2].to_string();
      j[alg->gens()[g] + "_lam " + m.gens()[k]] = row;
    }
  return j;
}

}  // namespace

CandidateSubmodule candidate_delta(const ModulePtr& m, const ModulePtr& n) {
  const auto& alg = m->algebra();
  if (n->algebra() != alg) throw Error("modules over different algebras");
  CandidateSubmodule out{m, n, dual_module(n), {}, {}, false, {}, nullptr,
                         {.check = "candidate-delta", .subject = m->name() + ", " + n->name()}};
  Report& rep = out.report;
  rep.notes.push_back("candidate Delta generated by dual-generator tensors; uniqueness is not verified");
  DualModule m_dual = dual_module(m);
  for (std::size_t a = 0; a < m->rank(); ++a)
    for (std::size_t b = 0; b < n->rank(); ++b) {
      out.gens.push_back(ident_41(ModElement::generator(m_dual.dual, a), ModElement::generator(out.n_dual.dual, b)));
      out.names.push_back(m->gens()[a] + "*(x)" + n->gens()[b] + "*");
    }
  const VarTablePtr& vt = alg->table();
  std::size_t rank = out.gens.size();
  out.certificate = Table3(alg->rank(), std::vector<std::vector<Poly>>(rank, detail::zeros(vt, rank)));
  Poly mu = Poly::variable(vt, vars::mu);
  bool closed = true;
  for (std::size_t g = 0; g < alg->rank(); ++g) {
    auto gen = AlgElement::generator(alg, g);
    for (std::size_t s = 0; s < rank; ++s) {
      ConformalLinearMap lhs = chom_action(gen, out.gens[s], "lam");
      std::string where = alg->gens()[g] + "_lam (" + out.names[s] + ")";
      auto c = solve_membership(lhs, out.gens, rep, where);
      if (!c) {
        closed = false;
        continue;
      }
      out.certificate[g][s] = *c;
      ConformalLinearMap replay = ConformalLinearMap::zero(out.gens[s].source, out.gens[s].target);
      for (std::size_t s2 = 0; s2 < rank; ++s2)
        replay += (*c)[s2].substitute(vars::del, -mu) * out.gens[s2];
      record_if_nonzero(rep, "certificate replay " + where, flatten((replay - lhs).matrix), {});
    }
  }
  if (!closed) return out;
  out.closed = true;
  std::string name = "Delta(" + m->name() + "," + n->name() + "*)";
  out.module = std::make_shared<const ConformalModule>(name, alg, out.names, out.certificate);
  rep.details["candidate"] = table_json(*out.module);
  rep.absorb(check_module(*out.module));
  return out;
}

TensorSecond tensor_second(const ModulePtr& m, const ModulePtr& n) {
  TensorSecond out{candidate_delta(m, n), nullptr, std::nullopt,
                   {.check = "tensor-second", .subject = m->name() + " (x) " + n->name()}};
  Report& rep = out.report;
  const CandidateSubmodule& cand = out.candidate;
  rep.absorb(cand.report);
  if (!cand.closed) {
    rep.fail_note("candidate submodule is not closed; no tensor product produced");
    return out;
  }
  DualModule t_dual = dual_module(cand.module);
  rep.absorb(t_dual.verification);
  out.module = t_dual.dual;

  const VarTablePtr& vt = m->table();
  Poly gam = Poly::variable(vt, vars::gam), lam = Poly::variable(vt, vars::lam), mu = Poly::variable(vt, vars::mu);
  const ModulePtr& ns = cand.n_dual.dual;
  IntertwiningOperator F = IntertwiningOperator::zero("F", ns, cand.module, m);
  for (std::size_t s = 0; s < cand.gens.size(); ++s)
    for (std::size_t k = 0; k < m->rank(); ++k)
      for (std::size_t b = 0; b < n->rank(); ++b) F.table[s][k][b] = cand.gens[s].matrix[b][k].substitute(vars::mu, gam);
  Report f_check = check_iop(F);
  rep.absorb(f_check);

  DualModule nss = dual_module(ns);
  AdjointResult adj = adjoint(transpose(F), t_dual, nss);
  rep.absorb(adj.verification);
  if (!same_presentation(*nss.dual, *n)) {
    rep.fail_note("double dual of " + n->name() + " does not reproduce its presentation");
    return out;
  }
  IntertwiningOperator op = retype(adj.op, t_dual.dual, m, n);
  op.name = "(F^t)^*";

  // [op_lam(u, v)]_mu(g) = -(g_{-mu}(u))_{lam-mu}(v)
  Report replay{.check = "canonical-identity", .subject = op.name};
  for (std::size_t k = 0; k < m->rank(); ++k)
    for (std::size_t j = 0; j < n->rank(); ++j) {
      auto uk = ModElement::generator(m, k);
      auto vj = ModElement::generator(n, j);
      ModElement image = iop_apply(op, uk, vj, "lam");
      for (std::size_t s = 0; s < cand.gens.size(); ++s) {
        ModElement gu{ns, clm_apply_at(cand.gens[s], uk, -mu)};
        Poly res = pair(image, ModElement::generator(cand.module, s), "mu") + pair_at(gu, vj, lam - mu);
        record_if_nonzero(replay, "(" + m->gens()[k] + ", " + n->gens()[j] + ", " + cand.names[s] + ")", {res}, {});
      }
    }
  rep.absorb(replay);
  rep.absorb(check_module(*out.module));
  rep.absorb(check_iop(op));
  rep.details["module"] = table_json(*out.module);
  out.canonical = std::move(op);
  return out;
}

Report compare_constructions(const InducedModule& first, const TensorSecond& second) {
  Report rep{.check = "cross-check"};
  if (!first.module || !first.canonical) rep.fail_note("first construction produced no module");
  if (!second.module || !second.canonical) rep.fail_note("second construction produced no module");
  if (!rep.passed) return rep;
  const ConformalModule& A = *first.module;
  const ConformalModule& B = *second.module;
  rep.subject = A.name() + " vs " + B.name();
  rep.details["first"] = table_json(A);
  rep.details["second"] = table_json(B);
  if (A.rank() != B.rank()) {
    rep.fail_note("rank mismatch: first construction has rank " + std::to_string(A.rank()) + ", second has rank " +
                  std::to_string(B.rank()));
    return rep;
  }
  const Table3& C1 = first.canonical->table;
  const Table3& C2 = second.canonical->table;
  std::size_t rank = A.rank();
  std::vector<Rational> scale(rank, Rational(1));
  for (std::size_t k = 0; k < rank; ++k) {
    bool found = false;
    for (std::size_t i = 0; i < C1.size() && !found; ++i)
      for (std::size_t j = 0; j < C1[i].size() && !found; ++j) {
        const Poly& a = C1[i][j][k];
        const Poly& b = C2[i][j][k];
        if (a.is_zero() && b.is_zero()) continue;
        found = true;
        auto q = (a.is_zero() || b.is_zero()) ? std::nullopt : divide_exact(a, b);
        if (!q || !q->is_constant()) {
          rep.fail_note("generator " + std::to_string(k) + ": intertwiner entries " + a.to_string() + " and " +
                        b.to_string() + " are not proportional by a scalar");
          return rep;
        }
        scale[k] = q->constant_term();
      }
  }
  nlohmann::ordered_json js = nlohmann::ordered_json::array();
  for (const auto& s : scale) js.push_back(s.get_str());
  rep.details["scalars"] = js;
  for (std::size_t i = 0; i < C1.size(); ++i)
    for (std::size_t j = 0; j < C1[i].size(); ++j) {
      std::vector<Poly> diff;
      for (std::size_t k = 0; k < rank; ++k) diff.push_back(C2[i][j][k] * scale[k] - C1[i][j][k]);
      record_if_nonzero(rep, "intertwiner (" + std::to_string(i) + ", " + std::to_string(j) + ")", std::move(diff), {});
    }
  for (std::size_t g = 0; g < A.action_table().size(); ++g)
    for (std::size_t i = 0; i < rank; ++i) {
      std::vector<Poly> diff;
      for (std::size_t k = 0; k < rank; ++k)
        diff.push_back(B.action_table()[g][i][k] * scale[k] - A.action_table()[g][i][k] * scale[i]);
      record_if_nonzero(rep, "action row " + std::to_string(i), std::move(diff), B.gens());
    }
  return rep;
}

Report cross_check(const ModulePtr& m, const ModulePtr& n, const TruncationTable& trunc) {
  InducedModule first = induced_module(m, n, trunc);
  TensorSecond second = tensor_second(m, n);
  Report rep = compare_constructions(first, second);
  rep.subject = m->name() + " (x) " + n->name();
  rep.notes.push_back("first construction conditional on truncation table [" + trunc.to_string() + "]");
  if (!first.report.passed) rep.fail_note("first construction failed its own checks");
  if (!second.report.passed) rep.fail_note("second construction failed its own checks");
  return rep;
}

Report swap_check_first(const ModulePtr& m, const ModulePtr& n, const TruncationTable& trunc) {
  Report rep{.check = "commutativity-first", .subject = m->name() + ", " + n->name()};
  TruncationTable swapped{std::vector<std::vector<std::uint32_t>>(n->rank(), std::vector<std::uint32_t>(m->rank()))};
  for (std::size_t i = 0; i < m->rank(); ++i)
    for (std::size_t j = 0; j < n->rank(); ++j) swapped.l[j][i] = trunc.at(i, j);
  InducedModule a = induced_module(m, n, trunc);
  InducedModule b = induced_module(n, m, swapped);
  rep.absorb(a.report);
  rep.absorb(b.report);
  if (!a.module || !b.module) {
    rep.fail_note("a construction failed");
    return rep;
  }
  std::vector<std::size_t> perm;
  for (const auto& k : a.generators) {
    auto it = std::find(b.generators.begin(), b.generators.end(), StringKey{k.n, 0, k.j, 0, k.i});
    perm.push_back(static_cast<std::size_t>(it - b.generators.begin()));
  }
  compare_tables(rep, a.module->action_table(), b.module->action_table(), perm, "presentation");
  compare_operators(rep, transpose(*a.canonical).table, b.canonical->table, perm, "transpose vs swapped operator");
  return rep;
}

Report swap_check_second(const ModulePtr& m, const ModulePtr& n) {
  Report rep{.check = "commutativity-second", .subject = m->name() + ", " + n->name()};
  TensorSecond a = tensor_second(m, n);
  TensorSecond b = tensor_second(n, m);
  rep.absorb(a.report);
  rep.absorb(b.report);
  if (!a.module || !b.module) {
    rep.fail_note("a construction failed");
    return rep;
  }
  std::vector<std::size_t> perm;
  for (std::size_t x = 0; x < m->rank(); ++x)
    for (std::size_t y = 0; y < n->rank(); ++y) perm.push_back(y * m->rank() + x);
  compare_tables(rep, a.module->action_table(), b.module->action_table(), perm, "presentation");
  compare_operators(rep, transpose(*a.canonical).table, b.canonical->table, perm, "transpose vs swapped operator");
  return rep;
}

}  // namespace lca
