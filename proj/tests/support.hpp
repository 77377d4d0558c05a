// Hand-rolled generators and small exact linear algebra for the tests.
#ifndef LCA_TESTS_SUPPORT_HPP
#define LCA_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "lca/intertwining.hpp"

namespace lca::testkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  // p/q with |p| <= range, 1 <= q <= den
  Rational rational(int range = 5, int den = 3) {
    Rational r(uniform(-range, range), uniform(1, den));
    r.canonicalize();
    return r;
  }
  Rational nonzero_rational(int range = 5, int den = 3) {
    for (;;) {
      Rational r = rational(range, den);
      if (r != 0) return r;
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Random polynomial in `among` (total degree <= max_degree) with rational
// coefficients, optionally multiplied into parameter monomials.
inline Poly random_poly(Rng& rng, const VarTablePtr& vt, const std::vector<Var>& among, unsigned max_degree,
                        int terms, const std::vector<Var>& params = {}) {
  Poly out(vt);
  for (int t = 0; t < terms; ++t) {
    Exponents e(vt->size(), 0);
    unsigned left = max_degree;
    for (Var v : among) {
      unsigned k = static_cast<unsigned>(rng.uniform(0, static_cast<int>(left)));
      e[v.index] = k;
      left -= k;
    }
    for (Var p : params)
      if (rng.uniform(0, 2) == 0) e[p.index] += 1;
    out += Poly::monomial(vt, e, rng.rational());
  }
  return out;
}

inline Poly num(const VarTablePtr& vt, const Rational& c) { return Poly::constant(vt, c); }

// Rank-two sum of M_{d1,a1} and M_{d2,a2} written in the basis P u.
inline ModulePtr conjugated_sum(const AlgebraPtr& vir, const Poly& d1, const Poly& a1, const Poly& d2, const Poly& a2,
                                const std::vector<std::vector<Rational>>& P, const std::string& name) {
  const VarTablePtr& vt = vir->table();
  Poly lam = Poly::variable(vt, vars::lam), del = Poly::variable(vt, vars::del);
  Poly diag[2] = {d1 * lam + del + a1, d2 * lam + del + a2};
  Rational det = P[0][0] * P[1][1] - P[0][1] * P[1][0];
  Rational inv[2][2] = {{P[1][1] / det, -P[0][1] / det}, {-P[1][0] / det, P[0][0] / det}};
  Table3 t(1, std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(vt))));
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 2; ++l)
      for (int j = 0; j < 2; ++j) t[0][i][l] += diag[j] * (P[i][j] * inv[j][l]);
  return std::make_shared<const ConformalModule>(name, vir, std::vector<std::string>{name + "1", name + "2"},
                                                 std::move(t));
}

inline std::vector<std::vector<Rational>> random_invertible(Rng& rng) {
  for (;;) {
    std::vector<std::vector<Rational>> P{{rng.rational(3, 2), rng.rational(3, 2)}, {rng.rational(3, 2), rng.rational(3, 2)}};
    if (P[0][0] * P[1][1] - P[0][1] * P[1][0] != 0) return P;
  }
}

// Basis of {x : rows * x = 0} over Q.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t k = 0; k < n; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
    std::vector<Rational> v(n, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// All operators of type (W; M, N) whose entries have (gam, del)-degree at
// most `degree`: the Jacobi residual is linear in the unknown coefficients,
// which live in the parameters x0, x1, ... of the common variable table.
// Returns a random nonzero element of that space, or nullopt if it is {0}.
inline std::optional<IntertwiningOperator> random_valid_operator(Rng& rng, const ModulePtr& W, const ModulePtr& M,
                                                                  const ModulePtr& N, unsigned degree,
                                                                  const std::string& unknown_prefix = "x") {
  const VarTablePtr& vt = W->table();
  Poly gam = Poly::variable(vt, vars::gam), del = Poly::variable(vt, vars::del);
  IntertwiningOperator op = IntertwiningOperator::zero("R", W, M, N);
  std::vector<Var> unknowns;
  for (std::size_t i = 0; i < M->rank(); ++i)
    for (std::size_t j = 0; j < N->rank(); ++j)
      for (std::size_t k = 0; k < W->rank(); ++k)
        for (unsigned p = 0; p <= degree; ++p)
          for (unsigned q = 0; p + q <= degree; ++q) {
            Var x = vt->require(unknown_prefix + std::to_string(unknowns.size()));
            unknowns.push_back(x);
            op.table[i][j][k] += Poly::variable(vt, x) * gam.pow(p) * del.pow(q);
          }
  Report rep = check_iop(op);
  std::vector<Var> formal{vars::lam, vars::mu, vars::gam, vars::t, vars::del};
  std::vector<std::vector<Rational>> rows;
  for (const auto& res : rep.residuals)
    for (const auto& comp : res.components)
      for (const auto& [e, c] : comp.split(formal)) {
        std::vector<Rational> row(unknowns.size(), 0);
        for (std::size_t u = 0; u < unknowns.size(); ++u) row[u] = c.coeff(unknowns[u], 1).constant_term();
        rows.push_back(std::move(row));
      }
  auto basis = nullspace(rows, unknowns.size());
  if (basis.empty()) return std::nullopt;
  std::vector<Rational> values(unknowns.size(), 0);
  bool nonzero = false;
  while (!nonzero) {
    for (const auto& b : basis) {
      Rational w = rng.rational(3, 2);
      for (std::size_t u = 0; u < unknowns.size(); ++u) values[u] += w * b[u];
    }
    for (const auto& v : values) nonzero = nonzero || v != 0;
  }
  std::vector<std::pair<Var, Poly>> subst;
  for (std::size_t u = 0; u < unknowns.size(); ++u) subst.push_back({unknowns[u], Poly::constant(vt, values[u])});
  for (auto& plane : op.table)
    for (auto& row : plane)
      for (auto& p : row) p = p.substitute(subst);
  return op;
}

inline std::vector<std::string> unknown_names(std::size_t count, const std::string& prefix = "x") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace lca::testkit

#endif  // LCA_TESTS_SUPPORT_HPP
