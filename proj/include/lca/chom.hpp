// Conformal linear maps, the Chom lambda-action and conformal duals.
//
// A conformal linear map phi: U -> V is stored on the generators of U as
//   phi_mu(u_j) = sum_i Phi[i][j](mu, del) w_i
// and extended by phi_mu(del u) = (mu + del) phi_mu(u). A null target means
// the scalar module C, on which del acts by zero.
//
// Duals use the convention (p(del) f)_mu = p(-mu) f_mu, so that
// (u_j^*)_mu (p(del) u_k) = delta_jk p(mu).
#ifndef LCA_CHOM_HPP
#define LCA_CHOM_HPP

#include "lca/module.hpp"

namespace lca {

struct ConformalLinearMap {
  ModulePtr source;
  ModulePtr target;  // nullptr: the scalar module C
  Matrix matrix;     // [target generator][source generator]

  static ConformalLinearMap zero(const ModulePtr& source, const ModulePtr& target);
  static ConformalLinearMap identity(const ModulePtr& m);

  std::size_t target_rank() const { return target ? target->rank() : 1; }
  bool is_zero() const;
  // (del phi)_mu = -mu phi_mu
  ConformalLinearMap derivative() const;
  ConformalLinearMap& operator+=(const ConformalLinearMap& o);
  friend ConformalLinearMap operator+(ConformalLinearMap a, const ConformalLinearMap& b) { return a += b; }
  friend ConformalLinearMap operator-(ConformalLinearMap a, const ConformalLinearMap& b);
  friend ConformalLinearMap operator*(const Poly& c, ConformalLinearMap a);
  friend bool operator==(const ConformalLinearMap& a, const ConformalLinearMap& b) {
    return a.matrix == b.matrix;
  }
  std::string to_string() const;
};

// phi_var(u); components in (var, del).
std::vector<Poly> clm_apply_at(const ConformalLinearMap& phi, const ModElement& u, const Poly& shift);
ModElement clm_apply(const ConformalLinearMap& phi, const ModElement& u, std::string_view var);
// Value of a scalar-valued map.
Poly evaluate_functional(const ConformalLinearMap& phi, const ModElement& u, std::string_view var);

// (a_var phi)_mu u = a_var(phi_{mu-var} u) - phi_{mu-var}(a_var u)
ConformalLinearMap chom_action(const AlgElement& a, const ConformalLinearMap& phi, std::string_view var);
ConformalLinearMap chom_action_at(const AlgElement& a, const ConformalLinearMap& phi, const Poly& shift);

// Sesquilinearity and Jacobi of the Chom action for the pair (a, b) on phi.
Report check_chom_laws(const AlgElement& a, const AlgElement& b, const ConformalLinearMap& phi);

struct DualModule {
  ModulePtr base;
  ModulePtr dual;
  Report verification;

  // The element f of the dual viewed as a functional base -> C.
  ConformalLinearMap functional(const ModElement& f) const;
};

// Dual with Q[g][k][j](lam, del) = -P[g][j][k](lam, -lam-del); the pairing
// relation (a_lam f)_mu(u) = -f_{mu-lam}(a_lam u) is replayed on every
// generator triple and recorded in `verification`.
DualModule dual_module(const ModulePtr& m);

// f_var(u) for f in the dual of u's module.
Poly pair(const ModElement& f, const ModElement& u, std::string_view var);
Poly pair_at(const ModElement& f, const ModElement& u, const Poly& shift);

// C[del]-linear map T(u_j) = sum_i T[i][j](del) w_i.
struct ModuleHom {
  ModulePtr source;
  ModulePtr target;
  Matrix matrix;

  static ModuleHom identity(const ModulePtr& m);
  ModElement apply(const ModElement& u) const;
  friend bool operator==(const ModuleHom& a, const ModuleHom& b) { return a.matrix == b.matrix; }
};

// T(g_lam u) = g_lam T(u) on every generator pair.
Report check_homomorphism(const ModuleHom& t);
// s after t
ModuleHom compose(const ModuleHom& s, const ModuleHom& t);

struct DualHom {
  ModuleHom hom;
  Report verification;
};

// [T^*(f)]_lam(u) = f_lam(T u), mapping dual(target) -> dual(source).
DualHom dual_hom(const ModuleHom& t, const DualModule& source_dual, const DualModule& target_dual);
DualHom dual_hom(const ModuleHom& t);

struct DoubleDual {
  DualModule dual;
  DualModule double_dual;
  ModuleHom iso;  // u_i -> (u_i^*)^*
  Report verification;
};

DoubleDual double_dual_iso(const ModulePtr& m);

// (f (x) v)_lam(u) = f_{lam + del}(u) v for f in dual(U), v in V.
ConformalLinearMap ident_41(const ModElement& f, const ModElement& v);
ConformalLinearMap ident_41(const TensorElement& x);

}  // namespace lca

#endif  // LCA_CHOM_HPP
