// Intertwining operators I of type (W; M, N), stored on generator pairs:
//   I_gam(u_i, v_j) = sum_k C[i][j][k](gam, del) w_k
// and extended by I(del u, v) = -gam I(u, v), I(u, del v) = (gam + del) I(u, v).
#ifndef LCA_INTERTWINING_HPP
#define LCA_INTERTWINING_HPP

#include "lca/chom.hpp"

namespace lca {

struct IntertwiningOperator {
  std::string name;
  ModulePtr W, M, N;
  Table3 table;  // [M generator][N generator][W generator]

  IntertwiningOperator(std::string name, ModulePtr W, ModulePtr M, ModulePtr N, Table3 table);
  static IntertwiningOperator zero(std::string name, ModulePtr W, ModulePtr M, ModulePtr N);

  const VarTablePtr& vars() const { return W->table(); }
  std::string type_string() const;
  friend bool operator==(const IntertwiningOperator& a, const IntertwiningOperator& b) {
    return a.table == b.table;
  }
};

ModElement iop_apply(const IntertwiningOperator& op, const ModElement& u, const ModElement& v, std::string_view var);
ModElement iop_apply_at(const IntertwiningOperator& op, const ModElement& u, const ModElement& v, const Poly& shift);

// a_lam I_gam(u, v) = I_{lam+gam}(a_lam u, v) + I_gam(u, a_lam v)
Report check_iop(const IntertwiningOperator& op);

// The action of the algebra on M as an operator of type (M; R, M).
IntertwiningOperator from_module_action(const ModulePtr& m);

// (I^t)_gam(v, u) = I_{-gam-del}(u, v), type (W; N, M).
IntertwiningOperator transpose(const IntertwiningOperator& op);

struct AdjointResult {
  IntertwiningOperator op;  // type (N*; M, W*)
  DualModule n_dual, w_dual;
  Report verification;      // [(I*)_lam(u, f)]_mu(v) = -f_{mu-lam}(I_lam(u, v))
};

AdjointResult adjoint(const IntertwiningOperator& op, const DualModule& n_dual, const DualModule& w_dual);
AdjointResult adjoint(const IntertwiningOperator& op);

// psi(u_i): N -> W with psi(u_i)_mu(v) = I_mu(u_i, v).
std::vector<ConformalLinearMap> to_hom_psi(const IntertwiningOperator& op);
// psi(p(del) u_i) = p(-mu) psi(u_i).
ConformalLinearMap psi_of(const IntertwiningOperator& op, const ModElement& u);
// Conformal linearity, del-compatibility and psi(g_lam u) = g_lam psi(u).
Report verify_psi(const IntertwiningOperator& op);

// Same table, new modules; each replacement must carry an identical presentation.
IntertwiningOperator retype(const IntertwiningOperator& op, ModulePtr W, ModulePtr M, ModulePtr N);

bool same_presentation(const ConformalModule& a, const ConformalModule& b);

}  // namespace lca

#endif  // LCA_INTERTWINING_HPP
