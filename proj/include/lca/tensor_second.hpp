// The tensor product as the conformal dual of a finite submodule of
// Chom(M, N*), and comparisons between the two constructions.
#ifndef LCA_TENSOR_SECOND_HPP
#define LCA_TENSOR_SECOND_HPP

#include "lca/frac.hpp"
#include "lca/tensor_first.hpp"

namespace lca {

// The candidate Delta(M, N*): generated by psi_{ab} = u_a* (x) v_b* viewed in
// Chom(M, N*). When closed, g_lam psi_s = sum_s' c[g][s][s'](lam, del) psi_s'.
struct CandidateSubmodule {
  ModulePtr M, N;
  DualModule n_dual;
  std::vector<ConformalLinearMap> gens;
  std::vector<std::string> names;
  bool closed = false;
  Table3 certificate;
  ModulePtr module;  // the presentation read off the certificate
  Report report;
};

CandidateSubmodule candidate_delta(const ModulePtr& m, const ModulePtr& n);

struct TensorSecond {
  CandidateSubmodule candidate;
  ModulePtr module;  // dual of the candidate; null on failure
  std::optional<IntertwiningOperator> canonical;
  Report report;
};

TensorSecond tensor_second(const ModulePtr& m, const ModulePtr& n);

// Both constructions, compared up to rescaling of generators.
Report cross_check(const ModulePtr& m, const ModulePtr& n, const TruncationTable& trunc);
// Same comparison on already computed results.
Report compare_constructions(const InducedModule& first, const TensorSecond& second);

// Swapping the factors: presentations agree under the generator swap and the
// canonical operator of (N, M) is the transpose of that of (M, N).
Report swap_check_first(const ModulePtr& m, const ModulePtr& n, const TruncationTable& trunc);
Report swap_check_second(const ModulePtr& m, const ModulePtr& n);

}  // namespace lca

#endif  // LCA_TENSOR_SECOND_HPP
