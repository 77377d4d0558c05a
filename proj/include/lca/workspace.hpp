// Named collections of algebras, modules, operators and maps loaded from a
// config file, plus the commands exposed by the command-line tool.
//
// Config format (one assignment per line, '#' starts a comment):
//
//   [params]
//   Delta, alpha
//   [algebra Vir]
//   gens: L
//   L L -> L = 2*lam + del
//   [module M over Vir]
//   gens: m
//   L m -> m = Delta*lam + del + alpha
//   [iop I : W ; M , N]
//   m n -> w = 1
//   [map phi : M -> scalar]
//   m = mu + alpha
//
// Missing entries are zero. A module reference of the form M(expr, expr)
// names the rank-one module over Vir with action expr*lam + del + expr.
#ifndef LCA_WORKSPACE_HPP
#define LCA_WORKSPACE_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lca/tensor_second.hpp"

namespace lca {

class Workspace {
 public:
  explicit Workspace(VarTablePtr vt) : vt_(std::move(vt)) {}
  // Parameters Delta, alpha, Delta2, alpha2 and the Virasoro algebra Vir.
  static Workspace builtin();

  const VarTablePtr& table() const { return vt_; }
  const std::map<std::string, AlgebraPtr>& algebras() const { return algebras_; }
  const std::map<std::string, ModulePtr>& modules() const { return modules_; }
  const std::map<std::string, IntertwiningOperator>& operators() const { return operators_; }
  const std::map<std::string, ConformalLinearMap>& maps() const { return maps_; }

  void add_algebra(AlgebraPtr a);
  void add_module(ModulePtr m);
  void add_operator(IntertwiningOperator op);
  void add_map(std::string name, ConformalLinearMap phi);

  AlgebraPtr algebra(std::string_view name) const;
  // Declared name or builtin M(expr, expr); builtin modules are cached.
  ModulePtr module(std::string_view ref);
  const IntertwiningOperator& iop(std::string_view name) const;
  const ConformalLinearMap& map(std::string_view name) const;

  // Linear combination of generators with coefficients in del and the parameters.
  AlgElement parse_element(const AlgebraPtr& a, std::string_view text) const;

 private:
  VarTablePtr vt_;
  std::map<std::string, AlgebraPtr> algebras_;
  std::map<std::string, ModulePtr> modules_;
  std::map<std::string, IntertwiningOperator> operators_;
  std::map<std::string, ConformalLinearMap> maps_;
};

Workspace load_config(std::string_view text, const std::string& source = "<input>");
Workspace load_json(const nlohmann::json& j);
// JSON if the file starts with '{', config format otherwise.
Workspace load_file(const std::string& path);

// "uniform:<k>" or a file with one row of integers per generator of m.
TruncationTable parse_truncation(const std::string& desc, const ConformalModule& m, const ConformalModule& n);

nlohmann::ordered_json algebra_json(const LieConformalAlgebra& a);
nlohmann::ordered_json module_json(const ConformalModule& m);
nlohmann::ordered_json operator_json(const IntertwiningOperator& op);

// "L_lam m = (Delta*lam + del + alpha)*m" per line.
std::string presentation_string(const ConformalModule& m);
std::string operator_string(const IntertwiningOperator& op);

struct CommandResult {
  int status = 0;  // 0 pass, 1 mathematical failure
  std::string text;
  std::vector<Report> reports;
  std::vector<ModulePtr> modules;
  std::vector<IntertwiningOperator> operators;
};

CommandResult cmd_check_algebra(Workspace& ws, const std::string& name);
CommandResult cmd_check_module(Workspace& ws, const std::string& ref);
CommandResult cmd_check_iop(Workspace& ws, const std::string& name);
CommandResult cmd_dual(Workspace& ws, const std::string& ref);
CommandResult cmd_chom_act(Workspace& ws, const std::string& element, const std::string& map);
CommandResult cmd_tensor(Workspace& ws, const std::string& left, const std::string& right, const std::string& method,
                         const std::string& trunc);
CommandResult cmd_report(Workspace& ws);

// Reports plus every presentation needed to reload the produced modules.
nlohmann::ordered_json result_json(const Workspace& ws, const std::string& command, const CommandResult& r);

}  // namespace lca

#endif  // LCA_WORKSPACE_HPP
