#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lca/workspace.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lie conformal algebra workbench"};
  app.require_subcommand(1);
  std::string config, json_path;
  app.add_option("-c,--config", config, "workspace file (config format or emitted JSON)");
  app.add_option("--json", json_path, "write the full report as JSON to this path ('-' for stdout)");

  std::string name, other, method = "both", trunc = "uniform:1", element;
  auto* ca = app.add_subcommand("check-algebra", "skew-symmetry and Jacobi of an algebra");
  ca->add_option("algebra", name)->required();
  auto* cm = app.add_subcommand("check-module", "module Jacobi identity");
  cm->add_option("module", name)->required();
  auto* ci = app.add_subcommand("check-iop", "Jacobi identity of an intertwining operator");
  ci->add_option("operator", name)->required();
  auto* du = app.add_subcommand("dual", "conformal dual of a module");
  du->add_option("module", name)->required();
  auto* ch = app.add_subcommand("chom-act", "act on a conformal linear map");
  ch->add_option("element", element)->required();
  ch->add_option("map", name)->required();
  auto* te = app.add_subcommand("tensor", "tensor product of two modules");
  te->add_option("left", name)->required();
  te->add_option("right", other)->required();
  te->add_option("--method", method, "first, second or both")->check(CLI::IsMember({"first", "second", "both"}));
  te->add_option("--trunc", trunc, "uniform:<k> or a file of per-pair levels");
  auto* re = app.add_subcommand("report", "check every object in the workspace");
  for (auto* sub : {ca, cm, ci, du, ch, te, re}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    lca::Workspace ws = config.empty() ? lca::Workspace::builtin() : lca::load_file(config);
    lca::CommandResult result;
    std::string command = app.get_subcommands().front()->get_name();
    if (*ca)
      result = lca::cmd_check_algebra(ws, name);
    else if (*cm)
      result = lca::cmd_check_module(ws, name);
    else if (*ci)
      result = lca::cmd_check_iop(ws, name);
    else if (*du)
      result = lca::cmd_dual(ws, name);
    else if (*ch)
      result = lca::cmd_chom_act(ws, element, name);
    else if (*te)
      result = lca::cmd_tensor(ws, name, other, method, trunc);
    else
      result = lca::cmd_report(ws);

    bool json_stdout = json_path == "-";
    std::ostream& text = json_stdout ? std::cerr : std::cout;
    text << result.text;
    for (const auto& r : result.reports) text << r.summary();
    if (!json_path.empty()) {
      std::string dump = lca::result_json(ws, command, result).dump(2) + "\n";
      if (json_stdout) {
        std::cout << dump;
      } else {
        std::ofstream out(json_path);
        if (!out) {
          std::cerr << "error: cannot write " << json_path << "\n";
          return 2;
        }
        out << dump;
      }
    }
    return result.status;
  } catch (const lca::StepBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const lca::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
