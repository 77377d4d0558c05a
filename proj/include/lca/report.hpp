#ifndef LCA_REPORT_HPP
#define LCA_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "lca/poly.hpp"

namespace lca {

// A nonzero residual found by one of the checks: where it occurred and
// the offending components (one Poly per generator of the target space).
struct Residual {
  std::string location;
  std::vector<Poly> components;
  std::vector<std::string> basis;
};

// Outcome of a check or construction. Failures are data, not exceptions.
struct Report {
  std::string check;
  std::string subject;
  bool passed = true;
  std::vector<Residual> residuals;
  std::vector<std::string> notes;
  std::vector<Poly> side_conditions;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  void fail(Residual r) {
    passed = false;
    residuals.push_back(std::move(r));
  }
  void fail_note(std::string note) {
    passed = false;
    notes.push_back(std::move(note));
  }
  // Folds another report in as a sub-check.
  void absorb(const Report& other);

  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

// Records a residual only if some component is nonzero.
bool record_if_nonzero(Report& report, std::string location, std::vector<Poly> components,
                       std::vector<std::string> basis);

}  // namespace lca

#endif  // LCA_REPORT_HPP
