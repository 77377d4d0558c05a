#include "lca/report.hpp"

#include <algorithm>
#include <sstream>

namespace lca {

void Report::absorb(const Report& other) {
  passed = passed && other.passed;
  for (const auto& r : other.residuals) {
    Residual copy = r;
    copy.location = other.check + ": " + r.location;
    residuals.push_back(std::move(copy));
  }
  for (const auto& n : other.notes) notes.push_back(other.check + ": " + n);
  for (const auto& s : other.side_conditions)
    if (std::find(side_conditions.begin(), side_conditions.end(), s) == side_conditions.end())
      side_conditions.push_back(s);
  details["subchecks"].push_back({{"check", other.check}, {"subject", other.subject}, {"passed", other.passed}});
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["subject"] = subject;
  j["passed"] = passed;
  auto& res = j["residuals"] = nlohmann::ordered_json::array();
  for (const auto& r : residuals) {
    nlohmann::ordered_json comps = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.components.size(); ++i) {
      if (r.components[i].is_zero()) continue;
      std::string key = i < r.basis.size() ? r.basis[i] : std::to_string(i);
      comps[key] = r.components[i].to_string();
    }
    res.push_back({{"location", r.location}, {"components", comps}});
  }
  j["notes"] = notes;
  auto& sc = j["side_conditions"] = nlohmann::ordered_json::array();
  for (const auto& s : side_conditions) sc.push_back(s.to_string() + " != 0");
  j["details"] = details;
  return j;
}

std::string Report::summary() const {
  std::ostringstream os;
  os << (passed ? "PASS" : "FAIL") << "  " << check;
  if (!subject.empty()) os << " " << subject;
  os << "\n";
  for (const auto& r : residuals) {
    os << "    residual at " << r.location << ":";
    for (std::size_t i = 0; i < r.components.size(); ++i) {
      if (r.components[i].is_zero()) continue;
      os << " [" << (i < r.basis.size() ? r.basis[i] : std::to_string(i)) << "] " << r.components[i];
    }
    os << "\n";
  }
  for (const auto& n : notes) os << "    note: " << n << "\n";
  for (const auto& s : side_conditions) os << "    assuming " << s << " != 0\n";
  return os.str();
}

bool record_if_nonzero(Report& report, std::string location, std::vector<Poly> components,
                       std::vector<std::string> basis) {
  bool nonzero = std::any_of(components.begin(), components.end(), [](const Poly& p) { return !p.is_zero(); });
  if (nonzero) report.fail({std::move(location), std::move(components), std::move(basis)});
  return nonzero;
}

}  // namespace lca
