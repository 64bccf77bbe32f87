#include "hcstar/report.hpp"

#include <algorithm>

namespace hcstar {

void CheckReport::add(std::string axiom, std::vector<std::int64_t> witness, double residual) {
  observe(residual);
  violations.push_back({std::move(axiom), std::move(witness), residual});
}

void CheckReport::merge(const CheckReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  for (const auto& [k, v] : other.statistics) statistics[k] += v;
  observe(other.max_residual);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

void CheckReport::canonicalize() {
  std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
    if (a.axiom != b.axiom) return a.axiom < b.axiom;
    return a.witness < b.witness;
  });
}

bool CheckReport::has_violation(const std::string& axiom) const {
  return violation_count(axiom) > 0;
}

std::size_t CheckReport::violation_count(const std::string& axiom) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == axiom; }));
}

Json CheckReport::to_json(std::size_t max_violations) const {
  Json j;
  j["passed"] = passed();
  j["violation_count"] = violations.size();
  Json list = Json::array();
  for (std::size_t i = 0; i < violations.size() && i < max_violations; ++i) {
    const auto& v = violations[i];
    Json e;
    e["axiom"] = v.axiom;
    e["witness"] = v.witness;
    if (v.residual != 0.0) e["residual"] = v.residual;
    list.push_back(std::move(e));
  }
  j["violations"] = std::move(list);
  Json stats = Json::object();
  for (const auto& [k, v] : statistics) stats[k] = v;
  j["statistics"] = std::move(stats);
  j["max_residual"] = max_residual;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace hcstar
