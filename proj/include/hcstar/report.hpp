#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace hcstar {

using Json = nlohmann::ordered_json;

struct Violation {
  std::string axiom;
  std::vector<std::int64_t> witness;
  double residual = 0.0;

  auto operator<=>(const Violation&) const = default;
};

/// Outcome of an exhaustive or sampled axiom check. `passed()` is true exactly
/// when no violation was recorded.
struct CheckReport {
  std::vector<Violation> violations;
  std::map<std::string, std::uint64_t> statistics;
  double max_residual = 0.0;
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }

  void add(std::string axiom, std::vector<std::int64_t> witness, double residual = 0.0);
  void count(const std::string& key, std::uint64_t n = 1) { statistics[key] += n; }
  void observe(double residual) {
    if (residual > max_residual) max_residual = residual;
  }
  void merge(const CheckReport& other);
  /// Sorts violations by (axiom, witness) so parallel runs are reproducible.
  void canonicalize();

  bool has_violation(const std::string& axiom) const;
  std::size_t violation_count(const std::string& axiom) const;

  Json to_json(std::size_t max_violations = 64) const;
};

}  // namespace hcstar
