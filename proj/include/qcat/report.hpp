#pragma once

#include <string>
#include <vector>

namespace qcat {

/// A list of law/contract violations. Empty means the checked object is valid.
struct Report {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string line) { violations.push_back(std::move(line)); }
  void merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      out += v;
      out += '\n';
    }
    return out;
  }
};

}  // namespace qcat
