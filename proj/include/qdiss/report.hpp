#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qdiss {

/// How much of the input a check actually covered.
enum class Scope { Exhaustive, Sampled };

inline const char* to_string(Scope s) { return s == Scope::Exhaustive ? "exhaustive" : "sampled"; }

struct Violation {
  std::string rule;
  std::vector<std::string> witness;

  std::string str() const {
    std::ostringstream os;
    os << rule << " (";
    for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? ", " : "") << witness[i];
    os << ")";
    return os.str();
  }
};

/// Witness-bearing result of a validator. Empty violation list means valid.
struct ValidationReport {
  Scope scope = Scope::Exhaustive;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }

  // Keeps the first witness per rule; later hits of the same rule are dropped.
  void add(std::string rule, std::vector<std::string> witness) {
    if (violates(rule)) return;
    violations.push_back({std::move(rule), std::move(witness)});
  }

  bool violates(const std::string& rule) const {
    for (const auto& v : violations)
      if (v.rule == rule) return true;
    return false;
  }

  void merge(const ValidationReport& other) {
    if (other.scope == Scope::Sampled) scope = Scope::Sampled;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }

  std::string str() const {
    if (ok()) return std::string("valid (") + to_string(scope) + ")";
    std::ostringstream os;
    os << violations.size() << " violation(s) (" << to_string(scope) << ")";
    for (const auto& v : violations) os << "\n  " << v.str();
    return os.str();
  }
};

}  // namespace qdiss
