#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frontwave {

/// Outcome of a property check over many cases.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  std::string name;
  std::int64_t cases = 0;
  std::int64_t violations = 0;
  /// First few violation descriptions.
  std::vector<std::string> details;

  bool ok() const { return violations == 0; }

  void pass() { ++cases; }
  void fail(std::string what) {
    ++cases;
    ++violations;
    if (details.size() < kMaxDetails) details.push_back(std::move(what));
  }
  void expect(bool cond, const std::string& what) { cond ? pass() : fail(what); }
  void merge(const CheckReport& other) {
    cases += other.cases;
    violations += other.violations;
    for (const auto& d : other.details) {
      if (details.size() < kMaxDetails) details.push_back(d);
    }
  }

  static constexpr std::size_t kMaxDetails = 16;
};

}  // namespace frontwave
