#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace qsym::report {

enum class Status { Pass, Fail, GenericPointCertificate };

std::string to_string(Status s);

struct Check {
  std::string id;
  std::string claim;  // the mathematical statement being certified
  Status status = Status::Fail;
  std::string witness;  // nonzero residue, rank counts, or other evidence
  double elapsed_ms = 0;
};

struct VerificationReport {
  std::vector<Check> checks;

  bool passed() const;
  std::size_t failures() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const VerificationReport& other);
  // Prefix every id with scope + "/".
  void prefix_ids(const std::string& scope);
};

// Pass/fail check from an exact identity.
Check identity_check(std::string id, std::string claim, bool holds, std::string witness);
// Rank-type check certified at sampled points only.
Check sampled_check(std::string id, std::string claim, bool holds, std::string witness);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace qsym::report
