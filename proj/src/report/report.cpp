#include "qsym/report/report.hpp"

#include <algorithm>

namespace qsym::report {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::GenericPointCertificate:
      return "generic-point-certificate";
  }
  return "fail";
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::Fail; }));
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void VerificationReport::prefix_ids(const std::string& scope) {
  for (auto& c : checks) c.id = scope + "/" + c.id;
}

Check identity_check(std::string id, std::string claim, bool holds, std::string witness) {
  return Check{std::move(id), std::move(claim), holds ? Status::Pass : Status::Fail, std::move(witness), 0};
}

Check sampled_check(std::string id, std::string claim, bool holds, std::string witness) {
  return Check{std::move(id), std::move(claim), holds ? Status::GenericPointCertificate : Status::Fail,
               std::move(witness), 0};
}

}  // namespace qsym::report
