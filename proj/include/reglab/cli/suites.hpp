#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reglab/regulator/regulator.hpp"

namespace reglab::cli {

struct Report {
  std::string check;
  std::string status;  // pass, fail or error
  Rational lhs = 0, rhs = 0;
  std::optional<RegulatorConstant> constant;
  std::uint64_t seed = 0;
  std::string group;
  std::string digest;  // empty when no module is involved
  nlohmann::json details = nlohmann::json::object();
  std::string error;
};

nlohmann::json report_json(const Report& r);
Report from_identity(const IdentityReport& r, std::uint64_t seed, const GModule* M);

struct SuiteParams {
  std::vector<std::size_t> q;  // empty: suite default
  std::size_t trials = 10;
  std::uint64_t seed = 1;
};

struct SuiteResult {
  std::string suite;
  nlohmann::json params;
  std::vector<Report> reports;
  std::vector<std::string> skipped;
  std::size_t cross_checks = 0;  // pairing/q-index agreements during this run

  std::size_t count(const std::string& prefix, const std::string& status = "") const;
  nlohmann::json to_json() const;
  /// 0 when everything passed, 1 on a failure, 3 when only resource limits got in the way.
  int exit_code() const;
};

const std::vector<std::string>& suite_names();
/// Throws ValidationError for an unknown suite. InternalError (route disagreement)
/// propagates and aborts the run.
SuiteResult run_suite(const std::string& name, const SuiteParams& params);

/// |Ĥ¹(H,V)| for an F_p-module by linear algebra over F_p on all inhomogeneous cochains.
Int h1_order_mod_p(const GModule& M, const Subgroup& H, long p);

}  // namespace reglab::cli
