#pragma once

// Verification suites and the report envelope shared by the CLI and the
// acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

#include "qexp/io.hpp"

namespace qexp {

struct RunReport {
  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  Json certificates = Json::array();
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;

  Json to_json() const;
  /// Everything except the wall time; identical inputs give identical payloads.
  Json payload() const;
  static RunReport from_json(const Json& j);
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;
  Json data = Json::object();
};

struct SuiteReport {
  std::string name;
  std::vector<CriterionResult> criteria;
  double wall_time_ms = 0.0;

  bool passed() const;
  Json to_json() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::int64_t trials = 100'000;
  int random_functions = 50;
  int boolean_samples_n4 = 200;
  std::vector<double> epsilons{0.1, 0.25, 0.3, 0.45};
  PsdOptions psd;
};

/// gap, expectation, cubic, lowerbound, grover, factorization, matching, hierarchy.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

/// All nine criteria in order.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& options = {});

CriterionResult check_gap(const SuiteOptions& options);
CriterionResult check_expectation(const SuiteOptions& options);
CriterionResult check_cubic(const SuiteOptions& options);
CriterionResult check_lower_bound(const SuiteOptions& options);
CriterionResult check_tailored_search(const SuiteOptions& options);
CriterionResult check_approx_function(const SuiteOptions& options);
CriterionResult check_factorizations(const SuiteOptions& options);
CriterionResult check_matching(const SuiteOptions& options);
CriterionResult check_hierarchy(const SuiteOptions& options);

/// Random nonnegative function with values in {0, 1/2, 1, ..., 3}.
PointFunction random_function(int n, CounterRng& rng);
PointFunction random_boolean_function(int n, CounterRng& rng);

}  // namespace qexp
