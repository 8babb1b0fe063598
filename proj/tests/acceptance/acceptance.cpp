// Prints one line per acceptance criterion and exits nonzero when any fails.
// Pass --json PATH to also write the full data tables.

#include <cstring>
#include <fstream>
#include <iostream>

#include "qexp/harness.hpp"

int main(int argc, char** argv) {
  const char* json_path = nullptr;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--json") == 0) json_path = argv[i + 1];
  }
  qexp::Json all = qexp::Json::array();
  int failed = 0;
  for (const auto& name : qexp::suite_names()) {
    const auto suite = qexp::run_suite(name);
    for (const auto& c : suite.criteria) {
      std::cout << "criterion " << c.id << " [" << (c.passed ? "PASS" : "FAIL") << "] " << c.title << ": " << c.summary
                << std::endl;
      failed += c.passed ? 0 : 1;
    }
    all.push_back(suite.to_json());
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << std::endl;
  if (json_path) std::ofstream(json_path) << all.dump(2) << '\n';
  return failed == 0 ? 0 : 1;
}
