#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "auction/suite.hpp"

// Usage: acceptance [criterion ids...]
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int a = 1; a < argc; ++a) only.push_back(std::atoi(argv[a]));
  bool all_passed = true;
  auction::run_acceptance(only, [&](const auction::CriterionResult& r) {
    all_passed = all_passed && r.passed;
    std::printf("%s criterion %d (%s) [%.2f s]: %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds, r.summary.c_str());
    std::fflush(stdout);
  });
  return all_passed ? 0 : 1;
}
