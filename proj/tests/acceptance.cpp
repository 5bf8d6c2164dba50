// One PASS/FAIL line per acceptance criterion. Tolerances are the built-in
// Thresholds defaults; data/thresholds.json must match them (unit-tested).
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arith.hpp"
#include "verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> which;
  unsigned threads = 0;
  qfdiv::u64 seed = 1;
  app.add_option("--criterion", which, "Criteria to run (default 1..10)")->check(CLI::Range(1, 10));
  app.add_option("--threads", threads);
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) {
    for (int k = 1; k <= 10; ++k) which.push_back(k);
  }
  qfdiv::arith::setFactorSeed(seed);
  const qfdiv::verify::Thresholds pinned;
  bool all = true;
  for (int k : which) {
    const auto r = qfdiv::verify::criterion(k, pinned, threads, seed);
    all = all && r.passed;
    std::printf("%s\n", qfdiv::verify::formatLine(r).c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
