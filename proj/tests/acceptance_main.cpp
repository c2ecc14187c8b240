// Runs the numbered acceptance criteria; one line per criterion.
#include <cstdlib>
#include <iostream>
#include <thread>

#include "steiner/acceptance.hpp"

int main() {
  steiner::AcceptanceOptions opts;
  opts.extended = true;
  opts.jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto results = steiner::run_acceptance(opts, [](const steiner::CriterionResult& r) {
    std::cout << steiner::summary_line(r) << std::endl;
  });
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  return passed == results.size() ? EXIT_SUCCESS : EXIT_FAILURE;
}
