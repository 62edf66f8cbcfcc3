// One line per acceptance criterion. Exit status is nonzero when any fails.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "squeezegate/acceptance.hpp"

int main(int argc, char** argv) {
  int threads = 8;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--threads") == 0) threads = std::atoi(argv[i + 1]);
  int failed = 0;
  sqg::run_acceptance(threads, [&](const sqg::CriterionResult& r) {
    std::cout << sqg::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
