// Acceptance gate: runs the pinned acceptance criteria and prints one
// verdict line per criterion.  With no arguments all criteria run; with a
// single numeric argument only that criterion runs (this is how the ctest
// entries invoke it).  Exit status is nonzero when any executed criterion
// fails, statistical shortfalls included — this binary is the strict gate,
// unlike the exploratory CLI which downgrades statistical misses by default.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "sketchlab/criteria.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion-id]\n", argv[0]);
    return 2;
  }
  if (argc == 2) {
    int id = 0;
    try {
      id = std::stoi(argv[1]);
    } catch (const std::exception&) {
      id = 0;
    }
    if (id < 1 || id > sketchlab::kCriterionCount) {
      std::fprintf(stderr, "criterion id must be in [1, %d]\n",
                   sketchlab::kCriterionCount);
      return 2;
    }
    ids.push_back(id);
  } else {
    for (int id = 1; id <= sketchlab::kCriterionCount; ++id)
      ids.push_back(id);
  }

  bool all_pass = true;
  for (const int id : ids) {
    try {
      const sketchlab::CriterionResult r = sketchlab::run_criterion(id);
      std::printf("%s\n", sketchlab::criterion_verdict_line(r).c_str());
      std::fflush(stdout);
      all_pass = all_pass && r.pass;
    } catch (const std::exception& e) {
      std::printf("criterion %d FAIL exception: %s\n", id, e.what());
      std::fflush(stdout);
      all_pass = false;
    }
  }
  return all_pass ? 0 : 1;
}
