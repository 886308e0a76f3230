// One line per acceptance criterion; nonzero exit when any fails.

#include <iostream>

#include "capgeom/harness.hpp"

int main() {
  capgeom::SuiteOptions opts;
  opts.include_4_2 = true;
  opts.log = &std::cout;
  const auto r = capgeom::run_suite(opts);
  std::cout << (r.ok() ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " (" << r.criteria.size() << " criteria, "
            << r.seconds << " s)\n";
  return r.ok() ? 0 : 1;
}
