#include <doctest.h>

#include <stdexcept>

#include "delins/verify.hpp"

using namespace delins;

namespace {

SuiteOptions cheap_options() {
  SuiteOptions opts;
  opts.q = 2;
  opts.max_len = 6;
  opts.trials = 300;
  return opts;
}

}  // namespace

TEST_CASE("suite registry") {
  const std::vector<std::string> names = suite_names();
  CHECK(names.size() == 9);
  CHECK_THROWS_AS(run_suite("no-such-suite", cheap_options()),
                  std::invalid_argument);
}

TEST_CASE("every suite is green at reduced settings") {
  // The acceptance gate runs these at full depth; here each suite gets a
  // small grid so a regression in any identity still fails fast.
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    const SuiteResult res = run_suite(name, cheap_options());
    CHECK(res.suite == name);
    CHECK(res.checks > 0);
    CHECK(res.failures == 0);
    CHECK(res.first_counterexample.empty());
  }
}

TEST_CASE("suites honour the alphabet option where it applies") {
  SuiteOptions opts = cheap_options();
  opts.q = 3;
  opts.max_len = 5;
  for (const std::string& name :
       {std::string("closed-vs-enum"), std::string("duality"),
        std::string("normalization"), std::string("averages")}) {
    CAPTURE(name);
    const SuiteResult res = run_suite(name, opts);
    CHECK(res.failures == 0);
  }
}
