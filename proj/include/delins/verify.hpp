#pragma once

// Self-verification suites: every structural identity the library's closed
// forms rest on, checked against independent enumeration over exhaustive
// small grids (or random sampling where the statement is about arbitrary
// pairs).  Each suite returns counts plus the first counterexample, so a
// red run says exactly which object broke which identity.

#include <cstdint>
#include <string>
#include <vector>

namespace delins {

struct SuiteOptions {
  // Alphabet size for the exhaustive suites (the binary-only suites ignore
  // it and always run at q = 2).
  int q = 2;
  // Exhaustive suites enumerate all words up to this length.
  int max_len = 8;
  // Sampled suites draw this many random instances.
  unsigned long long trials = 10000;
  std::uint64_t seed = 0x5eed1e5517ULL;
};

struct SuiteResult {
  std::string suite;
  unsigned long long checks = 0;
  unsigned long long failures = 0;
  std::string first_counterexample;

  bool ok() const { return failures == 0; }
};

// The available suites:
//   closed-vs-enum    closed-form entropies against ball enumeration
//   duality           input/output entropy equalities across the channels
//   extremizers       extremal witness sets and values against full scans
//   averages          closed averages, enumerated averages, bounds, ordering
//   lemma-alpha       the prepend recursion for embedding numbers (sampled)
//   correction-lemma  segment-extension words/counts and the first-layer
//                     prepend corollary
//   w-recursions      the two-layer weight log-sum recursions
//   appendix-claim    argmax of the prepend weight gap
//   normalization     exact ball totals and first-layer ball size
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace delins
