#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "delins/cli.hpp"

using namespace delins;

namespace {

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun result;
  result.exit_code = run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Value of a "key=value" line in a report.
double value_of(const std::string& text, const std::string& key) {
  const std::string tag = key + "=";
  const std::size_t pos = text.find(tag);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + tag.size()));
}

}  // namespace

TEST_CASE("cli: embed") {
  const CliRun r = run({"embed", "--y", "120", "--x", "11220", "--q", "3"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "4\n");
}

TEST_CASE("cli: ball") {
  const CliRun r = run({"ball", "--kind", "del", "--word", "0100",
                        "--radius", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "word,count\n000,1\n010,2\n100,1\n");
}

TEST_CASE("cli: entropy, both methods agree") {
  const CliRun r = run({"entropy", "--channel", "del", "--k", "1", "--word",
                        "01", "--direction", "input"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "method=closed_form"));
  CHECK(contains(r.out, "method=enumeration"));
  CHECK(std::abs(value_of(r.out, "difference_bits")) <= 1e-9);
}

TEST_CASE("cli: entropy, csv output") {
  const CliRun r = run({"entropy", "--channel", "ins", "--k", "1", "--word",
                        "001", "--method", "closed", "--format", "csv"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "insertion,1,2,001,input,closed_form,"));
}

TEST_CASE("cli: spectrum") {
  const CliRun r = run({"spectrum", "--channel", "del", "--word", "0011"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "case,weight,multiplicity\n"));
  const CliRun bad = run({"spectrum", "--channel", "del", "--word", "012",
                          "--q", "3"});
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cli: extremes, closed and scanned") {
  const CliRun closed = run({"extremes", "--channel", "del", "--k", "1",
                             "--m", "4", "--which", "min"});
  CHECK(closed.exit_code == 0);
  CHECK(contains(closed.out, "witness=0000\n"));
  CHECK(contains(closed.out, "witness=1111\n"));

  const CliRun scanned = run({"extremes", "--channel", "del", "--k", "1",
                              "--m", "4", "--which", "min", "--mode", "scan"});
  CHECK(scanned.exit_code == 0);
  CHECK(contains(scanned.out, "witness=0000\n"));

  const CliRun restricted = run({"extremes", "--channel", "del", "--k", "1",
                                 "--m", "4", "--R", "2", "--which", "max",
                                 "--mode", "scan"});
  CHECK(restricted.exit_code == 0);
  CHECK(contains(restricted.out, "witness=0011\n"));
  CHECK(contains(restricted.out, "witness=1100\n"));
}

TEST_CASE("cli: scan budget maps to its own exit code") {
  const CliRun r = run({"extremes", "--channel", "del", "--k", "1", "--m",
                        "12", "--mode", "scan", "--budget", "10"});
  CHECK(r.exit_code == 3);
  CHECK(contains(r.err, "budget"));
}

TEST_CASE("cli: budget environment variable") {
  setenv("DELINS_BUDGET", "10", 1);
  const CliRun blocked = run({"extremes", "--channel", "del", "--k", "1",
                              "--m", "12", "--mode", "scan"});
  CHECK(blocked.exit_code == 3);
  // An explicit flag out-ranks the environment.
  const CliRun allowed = run({"extremes", "--channel", "del", "--k", "1",
                              "--m", "8", "--mode", "scan", "--budget",
                              "100000"});
  CHECK(allowed.exit_code == 0);
  unsetenv("DELINS_BUDGET");
}

TEST_CASE("cli: average") {
  const CliRun r = run({"average", "--channel", "del", "--n", "3",
                        "--enumerated"});
  CHECK(r.exit_code == 0);
  CHECK(value_of(r.out, "average_bits") ==
        doctest::Approx(1.8553885422075336).epsilon(1e-12));
  CHECK(std::abs(value_of(r.out, "difference_bits")) <= 1e-9);
}

TEST_CASE("cli: verify") {
  const CliRun r = run({"verify", "--suite", "normalization", "--max-len",
                        "5"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "suite=normalization"));
  CHECK(contains(r.out, "failures=0"));

  const CliRun unknown = run({"verify", "--suite", "bogus"});
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("cli: capacity") {
  const CliRun r = run({"capacity", "--channel", "del", "--k", "1", "--n",
                        "2"});
  CHECK(r.exit_code == 0);
  CHECK(value_of(r.out, "capacity_bits") ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(contains(r.out, "converged=true"));

  const CliRun bound = run({"capacity", "--n", "2", "--bound", "--p", "0.5"});
  CHECK(bound.exit_code == 0);
  CHECK(contains(bound.out, "bound_bits="));

  const CliRun table = run({"capacity", "--n", "2", "--table"});
  CHECK(table.exit_code == 0);
  CHECK(contains(table.out, "k,capacity_bits\n0,2\n"));

  const CliRun steps = run({"capacity", "--n", "2", "--p-step", "0.5"});
  CHECK(steps.exit_code == 0);
  CHECK(contains(steps.out, "p,bound_bits,bound_bits_per_symbol\n"));
  CHECK(contains(steps.out, "\n1,"));
}

TEST_CASE("cli: figure") {
  const CliRun r = run({"figure", "--channel", "del", "--n", "2:4", "--out",
                        "-", "--jobs", "2"});
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "n,min_bits,max_bits,avg_bits,bound_bits\n"));
  const CliRun bad = run({"figure", "--channel", "del", "--k", "2", "--n",
                          "2:4", "--out", "-"});
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cli: usage errors") {
  CHECK(run({}).exit_code != 0);
  CHECK(run({"no-such-command"}).exit_code == 1);
  CHECK(run({"embed", "--y", "01"}).exit_code == 1);       // missing --x
  CHECK(run({"embed", "--y", "02", "--x", "0"}).exit_code == 1);  // bad word
  CHECK(run({"--help"}).exit_code == 0);
  CHECK(run({"entropy", "--help"}).exit_code == 0);
}
