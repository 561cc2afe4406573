#include <doctest.h>

#include "pellforms/verify.hpp"

using namespace pellforms;

TEST_CASE("property suite") {
  SuiteOptions opts;
  opts.seed = 1;
  opts.trials = 120;
  for (const std::string& name : property_names()) {
    SUBCASE(name.c_str()) {
      const PropertyResult r = run_property(name, opts);
      INFO(name << ": " << (r.examples.empty() ? std::string() : r.examples.front()));
      CHECK(r.cases > 0);
      CHECK(r.failed == 0);
    }
  }
}

TEST_CASE("unknown property") { CHECK_THROWS(run_property("no.such", SuiteOptions{})); }
