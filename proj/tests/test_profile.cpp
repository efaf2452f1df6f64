#include <set>
#include <stdexcept>

#include "doctest.h"
#include "sketchlab/profile.hpp"

using namespace sketchlab;

TEST_CASE("built-in profiles resolve by name") {
  const ConstantProfile d = ConstantProfile::named("desk");
  CHECK(d.name == "desk");
  CHECK(d.tail_c0 == 10.0);
  CHECK(d.forest_ch == 2.0);
  CHECK(d.sq_c == 8.0);

  const ConstantProfile p = ConstantProfile::named("paper");
  CHECK(p.name == "paper");
  CHECK(p.tail_c0 == 1000.0);
  CHECK(p.forest_cr == 100.0);
  CHECK(p.prune_beta == 100.0);
  CHECK(p.fourier_gamma == 1.0 / 1000.0);

  CHECK_THROWS_AS((void)ConstantProfile::named("laptop"),
                  std::invalid_argument);
}

TEST_CASE("individual constants are overridable by key") {
  ConstantProfile p = ConstantProfile::desk();
  p.set("forest_cb", 3.5);
  CHECK(p.forest_cb == 3.5);
  CHECK(p.get("forest_cb") == 3.5);
  p.set_kv("sq_gamma=0.25");
  CHECK(p.sq_gamma == 0.25);
  CHECK_THROWS_AS(p.set("bogus_key", 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)p.get("bogus_key"), std::invalid_argument);
  CHECK_THROWS_AS(p.set_kv("no-equals-sign"), std::invalid_argument);
  CHECK_THROWS_AS(p.set_kv("forest_cb=not-a-number"), std::invalid_argument);
}

TEST_CASE("echo lists every constant exactly once, values live") {
  ConstantProfile p = ConstantProfile::desk();
  p.set("prune_cr", 17.0);
  const auto kv = p.echo();
  CHECK(kv.size() == 22);
  std::set<std::string> seen;
  bool found_override = false;
  for (const auto& [key, val] : kv) {
    CHECK(seen.insert(key).second);  // unique
    CHECK(p.get(key) == val);
    if (key == "prune_cr") {
      CHECK(val == 17.0);
      found_override = true;
    }
  }
  CHECK(found_override);
}
