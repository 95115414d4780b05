#include <doctest.h>

#include "qbag/fixtures.hpp"
#include "qbag/reproduce.hpp"

using namespace qbag;

TEST_SUITE("reproduce") {
  TEST_CASE("every claim-bearing fixture exists and yields claims") {
    for (const auto& id : claim_fixture_ids()) {
      CHECK(has_fixture(id));
      CHECK_FALSE(reproduce_fixture(id).empty());
    }
    CHECK_THROWS_AS(reproduce_fixture("nope"), Error);
  }

  TEST_CASE("claims reproduce except the known figA9 removal claim") {
    for (const auto& c : reproduce_all_claims()) {
      if (c.fixture == "figA9" && c.claim == "sigma(a) < sigma(a without d)") {
        // Exact arithmetic: removing d leaves sigma(a) unchanged.
        CHECK_FALSE(c.reproduced);
        CHECK(c.value == 0.0);
        continue;
      }
      INFO(format_claim(c));
      CHECK(c.reproduced);
      CHECK(c.margin >= 0.0);
    }
  }
}
