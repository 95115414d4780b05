#pragma once

#include <string>
#include <vector>

namespace qbag {

struct ClaimResult {
  std::string fixture;
  std::string claim;
  bool reproduced = false;
  double value = 0.0;
  double margin = 0.0;  // distance to the failure threshold; positive when reproduced
  std::string detail;
};

// Fixture ids that carry recorded claims, in presentation order.
std::vector<std::string> claim_fixture_ids();
std::vector<ClaimResult> reproduce_fixture(const std::string& id);
std::vector<ClaimResult> reproduce_all_claims();

std::string format_claim(const ClaimResult& c);

}  // namespace qbag
