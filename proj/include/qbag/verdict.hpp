#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbag/graph.hpp"

namespace qbag {

enum class PrincipleId {
  Stability,
  CtrbGeneralization,
  ContributionExistence,
  QuantitativeContributionExistence,
  WeakQuantitativeContributionExistence,
  Directionality,
  Counterfactuality,
  QuantitativeCounterfactuality,
  Consistency,
  Monotonicity,
};

const char* to_string(PrincipleId p);
PrincipleId principle_from_string(const std::string& name);
const std::vector<PrincipleId>& all_principles();

enum class VerdictStatus { SatisfiedOnInstance, ViolatedOnInstance, Inconclusive };
const char* to_string(VerdictStatus s);

struct Witness {
  Qbag graph;
  ArgumentId topic;
  std::vector<IdSet> sets;  // X, Y, or partition blocks depending on the principle
  std::vector<std::pair<std::string, double>> values;
  std::string relation;  // the inequality that fails

  double value(const std::string& name) const;
};

struct PrincipleVerdict {
  PrincipleId principle = PrincipleId::Stability;
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::optional<Witness> witness;
  std::size_t cases_examined = 0;
  std::string note;

  bool violated() const { return status == VerdictStatus::ViolatedOnInstance; }
  bool satisfied() const { return status == VerdictStatus::SatisfiedOnInstance; }
};

}  // namespace qbag
