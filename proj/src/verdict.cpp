#include "qbag/verdict.hpp"

namespace qbag {

const char* to_string(PrincipleId p) {
  switch (p) {
    case PrincipleId::Stability: return "stability";
    case PrincipleId::CtrbGeneralization: return "generalization";
    case PrincipleId::ContributionExistence: return "contribution-existence";
    case PrincipleId::QuantitativeContributionExistence: return "quantitative-contribution-existence";
    case PrincipleId::WeakQuantitativeContributionExistence: return "weak-quantitative-contribution-existence";
    case PrincipleId::Directionality: return "directionality";
    case PrincipleId::Counterfactuality: return "counterfactuality";
    case PrincipleId::QuantitativeCounterfactuality: return "quantitative-counterfactuality";
    case PrincipleId::Consistency: return "consistency";
    case PrincipleId::Monotonicity: return "monotonicity";
  }
  return "?";
}

const std::vector<PrincipleId>& all_principles() {
  static const std::vector<PrincipleId> all{
      PrincipleId::Stability,
      PrincipleId::CtrbGeneralization,
      PrincipleId::ContributionExistence,
      PrincipleId::QuantitativeContributionExistence,
      PrincipleId::WeakQuantitativeContributionExistence,
      PrincipleId::Directionality,
      PrincipleId::Counterfactuality,
      PrincipleId::QuantitativeCounterfactuality,
      PrincipleId::Consistency,
      PrincipleId::Monotonicity,
  };
  return all;
}

PrincipleId principle_from_string(const std::string& name) {
  for (auto p : all_principles()) {
    if (name == to_string(p)) return p;
  }
  std::string known;
  for (auto p : all_principles()) known += std::string(known.empty() ? "" : ", ") + to_string(p);
  throw Error(ErrorCode::InvalidArgument, "unknown principle '" + name + "' (expected one of " + known + ")");
}

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::SatisfiedOnInstance: return "satisfied-on-instance";
    case VerdictStatus::ViolatedOnInstance: return "violated-on-instance";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

double Witness::value(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::InvalidArgument, "witness has no value named " + name);
}

}  // namespace qbag
