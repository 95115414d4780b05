#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbag/graph.hpp"
#include "qbag/verdict.hpp"

namespace qbag {

enum class AggregationKind { Sum, Product, Top };

struct LinearInfluence {
  double k = 1.0;
};
struct EulerInfluence {};
struct PMaxInfluence {
  int p = 2;
  double k = 1.0;
};
using InfluenceKind = std::variant<LinearInfluence, EulerInfluence, PMaxInfluence>;

struct SemanticsSpec {
  AggregationKind aggregation = AggregationKind::Sum;
  InfluenceKind influence = EulerInfluence{};
  std::string name;

  std::string label() const;  // name, or a rendering of the parameters
};

const char* to_string(AggregationKind kind);

// "QE", "DFQuAD", "SD-DFQuAD", "EB", "EBT"; throws InvalidArgument otherwise.
SemanticsSpec preset(std::string_view name);
const std::array<SemanticsSpec, 5>& presets();
void check_spec(const SemanticsSpec& spec);

double aggregate(AggregationKind kind, const std::vector<int>& v, const std::vector<double>& s);
double influence(const InfluenceKind& kind, double w, double agg);

using StrengthAssignment = std::map<ArgumentId, double>;

struct DualStrength {
  double value = 0.0;
  double derivative = 0.0;
};
using DualAssignment = std::map<ArgumentId, DualStrength>;

StrengthAssignment evaluate(const Qbag& g, const SemanticsSpec& spec);

// derivative = partial of each final strength w.r.t. tau(seed). At kinks the
// one-sided derivative pointing into [0,1] is used: right-hand unless
// tau(seed) = 1, where only the left-hand one exists.
DualAssignment evaluate_dual(const Qbag& g, const SemanticsSpec& spec, const ArgumentId& seed);

inline constexpr double kDefaultTolerance = 1e-9;

using SemanticsFn = std::function<StrengthAssignment(const Qbag&)>;
PrincipleVerdict check_stability(const SemanticsSpec& spec, const Qbag& g, double tol = kDefaultTolerance);
PrincipleVerdict check_stability(const SemanticsFn& semantics, const Qbag& g, double tol = kDefaultTolerance);

}  // namespace qbag
