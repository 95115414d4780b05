#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbag/contribution.hpp"
#include "qbag/graph.hpp"
#include "qbag/semantics.hpp"

namespace qbag {

// Text layer (sentences with sentiment strengths) over aspect arguments.
struct AspectModel {
  Qbag text_graph;                  // contains the aspects and the text arguments
  std::vector<ArgumentId> aspects;  // layer 2
  double decision_tau = 0.5;
  ArgumentId decision_id = "D";
};

void validate_model(const AspectModel& m);

enum class Polarity { Attack, Support };
const char* to_string(Polarity p);

struct NormalizedAspect {
  double strength = 0.0;  // in (0,1]
  Polarity polarity = Polarity::Support;
};

// 2|sigma - 0.5| with the side of 0.5 deciding polarity; nullopt at exactly 0.5.
std::optional<NormalizedAspect> normalize_aspect(double sigma);

// DFQuAD final strengths of the aspects.
StrengthAssignment evaluate_text_layer(const AspectModel& m);

// Aspects without incoming text edges and aspects at exactly 0.5 are left out.
Qbag build_decision_graph(const AspectModel& m);

struct ContributionRow {
  std::string label;
  double removal = 0.0;
  double shapley = 0.0;
  double gradient = 0.0;
};

// Rows: the focus set, each other decision-layer aspect as a singleton, then
// the sum of those rows. Removal, Shapley and gradient-max under DFQuAD.
std::vector<ContributionRow> report_contributions(const AspectModel& m, const IdSet& focus);

std::string contributions_csv(const std::vector<ContributionRow>& rows);

}  // namespace qbag
