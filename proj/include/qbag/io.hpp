#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qbag/contribution.hpp"
#include "qbag/graph.hpp"
#include "qbag/matrix.hpp"
#include "qbag/reproduce.hpp"
#include "qbag/review.hpp"
#include "qbag/semantics.hpp"
#include "qbag/verdict.hpp"

namespace qbag {

using Json = nlohmann::json;

// {"arguments":[{"id","initial_strength"}], "attacks":[[from,to]], "supports":[[from,to]]}.
// Structural problems throw Parse; semantic ones (duplicates, range, cycles)
// are left to validate().
Qbag graph_from_json(const Json& j);
Qbag parse_graph(const std::string& text);
Qbag load_graph_file(const std::string& path);
Json graph_to_json(const Qbag& g);
std::string dump_graph(const Qbag& g);

// Preset name, or {"aggregation": "sum|product|top",
//                  "influence": {"kind": "linear|euler|pmax", "p": 2, "k": 1}, "name": "..."}.
SemanticsSpec semantics_from_json(const Json& j);
SemanticsSpec parse_semantics(const std::string& text);
Json semantics_to_json(const SemanticsSpec& spec);

// Aspect manifest {"aspects": [...], "decision_tau": 0.5} over a text-layer graph.
AspectModel aspect_model_from_json(const Qbag& text_graph, const Json& manifest);

Json strengths_to_json(const Qbag& g, const StrengthAssignment& s);
Json contribution_to_json(const ContributionResult& r);
Json witness_to_json(const Witness& w);
Json verdict_to_json(const PrincipleVerdict& v, const std::string& function, const std::string& semantics);
Json matrix_to_json(const MatrixReport& r);
Json claim_to_json(const ClaimResult& c);
Json rows_to_json(const std::vector<ContributionRow>& rows);

std::string read_text_file(const std::string& path);

}  // namespace qbag
