#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbag/contribution.hpp"
#include "qbag/graph.hpp"
#include "qbag/verdict.hpp"

namespace qbag {

struct Fixture {
  std::string id;
  std::string caption;
  Qbag graph;
  std::optional<ArgumentId> topic;
};

// Bundled graphs: fig1a, fig3, fig4, fig5, fig6-<sem>, fig6-shapley-<sem>,
// fig7, fig8 (text layer), table4 (decision graph), figA1 .. figA12.
const std::vector<Fixture>& fixture_corpus();
const Fixture& fixture(const std::string& id);  // throws InvalidArgument for unknown ids
bool has_fixture(const std::string& id);

// Published verdict grid: true = satisfied, false = violated, nullopt = not
// tabulated (e.g. gradient-min).
std::optional<bool> expected_satisfied(SetFunctionKind fn, const std::string& semantics, PrincipleId principle);
// Fixtures that witness a tabulated violation, in the order they should be tried.
std::vector<std::string> designated_fixtures(SetFunctionKind fn, const std::string& semantics, PrincipleId principle);

// Principles covered by the reference verdict tables.
const std::vector<PrincipleId>& tabulated_principles();
// Set functions covered by the reference verdict tables.
const std::vector<SetFunctionKind>& tabulated_functions();

}  // namespace qbag
