#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbag/fixtures.hpp"
#include "qbag/principles.hpp"

namespace qbag {

enum class CellStatus { Pass, ViolationReproduced, Mismatch, NotTabulated };
const char* to_string(CellStatus s);

struct MatrixCell {
  std::string function;
  std::string semantics;
  PrincipleId principle = PrincipleId::Directionality;
  std::optional<bool> expected_satisfied;
  CellStatus status = CellStatus::NotTabulated;
  std::string source;  // fixture id, "corpus", or "search"
  std::optional<Witness> witness;
  std::size_t instances = 0;
  std::string note;
};

struct MatrixReport {
  std::vector<MatrixCell> cells;
  std::size_t mismatches() const;
  std::size_t count(CellStatus s) const;
  // Check/cross grid laid out like the reference tables.
  std::string table() const;
};

struct MatrixOptions {
  std::size_t random_graphs = 200;
  std::uint64_t random_seed = 2024;
  RandomGraphOptions random;
  bool search_fallback = true;  // search when the designated fixture does not witness a violation
  SearchConfig search;
  CheckOptions check;
};

MatrixReport run_matrix(const std::vector<Fixture>& fixtures, const std::vector<SetFunctionKind>& fns,
                        const std::vector<SemanticsSpec>& specs, const std::vector<PrincipleId>& principles,
                        const MatrixOptions& opts = {});

}  // namespace qbag
