#include "qbag/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qbag {

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Pass: return "PASS";
    case CellStatus::ViolationReproduced: return "VIOLATION-REPRODUCED";
    case CellStatus::Mismatch: return "MISMATCH";
    case CellStatus::NotTabulated: return "NOT-TABULATED";
  }
  return "?";
}

std::size_t MatrixReport::count(CellStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [&](const MatrixCell& c) { return c.status == s; }));
}

std::size_t MatrixReport::mismatches() const { return count(CellStatus::Mismatch); }

std::string MatrixReport::table() const {
  std::vector<std::string> sems, fns;
  std::vector<PrincipleId> principles;
  std::map<std::tuple<PrincipleId, std::string, std::string>, const MatrixCell*> index;
  for (const auto& c : cells) {
    if (std::find(sems.begin(), sems.end(), c.semantics) == sems.end()) sems.push_back(c.semantics);
    if (std::find(fns.begin(), fns.end(), c.function) == fns.end()) fns.push_back(c.function);
    if (std::find(principles.begin(), principles.end(), c.principle) == principles.end()) {
      principles.push_back(c.principle);
    }
    index[{c.principle, c.function, c.semantics}] = &c;
  }
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t w) {
    // width in code points; the marks below are multi-byte
    std::size_t len = 0;
    for (unsigned char ch : s) len += (ch & 0xC0) != 0x80;
    if (len < w) s.append(w - len, ' ');
    return s;
  };
  for (auto p : principles) {
    out << "== " << to_string(p) << " ==\n" << pad("", 16);
    for (const auto& s : sems) out << pad(s, 11);
    out << "\n";
    for (const auto& f : fns) {
      out << pad(f, 16);
      for (const auto& s : sems) {
        auto it = index.find({p, f, s});
        std::string mark = "-";
        if (it != index.end()) {
          const auto& c = *it->second;
          switch (c.status) {
            case CellStatus::Pass: mark = "✓"; break;
            case CellStatus::ViolationReproduced: mark = "✗"; break;
            case CellStatus::Mismatch: mark = "MISMATCH"; break;
            case CellStatus::NotTabulated:
              mark = c.note.rfind("violated", 0) == 0 ? "(✗)" : "(✓)";
              break;
          }
          if (c.source == "search" && c.status == CellStatus::ViolationReproduced) mark += "*";
        }
        out << pad(mark, 11);
      }
      out << "\n";
    }
  }
  const bool searched = std::any_of(cells.begin(), cells.end(), [](const MatrixCell& c) { return c.source == "search"; });
  if (searched) out << "* violation witnessed by a searched substitute graph rather than the designated figure\n";
  return out.str();
}

namespace {

struct Instance {
  std::string source;
  const Qbag* graph;
  ArgumentId topic;
};

}  // namespace

MatrixReport run_matrix(const std::vector<Fixture>& fixtures, const std::vector<SetFunctionKind>& fns,
                        const std::vector<SemanticsSpec>& specs, const std::vector<PrincipleId>& principles,
                        const MatrixOptions& opts) {
  const auto corpus = random_corpus(opts.random_seed, opts.random_graphs, opts.random);
  // Satisfaction is checked at every topic of every graph.
  std::vector<Instance> instances;
  for (const auto& f : fixtures) {
    for (const auto& a : f.graph.ids()) instances.push_back({f.id, &f.graph, a});
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& a : corpus[i].ids()) instances.push_back({"random#" + std::to_string(i), &corpus[i], a});
  }
  auto find_fixture = [&](const std::string& id) -> const Fixture* {
    for (const auto& f : fixtures) {
      if (f.id == id) return &f;
    }
    return nullptr;
  };

  MatrixReport report;
  for (auto p : principles) {
    for (auto fk : fns) {
      const auto fn = builtin_function(fk);
      for (const auto& spec : specs) {
        MatrixCell cell;
        cell.function = to_string(fk);
        cell.semantics = spec.label();
        cell.principle = p;
        cell.expected_satisfied = expected_satisfied(fk, spec.label(), p);

        auto sweep = [&]() -> std::optional<PrincipleVerdict> {
          for (const auto& inst : instances) {
            ++cell.instances;
            auto v = check_principle(p, fn, *inst.graph, spec, inst.topic, opts.check);
            if (v.violated()) {
              cell.source = inst.source;
              return v;
            }
          }
          return std::nullopt;
        };

        if (!cell.expected_satisfied) {
          auto v = sweep();
          cell.status = CellStatus::NotTabulated;
          cell.note = v ? "violated on " + cell.source : "no violation on fixtures and corpus";
          if (v) cell.witness = v->witness;
        } else if (*cell.expected_satisfied) {
          auto v = sweep();
          if (v) {
            cell.status = CellStatus::Mismatch;
            cell.witness = v->witness;
            cell.note = "violation found although the tabulated verdict is satisfied";
          } else {
            cell.status = CellStatus::Pass;
            cell.source = "corpus";
          }
        } else {
          for (const auto& id : designated_fixtures(fk, spec.label(), p)) {
            const auto* f = find_fixture(id);
            if (!f) throw Error(ErrorCode::InvalidArgument, "missing fixture " + id);
            ++cell.instances;
            auto v = check_principle(p, fn, f->graph, spec, f->topic.value_or(f->graph.ids().front()), opts.check);
            if (v.violated()) {
              cell.status = CellStatus::ViolationReproduced;
              cell.source = id;
              cell.witness = v.witness;
              break;
            }
            cell.note += "designated fixture " + id + " does not witness a violation; ";
          }
          if (cell.status != CellStatus::ViolationReproduced && opts.search_fallback) {
            auto v = search_counterexample(p, fn, spec, opts.search, opts.check);
            cell.instances += v.cases_examined;
            if (v.violated()) {
              cell.status = CellStatus::ViolationReproduced;
              cell.source = "search";
              cell.witness = v.witness;
              cell.note += "substitute witness: " + v.note;
            }
          }
          if (cell.status != CellStatus::ViolationReproduced) cell.status = CellStatus::Mismatch;
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

}  // namespace qbag
