#include "qbag/review.hpp"

#include "qbag/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qbag {

namespace {

bool has_incoming(const Qbag& g, const ArgumentId& x) {
  for (const auto* edges : {&g.attacks(), &g.supports()}) {
    for (const auto& e : *edges) {
      if (e.second == x) return true;
    }
  }
  return false;
}

}  // namespace

const char* to_string(Polarity p) { return p == Polarity::Attack ? "attack" : "support"; }

void validate_model(const AspectModel& m) {
  require_valid(m.text_graph);
  IdSet aspects(m.aspects.begin(), m.aspects.end());
  if (aspects.size() != m.aspects.size()) throw Error(ErrorCode::InvalidGraph, "duplicate aspect id");
  for (const auto& a : aspects) {
    if (!m.text_graph.contains(a)) throw Error(ErrorCode::UnknownId, "aspect " + a.str() + " is not in the text layer");
  }
  if (m.text_graph.contains(m.decision_id) || aspects.count(m.decision_id)) {
    throw Error(ErrorCode::InvalidGraph, "decision id " + m.decision_id.str() + " clashes with an existing argument");
  }
  if (!(m.decision_tau >= 0.0 && m.decision_tau <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "decision initial strength must lie in [0,1]");
  }
  for (const auto* edges : {&m.text_graph.attacks(), &m.text_graph.supports()}) {
    for (const auto& [s, t] : *edges) {
      if (aspects.count(s)) {
        throw Error(ErrorCode::InvalidGraph, "aspect " + s.str() + " has an outgoing edge to " + t.str() +
                                                 "; aspects may only receive edges from text arguments");
      }
    }
  }
}

std::optional<NormalizedAspect> normalize_aspect(double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    std::ostringstream msg;
    msg << "aspect strength " << sigma << " is outside [0,1]";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  if (sigma == 0.5) return std::nullopt;
  return NormalizedAspect{2.0 * std::abs(sigma - 0.5), sigma > 0.5 ? Polarity::Support : Polarity::Attack};
}

StrengthAssignment evaluate_text_layer(const AspectModel& m) {
  validate_model(m);
  auto all = evaluate(m.text_graph, preset("DFQuAD"));
  StrengthAssignment out;
  for (const auto& a : m.aspects) out[a] = all.at(a);
  return out;
}

Qbag build_decision_graph(const AspectModel& m) {
  auto finals = evaluate_text_layer(m);
  std::vector<Argument> args{{m.decision_id, m.decision_tau}};
  EdgeSet att, sup;
  for (const auto& a : m.aspects) {
    if (!has_incoming(m.text_graph, a)) continue;
    auto n = normalize_aspect(finals.at(a));
    if (!n) continue;
    args.push_back({a, n->strength});
    (n->polarity == Polarity::Attack ? att : sup).insert({a, m.decision_id});
  }
  return Qbag(std::move(args), std::move(att), std::move(sup));
}

std::vector<ContributionRow> report_contributions(const AspectModel& m, const IdSet& focus) {
  const Qbag g = build_decision_graph(m);
  for (const auto& f : focus) {
    if (f == m.decision_id || !g.contains(f)) {
      throw Error(ErrorCode::UnknownId, "focus aspect " + f.str() + " is not part of the decision graph");
    }
  }
  const auto spec = preset("DFQuAD");
  ContributionContext ctx(g, spec, m.decision_id);
  auto row = [&](const IdSet& x) {
    auto mask = ctx.contributor_mask(x);
    std::string label;
    for (const auto& id : x) label += (label.empty() ? "" : ",") + id.str();
    if (x.size() > 1) label = "{" + label + "}";
    return ContributionRow{label, removal(ctx, mask),
                           shapley(ctx, mask), gradient(ctx, mask, GradientAggregator::Max)};
  };

  std::vector<ContributionRow> rows;
  ContributionRow sum{"", 0.0, 0.0, 0.0};
  std::vector<std::string> parts;
  if (!focus.empty()) {
    rows.push_back(row(focus));
    for (const auto& f : focus) rows.push_back(row({f}));
  }
  std::vector<ContributionRow> others;
  for (const auto& id : g.ids()) {
    if (id == m.decision_id || focus.count(id)) continue;
    others.push_back(row({id}));
  }
  // Sum row: every non-focus aspect plus the focus set as one player.
  for (const auto& r : others) {
    sum.removal += r.removal;
    sum.shapley += r.shapley;
    sum.gradient += r.gradient;
    parts.push_back(r.label);
  }
  if (!focus.empty()) {
    sum.removal += rows.front().removal;
    sum.shapley += rows.front().shapley;
    sum.gradient += rows.front().gradient;
    parts.push_back(rows.front().label);
  }
  rows.insert(rows.end(), others.begin(), others.end());
  for (std::size_t i = 0; i < parts.size(); ++i) sum.label += (i ? " + " : "") + parts[i];
  rows.push_back(sum);
  return rows;
}

std::string contributions_csv(const std::vector<ContributionRow>& rows) {
  std::ostringstream out;
  out << "contributors,removal,shapley,gradient_max,removal_full,shapley_full,gradient_max_full\n";
  auto quoted = [](const std::string& s) {
    return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
  };
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", r.removal, r.shapley, r.gradient);
    out << quoted(r.label) << "," << format_fixed(r.removal, 3) << "," << format_fixed(r.shapley, 3) << ","
        << format_fixed(r.gradient, 3) << "," << buf << "\n";
  }
  return out.str();
}

}  // namespace qbag
