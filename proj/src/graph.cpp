#include "qbag/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace qbag {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownId: return "unknown-id";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::InvalidGraph: return "invalid-graph";
    case ErrorCode::Cycle: return "cycle";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::InvalidContributor: return "invalid-contributor";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Parse: return "parse";
  }
  return "error";
}

namespace {

bool by_id(const Argument& l, const Argument& r) { return l.id < r.id; }

std::string join(const std::vector<std::string>& parts) {
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out + "]";
}

// Outgoing adjacency over known endpoints, targets sorted.
std::map<ArgumentId, std::vector<ArgumentId>> successors(const Qbag& g) {
  std::map<ArgumentId, std::vector<ArgumentId>> out;
  for (const auto& arg : g.arguments()) out[arg.id];
  auto add = [&](const EdgeSet& edges) {
    for (const auto& [s, t] : edges) {
      if (!g.contains(s) || !g.contains(t)) continue;
      out[s].push_back(t);
    }
  };
  add(g.attacks());
  add(g.supports());
  for (auto& [id, next] : out) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }
  return out;
}

// One concrete cycle, found by DFS in lexicographic order, or empty.
std::vector<ArgumentId> find_cycle(const Qbag& g) {
  const auto succ = successors(g);
  std::map<ArgumentId, int> color;  // 0 white, 1 on stack, 2 done
  std::vector<ArgumentId> stack;
  std::vector<ArgumentId> cycle;

  std::function<bool(const ArgumentId&)> dfs = [&](const ArgumentId& u) {
    color[u] = 1;
    stack.push_back(u);
    for (const auto& v : succ.at(u)) {
      if (color[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        cycle.assign(it, stack.end());
        return true;
      }
      if (color[v] == 0 && dfs(v)) return true;
    }
    stack.pop_back();
    color[u] = 2;
    return false;
  };
  for (const auto& [id, next] : succ) {
    if (color[id] == 0 && dfs(id)) break;
  }
  return cycle;
}

IdSet checked_subset(const Qbag& g, const IdSet& ids) {
  for (const auto& id : ids) {
    if (!g.contains(id)) throw Error(ErrorCode::UnknownId, "unknown argument id: " + id.str());
  }
  return ids;
}

}  // namespace

std::string ValidationReport::summary() const {
  if (ok) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.rule + ": " + v.message;
  }
  return out;
}

Qbag::Qbag(std::vector<Argument> arguments, EdgeSet attacks, EdgeSet supports)
    : arguments_(std::move(arguments)), attacks_(std::move(attacks)), supports_(std::move(supports)) {
  std::stable_sort(arguments_.begin(), arguments_.end(), by_id);
}

bool Qbag::contains(const ArgumentId& id) const {
  return std::binary_search(arguments_.begin(), arguments_.end(), Argument{id, 0.0}, by_id);
}

double Qbag::initial_strength(const ArgumentId& id) const {
  auto it = std::lower_bound(arguments_.begin(), arguments_.end(), Argument{id, 0.0}, by_id);
  if (it == arguments_.end() || it->id != id) {
    throw Error(ErrorCode::UnknownId, "unknown argument id: " + id.str());
  }
  return it->initial_strength;
}

std::vector<ArgumentId> Qbag::ids() const {
  std::vector<ArgumentId> out;
  out.reserve(arguments_.size());
  for (const auto& a : arguments_) out.push_back(a.id);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IdSet Qbag::id_set() const {
  IdSet out;
  for (const auto& a : arguments_) out.insert(a.id);
  return out;
}

ValidationReport validate(const Qbag& g) {
  ValidationReport r;
  auto add = [&](std::string rule, std::string msg, std::vector<std::string> elems) {
    r.violations.push_back({std::move(rule), std::move(msg), std::move(elems)});
  };

  const auto& args = g.arguments();
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a.id.empty()) add("empty-id", "argument id must be non-empty", {""});
    if (i > 0 && args[i - 1].id == a.id && (i < 2 || args[i - 2].id != a.id)) {
      add("duplicate-id", "duplicate argument id " + a.id.str(), {a.id.str()});
    }
    if (!(a.initial_strength >= 0.0 && a.initial_strength <= 1.0)) {
      std::ostringstream msg;
      msg << "initial strength of " << a.id.str() << " is " << a.initial_strength << ", outside [0,1]";
      add("strength-range", msg.str(), {a.id.str()});
    }
  }

  auto endpoints = [&](const EdgeSet& edges, const char* kind) {
    for (const auto& [s, t] : edges) {
      for (const auto* end : {&s, &t}) {
        if (!g.contains(*end)) {
          add("unknown-endpoint",
              std::string(kind) + " (" + s.str() + "," + t.str() + ") references unknown argument " + end->str(),
              {s.str(), t.str()});
        }
      }
    }
  };
  endpoints(g.attacks(), "attack");
  endpoints(g.supports(), "support");

  for (const auto& e : g.attacks()) {
    if (g.supports().count(e)) {
      add("att-supp-overlap", "(" + e.first.str() + "," + e.second.str() + ") is both an attack and a support",
          {e.first.str(), e.second.str()});
    }
  }

  auto cycle = find_cycle(g);
  if (!cycle.empty()) {
    std::vector<std::string> names;
    for (const auto& id : cycle) names.push_back(id.str());
    add("cycle", "cycle: " + join(names), names);
  }

  r.ok = r.violations.empty();
  return r;
}

void require_valid(const Qbag& g) {
  auto r = validate(g);
  if (r.ok) return;
  bool only_cycle = std::all_of(r.violations.begin(), r.violations.end(),
                                [](const Violation& v) { return v.rule == "cycle"; });
  throw Error(only_cycle ? ErrorCode::Cycle : ErrorCode::InvalidGraph, r.summary());
}

Qbag restrict(const Qbag& g, const IdSet& keep) {
  checked_subset(g, keep);
  std::vector<Argument> args;
  for (const auto& a : g.arguments()) {
    if (keep.count(a.id)) args.push_back(a);
  }
  auto filter = [&](const EdgeSet& edges) {
    EdgeSet out;
    for (const auto& e : edges) {
      if (keep.count(e.first) && keep.count(e.second)) out.insert(e);
    }
    return out;
  };
  return Qbag(std::move(args), filter(g.attacks()), filter(g.supports()));
}

Qbag detach_incoming(const Qbag& g, const IdSet& x_set) {
  checked_subset(g, x_set);
  auto filter = [&](const EdgeSet& edges) {
    EdgeSet out;
    for (const auto& e : edges) {
      if (x_set.count(e.second) && !x_set.count(e.first)) continue;
      out.insert(e);
    }
    return out;
  };
  return Qbag(g.arguments(), filter(g.attacks()), filter(g.supports()));
}

Qbag set_initial_strength(const Qbag& g, const ArgumentId& x, double eps) {
  if (!g.contains(x)) throw Error(ErrorCode::UnknownId, "unknown argument id: " + x.str());
  if (!(eps >= 0.0 && eps <= 1.0)) {
    std::ostringstream msg;
    msg << "strength " << eps << " for " << x.str() << " is outside [0,1]";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  auto args = g.arguments();
  for (auto& a : args) {
    if (a.id == x) a.initial_strength = eps;
  }
  return Qbag(std::move(args), g.attacks(), g.supports());
}

Qbag remove_edge(const Qbag& g, const Edge& e) {
  auto att = g.attacks();
  auto sup = g.supports();
  att.erase(e);
  sup.erase(e);
  return Qbag(g.arguments(), std::move(att), std::move(sup));
}

std::vector<ArgumentId> topological_order(const Qbag& g) {
  require_valid(g);
  const auto succ = successors(g);
  std::map<ArgumentId, int> indegree;
  for (const auto& [id, next] : succ) indegree[id];
  for (const auto& [id, next] : succ) {
    for (const auto& t : next) ++indegree[t];
  }
  std::priority_queue<ArgumentId, std::vector<ArgumentId>, std::greater<>> ready;
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.push(id);
  }
  std::vector<ArgumentId> order;
  while (!ready.empty()) {
    auto u = ready.top();
    ready.pop();
    order.push_back(u);
    for (const auto& v : succ.at(u)) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  return order;
}

bool can_reach(const Qbag& g, const ArgumentId& x, const ArgumentId& a) {
  checked_subset(g, {x, a});
  if (x == a) return true;
  const auto succ = successors(g);
  IdSet seen{x};
  std::vector<ArgumentId> todo{x};
  while (!todo.empty()) {
    auto u = todo.back();
    todo.pop_back();
    for (const auto& v : succ.at(u)) {
      if (v == a) return true;
      if (seen.insert(v).second) todo.push_back(v);
    }
  }
  return false;
}

IdSet influencers(const Qbag& g, const ArgumentId& a, bool include_topic) {
  checked_subset(g, {a});
  std::map<ArgumentId, std::vector<ArgumentId>> pred;
  for (const auto* edges : {&g.attacks(), &g.supports()}) {
    for (const auto& [s, t] : *edges) pred[t].push_back(s);
  }
  IdSet seen;
  std::vector<ArgumentId> todo{a};
  while (!todo.empty()) {
    auto u = todo.back();
    todo.pop_back();
    auto it = pred.find(u);
    if (it == pred.end()) continue;
    for (const auto& v : it->second) {
      if (seen.insert(v).second) todo.push_back(v);
    }
  }
  if (include_topic) {
    seen.insert(a);
  } else {
    seen.erase(a);
  }
  return seen;
}

Qbag relabel(const Qbag& g, const std::map<ArgumentId, ArgumentId>& mapping) {
  auto name = [&](const ArgumentId& id) {
    auto it = mapping.find(id);
    return it == mapping.end() ? id : it->second;
  };
  std::vector<Argument> args;
  for (const auto& a : g.arguments()) args.push_back({name(a.id), a.initial_strength});
  auto edges = [&](const EdgeSet& in) {
    EdgeSet out;
    for (const auto& [s, t] : in) out.insert({name(s), name(t)});
    return out;
  };
  return Qbag(std::move(args), edges(g.attacks()), edges(g.supports()));
}

}  // namespace qbag
