#pragma once
// Reference implementations written straight from the definitions, sharing no
// code with the library beyond reading a Qbag's raw fields. Slow by design.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qbag/graph.hpp"

namespace oracle {

struct Graph {
  std::map<std::string, double> tau;
  std::vector<std::tuple<std::string, std::string, int>> edges;  // (from, to, -1 attack / +1 support)
};

inline Graph from(const qbag::Qbag& g) {
  Graph o;
  for (const auto& a : g.arguments()) o.tau[a.id.str()] = a.initial_strength;
  for (const auto& [x, y] : g.attacks()) o.edges.emplace_back(x.str(), y.str(), -1);
  for (const auto& [x, y] : g.supports()) o.edges.emplace_back(x.str(), y.str(), +1);
  return o;
}

inline Graph restrict_to(const Graph& g, const std::set<std::string>& keep) {
  Graph o;
  for (const auto& [id, t] : g.tau)
    if (keep.count(id)) o.tau[id] = t;
  for (const auto& e : g.edges)
    if (keep.count(std::get<0>(e)) && keep.count(std::get<1>(e))) o.edges.push_back(e);
  return o;
}

inline Graph without(const Graph& g, const std::set<std::string>& drop) {
  std::set<std::string> keep;
  for (const auto& [id, _] : g.tau)
    if (!drop.count(id)) keep.insert(id);
  return restrict_to(g, keep);
}

inline Graph detach(const Graph& g, const std::set<std::string>& x) {
  Graph o{g.tau, {}};
  for (const auto& e : g.edges)
    if (!(x.count(std::get<1>(e)) && !x.count(std::get<0>(e)))) o.edges.push_back(e);
  return o;
}

enum class Sem { QE, DFQuAD, SDDFQuAD, EB, EBT };

inline Sem sem_of(const std::string& name) {
  if (name == "QE") return Sem::QE;
  if (name == "DFQuAD") return Sem::DFQuAD;
  if (name == "SD-DFQuAD") return Sem::SDDFQuAD;
  if (name == "EB") return Sem::EB;
  return Sem::EBT;
}

// Final strength of one argument by memoized recursion over its parents.
inline double sigma(const Graph& g, Sem sem, const std::string& a) {
  std::map<std::string, double> memo;
  std::function<double(const std::string&)> rec = [&](const std::string& x) -> double {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::vector<std::pair<int, double>> in;
    for (const auto& [from, to, sign] : g.edges)
      if (to == x) in.emplace_back(sign, rec(from));
    const double w = g.tau.at(x);
    double att_prod = 1, sup_prod = 1, sum = 0, best_sup = 0, best_att = 0;
    for (const auto& [sign, s] : in) {
      sum += sign * s;
      if (sign < 0) {
        att_prod *= 1 - s;
        best_att = std::max(best_att, s);
      } else {
        sup_prod *= 1 - s;
        best_sup = std::max(best_sup, s);
      }
    }
    double out = 0;
    switch (sem) {
      case Sem::QE: {
        auto h = [](double v) {
          const double m = std::max(0.0, v);
          return m * m / (1 + m * m);
        };
        out = w - w * h(-sum) + (1 - w) * h(sum);
        break;
      }
      case Sem::DFQuAD: {
        const double e = att_prod - sup_prod;
        out = w - w * std::max(0.0, -e) + (1 - w) * std::max(0.0, e);
        break;
      }
      case Sem::SDDFQuAD: {
        const double e = att_prod - sup_prod;
        auto h = [](double v) {
          const double m = std::max(0.0, v);
          return m / (1 + m);
        };
        out = w - w * h(-e) + (1 - w) * h(e);
        break;
      }
      case Sem::EB: out = 1 - (1 - w * w) / (1 + w * std::exp(sum)); break;
      case Sem::EBT: out = 1 - (1 - w * w) / (1 + w * std::exp(best_sup - best_att)); break;
    }
    return memo[x] = out;
  };
  return rec(a);
}

inline std::set<std::string> others(const Graph& g, const std::string& a) {
  std::set<std::string> out;
  for (const auto& [id, _] : g.tau)
    if (id != a) out.insert(id);
  return out;
}

inline double removal(const Graph& g, Sem s, const std::set<std::string>& x, const std::string& a) {
  return sigma(g, s, a) - sigma(without(g, x), s, a);
}

inline double intrinsic(const Graph& g, Sem s, const std::set<std::string>& x, const std::string& a) {
  const auto d = detach(g, x);
  return sigma(d, s, a) - sigma(without(d, x), s, a);
}

// Shapley value of `block` in the game whose players are the given blocks,
// averaging marginal contributions over every ordering of the players.
inline double block_shapley(const Graph& g, Sem s, const std::vector<std::set<std::string>>& blocks,
                            std::size_t which, const std::string& a) {
  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  double total = 0;
  std::size_t perms = 0;
  do {
    std::set<std::string> present{a};
    for (auto i : order) {
      if (i == which) {
        const double before = sigma(restrict_to(g, present), s, a);
        present.insert(blocks[i].begin(), blocks[i].end());
        total += sigma(restrict_to(g, present), s, a) - before;
        break;
      }
      present.insert(blocks[i].begin(), blocks[i].end());
    }
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));
  return total / static_cast<double>(perms);
}

// Players: X as one block plus every other non-topic argument on its own.
inline double shapley(const Graph& g, Sem s, const std::set<std::string>& x, const std::string& a) {
  std::vector<std::set<std::string>> blocks{x};
  for (const auto& id : others(g, a))
    if (!x.count(id)) blocks.push_back({id});
  return block_shapley(g, s, blocks, 0, a);
}

inline Graph with_tau(Graph g, const std::string& x, double v) {
  g.tau[x] = v;
  return g;
}

inline double central_difference(const Graph& g, Sem s, const std::string& x, const std::string& a, double h) {
  const double t = g.tau.at(x);
  return (sigma(with_tau(g, x, t + h), s, a) - sigma(with_tau(g, x, t - h), s, a)) / (2 * h);
}

// True when some argument strictly downstream of `x` and upstream of (or
// equal to) `a` has its aggregate on a non-differentiable point: a zero
// energy for the max{0,.}-based influences, or a tie for Top.
inline bool kink_between(const Graph& g, Sem sem, const std::string& x, const std::string& a, double eps = 1e-12);

// Transitive closure by repeated relaxation.
inline bool reaches(const Graph& g, const std::string& from, const std::string& to) {
  std::set<std::string> seen{from};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [x, y, _] : g.edges) {
      if (seen.count(x) && !seen.count(y)) {
        seen.insert(y);
        grew = true;
      }
    }
  }
  return seen.count(to) > 0;
}

inline bool kink_between(const Graph& g, Sem sem, const std::string& x, const std::string& a, double eps) {
  if (sem == Sem::EB) return false;
  for (const auto& [y, _] : g.tau) {
    if (y == x || !reaches(g, x, y) || !reaches(g, y, a)) continue;
    std::vector<double> att, sup;
    for (const auto& [from, to, sign] : g.edges)
      if (to == y) (sign < 0 ? att : sup).push_back(sigma(g, sem, from));
    if (sem == Sem::EBT) {
      for (const auto* side : {&att, &sup}) {
        auto v = *side;
        std::sort(v.rbegin(), v.rend());
        if (v.size() > 1 && v[0] - v[1] <= eps) return true;
      }
      continue;
    }
    double e = 0;
    if (sem == Sem::QE) {
      for (double s : sup) e += s;
      for (double s : att) e -= s;
    } else {
      double pa = 1, ps = 1;
      for (double s : att) pa *= 1 - s;
      for (double s : sup) ps *= 1 - s;
      e = pa - ps;
    }
    if (std::fabs(e) <= eps) return true;
  }
  return false;
}

}  // namespace oracle
