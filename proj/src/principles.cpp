#include "qbag/principles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace qbag {

namespace {

// Evaluates one set function on subsets of A \ {a}, caching per mask.
class Probe {
 public:
  Probe(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec, const ArgumentId& a)
      : fn_(fn), ctx_(g, spec, a) {}

  ContributionContext& ctx() { return ctx_; }
  const Engine& engine() const { return ctx_.engine(); }
  const std::vector<std::size_t>& others() const { return ctx_.others(); }
  const Qbag& graph() const { return ctx_.engine().graph(); }
  ArgumentId topic_id() const { return ctx_.engine().id(ctx_.topic()); }

  double value(const Mask& x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    double v = fn_.eval(ctx_, x);
    cache_.emplace(x, v);
    return v;
  }

  // Mask from bits over `pool` (engine indices).
  Mask mask(std::uint64_t bits, const std::vector<std::size_t>& pool) const {
    Mask m(engine().size(), false);
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if ((bits >> j) & 1u) m[pool[j]] = true;
    }
    return m;
  }
  IdSet ids(const Mask& m) const { return engine().ids_of(m); }

  Witness witness(std::vector<Mask> sets, std::vector<std::pair<std::string, double>> values, std::string rel) const {
    Witness w;
    w.graph = graph();
    w.topic = topic_id();
    for (const auto& m : sets) w.sets.push_back(ids(m));
    w.values = std::move(values);
    w.relation = std::move(rel);
    return w;
  }

 private:
  const SetFunction& fn_;
  ContributionContext ctx_;
  std::unordered_map<Mask, double> cache_;
};

// Visits non-empty subsets of `pool`: all of them when small, otherwise a
// seeded sample. The visitor returns false to stop. Returns true iff the
// enumeration was exhaustive.
template <class Visit>
bool for_each_subset(const std::vector<std::size_t>& pool, std::size_t bound, const CheckOptions& opts,
                     const Visit& visit, std::size_t& examined) {
  const std::size_t n = pool.size();
  if (n == 0) return true;
  if (n <= bound && n < 63) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
      ++examined;
      if (!visit(bits)) return true;
    }
    return true;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> any(1, (n >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    ++examined;
    if (!visit(any(rng))) break;
  }
  return false;
}

PrincipleVerdict make(PrincipleId p) {
  PrincipleVerdict v;
  v.principle = p;
  v.status = VerdictStatus::SatisfiedOnInstance;
  return v;
}

void finish_sampled(PrincipleVerdict& v, bool exhaustive) {
  if (!exhaustive && v.status == VerdictStatus::SatisfiedOnInstance) {
    v.status = VerdictStatus::Inconclusive;
    v.note = "sampled beyond the exhaustive bound; no violation found";
  }
}

bool sign_mismatch(double s, double delta, double tol) { return sign_of(s, tol) != sign_of(delta, tol); }

}  // namespace

SetFunction builtin_function(SetFunctionKind kind, const ShapleyOptions& opts) {
  SetFunction f;
  f.name = to_string(kind);
  f.eval = [kind, opts](ContributionContext& ctx, const Mask& x) { return set_contribution(kind, ctx, x, opts); };
  SingleKind single = SingleKind::Removal;
  switch (kind) {
    case SetFunctionKind::Removal: single = SingleKind::Removal; break;
    case SetFunctionKind::IntrinsicRemoval: single = SingleKind::IntrinsicRemoval; break;
    case SetFunctionKind::Shapley: single = SingleKind::Shapley; break;
    default: single = SingleKind::Gradient; break;
  }
  f.single = [single, opts](const Qbag& g, const SemanticsSpec& spec, const ArgumentId& x, const ArgumentId& a) {
    return single_ctrb(single, g, spec, x, a, opts).value;
  };
  return f;
}

PrincipleVerdict check_generalization(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                      const CheckOptions& opts) {
  if (!fn.single) throw Error(ErrorCode::InvalidArgument, fn.name + " has no single-argument counterpart");
  auto v = make(PrincipleId::CtrbGeneralization);
  for (const auto& a : g.ids()) {
    Probe probe(fn, g, spec, a);
    for (auto xi : probe.others()) {
      ++v.cases_examined;
      Mask x(probe.engine().size(), false);
      x[xi] = true;
      const auto& xid = probe.engine().id(xi);
      double single = fn.single(g, spec, xid, a);
      double set = probe.value(x);
      if (std::abs(single - set) > opts.tolerance) {
        v.status = VerdictStatus::ViolatedOnInstance;
        v.witness = probe.witness({x}, {{"single", single}, {"set", set}}, "Ctrb(x)(a) = S({x})(a)");
        return v;
      }
    }
  }
  return v;
}

PrincipleVerdict check_contribution_existence(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                              const ArgumentId& a, const CheckOptions& opts) {
  auto v = make(PrincipleId::ContributionExistence);
  Probe probe(fn, g, spec, a);
  const double sigma = probe.ctx().sigma(), tau = probe.ctx().tau();
  if (std::abs(sigma - tau) <= opts.tolerance) {
    v.note = "vacuous: sigma(a) = tau(a)";
    return v;
  }
  bool found = false;
  double largest = 0.0;
  const auto& pool = probe.others();
  bool exhaustive = for_each_subset(
      pool, opts.max_subset_args, opts,
      [&](std::uint64_t bits) {
        double s = probe.value(probe.mask(bits, pool));
        largest = std::max(largest, std::abs(s));
        if (std::abs(s) > opts.tolerance) found = true;
        return !found;
      },
      v.cases_examined);
  if (found) return v;
  if (!exhaustive) {
    v.status = VerdictStatus::Inconclusive;
    v.note = "no non-zero contribution among sampled subsets";
    return v;
  }
  v.status = VerdictStatus::ViolatedOnInstance;
  v.witness = probe.witness({}, {{"sigma(a)", sigma}, {"tau(a)", tau}, {"max |S(X)|", largest}},
                            "sigma(a) != tau(a) but S(X)(a) = 0 for every X");
  return v;
}

PrincipleVerdict check_quantitative_contribution_existence(const SetFunction& fn, const Qbag& g,
                                                           const SemanticsSpec& spec, const ArgumentId& a,
                                                           QuantifierMode mode, const CheckOptions& opts) {
  const auto id = mode == QuantifierMode::All ? PrincipleId::QuantitativeContributionExistence
                                              : PrincipleId::WeakQuantitativeContributionExistence;
  auto v = make(id);
  Probe probe(fn, g, spec, a);
  const double target = probe.ctx().sigma() - probe.ctx().tau();
  const std::size_t n = probe.engine().size();

  auto block_sum = [&](const std::vector<Mask>& blocks) {
    double sum = 0.0;
    for (const auto& b : blocks) sum += probe.value(b);
    return sum;
  };
  auto masks_of = [&](const Partition& p) {
    std::vector<Mask> out;
    for (const auto& b : p) out.push_back(probe.engine().mask_of(b));
    return out;
  };

  IdSet base;
  for (auto i : probe.others()) base.insert(probe.engine().id(i));

  if (mode == QuantifierMode::Exists) {
    // Reachability split first: influencers of a, then the rest.
    Mask reach(n, false), rest(n, false);
    for (auto i : probe.others()) (probe.engine().reaches(i, probe.ctx().topic()) ? reach : rest)[i] = true;
    std::vector<Mask> split;
    for (const auto* m : {&reach, &rest}) {
      if (std::count(m->begin(), m->end(), true) > 0) split.push_back(*m);
    }
    ++v.cases_examined;
    double closest = block_sum(split);
    if (std::abs(closest - target) <= opts.tolerance) {
      v.note = "reachability split";
      return v;
    }
    if (base.size() > opts.max_partition_args) {
      v.status = VerdictStatus::Inconclusive;
      v.note = "reachability split failed; partition space too large to enumerate";
      return v;
    }
    PartitionStream stream(base, opts.max_partition_args);
    Partition p;
    while (stream.next(p)) {
      ++v.cases_examined;
      double sum = block_sum(masks_of(p));
      if (std::abs(sum - target) < std::abs(closest - target)) closest = sum;
      if (std::abs(sum - target) <= opts.tolerance) return v;
    }
    v.status = VerdictStatus::ViolatedOnInstance;
    v.witness = probe.witness({}, {{"sigma(a)-tau(a)", target}, {"closest partition sum", closest}},
                              "no partition P of A\\{a} has sum S(X)(a) = sigma(a) - tau(a)");
    return v;
  }

  PartitionStream stream(base, opts.max_partition_args);
  Partition p;
  while (stream.next(p)) {
    ++v.cases_examined;
    auto blocks = masks_of(p);
    double sum = block_sum(blocks);
    if (std::abs(sum - target) > opts.tolerance) {
      v.status = VerdictStatus::ViolatedOnInstance;
      std::vector<std::pair<std::string, double>> values;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        values.emplace_back("S({" + set_label(p[i]) + "})", probe.value(blocks[i]));
      }
      values.emplace_back("sum", sum);
      values.emplace_back("sigma(a)-tau(a)", target);
      v.witness = probe.witness(blocks, std::move(values), "sum over P of S(X)(a) = sigma(a) - tau(a)");
      return v;
    }
  }
  return v;
}

PrincipleVerdict check_directionality(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                      const ArgumentId& a, const CheckOptions& opts) {
  auto v = make(PrincipleId::Directionality);
  Probe probe(fn, g, spec, a);
  std::vector<std::size_t> pool;
  for (auto i : probe.others()) {
    if (!probe.engine().reaches(i, probe.ctx().topic())) pool.push_back(i);
  }
  bool exhaustive = for_each_subset(
      pool, opts.max_subset_args, opts,
      [&](std::uint64_t bits) {
        auto x = probe.mask(bits, pool);
        double s = probe.value(x);
        if (std::abs(s) > opts.tolerance) {
          v.status = VerdictStatus::ViolatedOnInstance;
          v.witness = probe.witness({x}, {{"S(X)", s}}, "S(X)(a) = 0 when no member of X reaches a");
          return false;
        }
        return true;
      },
      v.cases_examined);
  finish_sampled(v, exhaustive);
  return v;
}

PrincipleVerdict check_counterfactuality(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                         const ArgumentId& a, bool quantitative, const CheckOptions& opts) {
  auto v = make(quantitative ? PrincipleId::QuantitativeCounterfactuality : PrincipleId::Counterfactuality);
  Probe probe(fn, g, spec, a);
  const double sigma = probe.ctx().sigma();
  const auto& pool = probe.others();
  bool exhaustive = for_each_subset(
      pool, opts.max_subset_args, opts,
      [&](std::uint64_t bits) {
        auto x = probe.mask(bits, pool);
        double s = probe.value(x);
        double without = probe.ctx().sigma_without(x);
        double delta = sigma - without;
        bool bad = quantitative ? std::abs(s - delta) > opts.tolerance : sign_mismatch(s, delta, opts.tolerance);
        if (bad) {
          v.status = VerdictStatus::ViolatedOnInstance;
          v.witness = probe.witness({x}, {{"S(X)", s}, {"sigma(a)", sigma}, {"sigma_without_X(a)", without}},
                                    quantitative ? "S(X)(a) = sigma(a) - sigma_without_X(a)"
                                                 : "sign S(X)(a) = sign(sigma(a) - sigma_without_X(a))");
          return false;
        }
        return true;
      },
      v.cases_examined);
  finish_sampled(v, exhaustive);
  return v;
}

PrincipleVerdict check_consistency(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                   const ArgumentId& a, const CheckOptions& opts) {
  auto v = make(PrincipleId::Consistency);
  Probe probe(fn, g, spec, a);
  const auto& pool = probe.others();
  const double tol = opts.tolerance;

  auto test = [&](std::uint64_t xb, std::uint64_t yb) {
    ++v.cases_examined;
    auto x = probe.mask(xb, pool), y = probe.mask(yb, pool), xy = probe.mask(xb | yb, pool);
    double sx = probe.value(x), sy = probe.value(y), sxy = probe.value(xy);
    const char* rel = nullptr;
    if (sx <= tol && sy <= tol && sxy > tol) rel = "S(X)<=0 and S(Y)<=0 imply S(X u Y)<=0";
    if (sx >= -tol && sy >= -tol && sxy < -tol) rel = "S(X)>=0 and S(Y)>=0 imply S(X u Y)>=0";
    if (!rel) return true;
    v.status = VerdictStatus::ViolatedOnInstance;
    v.witness = probe.witness({x, y}, {{"S(X)", sx}, {"S(Y)", sy}, {"S(X u Y)", sxy}}, rel);
    return false;
  };

  const std::size_t n = pool.size();
  if (n == 0) return v;
  if (n <= opts.max_pair_args) {
    const std::uint64_t full = std::uint64_t{1} << n;
    for (std::uint64_t xb = 1; xb < full; ++xb) {
      for (std::uint64_t yb = xb; yb < full; ++yb) {
        if (!test(xb, yb)) return v;
      }
    }
    return v;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> any(1, n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    if (!test(any(rng), any(rng))) return v;
  }
  finish_sampled(v, false);
  return v;
}

PrincipleVerdict check_monotonicity(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                    const ArgumentId& a, const CheckOptions& opts) {
  auto v = make(PrincipleId::Monotonicity);
  Probe probe(fn, g, spec, a);
  const auto& pool = probe.others();
  const std::size_t n = pool.size();

  auto test = [&](std::uint64_t xb, std::uint64_t yb) {
    ++v.cases_examined;
    auto x = probe.mask(xb, pool), y = probe.mask(yb, pool);
    double sx = probe.value(x), sy = probe.value(y);
    if (sx <= sy + opts.tolerance) return true;
    v.status = VerdictStatus::ViolatedOnInstance;
    v.witness = probe.witness({x, y}, {{"S(X)", sx}, {"S(Y)", sy}}, "X subset of Y implies S(X)(a) <= S(Y)(a)");
    return false;
  };

  if (n == 0) return v;
  if (n <= opts.max_subset_args) {
    const std::uint64_t full = std::uint64_t{1} << n;
    for (std::uint64_t yb = 1; yb < full; ++yb) {
      // Proper non-empty subsets of yb.
      for (std::uint64_t xb = (yb - 1) & yb; xb != 0; xb = (xb - 1) & yb) {
        if (!test(xb, yb)) return v;
      }
    }
    return v;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint64_t> any(1, n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  for (std::size_t i = 0; i < opts.samples; ++i) {
    std::uint64_t yb = any(rng);
    std::uint64_t xb = yb & any(rng);
    if (xb == 0 || xb == yb) continue;
    if (!test(xb, yb)) return v;
  }
  finish_sampled(v, false);
  return v;
}

PrincipleVerdict check_principle(PrincipleId principle, const SetFunction& fn, const Qbag& g,
                                 const SemanticsSpec& spec, const ArgumentId& a, const CheckOptions& opts) {
  switch (principle) {
    case PrincipleId::Stability: return check_stability(spec, g, opts.tolerance);
    case PrincipleId::CtrbGeneralization: return check_generalization(fn, g, spec, opts);
    case PrincipleId::ContributionExistence: return check_contribution_existence(fn, g, spec, a, opts);
    case PrincipleId::QuantitativeContributionExistence:
      return check_quantitative_contribution_existence(fn, g, spec, a, QuantifierMode::All, opts);
    case PrincipleId::WeakQuantitativeContributionExistence:
      return check_quantitative_contribution_existence(fn, g, spec, a, QuantifierMode::Exists, opts);
    case PrincipleId::Directionality: return check_directionality(fn, g, spec, a, opts);
    case PrincipleId::Counterfactuality: return check_counterfactuality(fn, g, spec, a, false, opts);
    case PrincipleId::QuantitativeCounterfactuality: return check_counterfactuality(fn, g, spec, a, true, opts);
    case PrincipleId::Consistency: return check_consistency(fn, g, spec, a, opts);
    case PrincipleId::Monotonicity: return check_monotonicity(fn, g, spec, a, opts);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown principle");
}

bool replay_witness(PrincipleId principle, const SetFunction& fn, const SemanticsSpec& spec, const Witness& w,
                    const CheckOptions& opts) {
  const double tol = opts.tolerance;
  // Fresh evaluation of S on a set, without any cache shared with the checker.
  auto S = [&](const IdSet& x) {
    ContributionContext ctx(w.graph, spec, w.topic);
    return fn.eval(ctx, ctx.contributor_mask(x));
  };
  auto sigma = [&](const Qbag& g) { return evaluate(g, spec).at(w.topic); };
  auto without = [&](const IdSet& x) {
    IdSet keep = w.graph.id_set();
    for (const auto& id : x) keep.erase(id);
    return sigma(restrict(w.graph, keep));
  };

  switch (principle) {
    case PrincipleId::Stability: {
      const auto& x = *w.sets.at(0).begin();
      return std::abs(evaluate(w.graph, spec).at(x) - w.graph.initial_strength(x)) > tol;
    }
    case PrincipleId::CtrbGeneralization: {
      const auto& x = *w.sets.at(0).begin();
      return std::abs(fn.single(w.graph, spec, x, w.topic) - S({x})) > tol;
    }
    case PrincipleId::ContributionExistence:
    case PrincipleId::WeakQuantitativeContributionExistence: {
      // No finite witness: the claim is about every subset or partition, so rerun the search.
      return check_principle(principle, fn, w.graph, spec, w.topic, opts).violated();
    }
    case PrincipleId::QuantitativeContributionExistence: {
      double sum = 0.0;
      IdSet covered;
      for (const auto& b : w.sets) {
        sum += S(b);
        covered.insert(b.begin(), b.end());
      }
      IdSet expected = w.graph.id_set();
      expected.erase(w.topic);
      if (covered != expected) return false;
      return std::abs(sum - (sigma(w.graph) - w.graph.initial_strength(w.topic))) > tol;
    }
    case PrincipleId::Directionality: {
      const auto& x = w.sets.at(0);
      for (const auto& id : x) {
        if (can_reach(w.graph, id, w.topic)) return false;
      }
      return std::abs(S(x)) > tol;
    }
    case PrincipleId::Counterfactuality:
    case PrincipleId::QuantitativeCounterfactuality: {
      const auto& x = w.sets.at(0);
      double s = S(x), delta = sigma(w.graph) - without(x);
      return principle == PrincipleId::Counterfactuality ? sign_mismatch(s, delta, tol) : std::abs(s - delta) > tol;
    }
    case PrincipleId::Consistency: {
      const auto &x = w.sets.at(0), &y = w.sets.at(1);
      IdSet xy = x;
      xy.insert(y.begin(), y.end());
      double sx = S(x), sy = S(y), sxy = S(xy);
      return (sx <= tol && sy <= tol && sxy > tol) || (sx >= -tol && sy >= -tol && sxy < -tol);
    }
    case PrincipleId::Monotonicity: {
      const auto &x = w.sets.at(0), &y = w.sets.at(1);
      if (!std::includes(y.begin(), y.end(), x.begin(), x.end())) return false;
      return S(x) > S(y) + tol;
    }
  }
  return false;
}

std::vector<double> default_strength_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
  return g;
}

Qbag random_qbag(std::mt19937_64& rng, const RandomGraphOptions& opts) {
  if (opts.min_arguments < 1 || opts.max_arguments < opts.min_arguments || opts.strength_grid.empty() ||
      opts.edge_probabilities.empty()) {
    throw Error(ErrorCode::InvalidArgument, "invalid random graph options");
  }
  std::uniform_int_distribution<std::size_t> size(opts.min_arguments, opts.max_arguments);
  const std::size_t n = size(rng);
  std::uniform_int_distribution<std::size_t> pick_p(0, opts.edge_probabilities.size() - 1);
  const double p = opts.edge_probabilities[pick_p(rng)];

  std::vector<ArgumentId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    ids.emplace_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::bernoulli_distribution edge(p), coin(0.5);
  std::uniform_int_distribution<std::size_t> pick_tau(0, opts.strength_grid.size() - 1);
  EdgeSet att, sup;
  // Edges run from earlier to later positions of the permutation.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!edge(rng)) continue;
      Edge e{ids[perm[i]], ids[perm[j]]};
      (coin(rng) ? att : sup).insert(e);
    }
  }
  std::vector<Argument> args;
  for (const auto& id : ids) args.push_back({id, opts.strength_grid[pick_tau(rng)]});
  return Qbag(std::move(args), std::move(att), std::move(sup));
}

std::vector<Qbag> random_corpus(std::uint64_t seed, std::size_t count, const RandomGraphOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<Qbag> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_qbag(rng, opts));
  return out;
}

PrincipleVerdict minimize_violation(PrincipleId principle, const SetFunction& fn, const SemanticsSpec& spec,
                                    const Qbag& g, const ArgumentId& a, const CheckOptions& opts) {
  auto current = check_principle(principle, fn, g, spec, a, opts);
  if (!current.violated()) return current;
  Qbag best = g;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& id : best.ids()) {
      if (id == a) continue;
      IdSet keep = best.id_set();
      keep.erase(id);
      Qbag smaller = restrict(best, keep);
      auto verdict = check_principle(principle, fn, smaller, spec, a, opts);
      if (verdict.violated()) {
        best = std::move(smaller);
        current = std::move(verdict);
        changed = true;
        break;
      }
    }
  }
  changed = true;
  while (changed) {
    changed = false;
    std::vector<Edge> edges(best.attacks().begin(), best.attacks().end());
    edges.insert(edges.end(), best.supports().begin(), best.supports().end());
    for (const auto& e : edges) {
      Qbag smaller = remove_edge(best, e);
      auto verdict = check_principle(principle, fn, smaller, spec, a, opts);
      if (verdict.violated()) {
        best = std::move(smaller);
        current = std::move(verdict);
        changed = true;
        break;
      }
    }
  }
  return current;
}

PrincipleVerdict search_counterexample(PrincipleId principle, const SetFunction& fn, const SemanticsSpec& spec,
                                       const SearchConfig& cfg, const CheckOptions& opts) {
  RandomGraphOptions gopts;
  gopts.min_arguments = cfg.min_arguments;
  gopts.max_arguments = cfg.max_exhaustive_arguments;
  gopts.strength_grid = cfg.strength_grid;
  std::mt19937_64 rng(cfg.seed);

  std::size_t examined = 0;
  for (std::size_t i = 0; i < cfg.graph_count; ++i) {
    Qbag g = random_qbag(rng, gopts);
    for (const auto& a : g.ids()) {
      PrincipleVerdict v;
      try {
        v = check_principle(principle, fn, g, spec, a, opts);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::BudgetExceeded) continue;
        throw;
      }
      examined += v.cases_examined;
      if (v.violated()) {
        auto m = minimize_violation(principle, fn, spec, g, a, opts);
        m.cases_examined = examined;
        m.note = "found in random graph " + std::to_string(i) + " (seed " + std::to_string(cfg.seed) + "), minimized";
        return m;
      }
      if (principle == PrincipleId::Stability || principle == PrincipleId::CtrbGeneralization) break;
    }
  }
  PrincipleVerdict v;
  v.principle = principle;
  v.status = VerdictStatus::Inconclusive;
  v.cases_examined = examined;
  v.note = "no counterexample among " + std::to_string(cfg.graph_count) + " random graphs";
  return v;
}

}  // namespace qbag
