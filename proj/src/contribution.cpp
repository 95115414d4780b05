#include "qbag/contribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>

namespace qbag {

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

std::size_t count(const Mask& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); }

void check_exact_budget(std::size_t players, std::uint64_t budget, const char* what) {
  // 2^players coalitions with two sigma evaluations each.
  if (players >= 62 || (std::uint64_t{2} << players) > budget) {
    std::ostringstream msg;
    msg << what << " over " << players + 1 << " players needs 2^" << players + 1
        << " evaluations, above the budget of " << budget
        << "; enable Monte-Carlo mode (--monte-carlo) or raise QBAG_EVAL_BUDGET";
    throw Error(ErrorCode::BudgetExceeded, msg.str());
  }
}

// Permutation estimator for a game whose players are `groups` (index 0 is
// the contributor) and whose payoff is sigma(topic) with the absent groups
// removed.
double sample_shapley(ContributionContext& ctx, const std::vector<Mask>& groups, const ShapleyOptions& opts,
                      double* standard_error) {
  std::mt19937_64 rng(opts.seed);
  std::vector<std::size_t> perm(groups.size());
  std::iota(perm.begin(), perm.end(), 0);
  const std::size_t n = ctx.engine().size();
  double mean = 0.0, m2 = 0.0;
  const std::size_t samples = std::max<std::size_t>(opts.samples, 2);
  for (std::size_t i = 1; i <= samples; ++i) {
    std::shuffle(perm.begin(), perm.end(), rng);
    Mask removed(n, false);
    for (const auto& g : groups) {
      for (std::size_t j = 0; j < n; ++j) {
        if (g[j]) removed[j] = true;
      }
    }
    for (auto p : perm) {
      if (p == 0) break;
      for (std::size_t j = 0; j < n; ++j) {
        if (groups[p][j]) removed[j] = false;
      }
    }
    double without = ctx.sigma_without(removed);
    for (std::size_t j = 0; j < n; ++j) {
      if (groups[0][j]) removed[j] = false;
    }
    double delta = ctx.sigma_without(removed) - without;
    double diff = delta - mean;
    mean += diff / static_cast<double>(i);
    m2 += diff * (delta - mean);
  }
  if (standard_error) {
    *standard_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  }
  return mean;
}

ContributionResult make_result(double value, std::string fn, const SemanticsSpec& spec, IdSet members,
                               ArgumentId topic, std::size_t evaluations) {
  ContributionResult r;
  r.value = value;
  r.function = std::move(fn);
  r.semantics = spec.label();
  r.contributor = std::move(members);
  r.topic = std::move(topic);
  r.evaluations = evaluations;
  return r;
}

}  // namespace

const char* to_string(SingleKind k) {
  switch (k) {
    case SingleKind::Removal: return "removal";
    case SingleKind::IntrinsicRemoval: return "intrinsic";
    case SingleKind::Shapley: return "shapley";
    case SingleKind::Gradient: return "gradient";
  }
  return "?";
}

const char* to_string(SetFunctionKind k) {
  switch (k) {
    case SetFunctionKind::Removal: return "removal";
    case SetFunctionKind::IntrinsicRemoval: return "intrinsic";
    case SetFunctionKind::Shapley: return "shapley";
    case SetFunctionKind::GradientMax: return "gradient-max";
    case SetFunctionKind::GradientMin: return "gradient-min";
    case SetFunctionKind::GradientMaxAbs: return "gradient-maxabs";
  }
  return "?";
}

const std::vector<SetFunctionKind>& all_set_functions() {
  static const std::vector<SetFunctionKind> all{SetFunctionKind::Removal,     SetFunctionKind::IntrinsicRemoval,
                                                SetFunctionKind::Shapley,     SetFunctionKind::GradientMax,
                                                SetFunctionKind::GradientMin, SetFunctionKind::GradientMaxAbs};
  return all;
}

SetFunctionKind set_function_from_string(const std::string& name) {
  for (auto k : all_set_functions()) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown contribution function '" + name +
                                              "' (expected removal, intrinsic, shapley, gradient-max, "
                                              "gradient-min or gradient-maxabs)");
}

std::uint64_t default_evaluation_budget() {
  if (const char* env = std::getenv("QBAG_EVAL_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 20;
}

// ---- context ----

ContributionContext::ContributionContext(const Qbag& g, const SemanticsSpec& spec, const ArgumentId& topic)
    : engine_(g, spec), topic_(engine_.index(topic)), gradients_(engine_.size()) {
  for (std::size_t i = 0; i < engine_.size(); ++i) {
    if (i != topic_) others_.push_back(i);
  }
}

Mask ContributionContext::contributor_mask(const IdSet& members) const {
  Mask m(engine_.size(), false);
  for (const auto& id : members) {
    if (!engine_.graph().contains(id)) {
      throw Error(ErrorCode::InvalidContributor, "contributor " + id.str() + " is not an argument of the graph");
    }
    auto i = engine_.index(id);
    if (i == topic_) {
      throw Error(ErrorCode::InvalidContributor, "topic " + id.str() + " cannot be part of its own contributor set");
    }
    m[i] = true;
  }
  return m;
}

double ContributionContext::sigma() { return sigma_without(engine_.empty_mask()); }

double ContributionContext::sigma_without(const Mask& removed) {
  // Only removals among the topic's ancestors can matter.
  Mask key(removed.size(), false);
  const auto& anc = engine_.ancestors(topic_);
  for (std::size_t i = 0; i < removed.size(); ++i) key[i] = removed[i] && anc[i];
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ++evaluations_;
  double v = engine_.strength(topic_, key);
  memo_.emplace(std::move(key), v);
  return v;
}

double ContributionContext::sigma_detached(const Mask& x) {
  ++evaluations_;
  return engine_.strength(topic_, engine_.empty_mask(), x);
}

double ContributionContext::gradient(std::size_t x) {
  if (!gradients_[x]) {
    ++evaluations_;
    gradients_[x] = engine_.derivative(topic_, x);
  }
  return *gradients_[x];
}

// ---- mask-level functions ----

double removal(ContributionContext& ctx, const Mask& x) {
  if (count(x) == 0) return 0.0;
  return ctx.sigma() - ctx.sigma_without(x);
}

double intrinsic_removal(ContributionContext& ctx, const Mask& x) {
  if (count(x) == 0) return 0.0;
  return ctx.sigma_detached(x) - ctx.sigma_without(x);
}

double shapley(ContributionContext& ctx, const Mask& x, const ShapleyOptions& opts, double* standard_error) {
  std::vector<std::size_t> rest;
  for (auto i : ctx.others()) {
    if (!x[i]) rest.push_back(i);
  }
  const std::size_t r = rest.size();
  const std::size_t n = ctx.engine().size();

  bool exact = r < 62 && (std::uint64_t{2} << r) <= opts.budget;
  if (!exact) {
    if (!opts.monte_carlo) check_exact_budget(r, opts.budget, "Shapley value");
    std::vector<Mask> groups{x};
    for (auto i : rest) {
      Mask m(n, false);
      m[i] = true;
      groups.push_back(std::move(m));
    }
    return sample_shapley(ctx, groups, opts, standard_error);
  }

  double total = 0.0;
  Mask removed(n, false);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s) {
    // s marks the rest-players present in the coalition.
    std::size_t size = 0;
    for (std::size_t j = 0; j < r; ++j) {
      bool present = (s >> j) & 1u;
      removed[rest[j]] = !present;
      size += present;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i]) removed[i] = false;
    }
    double with_x = ctx.sigma_without(removed);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i]) removed[i] = true;
    }
    double without_x = ctx.sigma_without(removed);
    total += (with_x - without_x) / (static_cast<double>(r + 1) * binomial(r, size));
  }
  return total;
}

double gradient(ContributionContext& ctx, const Mask& x, GradientAggregator psi) {
  std::optional<double> acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    double g = ctx.gradient(i);
    switch (psi) {
      case GradientAggregator::Max: acc = acc ? std::max(*acc, g) : g; break;
      case GradientAggregator::Min: acc = acc ? std::min(*acc, g) : g; break;
      case GradientAggregator::MaxAbs: acc = acc ? std::max(*acc, std::abs(g)) : std::abs(g); break;
    }
  }
  if (!acc) throw Error(ErrorCode::InvalidContributor, "gradient aggregation over an empty set is undefined");
  return *acc;
}

double partition_shapley(ContributionContext& ctx, const std::vector<Mask>& blocks, std::size_t which,
                         const ShapleyOptions& opts, double* standard_error) {
  const std::size_t k = blocks.size();
  const std::size_t n = ctx.engine().size();
  std::vector<std::size_t> rest;
  for (std::size_t b = 0; b < k; ++b) {
    if (b != which) rest.push_back(b);
  }
  const std::size_t r = rest.size();
  bool exact = r < 62 && (std::uint64_t{2} << r) <= opts.budget;
  if (!exact) {
    if (!opts.monte_carlo) check_exact_budget(r, opts.budget, "partition Shapley value");
    std::vector<Mask> groups{blocks[which]};
    for (auto b : rest) groups.push_back(blocks[b]);
    return sample_shapley(ctx, groups, opts, standard_error);
  }

  double total = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s) {
    // s marks the removed blocks P'.
    Mask removed(n, false);
    std::size_t size = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (!((s >> j) & 1u)) continue;
      ++size;
      for (std::size_t i = 0; i < n; ++i) {
        if (blocks[rest[j]][i]) removed[i] = true;
      }
    }
    double with_x = ctx.sigma_without(removed);
    for (std::size_t i = 0; i < n; ++i) {
      if (blocks[which][i]) removed[i] = true;
    }
    double without_x = ctx.sigma_without(removed);
    total += (with_x - without_x) / (static_cast<double>(k) * binomial(r, size));
  }
  return total;
}

double set_contribution(SetFunctionKind kind, ContributionContext& ctx, const Mask& x, const ShapleyOptions& opts) {
  switch (kind) {
    case SetFunctionKind::Removal: return removal(ctx, x);
    case SetFunctionKind::IntrinsicRemoval: return intrinsic_removal(ctx, x);
    case SetFunctionKind::Shapley: return shapley(ctx, x, opts);
    case SetFunctionKind::GradientMax: return gradient(ctx, x, GradientAggregator::Max);
    case SetFunctionKind::GradientMin: return gradient(ctx, x, GradientAggregator::Min);
    case SetFunctionKind::GradientMaxAbs: return gradient(ctx, x, GradientAggregator::MaxAbs);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown contribution function");
}

// ---- public set API ----

ContributionResult sctrb(SetFunctionKind kind, const Qbag& g, const SemanticsSpec& spec, const SetContributor& x,
                         const ShapleyOptions& opts) {
  ContributionContext ctx(g, spec, x.topic);
  auto mask = ctx.contributor_mask(x.members);
  double se = 0.0;
  double value = kind == SetFunctionKind::Shapley ? shapley(ctx, mask, opts, &se) : set_contribution(kind, ctx, mask);
  auto r = make_result(value, to_string(kind), spec, x.members, x.topic, ctx.evaluations());
  if (kind == SetFunctionKind::Shapley && se > 0.0) r.standard_error = se;
  return r;
}

ContributionResult sctrb_removal(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x) {
  return sctrb(SetFunctionKind::Removal, g, spec, x);
}

ContributionResult sctrb_intrinsic_removal(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x) {
  return sctrb(SetFunctionKind::IntrinsicRemoval, g, spec, x);
}

ContributionResult sctrb_shapley(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x,
                                 const ShapleyOptions& opts) {
  return sctrb(SetFunctionKind::Shapley, g, spec, x, opts);
}

ContributionResult sctrb_gradient(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x,
                                  GradientAggregator psi) {
  switch (psi) {
    case GradientAggregator::Max: return sctrb(SetFunctionKind::GradientMax, g, spec, x);
    case GradientAggregator::Min: return sctrb(SetFunctionKind::GradientMin, g, spec, x);
    case GradientAggregator::MaxAbs: return sctrb(SetFunctionKind::GradientMaxAbs, g, spec, x);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gradient aggregator");
}

ContributionResult pctrb_shapley(const Qbag& g, const SemanticsSpec& spec, const IdSet& x, const Partition& p,
                                 const ArgumentId& a, const ShapleyOptions& opts) {
  ContributionContext ctx(g, spec, a);
  std::vector<Mask> blocks;
  Mask covered(ctx.engine().size(), false);
  std::optional<std::size_t> which;
  for (const auto& block : p) {
    if (block.empty()) throw Error(ErrorCode::InvalidArgument, "partition blocks must be non-empty");
    auto m = ctx.contributor_mask(block);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (covered[i]) {
        throw Error(ErrorCode::InvalidArgument,
                    "partition blocks overlap on " + ctx.engine().id(i).str());
      }
      covered[i] = true;
    }
    if (block == x) which = blocks.size();
    blocks.push_back(std::move(m));
  }
  for (auto i : ctx.others()) {
    if (!covered[i]) {
      throw Error(ErrorCode::InvalidArgument,
                  "partition does not cover " + ctx.engine().id(i).str() + " (must partition all non-topic arguments)");
    }
  }
  if (!which) throw Error(ErrorCode::InvalidArgument, "contributor set " + set_label(x) + " is not a block of the partition");
  double se = 0.0;
  double value = partition_shapley(ctx, blocks, *which, opts, &se);
  auto r = make_result(value, "partition-shapley", spec, x, a, ctx.evaluations());
  if (se > 0.0) r.standard_error = se;
  return r;
}

// ---- single-argument functions ----

ContributionResult single_ctrb(SingleKind kind, const Qbag& g, const SemanticsSpec& spec, const ArgumentId& x,
                               const ArgumentId& a, const ShapleyOptions& opts) {
  require_valid(g);
  for (const auto* id : {&x, &a}) {
    if (!g.contains(*id)) throw Error(ErrorCode::InvalidContributor, "unknown argument id: " + id->str());
  }
  if (x == a) throw Error(ErrorCode::InvalidContributor, "contributor and topic must differ (" + x.str() + ")");

  auto without_x = [&] {
    IdSet keep = g.id_set();
    keep.erase(x);
    return evaluate(restrict(g, keep), spec).at(a);
  };

  double value = 0.0;
  std::size_t evals = 0;
  switch (kind) {
    case SingleKind::Removal:
      value = evaluate(g, spec).at(a) - without_x();
      evals = 2;
      break;
    case SingleKind::IntrinsicRemoval:
      value = evaluate(detach_incoming(g, {x}), spec).at(a) - without_x();
      evals = 2;
      break;
    case SingleKind::Gradient:
      value = evaluate_dual(g, spec, x).at(a).derivative;
      evals = 1;
      break;
    case SingleKind::Shapley: {
      Engine e(g, spec);
      const std::size_t ia = e.index(a), ix = e.index(x);
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i != ia && i != ix) pool.push_back(i);
      }
      const std::size_t m = pool.size();
      const std::size_t players = m + 1;
      check_exact_budget(m, opts.budget, "single-argument Shapley value");
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
        // keep S u {x, a} versus S u {a}
        Mask removed(e.size(), false);
        std::size_t size = 0;
        for (std::size_t j = 0; j < m; ++j) {
          bool in_s = (s >> j) & 1u;
          removed[pool[j]] = !in_s;
          size += in_s;
        }
        double with_x = e.strength(ia, removed);
        removed[ix] = true;
        double without = e.strength(ia, removed);
        double weight = std::tgamma(static_cast<double>(size) + 1) *
                        std::tgamma(static_cast<double>(players - size - 1) + 1) /
                        std::tgamma(static_cast<double>(players) + 1);
        value += weight * (with_x - without);
        evals += 2;
      }
      break;
    }
  }
  return make_result(value, std::string("single-") + to_string(kind), spec, {x}, a, evals);
}

// ---- signs ----

int sign_of(double v, double tol) {
  if (std::abs(v) <= tol) return 0;
  return v > 0 ? 1 : -1;
}

std::string set_label(const IdSet& s) {
  std::string out;
  for (const auto& id : s) {
    if (!out.empty()) out += "+";
    out += id.str();
  }
  return out;
}

std::string SignMap::csv() const {
  std::ostringstream out;
  out << "eps1,eps2";
  for (const auto& l : labels) out << "," << l;
  out << "\n";
  out.precision(10);
  for (const auto& row : rows) {
    out << row.eps1 << "," << row.eps2;
    for (int s : row.signs) out << "," << s;
    out << "\n";
  }
  return out.str();
}

SignMap sign_map(const Qbag& g, const SemanticsSpec& spec, const ArgumentId& a, const std::vector<IdSet>& sets,
                 const ArgumentId& arg1, const ArgumentId& arg2, double step, SetFunctionKind fn) {
  require_valid(g);
  for (const auto* id : {&a, &arg1, &arg2}) {
    if (!g.contains(*id)) throw Error(ErrorCode::UnknownId, "unknown argument id: " + id->str());
  }
  if (arg1 == arg2) throw Error(ErrorCode::InvalidArgument, "sweep arguments must differ");
  if (arg1 == a || arg2 == a) throw Error(ErrorCode::InvalidArgument, "sweep arguments must differ from the topic");
  if (!(step > 0.0 && step <= 0.5)) throw Error(ErrorCode::InvalidArgument, "grid step must lie in (0, 0.5]");

  SignMap map;
  for (const auto& s : sets) map.labels.push_back(set_label(s));
  const auto points = static_cast<std::size_t>(std::llround(1.0 / step)) + 1;
  auto grid = [&](std::size_t k) { return std::min(1.0, static_cast<double>(k) * step); };
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = 0; j < points; ++j) {
      const double e1 = grid(i), e2 = grid(j);
      auto h = set_initial_strength(set_initial_strength(g, arg1, e1), arg2, e2);
      ContributionContext ctx(h, spec, a);
      SignMapRow row{e1, e2, {}};
      for (const auto& s : sets) row.signs.push_back(sign_of(set_contribution(fn, ctx, ctx.contributor_mask(s))));
      map.rows.push_back(std::move(row));
    }
  }
  return map;
}

}  // namespace qbag
