#include "qbag/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <queue>
#include <sstream>

#include "qbag/engine.hpp"

namespace qbag {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

template <class T>
T aggregate_t(AggregationKind kind, const std::vector<int>& v, const std::vector<T>& s) {
  switch (kind) {
    case AggregationKind::Sum: {
      T acc(0.0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0) acc = acc + s[i];
        if (v[i] < 0) acc = acc - s[i];
      }
      return acc;
    }
    case AggregationKind::Product: {
      T att(1.0), sup(1.0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0) att = att * (T(1.0) - s[i]);
        if (v[i] > 0) sup = sup * (T(1.0) - s[i]);
      }
      return att - sup;
    }
    case AggregationKind::Top: {
      // M_v and M_{-v}; both sets contain 0.
      T mv(0.0), mneg(0.0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        T term = v[i] > 0 ? s[i] : v[i] < 0 ? -s[i] : T(0.0);
        mv = tmax(mv, term);
        mneg = tmax(mneg, -term);
      }
      return mv - mneg;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown aggregation kind");
}

template <class T>
T pow_int(T x, int p) {
  T out = x;
  for (int i = 1; i < p; ++i) out = out * x;
  return out;
}

template <class T>
T influence_t(const InfluenceKind& kind, T w, T agg) {
  return std::visit(
      overloaded{
          [&](const LinearInfluence& l) -> T {
            if (std::abs(value_of(agg)) > l.k) {
              std::ostringstream msg;
              msg.precision(17);
              msg << "aggregate " << value_of(agg) << " outside linear influence domain [-" << l.k << "," << l.k
                  << "]";
              throw Error(ErrorCode::Domain, msg.str());
            }
            return w - (w / T(l.k)) * max0(-agg) + ((T(1.0) - w) / T(l.k)) * max0(agg);
          },
          [&](const EulerInfluence&) -> T {
            return T(1.0) - (T(1.0) - w * w) / (T(1.0) + w * texp(agg));
          },
          [&](const PMaxInfluence& pm) -> T {
            auto h = [&](T x) {
              T m = pow_int(max0(x), pm.p);
              return m / (T(1.0) + m);
            };
            return w - w * h(-agg / T(pm.k)) + (T(1.0) - w) * h(agg / T(pm.k));
          },
      },
      kind);
}

}  // namespace

std::string SemanticsSpec::label() const {
  if (!name.empty()) return name;
  std::ostringstream out;
  out << to_string(aggregation) << "/";
  std::visit(overloaded{
                 [&](const LinearInfluence& l) { out << "linear(k=" << l.k << ")"; },
                 [&](const EulerInfluence&) { out << "euler"; },
                 [&](const PMaxInfluence& p) { out << "pmax(p=" << p.p << ",k=" << p.k << ")"; },
             },
             influence);
  return out.str();
}

const char* to_string(AggregationKind kind) {
  switch (kind) {
    case AggregationKind::Sum: return "sum";
    case AggregationKind::Product: return "product";
    case AggregationKind::Top: return "top";
  }
  return "?";
}

const std::array<SemanticsSpec, 5>& presets() {
  static const std::array<SemanticsSpec, 5> all{{
      {AggregationKind::Sum, PMaxInfluence{2, 1.0}, "QE"},
      {AggregationKind::Product, LinearInfluence{1.0}, "DFQuAD"},
      {AggregationKind::Product, PMaxInfluence{1, 1.0}, "SD-DFQuAD"},
      {AggregationKind::Sum, EulerInfluence{}, "EB"},
      {AggregationKind::Top, EulerInfluence{}, "EBT"},
  }};
  return all;
}

SemanticsSpec preset(std::string_view name) {
  auto same = [](std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
  };
  for (const auto& s : presets()) {
    if (same(s.name, name)) return s;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown semantics '" + std::string(name) + "' (expected QE, DFQuAD, SD-DFQuAD, EB or EBT)");
}

void check_spec(const SemanticsSpec& spec) {
  std::visit(overloaded{
                 [](const LinearInfluence& l) {
                   if (!(l.k > 0.0)) throw Error(ErrorCode::InvalidArgument, "linear influence needs k > 0");
                 },
                 [](const EulerInfluence&) {},
                 [](const PMaxInfluence& p) {
                   if (p.p < 1) throw Error(ErrorCode::InvalidArgument, "pmax influence needs p >= 1");
                   if (!(p.k > 0.0)) throw Error(ErrorCode::InvalidArgument, "pmax influence needs k > 0");
                 },
             },
             spec.influence);
}

double aggregate(AggregationKind kind, const std::vector<int>& v, const std::vector<double>& s) {
  if (v.size() != s.size()) {
    throw Error(ErrorCode::InvalidArgument, "relationship and strength vectors differ in length");
  }
  return aggregate_t<double>(kind, v, s);
}

double influence(const InfluenceKind& kind, double w, double agg) { return influence_t<double>(kind, w, agg); }

// ---- Engine ----

Engine::Engine(const Qbag& g, SemanticsSpec spec) : graph_(g), spec_(std::move(spec)) {
  require_valid(g);
  check_spec(spec_);
  ids_ = g.ids();
  const std::size_t n = ids_.size();
  tau_.resize(n);
  for (std::size_t i = 0; i < n; ++i) tau_[i] = g.initial_strength(ids_[i]);

  parents_.assign(n, {});
  std::vector<std::vector<std::size_t>> children(n);
  for (const auto& [s, t] : g.attacks()) parents_[index(t)].push_back({index(s), -1});
  for (const auto& [s, t] : g.supports()) parents_[index(t)].push_back({index(s), +1});
  std::vector<int> indegree(n, 0);
  for (std::size_t t = 0; t < n; ++t) {
    std::sort(parents_[t].begin(), parents_[t].end(),
              [](const Parent& l, const Parent& r) { return l.index < r.index; });
    for (const auto& p : parents_[t]) children[p.index].push_back(t);
    indegree[t] = static_cast<int>(parents_[t].size());
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    auto u = ready.top();
    ready.pop();
    order_.push_back(u);
    for (auto c : children[u]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }

  ancestors_.assign(n, Mask(n, false));
  for (auto t : order_) {
    ancestors_[t][t] = true;
    for (const auto& p : parents_[t]) {
      for (std::size_t j = 0; j < n; ++j) {
        if (ancestors_[p.index][j]) ancestors_[t][j] = true;
      }
    }
  }
}

std::size_t Engine::index(const ArgumentId& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw Error(ErrorCode::UnknownId, "unknown argument id: " + id.str());
  return static_cast<std::size_t>(it - ids_.begin());
}

Mask Engine::mask_of(const IdSet& ids) const {
  Mask m(size(), false);
  for (const auto& id : ids) m[index(id)] = true;
  return m;
}

IdSet Engine::ids_of(const Mask& mask) const {
  IdSet out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.insert(ids_[i]);
  }
  return out;
}

template <class T>
void Engine::run(std::vector<T>& out, const std::vector<T>& w, const Mask* removed, const Mask* detached,
                 const Mask* only) const {
  std::vector<int> v;
  std::vector<T> s;
  for (auto x : order_) {
    if (only && !(*only)[x]) continue;
    if (removed && (*removed)[x]) continue;
    v.clear();
    s.clear();
    const bool cut = detached && (*detached)[x];
    for (const auto& p : parents_[x]) {
      if (removed && (*removed)[p.index]) continue;
      if (cut && !(*detached)[p.index]) continue;
      v.push_back(p.sign);
      s.push_back(out[p.index]);
    }
    out[x] = influence_t<T>(spec_.influence, w[x], aggregate_t<T>(spec_.aggregation, v, s));
  }
}

std::vector<double> Engine::evaluate() const {
  std::vector<double> out(size(), 0.0);
  run<double>(out, tau_, nullptr, nullptr, nullptr);
  return out;
}

double Engine::strength(std::size_t topic) const {
  std::vector<double> out(size(), 0.0);
  run<double>(out, tau_, nullptr, nullptr, &ancestors_[topic]);
  return out[topic];
}

double Engine::strength(std::size_t topic, const Mask& removed) const {
  if (removed[topic]) throw Error(ErrorCode::InvalidArgument, "topic " + ids_[topic].str() + " is removed");
  std::vector<double> out(size(), 0.0);
  run<double>(out, tau_, &removed, nullptr, &ancestors_[topic]);
  return out[topic];
}

double Engine::strength(std::size_t topic, const Mask& removed, const Mask& detached) const {
  if (removed[topic]) throw Error(ErrorCode::InvalidArgument, "topic " + ids_[topic].str() + " is removed");
  std::vector<double> out(size(), 0.0);
  run<double>(out, tau_, &removed, &detached, &ancestors_[topic]);
  return out[topic];
}

double Engine::strength_with_tau(std::size_t topic, std::size_t x, double tau_x) const {
  auto w = tau_;
  w[x] = tau_x;
  std::vector<double> out(size(), 0.0);
  run<double>(out, w, nullptr, nullptr, &ancestors_[topic]);
  return out[topic];
}

std::vector<Dual> Engine::evaluate_dual(std::size_t seed) const {
  const double direction = tau_[seed] >= 1.0 ? -1.0 : 1.0;
  std::vector<Dual> w(size());
  for (std::size_t i = 0; i < size(); ++i) w[i] = Dual(tau_[i], i == seed ? direction : 0.0);
  std::vector<Dual> out(size());
  run<Dual>(out, w, nullptr, nullptr, nullptr);
  for (auto& x : out) x.d *= direction;
  return out;
}

double Engine::derivative(std::size_t topic, std::size_t seed) const {
  if (!reaches(seed, topic)) return 0.0;
  const double direction = tau_[seed] >= 1.0 ? -1.0 : 1.0;
  std::vector<Dual> w(size());
  for (std::size_t i = 0; i < size(); ++i) w[i] = Dual(tau_[i], i == seed ? direction : 0.0);
  std::vector<Dual> out(size());
  run<Dual>(out, w, nullptr, nullptr, &ancestors_[topic]);
  return out[topic].d * direction + 0.0;  // no negative zero
}

// ---- public evaluation ----

StrengthAssignment evaluate(const Qbag& g, const SemanticsSpec& spec) {
  Engine e(g, spec);
  auto values = e.evaluate();
  StrengthAssignment out;
  for (std::size_t i = 0; i < e.size(); ++i) out.emplace(e.id(i), values[i]);
  return out;
}

DualAssignment evaluate_dual(const Qbag& g, const SemanticsSpec& spec, const ArgumentId& seed) {
  Engine e(g, spec);
  auto values = e.evaluate_dual(e.index(seed));
  DualAssignment out;
  for (std::size_t i = 0; i < e.size(); ++i) out.emplace(e.id(i), DualStrength{values[i].v, values[i].d});
  return out;
}

PrincipleVerdict check_stability(const SemanticsSpec& spec, const Qbag& g, double tol) {
  return check_stability([&](const Qbag& h) { return evaluate(h, spec); }, g, tol);
}

PrincipleVerdict check_stability(const SemanticsFn& semantics, const Qbag& g, double tol) {
  require_valid(g);
  IdSet touched;
  for (const auto* edges : {&g.attacks(), &g.supports()}) {
    for (const auto& e : *edges) touched.insert(e.second);
  }
  auto sigma = semantics(g);
  PrincipleVerdict v;
  v.principle = PrincipleId::Stability;
  v.status = VerdictStatus::SatisfiedOnInstance;
  for (const auto& a : g.arguments()) {
    if (touched.count(a.id)) continue;
    ++v.cases_examined;
    double s = sigma.at(a.id);
    if (std::abs(s - a.initial_strength) > tol) {
      v.status = VerdictStatus::ViolatedOnInstance;
      v.witness = Witness{g, a.id, {{a.id}}, {{"sigma", s}, {"tau", a.initial_strength}}, "sigma(x) = tau(x)"};
      break;
    }
  }
  return v;
}

}  // namespace qbag
