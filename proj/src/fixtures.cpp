#include "qbag/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace qbag {

namespace {

using Strengths = std::vector<std::pair<const char*, double>>;
using Edges = std::vector<std::pair<const char*, const char*>>;

Qbag build(const Strengths& tau, const Edges& att, const Edges& sup) {
  std::vector<Argument> args;
  for (const auto& [id, t] : tau) args.push_back({id, t});
  EdgeSet a, s;
  for (const auto& [x, y] : att) a.insert({x, y});
  for (const auto& [x, y] : sup) s.insert({x, y});
  return Qbag(std::move(args), std::move(a), std::move(s));
}

// Six-argument example graph; also the consistency counterexample shape.
Qbag fig1a_shape(const std::vector<double>& t) {
  return build({{"a", t[0]}, {"b", t[1]}, {"c", t[2]}, {"d", t[3]}, {"e", t[4]}, {"f", t[5]}},
               {{"c", "e"}, {"e", "a"}},
               {{"d", "c"}, {"d", "e"}, {"d", "b"}, {"f", "c"}, {"f", "e"}, {"f", "b"}, {"c", "b"}, {"b", "a"}});
}

// Shared shape of the Shapley counterfactuality counterexamples under QE,
// DFQuAD and SD-DFQuAD.
Qbag shapley_cf_shape(double tc, double td) {
  return build({{"a", 0.1}, {"b", 0.15}, {"c", tc}, {"d", td}, {"e", 0.495}, {"f", 1.0}},
               {{"b", "a"}, {"c", "a"}},
               {{"f", "e"}, {"e", "b"}, {"e", "d"}, {"e", "c"}, {"d", "a"}});
}

std::vector<Fixture> make_corpus() {
  std::vector<Fixture> out;
  auto add = [&](std::string id, std::string caption, Qbag g, std::optional<ArgumentId> topic = ArgumentId("a")) {
    out.push_back({std::move(id), std::move(caption), std::move(g), std::move(topic)});
  };

  add("fig1a", "six-argument example; {d} and {f} each lower a under QE while {d,f} raises it",
      fig1a_shape({0.3, 0.8, 0.1, 0.55, 0.45, 0.6}));
  add("fig3", "two saturated attackers; gradient contributions vanish although sigma(a) < tau(a)",
      build({{"a", 0.5}, {"b", 1.0}, {"c", 1.0}}, {{"b", "a"}, {"c", "a"}}, {}));
  add("fig4", "chain d -> c -> a plus b -> a; Shapley partition sums miss sigma - tau",
      build({{"a", 0.5}, {"b", 0.5}, {"c", 0.5}, {"d", 0.5}}, {{"b", "a"}, {"c", "a"}, {"d", "c"}}, {}));
  add("fig5", "gradient weak quantitative contribution existence fails",
      build({{"a", 0.5}, {"b", 1.0}, {"c", 1.0}}, {{"b", "a"}, {"c", "a"}}, {}));

  const std::map<std::string, std::vector<double>> removal_tau{
      {"qe", {0.3, 0.8, 0.1, 0.55, 0.45, 0.6}}, {"dfquad", {0.3, 0.8, 0.1, 0.8, 0.6, 0.8}},
      {"sd-dfquad", {0.3, 0.8, 0.1, 0.25, 0.2, 0.2}}, {"eb", {0.3, 0.8, 0.9, 0.9, 0.9, 0.8}},
      {"ebt", {0.3, 0.1, 0.1, 0.5, 0.1, 0.5}}};
  const std::map<std::string, std::vector<double>> shapley_tau{
      {"qe", {0.3, 0.8, 0.2, 0.7, 0.6, 0.7}}, {"dfquad", {0.3, 0.8, 0.2, 0.5, 0.4, 0.5}},
      {"sd-dfquad", {0.3, 0.1, 0.9, 0.3, 0.9, 0.3}}, {"eb", {0.3, 0.6, 0.8, 0.8, 0.5, 0.7}},
      {"ebt", {0.3, 0.6, 0.2, 0.8, 0.4, 0.7}}};
  for (const auto* sem : {"qe", "dfquad", "sd-dfquad", "eb", "ebt"}) {
    add(std::string("fig6-") + sem, std::string("removal consistency counterexample, tau vector for ") + sem,
        fig1a_shape(removal_tau.at(sem)));
  }
  for (const auto* sem : {"qe", "dfquad", "sd-dfquad", "eb", "ebt"}) {
    add(std::string("fig6-shapley-") + sem, std::string("Shapley consistency counterexample, tau vector for ") + sem,
        fig1a_shape(shapley_tau.at(sem)));
  }
  add("fig7", "attacker and supporter at full strength; {b,c} contributes 0 while {c} is positive",
      build({{"a", 0.5}, {"b", 1.0}, {"c", 1.0}}, {{"b", "a"}}, {{"c", "a"}}));

  add("fig8", "review text layer: sentences t1..t3 over the seven aspects",
      build({{"t1", 0.6}, {"t2", 0.7}, {"t3", 0.5}, {"APR", 0.5}, {"CLA", 0.0}, {"NOV", 0.5}, {"EMP", 0.0},
             {"CMP", 0.5}, {"SUB", 0.0}, {"IMP", 0.5}},
            {{"t2", "CMP"}, {"t3", "IMP"}}, {{"t1", "NOV"}, {"t1", "APR"}}),
      std::nullopt);
  add("table4", "review decision graph after aspect normalization",
      build({{"D", 0.5}, {"NOV", 0.6}, {"CMP", 0.7}, {"APR", 0.6}, {"IMP", 0.5}}, {{"CMP", "D"}, {"IMP", "D"}},
            {{"NOV", "D"}, {"APR", "D"}}),
      ArgumentId("D"));

  add("figA1", "intrinsic removal of b is 0 although removing b changes a (QE, DFQuAD, SD-DFQuAD)",
      build({{"a", 1.0}, {"b", 0.0}, {"c", 1.0}}, {{"b", "a"}}, {{"c", "b"}}));
  add("figA2", "intrinsic removal of e is positive while removing e does not lower a (EB)",
      build({{"a", 0.5}, {"b", 0.1}, {"c", 0.1}, {"d", 0.51}, {"e", 0.02}, {"f", 1.0}, {"g", 0.27}},
            {{"b", "a"}, {"c", "a"}, {"g", "a"}}, {{"f", "e"}, {"e", "b"}, {"e", "d"}, {"e", "c"}, {"d", "a"}}));
  add("figA3", "intrinsic removal of b is 0 although removing b changes a (EBT)",
      build({{"a", 0.7}, {"b", 0.1}, {"c", 1.0}, {"d", 0.1}}, {{"b", "a"}, {"d", "a"}}, {{"c", "b"}}));
  add("figA4", "Shapley contribution of e is positive, removal delta negative (QE)", shapley_cf_shape(0.15, 0.15));
  add("figA5", "Shapley contribution of e is positive, removal delta negative (DFQuAD)", shapley_cf_shape(0.17, 0.3));
  add("figA6", "Shapley contribution of e is positive, removal delta negative (SD-DFQuAD)",
      shapley_cf_shape(0.15, 0.2));
  add("figA7", "Shapley contribution of f is positive, removal delta negative (EB)",
      build({{"a", 0.3}, {"b", 0.11}, {"c", 0.1}, {"d", 0.54}, {"e", 0.025}, {"f", 1.0}, {"g", 0.4}},
            {{"b", "a"}, {"c", "a"}, {"g", "a"}}, {{"f", "e"}, {"e", "b"}, {"e", "d"}, {"e", "c"}, {"d", "a"}}));
  // tau(e) = 0.25: the only value consistent with every reference number of this example.
  add("figA8", "Shapley contribution of f is negative, removal delta positive (EBT)",
      build({{"a", 0.3}, {"b", 0.4}, {"c", 0.55}, {"d", 0.51}, {"e", 0.25}, {"f", 1.0}, {"g", 0.429}},
            {{"f", "e"}, {"b", "a"}, {"c", "d"}, {"g", "a"}, {"g", "d"}}, {{"e", "b"}, {"e", "d"}, {"d", "a"}}));
  add("figA9", "gradient of d is 0 at a; claimed removal delta nonzero (QE)",
      build({{"a", 0.2}, {"b", 0.4}, {"c", 0.4}, {"d", 0.4}, {"e", 0.1}}, {{"b", "a"}, {"e", "a"}},
            {{"d", "b"}, {"d", "c"}, {"c", "a"}}));
  add("figA10", "gradient of e is 0 at a while removing e raises a (DFQuAD)",
      build({{"a", 0.5}, {"b", 0.0}, {"c", 0.0}, {"d", 0.0}, {"e", 0.5}}, {{"c", "a"}, {"d", "a"}},
            {{"e", "b"}, {"e", "c"}, {"e", "d"}, {"b", "a"}}));
  add("figA11", "gradient of b is -0.25 while removing b leaves a unchanged (SD-DFQuAD)",
      build({{"a", 0.5}, {"b", 0.0}, {"c", 1.0}}, {{"c", "b"}, {"b", "a"}}, {}));
  add("figA12", "gradient of b is about -0.4530 while removing b leaves a unchanged (EB, EBT)",
      build({{"a", 0.5}, {"b", 0.0}, {"c", 1.0}}, {{"b", "a"}}, {{"c", "b"}}));
  return out;
}

std::string sem_key(const std::string& semantics) {
  std::string out = semantics;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

const std::vector<Fixture>& fixture_corpus() {
  static const std::vector<Fixture> corpus = make_corpus();
  return corpus;
}

bool has_fixture(const std::string& id) {
  const auto& c = fixture_corpus();
  return std::any_of(c.begin(), c.end(), [&](const Fixture& f) { return f.id == id; });
}

const Fixture& fixture(const std::string& id) {
  for (const auto& f : fixture_corpus()) {
    if (f.id == id) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown fixture id '" + id + "'");
}

const std::vector<PrincipleId>& tabulated_principles() {
  static const std::vector<PrincipleId> all{
      PrincipleId::ContributionExistence,
      PrincipleId::QuantitativeContributionExistence,
      PrincipleId::Directionality,
      PrincipleId::Counterfactuality,
      PrincipleId::QuantitativeCounterfactuality,
      PrincipleId::WeakQuantitativeContributionExistence,
      PrincipleId::Consistency,
      PrincipleId::Monotonicity,
  };
  return all;
}

const std::vector<SetFunctionKind>& tabulated_functions() {
  static const std::vector<SetFunctionKind> all{SetFunctionKind::Removal, SetFunctionKind::IntrinsicRemoval,
                                                SetFunctionKind::Shapley, SetFunctionKind::GradientMax};
  return all;
}

std::optional<bool> expected_satisfied(SetFunctionKind fn, const std::string& semantics, PrincipleId principle) {
  const std::string s = sem_key(semantics);
  const bool known = s == "qe" || s == "dfquad" || s == "sd-dfquad" || s == "eb" || s == "ebt";
  const auto& fns = tabulated_functions();
  if (!known || std::find(fns.begin(), fns.end(), fn) == fns.end()) return std::nullopt;
  const bool grad = fn == SetFunctionKind::GradientMax;
  switch (principle) {
    case PrincipleId::ContributionExistence: return !grad || s == "qe" || s == "eb";
    case PrincipleId::QuantitativeContributionExistence: return false;
    case PrincipleId::Directionality: return true;
    case PrincipleId::Counterfactuality:
    case PrincipleId::QuantitativeCounterfactuality: return fn == SetFunctionKind::Removal;
    case PrincipleId::WeakQuantitativeContributionExistence: return !grad;
    case PrincipleId::Consistency:
    case PrincipleId::Monotonicity: return grad;
    default: return std::nullopt;
  }
}

std::vector<std::string> designated_fixtures(SetFunctionKind fn, const std::string& semantics,
                                             PrincipleId principle) {
  const std::string s = sem_key(semantics);
  switch (principle) {
    case PrincipleId::ContributionExistence: return {"fig3"};
    case PrincipleId::QuantitativeContributionExistence:
      return fn == SetFunctionKind::Shapley ? std::vector<std::string>{"fig4"} : std::vector<std::string>{"fig3"};
    case PrincipleId::WeakQuantitativeContributionExistence: return {"fig5"};
    case PrincipleId::Counterfactuality:
    case PrincipleId::QuantitativeCounterfactuality:
      switch (fn) {
        case SetFunctionKind::IntrinsicRemoval:
          if (s == "eb") return {"figA2"};
          if (s == "ebt") return {"figA3"};
          return {"figA1"};
        case SetFunctionKind::Shapley:
          if (s == "qe") return {"figA4"};
          if (s == "dfquad") return {"figA5"};
          if (s == "sd-dfquad") return {"figA6"};
          if (s == "eb") return {"figA7"};
          return {"figA8"};
        case SetFunctionKind::GradientMax:
          if (s == "qe") return {"figA9"};
          if (s == "dfquad") return {"figA10"};
          if (s == "sd-dfquad") return {"figA11"};
          return {"figA12"};
        default: return {};
      }
    case PrincipleId::Consistency:
      if (fn == SetFunctionKind::Shapley) return {"fig6-shapley-" + s};
      return {"fig6-" + s};
    case PrincipleId::Monotonicity: return {"fig7"};
    default: return {};
  }
}

}  // namespace qbag
