// One pass/fail line per acceptance criterion, tolerances pinned below.
//
//   qbag_acceptance [--allow-red N ...]
//
// Exit status is 0 when every criterion passes or every failing criterion is
// listed with --allow-red; failing lines are printed as FAIL either way.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qbag/contribution.hpp"
#include "qbag/fixtures.hpp"
#include "qbag/matrix.hpp"
#include "qbag/principles.hpp"
#include "qbag/reproduce.hpp"
#include "qbag/review.hpp"

using namespace qbag;

namespace {

constexpr double kFigureTol = 0.005;            // 2-decimal labels
constexpr double kTableTol = 5e-4 + 1e-12;     // 3-decimal table values plus representation slack
constexpr double kSignTol = 1e-9;
constexpr double kIdentityTol = 1e-9;
constexpr double kDerivativeTol = 1e-6;
constexpr double kCentralStep = 1e-5;

const char* const kPresetNames[] = {"QE", "DFQuAD", "SD-DFQuAD", "EB", "EBT"};

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 8) failures.push_back(why);
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

RandomGraphOptions grid_graphs(std::size_t max_n) {
  RandomGraphOptions o;
  o.min_arguments = 2;
  o.max_arguments = max_n;
  return o;
}

Outcome c1() {
  Outcome o;
  const auto s = evaluate(fixture("fig1a").graph, preset("QE"));
  const std::pair<const char*, double> shown[] = {{"a", 0.39}, {"b", 0.95}, {"c", 0.61},
                                                  {"d", 0.55}, {"e", 0.57}, {"f", 0.60}};
  double worst = 0;
  for (const auto& [id, v] : shown) {
    const double dev = std::fabs(s.at(ArgumentId(id)) - v);
    worst = std::max(worst, dev);
    if (dev > kFigureTol) o.fail(std::string(id) + " = " + fmt("%.6f", s.at(ArgumentId(id))));
  }
  o.summary = "max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome c2() {
  Outcome o;
  AspectModel m{fixture("fig8").graph, {}, 0.5, ArgumentId("D")};
  for (const auto* a : {"APR", "CLA", "NOV", "EMP", "CMP", "SUB", "IMP"}) m.aspects.emplace_back(a);
  const auto rows = report_contributions(m, {ArgumentId("NOV"), ArgumentId("IMP")});
  const std::map<std::string, std::array<double, 3>> printed{
      {"{IMP,NOV}", {0.045, 0.048, 0.200}}, {"NOV", {0.120, 0.210, 0.200}},  {"IMP", {-0.075, -0.163, -0.150}},
      {"CMP", {-0.175, -0.263, -0.250}},    {"APR", {0.120, 0.210, 0.200}},  {"APR + CMP + {IMP,NOV}", {-0.010, -0.005, 0.150}}};
  std::size_t cells = 0;
  double worst = 0;
  for (const auto& r : rows) {
    const auto it = printed.find(r.label);
    if (it == printed.end()) {
      o.fail("unexpected row " + r.label);
      continue;
    }
    const double got[3] = {r.removal, r.shapley, r.gradient};
    for (int k = 0; k < 3; ++k) {
      ++cells;
      const double dev = std::fabs(got[k] - it->second[k]);
      worst = std::max(worst, dev);
      if (dev > kTableTol) o.fail(r.label + " column " + std::to_string(k) + " = " + fmt("%.6f", got[k]));
    }
  }
  if (cells != 18) o.fail(std::to_string(cells) + " cells instead of 18");
  const double sd = evaluate(build_decision_graph(m), preset("DFQuAD")).at(ArgumentId("D"));
  if (std::fabs(sd - 0.495) > 5e-4) o.fail("sigma(D) = " + fmt("%.6f", sd));
  o.summary = std::to_string(cells) + " cells, max deviation " + fmt("%.2e", worst) + ", sigma(D) = " + fmt("%.6f", sd);
  return o;
}

Outcome c3() {
  Outcome o;
  const auto& g = fixture("fig1a").graph;
  const auto qe = preset("QE");
  auto rem = [&](IdSet x) { return sctrb_removal(g, qe, {x, ArgumentId("a")}).value; };
  const double d = rem({ArgumentId("d")}), f = rem({ArgumentId("f")}), df = rem({ArgumentId("d"), ArgumentId("f")});
  if (!(d < -kSignTol)) o.fail("{d} = " + fmt("%.3e", d));
  if (!(f < -kSignTol)) o.fail("{f} = " + fmt("%.3e", f));
  if (!(df > kSignTol)) o.fail("{d,f} = " + fmt("%.3e", df));
  o.summary = "{d} " + fmt("%.6f", d) + ", {f} " + fmt("%.6f", f) + ", {d,f} " + fmt("%+.6f", df);
  return o;
}

Outcome claims_of(const std::vector<std::string>& ids) {
  Outcome o;
  std::size_t n = 0, ok = 0;
  double smallest = INFINITY;
  for (const auto& id : ids) {
    for (const auto& c : reproduce_fixture(id)) {
      ++n;
      if (c.reproduced) {
        ++ok;
        smallest = std::min(smallest, c.margin);
      } else {
        o.fail(format_claim(c));
      }
    }
  }
  o.summary = std::to_string(ok) + "/" + std::to_string(n) + " claims reproduced, smallest passing margin " +
              fmt("%.2e", smallest);
  return o;
}

Outcome c4() {
  std::vector<std::string> ids{"fig3", "fig4", "fig5", "fig7"};
  for (const auto* s : {"qe", "dfquad", "sd-dfquad", "eb", "ebt"}) {
    ids.push_back(std::string("fig6-") + s);
    ids.push_back(std::string("fig6-shapley-") + s);
  }
  Outcome o = claims_of(ids);
  // The checkers must also report each violation on its designated graph.
  struct Cell {
    SetFunctionKind fn;
    PrincipleId p;
    std::vector<std::string> sems;
  };
  const std::vector<std::string> all(std::begin(kPresetNames), std::end(kPresetNames));
  const std::vector<Cell> cells{
      {SetFunctionKind::GradientMax, PrincipleId::ContributionExistence, {"DFQuAD", "SD-DFQuAD", "EBT"}},
      {SetFunctionKind::Removal, PrincipleId::QuantitativeContributionExistence, all},
      {SetFunctionKind::IntrinsicRemoval, PrincipleId::QuantitativeContributionExistence, all},
      {SetFunctionKind::GradientMax, PrincipleId::QuantitativeContributionExistence, all},
      {SetFunctionKind::Shapley, PrincipleId::QuantitativeContributionExistence, all},
      {SetFunctionKind::GradientMax, PrincipleId::WeakQuantitativeContributionExistence, all},
      {SetFunctionKind::Removal, PrincipleId::Consistency, all},
      {SetFunctionKind::IntrinsicRemoval, PrincipleId::Consistency, all},
      {SetFunctionKind::Shapley, PrincipleId::Consistency, all},
      {SetFunctionKind::Removal, PrincipleId::Monotonicity, all},
      {SetFunctionKind::IntrinsicRemoval, PrincipleId::Monotonicity, all},
      {SetFunctionKind::Shapley, PrincipleId::Monotonicity, all},
  };
  std::size_t verdicts = 0;
  for (const auto& c : cells) {
    for (const auto& s : c.sems) {
      const auto id = designated_fixtures(c.fn, s, c.p).front();
      const auto& f = fixture(id);
      const auto v = check_principle(c.p, builtin_function(c.fn), f.graph, preset(s), *f.topic);
      ++verdicts;
      if (!v.violated()) o.fail(std::string(to_string(c.fn)) + "/" + s + "/" + to_string(c.p) + " not violated on " + id);
    }
  }
  o.summary += "; " + std::to_string(verdicts) + " checker verdicts on designated graphs";
  return o;
}

Outcome c5() {
  std::vector<std::string> ids;
  for (int k = 1; k <= 12; ++k) ids.push_back("figA" + std::to_string(k));
  return claims_of(ids);
}

Outcome c6() {
  Outcome o;
  std::size_t checked = 0;
  double worst = 0;
  const auto corpus = random_corpus(6006, 500, grid_graphs(6));
  for (const auto& g : corpus) {
    for (const auto* name : kPresetNames) {
      const auto spec = preset(name);
      for (const auto& a : g.ids()) {
        for (const auto& x : g.ids()) {
          if (x == a) continue;
          const SetContributor s{{x}, a};
          const double pairs[4][2] = {
              {single_ctrb(SingleKind::Removal, g, spec, x, a).value, sctrb_removal(g, spec, s).value},
              {single_ctrb(SingleKind::IntrinsicRemoval, g, spec, x, a).value, sctrb_intrinsic_removal(g, spec, s).value},
              {single_ctrb(SingleKind::Shapley, g, spec, x, a).value, sctrb_shapley(g, spec, s).value},
              {single_ctrb(SingleKind::Gradient, g, spec, x, a).value,
               sctrb_gradient(g, spec, s, GradientAggregator::Max).value},
          };
          for (const auto& p : pairs) {
            ++checked;
            const double dev = std::fabs(p[0] - p[1]);
            worst = std::max(worst, dev);
            if (dev > kIdentityTol) o.fail(std::string(name) + " x=" + x.str() + " a=" + a.str() + " dev " + fmt("%.2e", dev));
          }
        }
      }
    }
  }
  o.summary = std::to_string(corpus.size()) + " graphs, " + std::to_string(checked) + " comparisons, max deviation " +
              fmt("%.2e", worst);
  return o;
}

Outcome c7() {
  Outcome o;
  std::size_t compared = 0, kinks = 0;
  double worst = 0;
  // Interior: every tau in [0.05, 0.95] and no aggregate on a kink between seed and target.
  auto opts = grid_graphs(7);
  opts.strength_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const auto corpus = random_corpus(7007, 200, opts);
  for (const auto& g : corpus) {
    const auto ref = oracle::from(g);
    for (const auto* name : kPresetNames) {
      const auto spec = preset(name);
      const auto sem = oracle::sem_of(name);
      for (const auto& x : g.ids()) {
        const auto dual = evaluate_dual(g, spec, x);
        for (const auto& a : g.ids()) {
          if (oracle::kink_between(ref, sem, x.str(), a.str())) {
            ++kinks;
            continue;
          }
          ++compared;
          const double cd = oracle::central_difference(ref, sem, x.str(), a.str(), kCentralStep);
          const double dev = std::fabs(dual.at(a).derivative - cd);
          worst = std::max(worst, dev);
          if (dev > kDerivativeTol) o.fail(std::string(name) + " d sigma(" + a.str() + ")/d tau(" + x.str() + ") dev " + fmt("%.2e", dev));
        }
      }
    }
  }
  o.summary = std::to_string(compared) + " interior derivatives, max deviation " + fmt("%.2e", worst) + " (" +
              std::to_string(kinks) + " pairs at a kink skipped)";
  return o;
}

Outcome c8() {
  Outcome o;
  std::size_t checked = 0;
  double worst = 0;
  const auto corpus = random_corpus(8008, 200, grid_graphs(6));
  const SetFunctionKind fns[] = {SetFunctionKind::Removal, SetFunctionKind::IntrinsicRemoval, SetFunctionKind::Shapley};
  for (const auto& g : corpus) {
    for (const auto* name : kPresetNames) {
      const auto spec = preset(name);
      const auto s = evaluate(g, spec);
      for (const auto& a : g.ids()) {
        IdSet reach = influencers(g, a, false), rest = g.id_set();
        rest.erase(a);
        for (const auto& id : reach) rest.erase(id);
        for (auto k : fns) {
          double sum = 0;
          for (const auto* block : {&reach, &rest}) {
            if (!block->empty()) sum += sctrb(k, g, spec, {*block, a}).value;
          }
          ++checked;
          const double dev = std::fabs(sum - (s.at(a) - g.initial_strength(a)));
          worst = std::max(worst, dev);
          if (dev > kIdentityTol) o.fail(std::string(to_string(k)) + "/" + name + " a=" + a.str() + " dev " + fmt("%.2e", dev));
        }
      }
    }
  }
  o.summary = std::to_string(checked) + " reachability splits, max deviation " + fmt("%.2e", worst);
  return o;
}

Outcome c9() {
  Outcome o;
  std::size_t checked = 0;
  double worst = 0;
  std::mt19937_64 rng(9009);
  const auto corpus = random_corpus(9009, 100, grid_graphs(6));
  for (const auto& g : corpus) {
    for (const auto& a : g.ids()) {
      IdSet base = g.id_set();
      base.erase(a);
      for (int rep = 0; rep < 3; ++rep) {
        const auto p = random_partition(base, rng);
        for (const auto* name : kPresetNames) {
          const auto spec = preset(name);
          double sum = 0;
          for (const auto& block : p) sum += pctrb_shapley(g, spec, block, p, a).value;
          ++checked;
          const double dev = std::fabs(sum - (evaluate(g, spec).at(a) - g.initial_strength(a)));
          worst = std::max(worst, dev);
          if (dev > kIdentityTol) o.fail(std::string(name) + " a=" + a.str() + " dev " + fmt("%.2e", dev));
        }
      }
    }
  }
  o.summary = std::to_string(checked) + " partitions over " + std::to_string(corpus.size()) + " graphs, max deviation " +
              fmt("%.2e", worst);
  return o;
}

Outcome c10() {
  Outcome o;
  std::vector<SemanticsSpec> specs(presets().begin(), presets().end());
  const auto r = run_matrix(fixture_corpus(), tabulated_functions(), specs, tabulated_principles());
  std::size_t fixture_witness = 0, searched = 0;
  for (const auto& c : r.cells) {
    if (c.status == CellStatus::Mismatch) {
      o.fail(c.function + "/" + c.semantics + "/" + to_string(c.principle) + ": " + c.note);
    }
    if (c.status == CellStatus::NotTabulated) o.fail("untabulated cell " + c.function + "/" + to_string(c.principle));
    if (c.status == CellStatus::ViolationReproduced) (c.source == "search" ? searched : fixture_witness)++;
  }
  o.summary = std::to_string(r.cells.size()) + " cells, " + std::to_string(r.count(CellStatus::Pass)) + " satisfied, " +
              std::to_string(fixture_witness) + " violations on bundled graphs, " + std::to_string(searched) +
              " via search, " + std::to_string(r.mismatches()) + " mismatches";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> allowed_red;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--allow-red") == 0 && i + 1 < argc) allowed_red.insert(std::atoi(argv[++i]));
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"QE final strengths of fig1a within 0.005", c1},
      {"review table: 18 cells within 5e-4 and sigma(D) = 0.495", c2},
      {"fig1a sign inconsistency of removal contributions", c3},
      {"violation claims on their designated graphs", c4},
      {"counterexample fixtures figA1-figA12", c5},
      {"generalization on 500 random graphs, 4 function pairs, 5 presets", c6},
      {"dual derivatives against central differences on 200 random graphs", c7},
      {"reachability split sums to sigma(a) - tau(a) on 200 random graphs", c8},
      {"partition Shapley efficiency on 100 random graphs x 3 partitions", c9},
      {"verdict matrix with zero mismatches", c10},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s -- %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", n, criteria[i].first,
                o.summary.c_str(), secs);
    for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
    if (!o.pass && allowed_red.count(n)) std::printf("       known red, see README\n");
    if (!o.pass && !allowed_red.count(n)) ++unexpected;
    if (o.pass && allowed_red.count(n)) std::printf("       listed as known red but passed\n");
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
