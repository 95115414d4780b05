// qbag: command-line front end over the qbag library.
//
// Exit codes: 0 ok; 1 usage, parse or I/O error; 2 invalid graph; 3 semantics
// error; 4 invalid contributor or topic; 5 evaluation budget exceeded;
// 6 an expectation failed (violation under --expect-satisfied, a claim not
// reproduced, or a matrix mismatch).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "qbag/contribution.hpp"
#include "qbag/fixtures.hpp"
#include "qbag/format.hpp"
#include "qbag/io.hpp"
#include "qbag/matrix.hpp"
#include "qbag/principles.hpp"
#include "qbag/reproduce.hpp"
#include "qbag/review.hpp"
#include "qbag/semantics.hpp"

using namespace qbag;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalidGraph = 2, kSemantics = 3, kContributor = 4, kBudget = 5, kExpectation = 6 };

struct CliError : std::runtime_error {
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  int code;
};

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidGraph:
    case ErrorCode::Cycle: return kInvalidGraph;
    case ErrorCode::Domain: return kSemantics;
    case ErrorCode::UnknownId:
    case ErrorCode::InvalidContributor: return kContributor;
    case ErrorCode::BudgetExceeded: return kBudget;
    case ErrorCode::OutOfRange:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse: return kUsage;
  }
  return kUsage;
}

std::string fixed(double v, int decimals) { return format_fixed(v, decimals); }

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

IdSet id_list(const std::string& s, const char* what) {
  IdSet out;
  for (const auto& part : split(s, ',')) {
    const auto t = trim(part);
    if (t.empty()) throw CliError(kUsage, std::string("empty id in ") + what + " '" + s + "'");
    out.insert(ArgumentId(t));
  }
  if (out.empty()) throw CliError(kUsage, std::string(what) + " must name at least one argument");
  return out;
}

struct Source {
  Qbag graph;
  std::optional<ArgumentId> topic;
  std::string name;
};

// A path if one exists on disk, otherwise a bundled fixture id.
Source load_source(const std::string& ref) {
  if (std::filesystem::exists(ref)) return {load_graph_file(ref), std::nullopt, ref};
  if (has_fixture(ref)) {
    const auto& f = fixture(ref);
    return {f.graph, f.topic, f.id};
  }
  throw CliError(kUsage, "'" + ref + "' is neither a readable file nor a fixture id");
}

void require_valid_or_exit(const Qbag& g) {
  const auto report = validate(g);
  if (report.ok) return;
  std::string msg;
  for (const auto& v : report.violations) msg += (msg.empty() ? "" : "\n") + v.message;
  throw CliError(kInvalidGraph, msg);
}

SemanticsSpec load_semantics(const std::string& ref) {
  try {
    if (std::filesystem::exists(ref)) return parse_semantics(read_text_file(ref));
    return parse_semantics(ref);
  } catch (const Error& e) {
    throw CliError(kSemantics, e.what());
  }
}

ArgumentId topic_or(const Source& src, const std::string& flag) {
  if (!flag.empty()) return ArgumentId(flag);
  if (src.topic) return *src.topic;
  throw CliError(kUsage, "--topic is required for " + src.name);
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string graph;
  std::string semantics = "QE";
  bool json = false;
  bool csv = false;
};

int cmd_eval(const EvalArgs& a) {
  const auto src = load_source(a.graph);
  require_valid_or_exit(src.graph);
  const auto spec = load_semantics(a.semantics);
  const auto s = evaluate(src.graph, spec);
  if (a.json) {
    Json out{{"command", "eval"}, {"semantics", semantics_to_json(spec)}, {"strengths", strengths_to_json(src.graph, s)}};
    std::cout << out.dump(2) << "\n";
  } else if (a.csv) {
    std::cout << "id,initial_strength,final_strength,display\n";
    for (const auto& arg : src.graph.arguments()) {
      std::cout << arg.id.str() << "," << full(arg.initial_strength) << "," << full(s.at(arg.id)) << ","
                << fixed(s.at(arg.id), 2) << "\n";
    }
  } else {
    std::printf("%-10s %-8s %-8s %s\n", "argument", "initial", "final", "full precision");
    for (const auto& arg : src.graph.arguments()) {
      std::printf("%-10s %-8s %-8s %s\n", arg.id.str().c_str(), short_num(arg.initial_strength).c_str(),
                  fixed(s.at(arg.id), 2).c_str(), full(s.at(arg.id)).c_str());
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- contrib

struct ContribArgs {
  std::string graph;
  std::string semantics = "QE";
  std::string function = "removal";
  std::string topic;
  std::string set;
  std::string partition;
  bool monte_carlo = false;
  std::size_t samples = 20000;
  std::uint64_t seed = 20240601;
  bool json = false;
};

int cmd_contrib(const ContribArgs& a) {
  const auto src = load_source(a.graph);
  require_valid_or_exit(src.graph);
  const auto spec = load_semantics(a.semantics);
  const auto kind = set_function_from_string(a.function);
  const auto topic = topic_or(src, a.topic);
  const auto members = id_list(a.set, "--set");
  ShapleyOptions opts;
  opts.monte_carlo = a.monte_carlo;
  opts.samples = a.samples;
  opts.seed = a.seed;

  ContributionResult r;
  if (!a.partition.empty()) {
    if (kind != SetFunctionKind::Shapley) throw CliError(kUsage, "--partition is only meaningful with --function shapley");
    Partition p;
    for (const auto& block : split(a.partition, '|')) p.push_back(id_list(block, "--partition block"));
    r = pctrb_shapley(src.graph, spec, members, p, topic, opts);
  } else {
    r = sctrb(kind, src.graph, spec, {members, topic}, opts);
  }

  if (a.json) {
    Json out = contribution_to_json(r);
    out["command"] = "contrib";
    if (!a.partition.empty()) out["partition"] = a.partition;
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::printf("%s({%s} -> %s) under %s\n", r.function.c_str(), set_label(r.contributor).c_str(), r.topic.str().c_str(),
              r.semantics.c_str());
  std::printf("value:       %s\n", full(r.value).c_str());
  std::printf("display:     %s\n", fixed(r.value, 3).c_str());
  if (r.standard_error) std::printf("std. error:  %s (Monte-Carlo, %zu samples)\n", full(*r.standard_error).c_str(), a.samples);
  std::printf("evaluations: %zu\n", r.evaluations);
  return kOk;
}

// ---------------------------------------------------------------- principles

struct PrinciplesArgs {
  std::string graph;
  std::string random;
  std::string function = "removal";
  std::string semantics = "QE";
  std::string principle = "all";
  std::string topic;
  bool expect_satisfied = false;
  bool json = false;
};

struct RandomSpec {
  std::uint64_t seed = 1;
  std::size_t n = 6;
  std::size_t count = 100;
};

RandomSpec parse_random(const std::string& s) {
  RandomSpec r;
  for (const auto& kv : split(s, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CliError(kUsage, "--random expects key=value pairs, got '" + kv + "'");
    const auto key = trim(kv.substr(0, eq));
    const auto val = trim(kv.substr(eq + 1));
    try {
      if (key == "seed") r.seed = std::stoull(val);
      else if (key == "n") r.n = std::stoul(val);
      else if (key == "count") r.count = std::stoul(val);
      else throw CliError(kUsage, "unknown --random key '" + key + "' (seed, n, count)");
    } catch (const std::logic_error&) {
      throw CliError(kUsage, "bad number for --random key '" + key + "': '" + val + "'");
    }
  }
  if (r.n < 2) throw CliError(kUsage, "--random n must be at least 2");
  return r;
}

void print_witness(const Witness& w) {
  std::printf("  topic %s, sets:", w.topic.str().c_str());
  for (const auto& s : w.sets) std::printf(" {%s}", set_label(s).c_str());
  std::printf("\n");
  for (const auto& [k, v] : w.values) std::printf("  %s = %s\n", k.c_str(), full(v).c_str());
  if (!w.relation.empty()) std::printf("  fails: %s\n", w.relation.c_str());
}

int cmd_principles(const PrinciplesArgs& a) {
  const auto spec = load_semantics(a.semantics);
  const auto kind = set_function_from_string(a.function);
  const auto fn = builtin_function(kind);
  std::vector<PrincipleId> principles;
  if (a.principle == "all") principles = all_principles();
  else {
    try {
      principles.push_back(principle_from_string(a.principle));
    } catch (const Error& e) {
      throw CliError(kUsage, e.what());
    }
  }

  // (graph, topic) instances to check.
  std::vector<std::pair<Qbag, ArgumentId>> instances;
  std::string origin;
  if (!a.random.empty()) {
    const auto rs = parse_random(a.random);
    RandomGraphOptions ro;
    ro.max_arguments = rs.n;
    for (const auto& g : random_corpus(rs.seed, rs.count, ro)) {
      for (const auto& id : g.ids()) instances.emplace_back(g, id);
    }
    origin = "random corpus (seed " + std::to_string(rs.seed) + ", n <= " + std::to_string(rs.n) + ", " +
             std::to_string(rs.count) + " graphs)";
  } else {
    if (a.graph.empty()) throw CliError(kUsage, "give a graph file, a fixture id, or --random");
    const auto src = load_source(a.graph);
    require_valid_or_exit(src.graph);
    if (!a.topic.empty() || src.topic) instances.emplace_back(src.graph, topic_or(src, a.topic));
    else for (const auto& id : src.graph.ids()) instances.emplace_back(src.graph, id);
    origin = src.name;
  }

  Json cells = Json::array();
  bool any_violation = false;
  for (auto p : principles) {
    PrincipleVerdict agg;
    agg.principle = p;
    agg.status = VerdictStatus::SatisfiedOnInstance;
    std::size_t inconclusive = 0;
    for (const auto& [g, topic] : instances) {
      auto v = check_principle(p, fn, g, spec, topic);
      agg.cases_examined += v.cases_examined;
      if (v.violated()) {
        if (instances.size() > 1) v = minimize_violation(p, fn, spec, g, topic);
        v.cases_examined = agg.cases_examined;
        agg = v;
        break;
      }
      if (v.status == VerdictStatus::Inconclusive) ++inconclusive;
      // Graph-wide principles need only one pass per graph.
      if ((p == PrincipleId::Stability || p == PrincipleId::CtrbGeneralization) && a.random.empty()) break;
    }
    if (!agg.violated() && inconclusive > 0) {
      agg.status = VerdictStatus::Inconclusive;
      agg.note = std::to_string(inconclusive) + " instance(s) beyond the exhaustive bounds were sampled";
    }
    any_violation = any_violation || agg.violated();
    if (a.json) {
      cells.push_back(verdict_to_json(agg, to_string(kind), spec.label()));
      continue;
    }
    std::printf("%-42s %s (%zu cases)\n", to_string(p), to_string(agg.status), agg.cases_examined);
    if (agg.witness) print_witness(*agg.witness);
    if (!agg.note.empty()) std::printf("  note: %s\n", agg.note.c_str());
  }
  if (a.json) {
    Json out{{"command", "principles"}, {"source", origin}, {"cells", std::move(cells)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("function %s, semantics %s, over %s\n", to_string(kind), spec.label().c_str(), origin.c_str());
  }
  return a.expect_satisfied && any_violation ? kExpectation : kOk;
}

// ---------------------------------------------------------------- signmap

struct SignmapArgs {
  std::string graph;
  std::string semantics = "QE";
  std::string function = "removal";
  std::string topic;
  std::string sweep;
  std::string sets;
  double step = 0.05;
};

int cmd_signmap(const SignmapArgs& a) {
  const auto src = load_source(a.graph);
  require_valid_or_exit(src.graph);
  const auto spec = load_semantics(a.semantics);
  const auto topic = topic_or(src, a.topic);
  const auto sweep = split(a.sweep, ',');
  if (sweep.size() != 2 || trim(sweep[0]).empty() || trim(sweep[1]).empty()) {
    throw CliError(kUsage, "--sweep expects two argument ids, e.g. d,f");
  }
  const ArgumentId x(trim(sweep[0])), y(trim(sweep[1]));
  if (x == y) throw CliError(kUsage, "--sweep arguments must be distinct");
  if (x == topic || y == topic) throw CliError(kUsage, "--sweep arguments must differ from the topic");
  std::vector<IdSet> sets;
  const std::string set_spec = a.sets.empty() ? trim(sweep[0]) + "|" + trim(sweep[1]) + "|" + a.sweep : a.sets;
  for (const auto& s : split(set_spec, '|')) sets.push_back(id_list(s, "--sets"));
  const auto map = sign_map(src.graph, spec, topic, sets, x, y, a.step, set_function_from_string(a.function));
  std::cout << map.csv();
  return kOk;
}

// ---------------------------------------------------------------- pipeline

struct PipelineArgs {
  std::string graph;
  std::string manifest;
  std::string focus;
  bool csv = false;
  bool json = false;
};

int cmd_pipeline(const PipelineArgs& a) {
  const auto src = load_source(a.graph);
  require_valid_or_exit(src.graph);
  Json manifest;
  if (!a.manifest.empty()) {
    try {
      manifest = Json::parse(read_text_file(a.manifest));
    } catch (const Json::parse_error& e) {
      throw CliError(kUsage, std::string("aspect manifest: ") + e.what());
    }
  } else if (src.name == "fig8") {
    manifest = {{"aspects", {"APR", "CLA", "NOV", "EMP", "CMP", "SUB", "IMP"}}, {"decision_tau", 0.5}};
  } else {
    throw CliError(kUsage, "--manifest is required unless the text layer is the fig8 fixture");
  }
  const auto m = aspect_model_from_json(src.graph, manifest);
  const auto text = evaluate_text_layer(m);
  const auto decision = build_decision_graph(m);
  const auto df = preset("DFQuAD");
  const double sd = evaluate(decision, df).at(m.decision_id);
  IdSet focus;
  if (!a.focus.empty()) focus = id_list(a.focus, "--focus");
  const auto rows = report_contributions(m, focus);

  if (a.csv) {
    std::cout << contributions_csv(rows);
    return kOk;
  }
  if (a.json) {
    Json aspects = Json::array();
    for (const auto& id : m.aspects) aspects.push_back({{"id", id.str()}, {"final_strength", text.at(id)}});
    Json out{{"command", "pipeline"},         {"aspects", aspects},
             {"decision_graph", graph_to_json(decision)}, {"decision_strength", sd},
             {"rows", rows_to_json(rows)}};
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::printf("text layer (DFQuAD):\n");
  for (const auto& id : m.aspects) {
    std::printf("  %-6s %s -> %s\n", id.str().c_str(), short_num(m.text_graph.initial_strength(id)).c_str(),
                fixed(text.at(id), 2).c_str());
  }
  std::printf("decision graph:\n");
  for (const auto& arg : decision.arguments()) {
    if (arg.id == m.decision_id) continue;
    const bool attacks = decision.attacks().count({arg.id, m.decision_id}) > 0;
    std::printf("  %-6s %s %s\n", arg.id.str().c_str(), fixed(arg.initial_strength, 2).c_str(), attacks ? "-" : "+");
  }
  std::printf("  %s %s -> %s\n", m.decision_id.str().c_str(), short_num(m.decision_tau).c_str(), fixed(sd, 3).c_str());
  std::printf("\n%-28s %9s %9s %9s\n", "contributors", "removal", "shapley", "gradient");
  for (const auto& r : rows) {
    std::printf("%-28s %9s %9s %9s\n", r.label.c_str(), fixed(r.removal, 3).c_str(), fixed(r.shapley, 3).c_str(),
                fixed(r.gradient, 3).c_str());
  }
  return kOk;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
  bool all = false;
  bool matrix = false;
  std::vector<std::string> ids;
  bool json = false;
};

int cmd_reproduce(const ReproduceArgs& a) {
  if (!a.all && !a.matrix && a.ids.empty()) {
    std::string known;
    for (const auto& id : claim_fixture_ids()) known += (known.empty() ? "" : " ") + id;
    throw CliError(kUsage, "give fixture ids, --matrix, or --all; fixtures with claims: " + known);
  }
  std::vector<ClaimResult> claims;
  if (a.all) claims = reproduce_all_claims();
  for (const auto& id : a.ids) {
    if (!has_fixture(id)) throw CliError(kUsage, "unknown fixture id '" + id + "'");
    auto part = reproduce_fixture(id);
    claims.insert(claims.end(), part.begin(), part.end());
  }
  std::optional<MatrixReport> matrix;
  if (a.all || a.matrix) {
    std::vector<SemanticsSpec> specs(presets().begin(), presets().end());
    matrix = run_matrix(fixture_corpus(), tabulated_functions(), specs, tabulated_principles());
  }

  std::size_t failed = 0;
  for (const auto& c : claims) failed += !c.reproduced;
  const std::size_t mismatches = matrix ? matrix->mismatches() : 0;

  if (a.json) {
    Json cl = Json::array();
    for (const auto& c : claims) cl.push_back(claim_to_json(c));
    Json out{{"command", "reproduce"}, {"claims", cl}, {"claims_failed", failed}};
    if (matrix) out["matrix"] = matrix_to_json(*matrix);
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& c : claims) std::cout << format_claim(c) << "\n";
    if (!claims.empty()) std::printf("claims: %zu reproduced, %zu not reproduced\n", claims.size() - failed, failed);
    if (matrix) {
      std::cout << "\n" << matrix->table();
      std::printf("matrix: %zu cells, %zu violations reproduced, %zu satisfied, %zu mismatches\n", matrix->cells.size(),
                  matrix->count(CellStatus::ViolationReproduced), matrix->count(CellStatus::Pass), mismatches);
    }
  }
  return failed == 0 && mismatches == 0 ? kOk : kExpectation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbag: quantitative bipolar argumentation graphs, set contributions and principle checks"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate final strengths");
  eval->add_option("graph", ev.graph, "graph JSON file or fixture id")->required();
  eval->add_option("-s,--semantics", ev.semantics, "preset name or semantics JSON");
  auto* ej = eval->add_flag("--json", ev.json, "machine-readable output");
  eval->add_flag("--csv", ev.csv, "CSV output")->excludes(ej);

  ContribArgs ct;
  auto* contrib = app.add_subcommand("contrib", "set contribution of --set to --topic");
  contrib->add_option("graph", ct.graph, "graph JSON file or fixture id")->required();
  contrib->add_option("-s,--semantics", ct.semantics, "preset name or semantics JSON");
  contrib->add_option("-f,--function", ct.function,
                      "removal | intrinsic | shapley | gradient-max | gradient-min | gradient-maxabs");
  contrib->add_option("-t,--topic", ct.topic, "topic argument (defaults to the fixture's topic)");
  contrib->add_option("--set", ct.set, "contributor ids, comma separated")->required();
  contrib->add_option("--partition", ct.partition, "partition blocks for shapley, e.g. \"x,y|z|w\"");
  contrib->add_flag("--monte-carlo", ct.monte_carlo, "sample permutations when exact Shapley exceeds the budget");
  contrib->add_option("--samples", ct.samples, "Monte-Carlo permutation samples");
  contrib->add_option("--seed", ct.seed, "Monte-Carlo seed");
  contrib->add_flag("--json", ct.json, "machine-readable output");

  PrinciplesArgs pr;
  auto* principles = app.add_subcommand("principles", "check principles on a graph or a random corpus");
  principles->add_option("graph", pr.graph, "graph JSON file or fixture id");
  principles->add_option("--random", pr.random, "random corpus, e.g. seed=7,n=5[,count=100]");
  principles->add_option("-f,--function", pr.function, "set contribution function");
  principles->add_option("-s,--semantics", pr.semantics, "preset name or semantics JSON");
  principles->add_option("-p,--principle", pr.principle, "principle name or 'all'");
  principles->add_option("-t,--topic", pr.topic, "topic argument (default: fixture topic, else every argument)");
  principles->add_flag("--expect-satisfied", pr.expect_satisfied, "exit 6 if any violation is found");
  principles->add_flag("--json", pr.json, "machine-readable output");

  SignmapArgs sm;
  auto* signmap = app.add_subcommand("signmap", "contribution signs over a grid of two initial strengths");
  signmap->add_option("graph", sm.graph, "graph JSON file or fixture id")->required();
  signmap->add_option("-s,--semantics", sm.semantics, "preset name or semantics JSON");
  signmap->add_option("-f,--function", sm.function, "set contribution function");
  signmap->add_option("-t,--topic", sm.topic, "topic argument");
  signmap->add_option("--sweep", sm.sweep, "the two swept arguments, e.g. d,f")->required();
  signmap->add_option("--sets", sm.sets, "contributor sets, e.g. \"d|f|d,f\" (default: both singletons and the pair)");
  signmap->add_option("--step", sm.step, "grid step in (0, 0.5]");

  PipelineArgs pl;
  auto* pipeline = app.add_subcommand("pipeline", "two-layer review pipeline and contribution table");
  pipeline->add_option("graph", pl.graph, "text-layer graph JSON file or fixture id")->required();
  pipeline->add_option("--manifest", pl.manifest, "aspect manifest JSON");
  pipeline->add_option("--focus", pl.focus, "aspects reported as one set contributor, e.g. NOV,IMP");
  auto* pj = pipeline->add_flag("--json", pl.json, "machine-readable output");
  pipeline->add_flag("--csv", pl.csv, "CSV table (3-decimal and full-precision columns)")->excludes(pj);

  ReproduceArgs rp;
  auto* reproduce = app.add_subcommand("reproduce", "replay recorded claims and the verdict matrix");
  reproduce->add_option("fixtures", rp.ids, "fixture ids whose claims to replay");
  reproduce->add_flag("--all", rp.all, "every claim plus the full verdict matrix");
  reproduce->add_flag("--matrix", rp.matrix, "the verdict matrix only");
  reproduce->add_flag("--json", rp.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(ev);
    if (*contrib) return cmd_contrib(ct);
    if (*principles) return cmd_principles(pr);
    if (*signmap) return cmd_signmap(sm);
    if (*pipeline) return cmd_pipeline(pl);
    if (*reproduce) return cmd_reproduce(rp);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::BudgetExceeded) std::cerr << "hint: pass --monte-carlo or raise QBAG_EVAL_BUDGET\n";
    return exit_for(e.code());
  }
  return kUsage;
}
