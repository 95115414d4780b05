#include "qbag/io.hpp"

#include <fstream>
#include <sstream>

namespace qbag {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_error(where + ": missing \"" + key + "\"");
  return j.at(key);
}

EdgeSet edges_from_json(const Json& j, const char* key) {
  EdgeSet out;
  if (!j.contains(key)) return out;
  const auto& arr = j.at(key);
  if (!arr.is_array()) parse_error(std::string("\"") + key + "\" must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      parse_error(std::string("\"") + key + "\" entries must be [from, to] pairs of ids, got " + e.dump());
    }
    out.insert({ArgumentId(e[0].get<std::string>()), ArgumentId(e[1].get<std::string>())});
  }
  return out;
}

Json edges_to_json(const EdgeSet& es) {
  Json arr = Json::array();
  for (const auto& [from, to] : es) arr.push_back({from.str(), to.str()});
  return arr;
}

Json sets_to_json(const std::vector<IdSet>& sets) {
  Json arr = Json::array();
  for (const auto& s : sets) {
    Json one = Json::array();
    for (const auto& id : s) one.push_back(id.str());
    arr.push_back(std::move(one));
  }
  return arr;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(what + ": " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Qbag graph_from_json(const Json& j) {
  const auto& args = field(j, "arguments", "graph");
  if (!args.is_array()) parse_error("\"arguments\" must be an array");
  std::vector<Argument> out;
  for (const auto& a : args) {
    const auto& id = field(a, "id", "argument");
    const auto& tau = field(a, "initial_strength", "argument");
    if (!id.is_string()) parse_error("argument id must be a string, got " + id.dump());
    if (!tau.is_number()) parse_error("initial_strength of '" + id.get<std::string>() + "' must be a number");
    out.push_back({ArgumentId(id.get<std::string>()), tau.get<double>()});
  }
  return Qbag(std::move(out), edges_from_json(j, "attacks"), edges_from_json(j, "supports"));
}

Qbag parse_graph(const std::string& text) { return graph_from_json(parse_json(text, "graph")); }

Qbag load_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

Json graph_to_json(const Qbag& g) {
  Json args = Json::array();
  for (const auto& a : g.arguments()) args.push_back({{"id", a.id.str()}, {"initial_strength", a.initial_strength}});
  return {{"arguments", std::move(args)}, {"attacks", edges_to_json(g.attacks())},
          {"supports", edges_to_json(g.supports())}};
}

// nlohmann emits the shortest representation that round-trips a double.
std::string dump_graph(const Qbag& g) { return graph_to_json(g).dump(2); }

SemanticsSpec semantics_from_json(const Json& j) {
  if (j.is_string()) return preset(j.get<std::string>());
  SemanticsSpec spec;
  const auto agg = field(j, "aggregation", "semantics").get<std::string>();
  if (agg == "sum") spec.aggregation = AggregationKind::Sum;
  else if (agg == "product") spec.aggregation = AggregationKind::Product;
  else if (agg == "top") spec.aggregation = AggregationKind::Top;
  else parse_error("unknown aggregation '" + agg + "' (sum, product, top)");

  const auto& inf = field(j, "influence", "semantics");
  const auto kind = field(inf, "kind", "influence").get<std::string>();
  const double k = inf.value("k", 1.0);
  if (kind == "linear") spec.influence = LinearInfluence{k};
  else if (kind == "euler") spec.influence = EulerInfluence{};
  else if (kind == "pmax") spec.influence = PMaxInfluence{inf.value("p", 2), k};
  else parse_error("unknown influence '" + kind + "' (linear, euler, pmax)");

  spec.name = j.value("name", std::string());
  check_spec(spec);
  return spec;
}

SemanticsSpec parse_semantics(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return semantics_from_json(parse_json(text, "semantics"));
  return preset(text);
}

Json semantics_to_json(const SemanticsSpec& spec) {
  Json inf = std::visit(
      [](const auto& i) -> Json {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, LinearInfluence>) return {{"kind", "linear"}, {"k", i.k}};
        else if constexpr (std::is_same_v<T, EulerInfluence>) return {{"kind", "euler"}};
        else return {{"kind", "pmax"}, {"p", i.p}, {"k", i.k}};
      },
      spec.influence);
  return {{"aggregation", to_string(spec.aggregation)}, {"influence", std::move(inf)}, {"name", spec.label()}};
}

AspectModel aspect_model_from_json(const Qbag& text_graph, const Json& manifest) {
  AspectModel m{text_graph, {}, 0.5, ArgumentId("D")};
  const auto& aspects = field(manifest, "aspects", "aspect manifest");
  if (!aspects.is_array()) parse_error("\"aspects\" must be an array of ids");
  for (const auto& a : aspects) {
    if (!a.is_string()) parse_error("aspect ids must be strings, got " + a.dump());
    m.aspects.emplace_back(a.get<std::string>());
  }
  m.decision_tau = manifest.value("decision_tau", 0.5);
  m.decision_id = ArgumentId(manifest.value("decision_id", std::string("D")));
  validate_model(m);
  return m;
}

Json strengths_to_json(const Qbag& g, const StrengthAssignment& s) {
  Json arr = Json::array();
  for (const auto& a : g.arguments()) {
    arr.push_back({{"id", a.id.str()}, {"initial_strength", a.initial_strength}, {"final_strength", s.at(a.id)}});
  }
  return arr;
}

Json contribution_to_json(const ContributionResult& r) {
  Json members = Json::array();
  for (const auto& id : r.contributor) members.push_back(id.str());
  Json out{{"value", r.value},           {"function", r.function}, {"semantics", r.semantics},
           {"contributor", members},     {"topic", r.topic.str()}, {"evaluations", r.evaluations}};
  if (r.standard_error) out["standard_error"] = *r.standard_error;
  return out;
}

Json witness_to_json(const Witness& w) {
  Json values = Json::object();
  for (const auto& [k, v] : w.values) values[k] = v;
  return {{"graph", graph_to_json(w.graph)},
          {"topic", w.topic.str()},
          {"sets", sets_to_json(w.sets)},
          {"values", std::move(values)},
          {"relation", w.relation}};
}

Json verdict_to_json(const PrincipleVerdict& v, const std::string& function, const std::string& semantics) {
  return {{"fn", function},
          {"semantics", semantics},
          {"principle", to_string(v.principle)},
          {"status", to_string(v.status)},
          {"cases_examined", v.cases_examined},
          {"note", v.note},
          {"witness", v.witness ? witness_to_json(*v.witness) : Json(nullptr)}};
}

Json matrix_to_json(const MatrixReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"fn", c.function},
                     {"semantics", c.semantics},
                     {"principle", to_string(c.principle)},
                     {"expected", c.expected_satisfied ? Json(*c.expected_satisfied ? "satisfied" : "violated")
                                                       : Json(nullptr)},
                     {"status", to_string(c.status)},
                     {"source", c.source},
                     {"instances", c.instances},
                     {"note", c.note},
                     {"witness", c.witness ? witness_to_json(*c.witness) : Json(nullptr)}});
  }
  return {{"cells", std::move(cells)}, {"mismatches", r.mismatches()}};
}

Json claim_to_json(const ClaimResult& c) {
  return {{"fixture", c.fixture}, {"claim", c.claim},   {"reproduced", c.reproduced},
          {"value", c.value},     {"margin", c.margin}, {"detail", c.detail}};
}

Json rows_to_json(const std::vector<ContributionRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"contributors", r.label}, {"removal", r.removal}, {"shapley", r.shapley}, {"gradient_max", r.gradient}});
  }
  return arr;
}

}  // namespace qbag
