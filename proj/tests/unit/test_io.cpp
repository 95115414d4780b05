#include <doctest.h>

#include "helpers.hpp"
#include "qbag/fixtures.hpp"
#include "qbag/io.hpp"
#include "qbag/principles.hpp"
#include "qbag/reproduce.hpp"

using namespace qbag;

TEST_SUITE("io") {
  TEST_CASE("graph round trip is bit-exact") {
    for (const auto& f : fixture_corpus()) CHECK(parse_graph(dump_graph(f.graph)) == f.graph);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto g : random_corpus(61, 50)) {
      for (const auto& id : g.ids()) g = set_initial_strength(g, id, u(rng));
      CHECK(parse_graph(dump_graph(g)) == g);
    }
  }

  TEST_CASE("parse preserves 15+ significant digits") {
    auto g = parse_graph(R"({"arguments":[{"id":"a","initial_strength":0.123456789012345678}],"attacks":[],"supports":[]})");
    CHECK(g.initial_strength(ArgumentId("a")) == 0.123456789012345678);
  }

  TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(parse_graph("{"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"attacks":[]})"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"arguments":[{"id":"a"}]})"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"arguments":[{"id":"a","initial_strength":"x"}]})"), Error);
    CHECK_THROWS_AS(parse_graph(R"({"arguments":[{"id":"a","initial_strength":0.1}],"attacks":[["a"]]})"), Error);
    try {
      parse_graph("[1,2");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
    // Duplicates parse and are reported by validation.
    auto d = parse_graph(R"({"arguments":[{"id":"a","initial_strength":0.1},{"id":"a","initial_strength":0.2}]})");
    CHECK_FALSE(validate(d).ok);
  }

  TEST_CASE("semantics specs") {
    CHECK(parse_semantics("EBT").name == "EBT");
    auto s = parse_semantics(R"({"aggregation":"sum","influence":{"kind":"pmax","p":2,"k":1}})");
    CHECK(s.aggregation == AggregationKind::Sum);
    CHECK(std::get<PMaxInfluence>(s.influence).p == 2);
    const auto& g = fixture("fig1a").graph;
    CHECK(evaluate(g, s) == evaluate(g, preset("QE")));
    CHECK(semantics_from_json(semantics_to_json(preset("DFQuAD"))).aggregation == AggregationKind::Product);
    CHECK_THROWS_AS(parse_semantics(R"({"aggregation":"mean","influence":{"kind":"euler"}})"), Error);
    CHECK_THROWS_AS(parse_semantics(R"({"aggregation":"sum","influence":{"kind":"linear","k":0}})"), Error);
  }

  TEST_CASE("aspect manifest") {
    auto m = aspect_model_from_json(fixture("fig8").graph, Json::parse(R"({"aspects":["NOV","CMP"],"decision_tau":0.4})"));
    CHECK(m.aspects.size() == 2);
    CHECK(m.decision_tau == 0.4);
    CHECK_THROWS_AS(aspect_model_from_json(fixture("fig8").graph, Json::parse(R"({"aspects":[1]})")), Error);
  }

  TEST_CASE("report json shapes") {
    auto c = claim_to_json(reproduce_fixture("fig1a").front());
    CHECK(c.contains("margin"));
    auto v = check_principle(PrincipleId::Consistency, builtin_function(SetFunctionKind::Removal), fixture("fig6-qe").graph,
                             preset("QE"), ArgumentId("a"));
    auto j = verdict_to_json(v, "removal", "QE");
    CHECK(j["status"] == "violated-on-instance");
    CHECK(j["witness"]["sets"][0][0] == "d");
    CHECK(parse_graph(j["witness"]["graph"].dump()) == v.witness->graph);
  }
}
