#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "congame/document.hpp"
#include "congame/export.hpp"
#include "support/fixtures.hpp"

using namespace congame;

TEST_CASE("parsing the worked document") {
  const SystemDocument doc = parse_system_document(fixtures::improper_document());
  CHECK(doc.model.players() == 3);
  CHECK(doc.model.facilities() == 5);
  CHECK(doc.model.profile_count() == 18);
  REQUIRE(doc.model.perf());
  CHECK(*doc.model.perf() == fixtures::improper_perf());
  REQUIRE(doc.xi);
  CHECK(doc.xi->values == fixtures::improper_costs().values);
  CHECK(doc.constraints.empty());
  CHECK(doc.fixed.empty());
}

TEST_CASE("serialize-parse round trip is the identity on canonical form") {
  const SystemDocument doc = parse_system_document(fixtures::improper_document());
  const std::string canonical = serialize_system_document(doc);
  const SystemDocument again = parse_system_document(canonical);
  CHECK(serialize_system_document(again) == canonical);
  CHECK(model_digest(again.model) == model_digest(doc.model));
}

TEST_CASE("perf can be keyed by choice tuples") {
  const char* text = R"(
players: 2
facilities: 2
actions:
  1: {1} {2}
  2: {1,2} {}
perf:
  1 1: 4
  2 2: 1.5
  1 2: 3
  2 1: 2
)";
  const SystemDocument doc = parse_system_document(text);
  REQUIRE(doc.model.perf());
  CHECK(*doc.model.perf() == PerfTable{4, 3, 2, 1.5});
}

TEST_CASE("constraints and fixed blocks parse") {
  const char* text = R"(
players: 2
facilities: 2
actions:
  1: {1} {2}
  2: {1,2} {}
constraints:
  1 0 < 2
  0.5 -1 < 0.25
fixed:
  2: 1 0.5
)";
  const SystemDocument doc = parse_system_document(text);
  REQUIRE(doc.constraints.size() == 2);
  CHECK(doc.constraints[0].coeffs == std::vector<double>{1, 0});
  CHECK(doc.constraints[0].threshold == 2.0);
  CHECK(doc.constraints[1].coeffs == std::vector<double>{0.5, -1});
  REQUIRE(doc.fixed.count(2));
  CHECK(doc.fixed.at(2) == std::vector<double>{1, 0.5});
}

TEST_CASE("comments and blank lines are ignored") {
  const char* text = R"(
# a facility-sharing toy
players: 1    # one player
facilities: 1

actions:
  1: {1}
)";
  CHECK(parse_system_document(text).model.profile_count() == 1);
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(parse_system_document("players: 1\nfacilities: 1\nwidgets: 3\nactions:\n  1: {1}\n"),
                  ParseError);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_system_document("players: 1\nfacilities: 1\nactions:\n  1: oops\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
  }
}

TEST_CASE("structural errors are reported") {
  CHECK_THROWS_AS(parse_system_document(""), ParseError);
  CHECK_THROWS_AS(parse_system_document("players: 2\nfacilities: 1\nactions:\n  1: {1}\n"),
                  ParseError);  // missing player 2
  CHECK_THROWS_AS(parse_system_document(
                      "players: 1\nfacilities: 1\nactions:\n  1: {1}\nperf:\n  1 2\n"),
                  ParseError);  // perf length
  CHECK_THROWS_AS(parse_system_document(
                      "players: 1\nfacilities: 2\nactions:\n  1: {1}\nxi:\n  1\n"),
                  ParseError);  // xi size
  CHECK_THROWS_AS(parse_system_document(
                      "players: 1\nfacilities: 2\nactions:\n  1: {1}\nconstraints:\n  1 < 2\n"),
                  ParseError);  // constraint arity
  CHECK_THROWS_AS(parse_system_document(
                      "players: 1\nfacilities: 1\nactions:\n  1: {1}\n  1: {1}\n"),
                  ParseError);  // player twice
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(33.0) == "33");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.8315) == "0.8315");
  CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("csv exports are deterministic and 1-based") {
  const FbsModel model = fixtures::three_player_model();

  const std::string b = b_matrix_csv(model);
  CHECK(b.substr(0, b.find('\n')) ==
        "profile,f1_k1,f1_k2,f1_k3,f2_k1,f2_k2,f2_k3,f3_k1,f3_k2,f3_k3,f4_k1,f4_k2,f4_k3,"
        "f5_k1,f5_k2,f5_k3");
  CHECK(b.find("\n1,1,1,1,1,1,0,1,1,0,1,1,0,0,0,0\n") != std::string::npos);
  CHECK(b == b_matrix_csv(model));

  const std::string loads = loads_csv(model);
  CHECK(loads.find("profile,tuple,r1,r2,r3,r4,r5") == 0);
  CHECK(loads.find("\n1,1 1 1,3,2,2,2,0\n") != std::string::npos);

  const std::string xi = xi_csv(fixtures::integer_costs());
  CHECK(xi.find("facility,k1,k2,k3") == 0);
  CHECK(xi.find("\n1,11,2,4\n") != std::string::npos);

  const std::string payoffs = payoffs_csv(model, fixtures::improper_costs());
  CHECK(payoffs.substr(0, payoffs.find('\n')).substr(0, 18) == "player,1 1 1,1 1 2");
  CHECK(payoffs.find("\n1,6,") != std::string::npos);
}

TEST_CASE("trace files round trip through parse") {
  const FbsModel model = fixtures::three_player_model();
  const PerfTable perf = fixtures::improper_perf();
  const auto maps = transition_maps(
      model, best_response_maps(model, payoffs_of(model, fixtures::improper_costs())));
  const Trace trace = simulate(maps, 13, ScheduleKind::UniformRandom, 7, -1, &perf);
  REQUIRE(trace.converged);

  const std::string text = trace_csv(model, trace);
  const ParsedTrace parsed = parse_trace_csv(text);
  CHECK(parsed.digest == model_digest(model));
  CHECK(parsed.trace.seed == 7);
  CHECK(parsed.trace.schedule_kind == ScheduleKind::UniformRandom);
  CHECK(parsed.trace.start == 13);
  CHECK(parsed.trace.schedule == trace.schedule);
  CHECK(parsed.trace.profiles == trace.profiles);
  CHECK(parsed.trace.converged);
  CHECK(parsed.trace.absorbing == trace.absorbing);
  CHECK(parsed.has_potential);
  CHECK(parsed.trace.potential_series == trace.potential_series);

  // replaying the parsed schedule reproduces the same profile path
  const Trace replayed = replay(maps, parsed.trace.start, parsed.trace.schedule);
  CHECK(replayed.profiles == trace.profiles);
}

TEST_CASE("svg plot contains one path per trace") {
  const FbsModel model = fixtures::three_player_model();
  const auto maps = transition_maps(
      model, best_response_maps(model, payoffs_of(model, fixtures::improper_costs())));
  std::vector<Trace> traces;
  for (long start : {1L, 9L, 18L})
    traces.push_back(simulate(maps, start, ScheduleKind::UniformRandom, 3));
  const std::string svg = traces_svg(traces, model.profile_count());
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t paths = 0, pos = 0;
  while ((pos = svg.find("<path", pos)) != std::string::npos) {
    ++paths;
    pos += 5;
  }
  CHECK(paths == 3);
}
