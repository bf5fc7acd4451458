#include <doctest.h>

#include <sstream>

#include "infomarket/cli.hpp"
#include "infomarket/io.hpp"
#include "support.hpp"

using namespace infomarket;
using fixture::q;

namespace {

std::string scenario_path(const std::string& name) { return std::string(INFOMARKET_SCENARIO_DIR) + "/" + name; }

ScenarioErrorKind error_kind(const std::string& text, std::string* location = nullptr) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    if (location) *location = e.location();
    return e.kind();
  }
  FAIL("scenario was accepted");
  return ScenarioErrorKind::malformed;
}

const char* kBase = R"({
  "states": ["a", "b", "c", "d"],
  "prior": {"a": "1/4", "b": "1/4", "c": "1/4", "d": "1/4"},
  "traders": [{"name": "t", "partition": [["a", "b"], ["c", "d"]]}],
  "securities": [{"name": "x", "payoffs": {"a": "1", "b": "0", "c": "1/2", "d": "0"}}],
  "events": [{"name": "e", "states": ["a"]}],
  "scoring": {"b": "2"}
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "infomarket");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("scenario files parse") {
    auto single = parse_scenario(scenario_path("election_single.json"));
    CHECK(single.states.size() == 4);
    CHECK(single.signals.trader_count() == 2);
    CHECK(single.securities.security_count() == 1);
    auto pair = parse_scenario(scenario_path("election_pair.json"));
    CHECK(pair.securities.security_count() == 2);
    CHECK(pair.prior == Distribution::uniform(4));

    auto s = parse_scenario_text(kBase);
    CHECK(s.scoring.b() == 2);
    CHECK(s.securities.at(2, 0) == q(1, 2));
    CHECK(s.event("e") == fixture::event(4, {0}));
  }

  TEST_CASE("diagnostics name the problem and its location") {
    std::string where;
    CHECK(error_kind(with(kBase, R"("c": "1/4", "d": "1/4")", R"("c": "1/4", "d": "0")"), &where) ==
          ScenarioErrorKind::prior_sum);
    CHECK(where == "/prior");
    CHECK(error_kind(with(kBase, R"(["c", "d"]])", R"(["c", "z"]])"), &where) == ScenarioErrorKind::unknown_state);
    CHECK(where == "/traders/0/partition/1/1");
    CHECK(error_kind(with(kBase, R"(["c", "d"]])", R"(["b", "c", "d"]])"), &where) ==
          ScenarioErrorKind::not_a_partition);
    CHECK(where == "/traders/0/partition");
    CHECK(error_kind(with(kBase, R"("c": "1/2")", R"("c": "1/x")"), &where) == ScenarioErrorKind::malformed_rational);
    CHECK(where == "/securities/0/payoffs/c");
    CHECK(error_kind(with(kBase, R"(["a", "b", "c", "d"])", R"(["a", "b", "c", "d", "a"])")) ==
          ScenarioErrorKind::duplicate_name);
    CHECK(error_kind("{\"states\": [") == ScenarioErrorKind::malformed);
    CHECK(error_kind(with(kBase, R"("traders")", R"("agents")")) == ScenarioErrorKind::malformed);

    // three thirds over four states
    CHECK(error_kind(with(kBase, R"("a": "1/4", "b": "1/4", "c": "1/4", "d": "1/4")",
                          R"("a": "1/3", "b": "1/3", "c": "1/3")")) == ScenarioErrorKind::prior_sum);
  }

  TEST_CASE("scenarios round-trip") {
    for (auto name : {"election_single.json", "election_pair.json", "six_state.json", "adversarial.json",
                      "singleton_join.json"}) {
      auto s = parse_scenario(scenario_path(name));
      auto again = scenario_from_json(to_json(s));
      CHECK(again == s);
      CHECK(to_json(again).dump() == to_json(s).dump());
    }
    auto sc = parse_set_cover(scenario_path("setcover.json"));
    CHECK(to_json(set_cover_from_json(to_json(sc))).dump() == to_json(sc).dump());
  }

  TEST_CASE("report fragments round-trip") {
    auto s = parse_scenario_text(kBase);
    Witness w{Distribution({q(1, 3), 0, q(2, 3), 0}), {q(2, 3)}};
    auto back = witness_from_json(witness_json(w, s.states), s.states);
    CHECK(back.distribution == w.distribution);
    CHECK(back.consensus == w.consensus);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("check on the single election security refutes with a witness") {
    cli::Options o;
    o.command = "check";
    o.events = {"election"};
    o.seed = 0;
    auto scenario = parse_scenario(scenario_path("election_single.json"));
    auto r = cli::run(o, scenario);
    CHECK(r.exit_code == cli::kNegative);
    CHECK(r.body["status"] == "not-informative");
    CHECK(r.body["separability"]["witness"]["consensus"] == Json::array({"1/2"}));
    CHECK(reverify_report(r.body, scenario));
  }

  TEST_CASE("simulate reproduces the two-round aggregation") {
    cli::Options o;
    o.command = "simulate";
    o.true_state = "w1";
    auto scenario = parse_scenario(scenario_path("election_pair.json"));
    auto r = cli::run(o, scenario);
    CHECK(r.exit_code == cli::kPositive);
    const auto& run = r.body["runs"][0];
    CHECK(run["trace"]["rounds"] == 2);
    CHECK(run["trace"]["final_prediction"] == Json::array({"1", "1"}));
    CHECK(run["aggregated"] == true);
    CHECK(run["ledger"]["total"] == "1/2");
  }

  TEST_CASE("design single reports the payoffs") {
    auto r = invoke({"design", "single", scenario_path("singleton_join.json"), "--base", "10", "--json"});
    CHECK(r.code == cli::kPositive);
    auto body = Json::parse(r.out);
    CHECK(body["security"]["payoffs"] == Json({{"w1", "101"}, {"w2", "1001"}, {"w3", "1010"}}));
    CHECK(body["pairwise_distinct"] == true);
    CHECK(body["certificate"]["reason"] == "sum-form");
  }

  TEST_CASE("counterexample output re-verifies") {
    cli::Options o;
    o.command = "counterexample";
    o.events = {"E"};
    auto scenario = parse_scenario(scenario_path("adversarial.json"));
    auto r = cli::run(o, scenario);
    CHECK(r.exit_code == cli::kNegative);
    CHECK(r.body["adversarial"]["is_witness"] == true);
    CHECK(reverify_report(r.body, scenario));

    // a tampered consensus no longer verifies
    auto bad = r.body;
    bad["adversarial"]["witness"]["consensus"] = Json::array({"1/3"});
    CHECK_FALSE(reverify_report(bad, scenario));
  }

  TEST_CASE("distinguishability counterexamples re-verify") {
    auto text = with(kBase, R"("events": [{"name": "e", "states": ["a"]}])",
                     R"("events": [{"name": "e", "states": ["a", "c"]}])");
    auto scenario = parse_scenario_text(with(text, R"("c": "1/2")", R"("c": "0")"));
    cli::Options o;
    o.command = "check";
    o.seed = 1;
    auto r = cli::run(o, scenario);
    CHECK(r.exit_code == cli::kNegative);
    CHECK(r.body["distinguishes"][0]["distinguished"] == false);
    CHECK(reverify_report(r.body, scenario));
  }

  TEST_CASE("exit codes") {
    auto ok = invoke({"reduce-setcover", scenario_path("setcover.json")});
    CHECK(ok.code == cli::kPositive);
    CHECK(invoke({"check", scenario_path("election_pair.json"), "--budget", "50"}).code == cli::kUndetermined);
    CHECK(invoke({"check", scenario_path("election_single.json"), "--json"}).code == cli::kInvalidInput);
    CHECK(invoke({"check", scenario_path("missing.json")}).code == cli::kInvalidInput);
    CHECK(invoke({"simulate", scenario_path("election_pair.json"), "--true-state", "nowhere"}).code ==
          cli::kInvalidInput);
    CHECK(invoke({"bogus"}).code == cli::kInvalidInput);
    CHECK(invoke({"design", "single", scenario_path("adversarial.json")}).code == cli::kPrecondition);
    CHECK(invoke({"counterexample", scenario_path("election_pair.json"), "--events", "election"}).code ==
          cli::kPrecondition);
    CHECK(invoke({"design", "minimal", scenario_path("election_single.json"), "--events", "election", "--candidates",
                  "election", "--seed", "0"})
              .code == cli::kInfeasible);
  }

  TEST_CASE("machine output is deterministic") {
    std::vector<std::vector<std::string>> commands{
        {"check", scenario_path("election_pair.json"), "--json", "--seed", "7", "--budget", "40"},
        {"simulate", scenario_path("six_state.json"), "--json"},
        {"witness-search", scenario_path("six_state.json"), "--json", "--seed", "3", "--budget", "40"},
        {"counterexample", scenario_path("adversarial.json"), "--events", "E", "--json"},
        {"reduce-setcover", scenario_path("setcover.json"), "--json", "--seed", "0"},
    };
    for (const auto& args : commands) {
      auto first = invoke(args), second = invoke(args);
      CHECK(first.out == second.out);
      CHECK(first.code == second.code);
      auto body = Json::parse(first.out);
      CHECK(Json::parse(body.dump()) == body);
      CHECK_FALSE(body.contains("timing_ms"));
    }
  }
}
