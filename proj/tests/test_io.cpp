#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mtlab/io.hpp"

using namespace mtlab;
using nlohmann::json;

namespace {

const std::string kData = MTLAB_DATA_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/mtlab_test_" + name;
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("bundled trolley file reproduces the builtin network") {
    auto loaded = io::load_bayesnet(io::load_json(kData + "/trolley.json"));
    auto builtin = bayes::trolley_network();
    REQUIRE(loaded.variables == builtin.variables);
    REQUIRE(loaded.parents == builtin.parents);
    for (size_t i = 0; i < loaded.cpts.size(); ++i) {
        REQUIRE(loaded.cpts[i].size() == builtin.cpts[i].size());
        for (size_t r = 0; r < loaded.cpts[i].size(); ++r)
            CHECK(loaded.cpts[i][r] == doctest::Approx(builtin.cpts[i][r]).epsilon(1e-12));
    }
}

TEST_CASE("bayesnet JSON round-trips") {
    auto net = bayes::trolley_network();
    auto doc = io::bayesnet_to_json(net);
    auto back = io::load_bayesnet(doc);
    CHECK(back.variables == net.variables);
    CHECK(back.parents == net.parents);
    CHECK(back.cpts == net.cpts);
}

TEST_CASE("bundled lottery matches the builtin triple") {
    auto loaded = io::load_risky_actions(io::load_json(kData + "/lottery.json"));
    auto builtin = uncertain::lottery_triple();
    REQUIRE(loaded.size() == builtin.size());
    for (size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].label == builtin[i].label);
        CHECK(loaded[i].outcomes == builtin[i].outcomes);
    }
}

TEST_CASE("bundled games match the builtins") {
    CHECK(io::load_game(io::load_json(kData + "/pd.json")).payoffs ==
          games::prisoners_dilemma(5, 3, 1, 0).payoffs);
    CHECK(io::load_game(io::load_json(kData + "/matching_pennies.json")).payoffs ==
          games::matching_pennies().payoffs);
    CHECK(io::load_game(io::load_json(kData + "/stag_hunt.json")).payoffs ==
          games::stag_hunt().payoffs);
    CHECK(io::load_game(io::load_json(kData + "/chicken.json")).payoffs ==
          games::chicken().payoffs);
}

TEST_CASE("bundled machines match the builtins") {
    auto tft = io::load_machine(io::load_json(kData + "/tft.json"));
    CHECK(tft.output == games::tit_for_tat().output);
    CHECK(tft.transition == games::tit_for_tat().transition);
    auto allc = io::load_machine(io::load_json(kData + "/allc.json"));
    CHECK(allc.output == games::all_cooperate().output);
    auto alld = io::load_machine(io::load_json(kData + "/alld.json"));
    CHECK(alld.output == games::all_defect().output);
}

TEST_CASE("machine JSON round-trips") {
    auto m = games::tit_for_tat();
    auto back = io::load_machine(io::machine_to_json(m));
    CHECK(back.name == m.name);
    CHECK(back.initial == m.initial);
    CHECK(back.output == m.output);
    CHECK(back.transition == m.transition);
}

TEST_CASE("malformed JSON reports line and column") {
    auto path = write_temp("bad.json", "{\n  \"actions\": [1, 2,\n}\n");
    try {
        io::load_json(path);
        FAIL("expected a parse failure");
    } catch (const validation_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("column") != std::string::npos);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(io::load_json("/tmp/does_not_exist_mtlab.json"), validation_error);
}

TEST_CASE("atomic writes land complete or not at all") {
    std::string path = "/tmp/mtlab_test_atomic.txt";
    io::write_file_atomic(path, "first\n");
    CHECK(slurp(path) == "first\n");
    io::write_file_atomic(path, "second\n");
    CHECK(slurp(path) == "second\n");
    std::remove(path.c_str());
}

TEST_CASE("environment loader: explicit plan values override the additive fallback") {
    json doc = json::parse(R"({
        "actions": ["give", "help", "wait"],
        "values": {"0": 1.0, "1": 2.0, "0,1": 10.0}
    })");
    auto env = io::load_environment(doc);
    CHECK(env.oracle.value(planner::Plan({0}, false)) == 1.0);
    CHECK(env.oracle.value(planner::Plan({0, 1}, false)) == 10.0);
    CHECK(env.oracle.value(planner::Plan({1, 2}, false)) == 2.0);  // 2 + missing 0
    CHECK(env.oracle.calls() == 3);
    json bad = json::parse(R"({"values": {}})");
    CHECK_THROWS_AS(io::load_environment(bad), validation_error);
}

TEST_CASE("profile and duty loaders validate their input") {
    json profile_doc = json::parse(R"({
        "agent": "a",
        "actions": ["x"],
        "preferences": ["p", "q"],
        "effects": [[1.0, -1.0]]
    })");
    auto profile = io::load_profile(profile_doc);
    CHECK(profile.agent == "a");
    CHECK(profile.effects[0][1] == -1.0);

    json broken = profile_doc;
    broken["effects"] = json::array({json::array({1.0})});
    CHECK_THROWS_AS(io::load_profile(broken), validation_error);

    json duties_doc = json::parse(R"({
        "duties": [
            {"name": "no-harm", "subject": "action", "attribute": "harm", "op": ">", "value": 0}
        ]
    })");
    auto duties = io::load_duties(duties_doc);
    REQUIRE(duties.duties.size() == 1);
    CHECK(duties.duties[0].op == rules::Duty::Op::gt);

    json bad_subject = duties_doc;
    bad_subject["duties"][0]["subject"] = "planet";
    CHECK_THROWS_AS(io::load_duties(bad_subject), validation_error);
}

TEST_CASE("MDP and POMDP loaders") {
    json doc = json::parse(R"({
        "states": ["s0", "s1"],
        "actions": ["a"],
        "discount": 0.9,
        "transition": {"a": [[0.5, 0.5], [0.0, 1.0]]},
        "reward": {"a": [[1.0, 0.0], [0.0, 0.0]]},
        "observations": ["w0", "w1"],
        "observation": {"a": [[1.0, 0.0], [0.0, 1.0]]}
    })");
    auto mdp = io::load_mdp(doc);
    CHECK(mdp.n_states() == 2);
    CHECK(mdp.transition[0](0, 1) == 0.5);
    auto pomdp = io::load_pomdp(doc);
    CHECK(pomdp.n_observations() == 2);

    json bad = doc;
    bad["transition"]["a"][0][0] = 0.9;  // row sum != 1
    CHECK_THROWS_AS(io::load_mdp(bad), validation_error);
}

TEST_CASE("incomplete CPT tables are rejected") {
    json doc = json::parse(R"({
        "variables": ["a", "b"],
        "parents": {"a": [], "b": ["a"]},
        "cpt": {"a": {"": 0.5}, "b": {"0": 0.2}}
    })");
    CHECK_THROWS_AS(io::load_bayesnet(doc), validation_error);
    doc["cpt"]["b"]["1"] = 0.7;
    CHECK_NOTHROW(io::load_bayesnet(doc));
    doc["cpt"]["b"]["11"] = 0.7;  // wrong arity
    CHECK_THROWS_AS(io::load_bayesnet(doc), validation_error);
}
