#include <doctest.h>

#include <random>

#include "mtlab/rules.hpp"

using namespace mtlab;
using namespace mtlab::rules;

namespace {

PreferenceProfile random_profile(std::mt19937_64& rng, const std::string& agent,
                                 int n_actions, int n_prefs) {
    std::uniform_real_distribution<double> delta(-1.0, 1.0);
    PreferenceProfile p;
    p.agent = agent;
    for (int a = 0; a < n_actions; ++a) p.actions.push_back("act" + std::to_string(a));
    for (int q = 0; q < n_prefs; ++q) p.preferences.push_back("pref" + std::to_string(q));
    for (int a = 0; a < n_actions; ++a) {
        std::vector<double> row;
        for (int q = 0; q < n_prefs; ++q) row.push_back(delta(rng));
        p.effects.push_back(row);
    }
    return p;
}

// The judge scenario: sending someone to prison fails the naive "as I would
// have done to me" test but passes the role-differentiated one.
PreferenceProfile judge_self() {
    PreferenceProfile judge;
    judge.agent = "judge";
    judge.actions = {"imprison", "acquit"};
    judge.preferences = {"liberty", "safety"};
    judge.effects = {
        {-5.0, 1.0},  // the judge would hate being imprisoned
        {0.0, 0.0},
    };
    return judge;
}

std::vector<PreferenceProfile> affected_parties() {
    PreferenceProfile criminal;
    criminal.agent = "criminal";
    criminal.actions = {"imprison", "acquit"};
    criminal.preferences = {"liberty", "safety"};
    // role-differentiated: a convicted offender's claim to liberty is
    // forfeit, so the imprisonment delta is scored against the forfeited
    // baseline rather than against an innocent's liberty
    criminal.effects = {
        {0.0, 1.0},
        {2.0, 0.0},
    };

    PreferenceProfile victim;
    victim.agent = "victim";
    victim.actions = {"imprison", "acquit"};
    victim.preferences = {"liberty", "safety"};
    victim.effects = {
        {0.0, 4.0},
        {0.0, -3.0},
    };

    PreferenceProfile society;
    society.agent = "society";
    society.actions = {"imprison", "acquit"};
    society.preferences = {"liberty", "safety"};
    society.effects = {
        {0.0, 2.0},
        {0.0, -1.0},
    };
    return {criminal, victim, society};
}

}  // namespace

TEST_CASE("judge scenario: GR1 forbids imprisonment, GR2 permits it") {
    auto gr1 = gr1_permissible("imprison", judge_self());
    CHECK_FALSE(gr1.permissible);
    auto gr2 = gr2_permissible("imprison", affected_parties());
    CHECK(gr2.permissible);
}

TEST_CASE("inspection counts are exact") {
    auto self = judge_self();
    CHECK(gr1_permissible("imprison", self).inspections == 2);    // p = 2
    CHECK(gr1_screen(self).inspections == 4);                     // n*p = 2*2

    auto others = affected_parties();
    CHECK(gr2_permissible("imprison", others).inspections == 6);  // p*o = 2*3
    CHECK(gr2_screen(others).inspections == 12);                  // n*p*o = 2*2*3

    // the acceptance sizing: 2 actions, 5 preferences, 3 agents -> 30
    std::mt19937_64 rng(42);
    std::vector<PreferenceProfile> trio;
    for (int o = 0; o < 3; ++o)
        trio.push_back(random_profile(rng, "agent" + std::to_string(o), 2, 5));
    CHECK(gr2_screen(trio).inspections == 30);
}

TEST_CASE("GR2 with a single self-profile equals GR1 on 100 seeded profiles") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        int n = 1 + static_cast<int>(rng() % 5);
        int p = 1 + static_cast<int>(rng() % 5);
        auto self = random_profile(rng, "self", n, p);
        for (const auto& action : self.actions) {
            auto one = gr1_permissible(action, self);
            auto two = gr2_permissible(action, {self});
            CHECK(one.permissible == two.permissible);
            CHECK(one.inspections == two.inspections);
        }
    }
}

TEST_CASE("adding an agent to GR2 can only shrink the permissible set") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_profile(rng, "a", 3, 3);
        auto b = random_profile(rng, "b", 3, 3);
        auto before = gr2_screen({a}).permissible_actions;
        auto after = gr2_screen({a, b}).permissible_actions;
        for (const auto& action : after) {
            bool was_there = false;
            for (const auto& prev : before) was_there |= prev == action;
            CHECK(was_there);
        }
    }
}

TEST_CASE("thresholds shift verdicts") {
    PreferenceProfile p;
    p.agent = "x";
    p.actions = {"give"};
    p.preferences = {"wealth"};
    p.effects = {{0.5}};
    CHECK(gr1_permissible("give", p, 0.0).permissible);
    CHECK_FALSE(gr1_permissible("give", p, 1.0).permissible);
}

TEST_CASE("profile validation") {
    PreferenceProfile broken;
    broken.agent = "x";
    broken.actions = {"a", "b"};
    broken.preferences = {"p"};
    broken.effects = {{1.0}};  // missing a row
    CHECK_THROWS_AS(broken.validate(), validation_error);
    CHECK_THROWS_AS(gr1_permissible("missing", judge_self()), validation_error);
    CHECK_THROWS_AS(gr2_permissible("a", {}), validation_error);
}

TEST_CASE("duty checks evaluate every duty and flag violations") {
    DutySet set;
    set.duties.push_back({"no-harm", Duty::Subject::action, "harm", Duty::Op::gt, 0.0});
    set.duties.push_back({"keep-promises", Duty::Subject::state, "promises_broken",
                          Duty::Op::ge, 1.0});
    set.duties.push_back({"stay-honest", Duty::Subject::action, "lies", Duty::Op::gt, 0.0});

    Attributes act{{"harm", 0.0}, {"lies", 2.0}};
    Attributes state{{"promises_broken", 0.0}};
    auto report = check_duties(act, state, set);
    CHECK(report.evaluations == 3);
    REQUIRE(report.violated.size() == 1);
    CHECK(report.violated[0] == "stay-honest");

    Attributes clean_act{{"harm", 0.0}, {"lies", 0.0}};
    auto clean = check_duties(clean_act, state, set);
    CHECK(clean.violated.empty());

    Attributes missing{{"harm", 0.0}};
    CHECK_THROWS_AS(check_duties(missing, state, set), validation_error);
}

TEST_CASE("operator parsing covers symbols and names") {
    CHECK(op_from_string(">") == Duty::Op::gt);
    CHECK(op_from_string("le") == Duty::Op::le);
    CHECK_THROWS_AS(op_from_string("<>"), validation_error);
}
