#include <doctest.h>

#include <cmath>
#include <vector>

#include "mtlab/games.hpp"

using namespace mtlab;
using namespace mtlab::games;

namespace {

// Independent expected-payoff computation for 2-player mixed profiles,
// written directly against the payoff tensor.
double mixed_payoff(const NormalFormGame& g, const MixedProfile& mp, int player) {
    double total = 0.0;
    for (int a = 0; a < g.strategies(0); ++a)
        for (int b = 0; b < g.strategies(1); ++b)
            total += mp.probs[0][static_cast<size_t>(a)] * mp.probs[1][static_cast<size_t>(b)] *
                     g.payoff({a, b}, player);
    return total;
}

// Best payoff a player can get by deviating to a pure strategy while the
// opponent keeps mixing.
double best_pure_deviation(const NormalFormGame& g, const MixedProfile& mp, int player) {
    double best = -1e300;
    for (int dev = 0; dev < g.strategies(player); ++dev) {
        double val = 0.0;
        for (int opp = 0; opp < g.strategies(1 - player); ++opp) {
            std::vector<int> profile(2);
            profile[static_cast<size_t>(player)] = dev;
            profile[static_cast<size_t>(1 - player)] = opp;
            val += mp.probs[static_cast<size_t>(1 - player)][static_cast<size_t>(opp)] *
                   g.payoff(profile, player);
        }
        best = std::max(best, val);
    }
    return best;
}

// Independent CE incentive check: conditioned on a recommendation, no player
// gains by switching to any other pure strategy.
bool ce_holds(const NormalFormGame& g, const std::vector<double>& dist, double tol) {
    for (int player = 0; player < 2; ++player) {
        for (int rec = 0; rec < g.strategies(player); ++rec) {
            for (int dev = 0; dev < g.strategies(player); ++dev) {
                if (dev == rec) continue;
                double gain = 0.0;
                for (int opp = 0; opp < g.strategies(1 - player); ++opp) {
                    std::vector<int> held(2), swapped(2);
                    held[static_cast<size_t>(player)] = rec;
                    swapped[static_cast<size_t>(player)] = dev;
                    held[static_cast<size_t>(1 - player)] = opp;
                    swapped[static_cast<size_t>(1 - player)] = opp;
                    double p = dist[g.flat_index(held)];
                    gain += p * (g.payoff(swapped, player) - g.payoff(held, player));
                }
                if (gain > tol) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("prisoner's dilemma: the only pure equilibrium is mutual defection") {
    auto pd = prisoners_dilemma(5, 3, 1, 0);
    auto result = pure_nash(pd);
    REQUIRE(result.equilibria.size() == 1);
    CHECK(result.equilibria[0] == std::vector<int>{1, 1});
    // short-circuits on the first profitable deviation, so at most
    // 4 profiles x 2 players x 1 alternative
    CHECK(result.deviation_checks >= 4);
    CHECK(result.deviation_checks <= 8);
    CHECK_THROWS_AS(prisoners_dilemma(3, 5, 1, 0), validation_error);
}

TEST_CASE("one-shot best response to cooperation is defection") {
    auto pd = prisoners_dilemma(5, 3, 1, 0);
    CHECK(one_shot_best_response(pd, 0, {0, 0}) == 1);
    CHECK(one_shot_best_response(pd, 1, {1, 0}) == 1);
}

TEST_CASE("matching pennies: unique mixed equilibrium at (1/2, 1/2)") {
    auto mp = matching_pennies();
    CHECK(pure_nash(mp).equilibria.empty());
    auto result = support_enumeration_2p(mp);
    REQUIRE(result.equilibria.size() == 1);
    for (int player = 0; player < 2; ++player)
        for (double p : result.equilibria[0].probs[static_cast<size_t>(player)])
            CHECK(p == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("stag hunt: two pure equilibria plus the 1/2 mixed one") {
    auto sh = stag_hunt();
    auto pure = pure_nash(sh);
    REQUIRE(pure.equilibria.size() == 2);
    CHECK(pure.equilibria[0] == std::vector<int>{0, 0});
    CHECK(pure.equilibria[1] == std::vector<int>{1, 1});

    auto mixed = support_enumeration_2p(sh);
    CHECK(mixed.equilibria.size() == 3);
    auto welfare = max_welfare_nash(sh);
    CHECK(welfare.welfare == doctest::Approx(8.0));
    CHECK(welfare.profile.probs[0][0] == doctest::Approx(1.0));
}

TEST_CASE("every returned equilibrium survives an independent deviation check") {
    for (const auto& game : {prisoners_dilemma(5, 3, 1, 0), matching_pennies(),
                             stag_hunt(), chicken()}) {
        auto result = support_enumeration_2p(game);
        CHECK_FALSE(result.equilibria.empty());
        for (const auto& eq : result.equilibria) {
            for (int player = 0; player < 2; ++player) {
                double mine = mixed_payoff(game, eq, player);
                CHECK(best_pure_deviation(game, eq, player) <= mine + 1e-7);
            }
        }
    }
}

TEST_CASE("every Nash equilibrium is a correlated equilibrium") {
    for (const auto& game : {prisoners_dilemma(5, 3, 1, 0), matching_pennies(),
                             stag_hunt(), chicken()}) {
        auto result = support_enumeration_2p(game);
        for (const auto& eq : result.equilibria) {
            auto dist = product_distribution(game, eq);
            CHECK(satisfies_ce_constraints(game, dist, 1e-7));
            CHECK(ce_holds(game, dist, 1e-7));
        }
    }
}

TEST_CASE("max-welfare CE weakly beats max-welfare NE on the bundled games") {
    for (const auto& game : {prisoners_dilemma(5, 3, 1, 0), matching_pennies(),
                             stag_hunt(), chicken()}) {
        auto nash = max_welfare_nash(game);
        auto ce = correlated_equilibrium_lp(game, CeObjective::max_welfare);
        CHECK(satisfies_ce_constraints(game, ce.probs, 1e-7));
        CHECK(ce_holds(game, ce.probs, 1e-7));
        double sum = 0.0;
        for (double p : ce.probs) {
            CHECK(p >= -1e-9);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(expected_welfare(game, ce.probs) >= nash.welfare - 1e-7);
    }
}

TEST_CASE("chicken's max-welfare CE avoids the crash") {
    auto game = chicken();
    auto ce = correlated_equilibrium_lp(game, CeObjective::max_welfare);
    CHECK(ce.probs[game.flat_index({0, 0})] == doctest::Approx(0.0).epsilon(1e-7));
    // the two pure equilibria give welfare 9; correlation does better
    CHECK(expected_welfare(game, ce.probs) > 9.0 + 1e-6);
}

TEST_CASE("iterated play traces are deterministic") {
    auto pd = prisoners_dilemma(5, 3, 1, 0);
    auto tft = tit_for_tat();
    auto allc = all_cooperate();
    auto alld = all_defect();

    auto cc = iterated_play(tft, allc, 10, pd);
    CHECK(cc.payoff_a == 30.0);
    CHECK(cc.payoff_b == 30.0);
    for (auto [a, b] : cc.trace) {
        CHECK(a == 0);
        CHECK(b == 0);
    }

    auto cd = iterated_play(tft, alld, 10, pd);
    CHECK(cd.trace[0] == std::pair<int, int>{0, 1});
    for (size_t r = 1; r < cd.trace.size(); ++r)
        CHECK(cd.trace[r] == std::pair<int, int>{1, 1});
    CHECK(cd.payoff_a == 9.0);   // 0 + 9*1
    CHECK(cd.payoff_b == 14.0);  // 5 + 9*1

    auto dd = iterated_play(alld, alld, 4, pd);
    CHECK(dd.payoff_a == 4.0);
    CHECK(dd.payoff_b == 4.0);
}

TEST_CASE("bounded-automata check: AllC is exploitable, TFT is not") {
    auto pd = prisoners_dilemma(5, 3, 1, 0);

    auto against_allc = bounded_automata_equilibrium(pd, 2, 10, all_cooperate());
    CHECK_FALSE(against_allc.is_equilibrium);
    CHECK(against_allc.candidate_payoff == 30.0);
    CHECK(against_allc.best_deviation_payoff == 50.0);
    CHECK(against_allc.machines_checked == 128);  // 2 * 2^2 * 2^4 two-state machines

    auto against_tft = bounded_automata_equilibrium(pd, 2, 10, tit_for_tat());
    CHECK(against_tft.is_equilibrium);
    CHECK(against_tft.candidate_payoff == 30.0);
    CHECK(against_tft.best_deviation_payoff <= 30.0 + 1e-9);

    CHECK_THROWS_AS(bounded_automata_equilibrium(pd, 3, 10, tit_for_tat()), cap_error);
}

TEST_CASE("machine validation") {
    MooreMachine bad{"bad", 2, {0, 1}, {{0, 1}, {0, 1}}};  // initial out of range
    CHECK_THROWS_AS(bad.validate(), validation_error);
    MooreMachine bad2{"bad2", 0, {0, 2}, {{0, 1}, {0, 1}}};  // output not 0/1
    CHECK_THROWS_AS(bad2.validate(), validation_error);
    CHECK_NOTHROW(tit_for_tat().validate());
}

TEST_CASE("game tensor indexing round-trips") {
    auto sh = stag_hunt();
    for (size_t flat = 0; flat < sh.profile_count(); ++flat)
        CHECK(sh.flat_index(sh.profile_of(flat)) == flat);
    CHECK(sh.payoff({0, 1}, 0) == 1.0);
    CHECK(sh.payoff({0, 1}, 1) == 3.0);
}
