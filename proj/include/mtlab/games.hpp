#pragma once

#include <array>
#include <string>
#include <vector>

#include "mtlab/common.hpp"

namespace mtlab::games {

/// Finite normal-form game. A pure profile is one strategy index per player;
/// its flat tensor index is mixed-radix with player 0 varying slowest.
struct NormalFormGame {
    std::vector<std::vector<std::string>> strategy_labels;  // per player
    std::vector<std::vector<double>> payoffs;  // payoffs[flat][player]

    int players() const { return static_cast<int>(strategy_labels.size()); }
    int strategies(int player) const {
        return static_cast<int>(strategy_labels[static_cast<size_t>(player)].size());
    }
    size_t profile_count() const;
    size_t flat_index(const std::vector<int>& profile) const;
    std::vector<int> profile_of(size_t flat) const;
    double payoff(const std::vector<int>& profile, int player) const;

    void validate() const;
};

/// Canonical Prisoner's Dilemma with strategies {C, D} and T > R > P > S.
NormalFormGame prisoners_dilemma(double T, double R, double P, double S);

NormalFormGame matching_pennies();
NormalFormGame stag_hunt();   // diagonal (4,4) and (2,2), off-diagonal 3/1
NormalFormGame chicken();     // mutual-dare crash at (0,0)

struct PureNashResult {
    std::vector<std::vector<int>> equilibria;
    count_t deviation_checks;
};

/// All pure profiles with no profitable unilateral deviation.
PureNashResult pure_nash(const NormalFormGame& game);

struct MixedProfile {
    std::vector<std::vector<double>> probs;  // per player, over own strategies
};

struct SupportEnumResult {
    std::vector<MixedProfile> equilibria;
    bool degenerate = false;       // some indifference system was singular
    count_t supports_skipped = 0;  // singular systems passed over
};

inline constexpr double kEqTolerance = 1e-8;

/// Two-player Nash equilibria by support enumeration over equal-size
/// supports, merged with the pure equilibria. Strategy counts capped at 6.
SupportEnumResult support_enumeration_2p(const NormalFormGame& game);

struct WelfareResult {
    MixedProfile profile;
    double welfare;
};

/// Among all equilibria found by support enumeration, one maximizing the sum
/// of expected payoffs (first in enumeration order on ties).
WelfareResult max_welfare_nash(const NormalFormGame& game);

struct CorrelatedDistribution {
    std::vector<double> probs;  // one per pure profile, flat tensor order
};

enum class CeObjective { feasible, max_welfare };

/// A correlated equilibrium by linear programming over the incentive
/// constraints. max_welfare maximizes the expected payoff sum.
CorrelatedDistribution correlated_equilibrium_lp(const NormalFormGame& game,
                                                 CeObjective objective);

/// Checks every CE incentive constraint for an arbitrary distribution.
bool satisfies_ce_constraints(const NormalFormGame& game,
                              const std::vector<double>& distribution,
                              double tol = kEqTolerance);

/// Expected welfare (payoff sum) of a distribution over pure profiles.
double expected_welfare(const NormalFormGame& game, const std::vector<double>& dist);

/// Product distribution over pure profiles induced by a mixed profile.
std::vector<double> product_distribution(const NormalFormGame& game,
                                         const MixedProfile& mixed);

/// Bounded-memory repeated-game strategy: output depends on the current
/// state; the next state depends on the opponent's observed action.
struct MooreMachine {
    std::string name;
    int initial = 0;
    std::vector<int> output;                    // per state: 0 = C, 1 = D
    std::vector<std::array<int, 2>> transition;  // [state][opponent action]

    int states() const { return static_cast<int>(output.size()); }
    void validate() const;
};

MooreMachine tit_for_tat();
MooreMachine all_cooperate();
MooreMachine all_defect();

struct PlayResult {
    double payoff_a;
    double payoff_b;
    std::vector<std::pair<int, int>> trace;  // actions per round
};

/// Deterministic n-round play of a 2x2 game between two machines.
PlayResult iterated_play(const MooreMachine& a, const MooreMachine& b, int rounds,
                         const NormalFormGame& game);

struct AutomataEquilibriumResult {
    bool is_equilibrium;
    double candidate_payoff;       // candidate vs itself
    double best_deviation_payoff;  // best <= s-state machine vs candidate
    count_t machines_checked;
};

/// Checks whether any machine with at most s states earns strictly more than
/// the candidate when played against the candidate for n rounds. s is capped
/// at 2 (full enumeration: 128 machines).
AutomataEquilibriumResult bounded_automata_equilibrium(const NormalFormGame& game,
                                                       int s, int rounds,
                                                       const MooreMachine& candidate);

/// Best payoff achievable by the given player against a fixed opponent
/// strategy in a one-shot game (the self-interest maximizer, S3).
int one_shot_best_response(const NormalFormGame& game, int player,
                           const std::vector<int>& opponent_profile);

}  // namespace mtlab::games
