#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "mtlab/common.hpp"

namespace mtlab::seqdec {

/// Finite MDP. transition[a].row(s) is P(s' | s, a); reward[a](s, s') is
/// R(s, a, s'), the most general transition-dependent reward form.
struct MarkovDecisionProcess {
    std::vector<std::string> states;
    std::vector<std::string> actions;
    std::vector<Eigen::MatrixXd> transition;
    std::vector<Eigen::MatrixXd> reward;
    double discount = 0.9;

    int n_states() const { return static_cast<int>(states.size()); }
    int n_actions() const { return static_cast<int>(actions.size()); }
    void validate() const;
};

/// Stationary deterministic policy: one action index per state.
struct Policy {
    std::vector<int> action;
};

struct ValueIterationResult {
    Eigen::VectorXd values;
    Policy greedy;
    int iterations;
};

inline constexpr double kDefaultTol = 1e-6;

/// Synchronous value-iteration sweeps until the sup-norm difference between
/// sweeps drops below tol. Refuses discount 1 unless an absorbing zero-reward
/// state exists.
ValueIterationResult value_iteration(const MarkovDecisionProcess& mdp,
                                     double tol = kDefaultTol);

/// Fixed point of the policy's Bellman operator, to within tol.
Eigen::VectorXd evaluate_policy(const MarkovDecisionProcess& mdp, const Policy& policy,
                                double tol = kDefaultTol);

/// Sweep count guaranteed by the discount contraction for value_iteration.
int contraction_iteration_bound(const MarkovDecisionProcess& mdp, double tol);

/// POMDP: the MDP plus observations. observation[a](s', w) is
/// O(w | s', a), the chance of observing w after doing a and landing in s'.
struct PartiallyObservableMDP {
    MarkovDecisionProcess mdp;
    std::vector<std::string> observations;
    std::vector<Eigen::MatrixXd> observation;

    int n_observations() const { return static_cast<int>(observations.size()); }
    void validate() const;
};

using BeliefState = Eigen::VectorXd;

/// Number of depth-T policy trees: |A|^((|O|^T - 1)/(|O| - 1)).
count_t policy_tree_count(int n_actions, int n_observations, int horizon);

struct PomdpResult {
    double value;
    count_t trees_evaluated;
};

/// Exact finite-horizon optimum by evaluating every depth-T policy tree from
/// the given belief. Refuses when the tree count exceeds the cap (1e6).
PomdpResult pomdp_finite_horizon(const PartiallyObservableMDP& pomdp,
                                 const BeliefState& initial, int horizon);

/// Restless bandit arm with two states and deterministic 0/1 dynamics. The
/// arm moves through next_if_played when activated and next_if_idle when not;
/// an activated arm pays reward[state] for the state it is played in.
struct RestlessArm {
    std::array<int, 2> next_if_played;
    std::array<int, 2> next_if_idle;
    std::array<double, 2> reward;
    int initial_state = 0;
};

struct RestlessBanditInstance {
    std::vector<RestlessArm> arms;
    void validate() const;
};

struct BanditResult {
    std::vector<std::vector<int>> activation_sequence;  // arms played per step
    double total_reward;
    count_t sequences_scanned;
};

/// Exhaustive scan over all length-T activation sequences playing exactly m
/// arms per step. Refuses when C(n,m)^T exceeds 1e6.
BanditResult restless_bandit_brute(const RestlessBanditInstance& instance, int m,
                                   int horizon);

}  // namespace mtlab::seqdec
