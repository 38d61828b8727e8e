#include "mtlab/seqdec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mtlab::seqdec {

namespace {

constexpr double kRowSumTol = 1e-9;

bool absorbing_zero_reward_state(const MarkovDecisionProcess& mdp) {
    for (int s = 0; s < mdp.n_states(); ++s) {
        bool ok = true;
        for (int a = 0; a < mdp.n_actions() && ok; ++a)
            ok = std::abs(mdp.transition[static_cast<size_t>(a)](s, s) - 1.0) < kRowSumTol &&
                 std::abs(mdp.reward[static_cast<size_t>(a)](s, s)) < kRowSumTol;
        if (ok) return true;
    }
    return false;
}

// Expected immediate reward per state for one action.
Eigen::VectorXd immediate_reward(const MarkovDecisionProcess& mdp, int a) {
    return mdp.transition[static_cast<size_t>(a)]
        .cwiseProduct(mdp.reward[static_cast<size_t>(a)])
        .rowwise()
        .sum();
}

}  // namespace

void MarkovDecisionProcess::validate() const {
    if (states.empty() || actions.empty())
        throw validation_error("MDP needs at least one state and one action");
    if (transition.size() != actions.size() || reward.size() != actions.size())
        throw validation_error("MDP needs one transition and reward table per action");
    if (!(discount >= 0.0 && discount <= 1.0))
        throw validation_error("discount must be in [0, 1]");
    const long n = n_states();
    for (size_t a = 0; a < actions.size(); ++a) {
        if (transition[a].rows() != n || transition[a].cols() != n ||
            reward[a].rows() != n || reward[a].cols() != n)
            throw validation_error("transition/reward tables must be |S| x |S|");
        if ((transition[a].array() < -kRowSumTol).any())
            throw validation_error("negative transition probability");
        for (long s = 0; s < n; ++s)
            if (std::abs(transition[a].row(s).sum() - 1.0) > kRowSumTol)
                throw validation_error("transition row for state " + states[static_cast<size_t>(s)] +
                                       ", action " + actions[a] + " does not sum to 1");
    }
}

int contraction_iteration_bound(const MarkovDecisionProcess& mdp, double tol) {
    double r_max = 0.0;
    for (size_t a = 0; a < mdp.actions.size(); ++a)
        r_max = std::max(r_max, mdp.reward[a].cwiseAbs().maxCoeff());
    if (r_max == 0.0) return 2;
    double gamma = mdp.discount;
    if (gamma <= 0.0) return 2;
    double k = std::log(tol * (1.0 - gamma) / r_max) / std::log(gamma);
    return static_cast<int>(std::ceil(std::max(0.0, k))) + 1;
}

ValueIterationResult value_iteration(const MarkovDecisionProcess& mdp, double tol) {
    mdp.validate();
    if (mdp.discount >= 1.0 && !absorbing_zero_reward_state(mdp))
        throw validation_error(
            "value iteration refused: discount 1 with no terminal state diverges");

    const int n = mdp.n_states();
    const int na = mdp.n_actions();
    std::vector<Eigen::VectorXd> r(static_cast<size_t>(na));
    for (int a = 0; a < na; ++a) r[static_cast<size_t>(a)] = immediate_reward(mdp, a);

    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    Policy greedy;
    greedy.action.assign(static_cast<size_t>(n), 0);
    int iterations = 0;
    const int max_sweeps = 1000000;
    while (true) {
        ++iterations;
        Eigen::VectorXd next = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
        for (int a = 0; a < na; ++a) {
            Eigen::VectorXd q =
                r[static_cast<size_t>(a)] + mdp.discount * (mdp.transition[static_cast<size_t>(a)] * v);
            for (int s = 0; s < n; ++s) {
                if (q(s) > next(s)) {
                    next(s) = q(s);
                    greedy.action[static_cast<size_t>(s)] = a;
                }
            }
        }
        double diff = (next - v).cwiseAbs().maxCoeff();
        v = std::move(next);
        if (diff < tol) break;
        if (iterations >= max_sweeps)
            throw validation_error("value iteration failed to converge");
    }
    return {v, greedy, iterations};
}

Eigen::VectorXd evaluate_policy(const MarkovDecisionProcess& mdp, const Policy& policy,
                                double tol) {
    mdp.validate();
    if (policy.action.size() != static_cast<size_t>(mdp.n_states()))
        throw validation_error("policy must be total on the state space");
    if (mdp.discount >= 1.0 && !absorbing_zero_reward_state(mdp))
        throw validation_error(
            "policy evaluation refused: discount 1 with no terminal state diverges");

    const int n = mdp.n_states();
    Eigen::MatrixXd P(n, n);
    Eigen::VectorXd r(n);
    for (int s = 0; s < n; ++s) {
        int a = policy.action[static_cast<size_t>(s)];
        if (a < 0 || a >= mdp.n_actions())
            throw validation_error("policy action out of range");
        P.row(s) = mdp.transition[static_cast<size_t>(a)].row(s);
        r(s) = immediate_reward(mdp, a)(s);
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int sweep = 0; sweep < 1000000; ++sweep) {
        Eigen::VectorXd next = r + mdp.discount * (P * v);
        double diff = (next - v).cwiseAbs().maxCoeff();
        v = std::move(next);
        if (diff < tol) return v;
    }
    throw validation_error("policy evaluation failed to converge");
}

void PartiallyObservableMDP::validate() const {
    mdp.validate();
    if (observations.empty()) throw validation_error("POMDP needs observations");
    if (observation.size() != mdp.actions.size())
        throw validation_error("POMDP needs one observation table per action");
    const long n = mdp.n_states();
    const long no = n_observations();
    for (size_t a = 0; a < observation.size(); ++a) {
        if (observation[a].rows() != n || observation[a].cols() != no)
            throw validation_error("observation tables must be |S| x |Omega|");
        for (long s = 0; s < n; ++s)
            if (std::abs(observation[a].row(s).sum() - 1.0) > kRowSumTol)
                throw validation_error("observation row does not sum to 1");
    }
}

count_t policy_tree_count(int n_actions, int n_observations, int horizon) {
    if (n_actions < 1 || n_observations < 1 || horizon < 1)
        throw validation_error("tree count needs |A|, |Omega|, T >= 1");
    // nodes per tree: 1 + |O| + ... + |O|^(T-1)
    count_t nodes = 0, layer = 1;
    for (int t = 0; t < horizon; ++t) {
        if (nodes > std::numeric_limits<count_t>::max() - layer)
            throw overflow_error("policy tree count overflows");
        nodes += layer;
        if (layer > std::numeric_limits<count_t>::max() / static_cast<count_t>(n_observations))
            throw overflow_error("policy tree count overflows");
        layer *= static_cast<count_t>(n_observations);
    }
    count_t trees = 1;
    for (count_t i = 0; i < nodes; ++i) {
        if (trees > std::numeric_limits<count_t>::max() / static_cast<count_t>(n_actions))
            throw overflow_error("policy tree count overflows");
        trees *= static_cast<count_t>(n_actions);
    }
    return trees;
}

PomdpResult pomdp_finite_horizon(const PartiallyObservableMDP& pomdp,
                                 const BeliefState& initial, int horizon) {
    pomdp.validate();
    const int n = pomdp.mdp.n_states();
    if (initial.size() != n) throw validation_error("belief dimension mismatch");
    if ((initial.array() < -kRowSumTol).any() ||
        std::abs(initial.sum() - 1.0) > kRowSumTol)
        throw validation_error("belief must be a probability vector");

    const int na = pomdp.mdp.n_actions();
    const int no = pomdp.n_observations();
    const count_t cap = cap_with_override(1000000);
    count_t predicted = policy_tree_count(na, no, horizon);
    if (predicted > cap)
        throw cap_error("POMDP enumeration refused: " + std::to_string(predicted) +
                            " policy trees exceed cap " + std::to_string(cap),
                        predicted);

    std::vector<Eigen::VectorXd> r(static_cast<size_t>(na));
    for (int a = 0; a < na; ++a) r[static_cast<size_t>(a)] = immediate_reward(pomdp.mdp, a);

    // Per-state value vectors of all depth-t trees, built bottom-up. The
    // final layer holds one vector per depth-T tree.
    std::vector<Eigen::VectorXd> layer;
    for (int a = 0; a < na; ++a) layer.push_back(r[static_cast<size_t>(a)]);
    for (int depth = 2; depth <= horizon; ++depth) {
        std::vector<Eigen::VectorXd> next;
        const size_t prev_count = layer.size();
        size_t tuples = 1;
        for (int w = 0; w < no; ++w) tuples *= prev_count;
        for (int a = 0; a < na; ++a) {
            const auto& P = pomdp.mdp.transition[static_cast<size_t>(a)];
            const auto& O = pomdp.observation[static_cast<size_t>(a)];
            for (size_t tuple = 0; tuple < tuples; ++tuple) {
                Eigen::VectorXd cont = Eigen::VectorXd::Zero(n);
                size_t code = tuple;
                for (int w = 0; w < no; ++w) {
                    const Eigen::VectorXd& sub = layer[code % prev_count];
                    code /= prev_count;
                    cont += O.col(w).cwiseProduct(sub);
                }
                next.push_back(r[static_cast<size_t>(a)] +
                               pomdp.mdp.discount * (P * cont));
            }
        }
        layer = std::move(next);
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& value : layer) best = std::max(best, initial.dot(value));
    return {best, static_cast<count_t>(layer.size())};
}

void RestlessBanditInstance::validate() const {
    if (arms.empty()) throw validation_error("bandit needs at least one arm");
    for (const auto& arm : arms) {
        for (int v : arm.next_if_played)
            if (v != 0 && v != 1) throw validation_error("arm transitions must be 0/1");
        for (int v : arm.next_if_idle)
            if (v != 0 && v != 1) throw validation_error("arm transitions must be 0/1");
        if (arm.initial_state != 0 && arm.initial_state != 1)
            throw validation_error("arm state must be 0/1");
    }
}

BanditResult restless_bandit_brute(const RestlessBanditInstance& instance, int m,
                                   int horizon) {
    instance.validate();
    const int n = static_cast<int>(instance.arms.size());
    if (m < 1 || m > n) throw validation_error("must play between 1 and n arms per step");
    if (horizon < 1) throw validation_error("horizon must be >= 1");

    // all size-m subsets of arms
    std::vector<std::vector<int>> choices;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == m) {
            choices.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (m - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);

    count_t total = 1;
    const count_t cap = cap_with_override(1000000);
    const count_t per_step = static_cast<count_t>(choices.size());
    bool saturated = false;
    for (int t = 0; t < horizon; ++t) {
        if (total > std::numeric_limits<count_t>::max() / per_step) {
            saturated = true;
            break;
        }
        total *= per_step;
    }
    if (saturated || total > cap)
        throw cap_error("restless bandit scan refused: " +
                            (saturated ? std::string("over 2^64")
                                       : std::to_string(total)) +
                            " sequences exceed cap " + std::to_string(cap),
                        saturated ? std::numeric_limits<count_t>::max() : total);

    BanditResult best{{}, -std::numeric_limits<double>::infinity(), 0};
    std::vector<size_t> pick(static_cast<size_t>(horizon), 0);
    while (true) {
        ++best.sequences_scanned;
        std::vector<int> state(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) state[static_cast<size_t>(i)] = instance.arms[static_cast<size_t>(i)].initial_state;
        double reward = 0.0;
        for (int t = 0; t < horizon; ++t) {
            const auto& played = choices[pick[static_cast<size_t>(t)]];
            std::vector<bool> active(static_cast<size_t>(n), false);
            for (int arm : played) {
                active[static_cast<size_t>(arm)] = true;
                reward += instance.arms[static_cast<size_t>(arm)]
                              .reward[static_cast<size_t>(state[static_cast<size_t>(arm)])];
            }
            for (int i = 0; i < n; ++i) {
                const auto& arm = instance.arms[static_cast<size_t>(i)];
                int s = state[static_cast<size_t>(i)];
                state[static_cast<size_t>(i)] = active[static_cast<size_t>(i)]
                                                    ? arm.next_if_played[static_cast<size_t>(s)]
                                                    : arm.next_if_idle[static_cast<size_t>(s)];
            }
        }
        if (reward > best.total_reward) {
            best.total_reward = reward;
            best.activation_sequence.clear();
            for (int t = 0; t < horizon; ++t)
                best.activation_sequence.push_back(choices[pick[static_cast<size_t>(t)]]);
        }
        // advance the mixed-radix sequence counter
        int t = horizon - 1;
        while (t >= 0) {
            if (++pick[static_cast<size_t>(t)] < choices.size()) break;
            pick[static_cast<size_t>(t)] = 0;
            --t;
        }
        if (t < 0) break;
    }
    return best;
}

}  // namespace mtlab::seqdec
