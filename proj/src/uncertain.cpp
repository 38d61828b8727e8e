#include "mtlab/uncertain.hpp"

#include <cmath>
#include <limits>

namespace mtlab::uncertain {

void validate(const RiskyAction& a) {
    if (a.outcomes.empty())
        throw validation_error("action '" + a.label + "' has no outcomes");
    double sum = 0.0;
    for (auto [p, v] : a.outcomes) {
        (void)v;
        if (p < 0.0 || p > 1.0)
            throw validation_error("action '" + a.label + "': probability out of [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance)
        throw validation_error("action '" + a.label + "': probabilities sum to " +
                               std::to_string(sum) + ", not 1");
}

double expected_utility(const RiskyAction& a) {
    validate(a);
    double eu = 0.0;
    for (auto [p, v] : a.outcomes) eu += p * v;
    return eu;
}

Rule rule_from_string(const std::string& s) {
    if (s == "max_eu") return Rule::max_eu;
    if (s == "minmax") return Rule::minmax;
    throw validation_error("unknown decision rule: " + s);
}

Decision decide(const std::vector<RiskyAction>& actions, Rule rule) {
    if (actions.empty()) throw validation_error("no actions to decide between");
    for (const auto& a : actions) validate(a);

    count_t inspections = 0;
    double best = -std::numeric_limits<double>::infinity();
    int best_index = -1;
    for (int i = 0; i < static_cast<int>(actions.size()); ++i) {
        const auto& a = actions[i];
        double score;
        if (rule == Rule::max_eu) {
            score = 0.0;
            for (auto [p, v] : a.outcomes) {
                score += p * v;
                ++inspections;
            }
        } else {
            score = std::numeric_limits<double>::infinity();
            for (auto [p, v] : a.outcomes) {
                (void)p;
                score = std::min(score, v);
                ++inspections;
            }
        }
        if (best_index < 0 || score > best) {
            best = score;
            best_index = i;
        }
    }
    return {actions[best_index].label, best_index, inspections};
}

std::vector<RiskyAction> lottery_triple() {
    return {
        {"a1", {{0.2, -2.0}, {0.8, 4.0}}},
        {"a2", {{0.7, 7.0}, {0.3, -4.0}}},
        {"a3", {{0.6, 3.0}, {0.4, -1.0}}},
    };
}

}  // namespace mtlab::uncertain
