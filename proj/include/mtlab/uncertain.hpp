#pragma once

#include <string>
#include <vector>

#include "mtlab/common.hpp"

namespace mtlab::uncertain {

/// One candidate action with a finite outcome lottery.
struct RiskyAction {
    std::string label;
    std::vector<std::pair<double, double>> outcomes;  // (probability, value)
};

inline constexpr double kProbabilityTolerance = 1e-9;

/// Throws validation_error unless probabilities are in [0,1] and sum to 1
/// within kProbabilityTolerance. Out-of-tolerance inputs are rejected,
/// never renormalized.
void validate(const RiskyAction& a);

/// Sum of p_i * v_i.
double expected_utility(const RiskyAction& a);

enum class Rule { max_eu, minmax };

Rule rule_from_string(const std::string& s);

struct Decision {
    std::string label;
    int index;
    count_t inspections;  // exactly n*o outcome-value inspections
};

/// max_eu: argmax of expected utility. minmax: argmax of the worst outcome.
/// Ties go to the first action.
Decision decide(const std::vector<RiskyAction>& actions, Rule rule);

/// The three-action lottery used throughout the decision-rule examples:
/// a1 = {0.2 -> -2, 0.8 -> 4}, a2 = {0.7 -> 7, 0.3 -> -4}, a3 = {0.6 -> 3, 0.4 -> -1}.
std::vector<RiskyAction> lottery_triple();

}  // namespace mtlab::uncertain
