#pragma once

#include <map>
#include <string>
#include <vector>

#include "mtlab/common.hpp"

namespace mtlab::rules {

/// How each action, if done TO this agent, would shift each of the agent's
/// preferences. effects[a][p] is a signed delta; the table is complete over
/// the declared action and preference lists.
struct PreferenceProfile {
    std::string agent;
    std::vector<std::string> actions;
    std::vector<std::string> preferences;
    std::vector<std::vector<double>> effects;

    void validate() const;
    int action_index(const std::string& action) const;
};

struct Verdict {
    bool permissible;
    count_t inspections;
};

/// GR1: permissible iff every own-preference delta for the action clears the
/// threshold (default 0). Inspects all p preferences.
Verdict gr1_permissible(const std::string& action, const PreferenceProfile& self,
                        double threshold = 0.0);

/// GR2: permissible iff no affected agent has a below-threshold delta.
/// Inspects p*o entries. All profiles must declare the same preference count.
Verdict gr2_permissible(const std::string& action,
                        const std::vector<PreferenceProfile>& others,
                        double threshold = 0.0);

/// Screens every action in the profile; n*p (GR1) or n*p*o (GR2) inspections.
struct ScreenResult {
    std::vector<std::string> permissible_actions;
    count_t inspections;
};
ScreenResult gr1_screen(const PreferenceProfile& self, double threshold = 0.0);
ScreenResult gr2_screen(const std::vector<PreferenceProfile>& others,
                        double threshold = 0.0);

/// Attribute bags for duty predicates. Duties are declarative comparisons,
/// not code: a duty is violated when its condition holds.
using Attributes = std::map<std::string, double>;

struct Duty {
    std::string name;
    enum class Subject { action, state } subject;
    std::string attribute;
    enum class Op { eq, ne, lt, le, gt, ge } op;
    double value;
};

struct DutySet {
    std::vector<Duty> duties;
};

struct DutyReport {
    std::vector<std::string> violated;
    count_t evaluations;
};

/// Evaluates every duty; empty violation list means permissible.
/// A duty whose attribute is missing from its subject is a validation error.
DutyReport check_duties(const Attributes& action, const Attributes& state,
                        const DutySet& duties);

Duty::Op op_from_string(const std::string& s);

}  // namespace mtlab::rules
