#include "mtlab/rules.hpp"

namespace mtlab::rules {

void PreferenceProfile::validate() const {
    if (effects.size() != actions.size())
        throw validation_error("profile '" + agent + "': one effects row per action required");
    for (const auto& row : effects)
        if (row.size() != preferences.size())
            throw validation_error("profile '" + agent +
                                   "': effects table incomplete over preferences");
}

int PreferenceProfile::action_index(const std::string& action) const {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i] == action) return static_cast<int>(i);
    throw validation_error("profile '" + agent + "' does not cover action '" + action + "'");
}

Verdict gr1_permissible(const std::string& action, const PreferenceProfile& self,
                        double threshold) {
    self.validate();
    const auto& row = self.effects[static_cast<size_t>(self.action_index(action))];
    bool ok = true;
    count_t inspections = 0;
    for (double delta : row) {
        ++inspections;
        if (delta < threshold) ok = false;
    }
    return {ok, inspections};
}

Verdict gr2_permissible(const std::string& action,
                        const std::vector<PreferenceProfile>& others,
                        double threshold) {
    if (others.empty()) throw validation_error("GR2 needs at least one profile");
    size_t p = others.front().preferences.size();
    for (const auto& profile : others) {
        profile.validate();
        if (profile.preferences.size() != p)
            throw validation_error("GR2 requires every agent to have the same number of "
                                   "preferences; '" + profile.agent + "' differs");
    }
    bool ok = true;
    count_t inspections = 0;
    for (const auto& profile : others) {
        const auto& row = profile.effects[static_cast<size_t>(profile.action_index(action))];
        for (double delta : row) {
            ++inspections;
            if (delta < threshold) ok = false;
        }
    }
    return {ok, inspections};
}

ScreenResult gr1_screen(const PreferenceProfile& self, double threshold) {
    ScreenResult out{{}, 0};
    for (const auto& action : self.actions) {
        Verdict v = gr1_permissible(action, self, threshold);
        out.inspections += v.inspections;
        if (v.permissible) out.permissible_actions.push_back(action);
    }
    return out;
}

ScreenResult gr2_screen(const std::vector<PreferenceProfile>& others, double threshold) {
    if (others.empty()) throw validation_error("GR2 needs at least one profile");
    ScreenResult out{{}, 0};
    for (const auto& action : others.front().actions) {
        Verdict v = gr2_permissible(action, others, threshold);
        out.inspections += v.inspections;
        if (v.permissible) out.permissible_actions.push_back(action);
    }
    return out;
}

Duty::Op op_from_string(const std::string& s) {
    if (s == "eq" || s == "==") return Duty::Op::eq;
    if (s == "ne" || s == "!=") return Duty::Op::ne;
    if (s == "lt" || s == "<") return Duty::Op::lt;
    if (s == "le" || s == "<=") return Duty::Op::le;
    if (s == "gt" || s == ">") return Duty::Op::gt;
    if (s == "ge" || s == ">=") return Duty::Op::ge;
    throw validation_error("unknown comparison operator: " + s);
}

namespace {

bool compare(Duty::Op op, double lhs, double rhs) {
    switch (op) {
        case Duty::Op::eq: return lhs == rhs;
        case Duty::Op::ne: return lhs != rhs;
        case Duty::Op::lt: return lhs < rhs;
        case Duty::Op::le: return lhs <= rhs;
        case Duty::Op::gt: return lhs > rhs;
        case Duty::Op::ge: return lhs >= rhs;
    }
    return false;
}

}  // namespace

DutyReport check_duties(const Attributes& action, const Attributes& state,
                        const DutySet& duties) {
    DutyReport report{{}, 0};
    for (const auto& duty : duties.duties) {
        ++report.evaluations;
        const Attributes& subject = duty.subject == Duty::Subject::action ? action : state;
        auto it = subject.find(duty.attribute);
        if (it == subject.end())
            throw validation_error("duty '" + duty.name + "': attribute '" +
                                   duty.attribute + "' undefined on its subject");
        if (compare(duty.op, it->second, duty.value)) report.violated.push_back(duty.name);
    }
    return report;
}

}  // namespace mtlab::rules
