#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mtlab/common.hpp"

namespace mtlab::planner {

/// An action plan: distinct action indices. Unordered plans are kept in
/// canonical ascending order so that equal sets compare equal.
struct Plan {
    std::vector<int> steps;
    bool ordered = false;

    Plan() = default;
    Plan(std::vector<int> s, bool ord);

    /// Comma-joined index sequence, e.g. "0,2,3".
    std::string key() const;

    bool operator==(const Plan&) const = default;
};

/// Black-box moral value function over plans with a monotone call counter.
class MeteredOracle {
public:
    using ValueFn = std::function<double(const Plan&)>;

    explicit MeteredOracle(ValueFn fn) : fn_(std::move(fn)) {}

    double value(const Plan& plan) const {
        ++calls_;
        return fn_(plan);
    }

    count_t calls() const { return calls_; }
    void reset() { calls_ = 0; }

private:
    ValueFn fn_;
    mutable count_t calls_ = 0;
};

struct ActionEnvironment {
    std::vector<std::string> actions;
    MeteredOracle oracle;

    ActionEnvironment(std::vector<std::string> acts, MeteredOracle::ValueFn fn);

    int size() const { return static_cast<int>(actions.size()); }
};

/// Per-value oracles for C2; values combine by addition only.
struct ValueProfile {
    std::vector<MeteredOracle> value_fns;
};

enum class Mode { c1, c2, c3u, c3o, c4u, c4o };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);

struct SingleResult {
    int best_index;
    double best_value;
    count_t calls;
};

struct PlanResult {
    Plan best_plan;
    double best_value;
    count_t calls;
};

/// Best single action. Exactly n oracle calls; ties go to the lowest index.
SingleResult solve_c1(const ActionEnvironment& env);

/// Best single action under an additive value profile. Exactly n*i calls.
SingleResult solve_c2(const ActionEnvironment& env, const ValueProfile& profile);

/// Best plan of up to two distinct actions.
/// Unordered: n(n+1)/2 calls. Ordered: n^2 calls.
PlanResult solve_c3(const ActionEnvironment& env, bool ordered);

/// Best plan of up to n distinct actions.
/// Unordered: 2^n - 1 calls (subsets in binary-counter order).
/// Ordered: floor(e*n!) - 1 calls (subsets, then lexicographic permutations).
/// Refuses above the cap (default 20 unordered, 10 ordered).
PlanResult solve_c4(const ActionEnvironment& env, bool ordered);

inline constexpr int kDefaultUnorderedCap = 20;
inline constexpr int kDefaultOrderedCap = 10;

/// Closed-form oracle-call count for each solver. `i` is only read in c2 mode.
count_t predicted_calls(Mode mode, int n, int i = 1);

}  // namespace mtlab::planner
