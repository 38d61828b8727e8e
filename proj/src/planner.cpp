#include "mtlab/planner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace mtlab::planner {

Plan::Plan(std::vector<int> s, bool ord) : steps(std::move(s)), ordered(ord) {
    if (steps.empty()) throw validation_error("plan must be non-empty");
    std::set<int> uniq(steps.begin(), steps.end());
    if (uniq.size() != steps.size())
        throw validation_error("plan actions must be distinct");
    if (!ordered) std::sort(steps.begin(), steps.end());
}

std::string Plan::key() const {
    std::ostringstream out;
    for (size_t i = 0; i < steps.size(); ++i) {
        if (i) out << ',';
        out << steps[i];
    }
    return out.str();
}

ActionEnvironment::ActionEnvironment(std::vector<std::string> acts,
                                     MeteredOracle::ValueFn fn)
    : actions(std::move(acts)), oracle(std::move(fn)) {
    if (actions.empty()) throw validation_error("environment needs at least one action");
    std::set<std::string> uniq(actions.begin(), actions.end());
    if (uniq.size() != actions.size())
        throw validation_error("action identifiers must be unique");
}

Mode mode_from_string(const std::string& s) {
    if (s == "c1") return Mode::c1;
    if (s == "c2") return Mode::c2;
    if (s == "c3u") return Mode::c3u;
    if (s == "c3o") return Mode::c3o;
    if (s == "c4u") return Mode::c4u;
    if (s == "c4o") return Mode::c4o;
    throw validation_error("unknown solver mode: " + s);
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::c1: return "c1";
        case Mode::c2: return "c2";
        case Mode::c3u: return "c3u";
        case Mode::c3o: return "c3o";
        case Mode::c4u: return "c4u";
        case Mode::c4o: return "c4o";
    }
    return "?";
}

namespace {

// Algorithm-1 style scan, except the running best starts at -infinity so
// all-negative environments still return the true argmax.
struct Best {
    double value = -std::numeric_limits<double>::infinity();
    bool any = false;

    // Strict > keeps the first maximizer.
    bool improves(double v) const { return !any || v > value; }
};

count_t checked_mul(count_t a, count_t b, const char* what) {
    if (a != 0 && b > std::numeric_limits<count_t>::max() / a)
        throw overflow_error(std::string("call count overflows in ") + what);
    return a * b;
}

// floor(e * n!) - 1 == sum over k=1..n of n!/(n-k)!  (nonempty-subset permutations)
count_t permutation_count(int n) {
    count_t total = 0;
    count_t falling = 1;
    for (int k = 1; k <= n; ++k) {
        falling = checked_mul(falling, static_cast<count_t>(n - k + 1), "c4o count");
        if (total > std::numeric_limits<count_t>::max() - falling)
            throw overflow_error("call count overflows in c4o count");
        total += falling;
    }
    return total;
}

}  // namespace

SingleResult solve_c1(const ActionEnvironment& env) {
    Best best;
    int best_index = 0;
    for (int a = 0; a < env.size(); ++a) {
        double v = env.oracle.value(Plan({a}, false));
        if (best.improves(v)) {
            best.value = v;
            best.any = true;
            best_index = a;
        }
    }
    return {best_index, best.value, env.oracle.calls()};
}

SingleResult solve_c2(const ActionEnvironment& env, const ValueProfile& profile) {
    if (profile.value_fns.empty())
        throw validation_error("value profile needs at least one value function");
    Best best;
    int best_index = 0;
    count_t calls = 0;
    for (int a = 0; a < env.size(); ++a) {
        Plan plan({a}, false);
        double total = 0.0;
        for (const auto& vf : profile.value_fns) total += vf.value(plan);
        if (best.improves(total)) {
            best.value = total;
            best.any = true;
            best_index = a;
        }
    }
    for (const auto& vf : profile.value_fns) calls += vf.calls();
    return {best_index, best.value, calls};
}

PlanResult solve_c3(const ActionEnvironment& env, bool ordered) {
    Best best;
    Plan best_plan({0}, ordered);
    auto consider = [&](Plan plan) {
        double v = env.oracle.value(plan);
        if (best.improves(v)) {
            best.value = v;
            best.any = true;
            best_plan = std::move(plan);
        }
    };
    for (int a = 0; a < env.size(); ++a) consider(Plan({a}, ordered));
    for (int a = 0; a < env.size(); ++a) {
        for (int b = ordered ? 0 : a + 1; b < env.size(); ++b) {
            if (b == a) continue;
            consider(Plan({a, b}, ordered));
        }
    }
    return {best_plan, best.value, env.oracle.calls()};
}

PlanResult solve_c4(const ActionEnvironment& env, bool ordered) {
    const int n = env.size();
    const count_t cap = cap_with_override(
        ordered ? kDefaultOrderedCap : kDefaultUnorderedCap);
    if (static_cast<count_t>(n) > cap) {
        count_t predicted = predicted_calls(ordered ? Mode::c4o : Mode::c4u, n);
        throw cap_error("solve_c4 refused: n=" + std::to_string(n) +
                            " exceeds cap " + std::to_string(cap) + "; would need " +
                            std::to_string(predicted) + " oracle calls",
                        predicted);
    }

    Best best;
    Plan best_plan({0}, ordered);
    auto consider = [&](Plan plan) {
        double v = env.oracle.value(plan);
        if (best.improves(v)) {
            best.value = v;
            best.any = true;
            best_plan = std::move(plan);
        }
    };

    // Subsets in binary-counter order over index bitmasks.
    const count_t limit = count_t{1} << n;
    for (count_t mask = 1; mask < limit; ++mask) {
        std::vector<int> members;
        for (int a = 0; a < n; ++a)
            if (mask & (count_t{1} << a)) members.push_back(a);
        if (!ordered) {
            consider(Plan(members, false));
        } else {
            // members starts sorted, so this walks permutations lexicographically
            do {
                consider(Plan(members, true));
            } while (std::next_permutation(members.begin(), members.end()));
        }
    }
    return {best_plan, best.value, env.oracle.calls()};
}

count_t predicted_calls(Mode mode, int n, int i) {
    if (n < 1) throw validation_error("n must be >= 1");
    const count_t un = static_cast<count_t>(n);
    switch (mode) {
        case Mode::c1: return un;
        case Mode::c2:
            if (i < 1) throw validation_error("i must be >= 1");
            return checked_mul(un, static_cast<count_t>(i), "c2 count");
        case Mode::c3u: return un * (un + 1) / 2;
        case Mode::c3o: return checked_mul(un, un, "c3o count");
        case Mode::c4u:
            if (n >= 64) throw overflow_error("call count overflows in c4u count");
            return (count_t{1} << n) - 1;
        case Mode::c4o: return permutation_count(n);
    }
    throw validation_error("unknown mode");
}

}  // namespace mtlab::planner
