#include "mtlab/bayesnet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace mtlab::bayes {

int BayesNet::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (variables[i] == name) return i;
    throw validation_error("unknown variable: " + name);
}

void BayesNet::validate() const {
    const int n = size();
    if (parents.size() != variables.size() || cpts.size() != variables.size())
        throw validation_error("parents/cpts size must match variable count");
    for (int i = 0; i < n; ++i) {
        for (int p : parents[i])
            if (p < 0 || p >= n)
                throw validation_error("parent index out of range for " + variables[i]);
        size_t rows = size_t{1} << parents[i].size();
        if (cpts[i].size() != rows)
            throw validation_error("CPT for " + variables[i] + " needs " +
                                   std::to_string(rows) + " rows");
        for (double p : cpts[i])
            if (!(p >= 0.0 && p <= 1.0))
                throw validation_error("CPT entry out of [0,1] for " + variables[i]);
    }
    // topological check
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::function<void(int)> visit = [&](int v) {
        if (state[v] == 1) throw validation_error("parent graph contains a cycle");
        if (state[v] == 2) return;
        state[v] = 1;
        for (int p : parents[v]) visit(p);
        state[v] = 2;
    };
    for (int i = 0; i < n; ++i) visit(i);
}

namespace {

std::vector<int> to_assignment(const BayesNet& net, const Evidence& ev) {
    std::vector<int> assign(net.size(), -1);
    for (const auto& [name, value] : ev) assign[net.index_of(name)] = value ? 1 : 0;
    return assign;
}

double cpt_lookup(const BayesNet& net, int var, const std::vector<int>& assign) {
    size_t row = 0;
    for (size_t j = 0; j < net.parents[var].size(); ++j)
        if (assign[net.parents[var][j]] == 1) row |= size_t{1} << j;
    double p_true = net.cpts[var][row];
    return assign[var] == 1 ? p_true : 1.0 - p_true;
}

// Restricts a CPT factor to the evidence: evidence variables leave the scope.
Factor cpt_factor(const BayesNet& net, int var, const std::vector<int>& assign) {
    std::vector<int> family = net.parents[var];
    family.push_back(var);
    std::vector<int> scope;
    for (int v : family)
        if (assign[v] < 0) scope.push_back(v);
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

    Factor f;
    f.scope = scope;
    f.table.resize(size_t{1} << scope.size());
    std::vector<int> local = assign;
    for (size_t idx = 0; idx < f.table.size(); ++idx) {
        for (size_t k = 0; k < scope.size(); ++k)
            local[scope[k]] = (idx >> k) & 1;
        f.table[idx] = cpt_lookup(net, var, local);
    }
    return f;
}

Factor multiply(const Factor& a, const Factor& b, count_t& mults) {
    ++mults;
    std::vector<int> scope;
    std::set_union(a.scope.begin(), a.scope.end(), b.scope.begin(), b.scope.end(),
                   std::back_inserter(scope));
    Factor out;
    out.scope = scope;
    out.table.assign(size_t{1} << scope.size(), 0.0);

    auto project = [&](const Factor& f, size_t idx) {
        size_t sub = 0;
        for (size_t k = 0; k < f.scope.size(); ++k) {
            size_t pos = std::lower_bound(scope.begin(), scope.end(), f.scope[k]) -
                         scope.begin();
            if ((idx >> pos) & 1) sub |= size_t{1} << k;
        }
        return sub;
    };
    for (size_t idx = 0; idx < out.table.size(); ++idx)
        out.table[idx] = a.table[project(a, idx)] * b.table[project(b, idx)];
    return out;
}

enum class Reduce { sum, max };

Factor eliminate_var(const Factor& f, int var, Reduce how) {
    size_t pos = std::lower_bound(f.scope.begin(), f.scope.end(), var) -
                 f.scope.begin();
    Factor out;
    out.scope = f.scope;
    out.scope.erase(out.scope.begin() + static_cast<long>(pos));
    out.table.assign(size_t{1} << out.scope.size(), 0.0);
    for (size_t idx = 0; idx < out.table.size(); ++idx) {
        size_t lo = idx & ((size_t{1} << pos) - 1);
        size_t hi = (idx >> pos) << (pos + 1);
        double v0 = f.table[hi | lo];
        double v1 = f.table[hi | (size_t{1} << pos) | lo];
        out.table[idx] = how == Reduce::sum ? v0 + v1 : std::max(v0, v1);
    }
    return out;
}

// Min-degree heuristic over the factor interaction graph, lowest index first.
std::vector<int> min_degree_order(const std::vector<Factor>& factors,
                                  const std::set<int>& to_eliminate) {
    std::map<int, std::set<int>> adj;
    for (int v : to_eliminate) adj[v];
    for (const auto& f : factors)
        for (int a : f.scope)
            for (int b : f.scope)
                if (a != b && to_eliminate.count(a)) adj[a].insert(b);

    std::vector<int> order;
    std::set<int> remaining = to_eliminate;
    while (!remaining.empty()) {
        int best = -1;
        size_t best_deg = 0;
        for (int v : remaining) {
            size_t deg = adj[v].size();
            if (best < 0 || deg < best_deg || (deg == best_deg && v < best)) {
                best = v;
                best_deg = deg;
            }
        }
        order.push_back(best);
        remaining.erase(best);
        // connect neighbors, drop the eliminated variable
        for (int a : adj[best])
            for (int b : adj[best])
                if (a != b && remaining.count(a)) adj[a].insert(b);
        for (auto& [v, nb] : adj) nb.erase(best);
    }
    return order;
}

// Eliminates `order` from the factor set, then multiplies what is left into a
// single factor whose scope is sorted ascending.
Factor run_elimination(std::vector<Factor> factors, const std::vector<int>& order,
                       Reduce how, count_t& mults) {
    for (int var : order) {
        Factor combined{{}, {1.0}};
        std::vector<Factor> rest;
        bool any = false;
        for (auto& f : factors) {
            if (std::binary_search(f.scope.begin(), f.scope.end(), var)) {
                combined = any ? multiply(combined, f, mults) : std::move(f);
                any = true;
            } else {
                rest.push_back(std::move(f));
            }
        }
        if (any) rest.push_back(eliminate_var(combined, var, how));
        factors = std::move(rest);
    }
    Factor result{{}, {1.0}};
    for (auto& f : factors) result = multiply(result, f, mults);
    return result;
}

QueryResult finish_query(const BayesNet& net, const Factor& joint,
                         const std::vector<std::string>& targets, count_t mults) {
    double total = 0.0;
    for (double v : joint.table) total += v;
    if (total <= 0.0)
        throw zero_evidence_error("evidence has probability zero");

    // Reindex from the factor's sorted scope to the caller's target order.
    std::vector<size_t> pos(targets.size());
    for (size_t k = 0; k < targets.size(); ++k) {
        int var = net.index_of(targets[k]);
        pos[k] = std::lower_bound(joint.scope.begin(), joint.scope.end(), var) -
                 joint.scope.begin();
    }
    QueryResult out;
    out.factor_multiplications = mults;
    out.distribution.assign(size_t{1} << targets.size(), 0.0);
    for (size_t idx = 0; idx < joint.table.size(); ++idx) {
        size_t key = 0;
        for (size_t k = 0; k < targets.size(); ++k)
            if ((idx >> pos[k]) & 1) key |= size_t{1} << k;
        out.distribution[key] += joint.table[idx] / total;
    }
    return out;
}

void check_query_args(const BayesNet& net, const std::vector<std::string>& targets,
                      const Evidence& evidence) {
    net.validate();
    std::set<std::string> tset(targets.begin(), targets.end());
    if (tset.size() != targets.size())
        throw validation_error("duplicate target variable");
    for (const auto& t : targets) net.index_of(t);
    for (const auto& [name, v] : evidence) {
        (void)v;
        net.index_of(name);
        if (tset.count(name))
            throw validation_error("variable '" + name + "' is both target and evidence");
    }
}

}  // namespace

double joint_probability(const BayesNet& net, const Evidence& full) {
    net.validate();
    auto assign = to_assignment(net, full);
    for (int i = 0; i < net.size(); ++i)
        if (assign[i] < 0)
            throw validation_error("joint_probability needs full evidence; missing " +
                                   net.variables[i]);
    double p = 1.0;
    for (int i = 0; i < net.size(); ++i) p *= cpt_lookup(net, i, assign);
    return p;
}

std::vector<double> enumerate_joint(const BayesNet& net) {
    net.validate();
    const int n = net.size();
    if (static_cast<count_t>(n) > cap_with_override(20))
        throw cap_error("enumerate_joint refused: " + std::to_string(n) +
                            " variables exceeds cap 20",
                        n >= 64 ? ~count_t{0} : (count_t{1} << n));
    std::vector<double> table(size_t{1} << n);
    std::vector<int> assign(n);
    for (size_t idx = 0; idx < table.size(); ++idx) {
        for (int i = 0; i < n; ++i) assign[i] = (idx >> i) & 1;
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= cpt_lookup(net, i, assign);
        table[idx] = p;
    }
    return table;
}

QueryResult query(const BayesNet& net, const std::vector<std::string>& targets,
                  const Evidence& evidence) {
    check_query_args(net, targets, evidence);
    auto assign = to_assignment(net, evidence);
    std::vector<Factor> factors;
    for (int i = 0; i < net.size(); ++i) factors.push_back(cpt_factor(net, i, assign));

    std::set<int> hidden;
    for (int i = 0; i < net.size(); ++i)
        if (assign[i] < 0) hidden.insert(i);
    for (const auto& t : targets) hidden.erase(net.index_of(t));

    count_t mults = 0;
    auto order = min_degree_order(factors, hidden);
    Factor joint = run_elimination(std::move(factors), order, Reduce::sum, mults);
    return finish_query(net, joint, targets, mults);
}

QueryResult query_with_order(const BayesNet& net,
                             const std::vector<std::string>& targets,
                             const Evidence& evidence,
                             const std::vector<int>& elimination_order) {
    check_query_args(net, targets, evidence);
    auto assign = to_assignment(net, evidence);

    std::set<int> hidden;
    for (int i = 0; i < net.size(); ++i)
        if (assign[i] < 0) hidden.insert(i);
    for (const auto& t : targets) hidden.erase(net.index_of(t));
    if (std::set<int>(elimination_order.begin(), elimination_order.end()) != hidden)
        throw validation_error("elimination order must cover exactly the hidden variables");

    std::vector<Factor> factors;
    for (int i = 0; i < net.size(); ++i) factors.push_back(cpt_factor(net, i, assign));
    count_t mults = 0;
    Factor joint =
        run_elimination(std::move(factors), elimination_order, Reduce::sum, mults);
    return finish_query(net, joint, targets, mults);
}

namespace {

// Max over completions of the joint probability, given partial evidence.
double max_completion(const BayesNet& net, const Evidence& evidence) {
    auto assign = to_assignment(net, evidence);
    std::vector<Factor> factors;
    for (int i = 0; i < net.size(); ++i) factors.push_back(cpt_factor(net, i, assign));
    std::set<int> hidden;
    for (int i = 0; i < net.size(); ++i)
        if (assign[i] < 0) hidden.insert(i);
    count_t mults = 0;
    auto order = min_degree_order(factors, hidden);
    Factor f = run_elimination(std::move(factors), order, Reduce::max, mults);
    return f.table[0];
}

}  // namespace

ExplanationResult mpe(const BayesNet& net, const Evidence& evidence) {
    net.validate();
    for (const auto& [name, v] : evidence) {
        (void)v;
        net.index_of(name);
    }
    double best = max_completion(net, evidence);
    if (best <= 0.0) throw zero_evidence_error("evidence has probability zero");

    // Fix the hidden variables one at a time; a setting is kept when the
    // conditioned max still attains the global max.
    Evidence fixed = evidence;
    Evidence assignment;
    for (int i = 0; i < net.size(); ++i) {
        const std::string& name = net.variables[i];
        if (fixed.count(name)) continue;
        Evidence try_false = fixed;
        try_false[name] = false;
        double with_false = max_completion(net, try_false);
        bool value = !(with_false >= best * (1.0 - 1e-12));
        fixed[name] = value;
        assignment[name] = value;
    }
    return {assignment, best};
}

ExplanationResult map_query(const BayesNet& net, const std::vector<std::string>& query,
                            const Evidence& evidence) {
    check_query_args(net, query, evidence);
    if (static_cast<count_t>(net.size()) > cap_with_override(20))
        throw cap_error("map_query refused: network exceeds 20 variables",
                        static_cast<count_t>(net.size()));
    if (query.empty()) return {{}, 1.0};

    QueryResult posterior = mtlab::bayes::query(net, query, evidence);
    size_t best_idx = 0;
    for (size_t idx = 1; idx < posterior.distribution.size(); ++idx)
        if (posterior.distribution[idx] > posterior.distribution[best_idx])
            best_idx = idx;
    Evidence assignment;
    for (size_t k = 0; k < query.size(); ++k)
        assignment[query[k]] = (best_idx >> k) & 1;
    return {assignment, posterior.distribution[best_idx]};
}

BayesNet trolley_network() {
    BayesNet net;
    net.variables = {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"};
    net.parents = {
        {},         // x1 holiday
        {},         // x2 rain
        {0},        // x3 >1 operators
        {0, 1, 2},  // x4 stress
        {2, 3},     // x5 runaway trolley
        {4},        // x6 lever pulled
        {5},        // x7 trolley toward 5
        {5},        // x8 trolley toward 1
    };
    // Default parameterization; only the edge structure is canonical.
    net.cpts = {
        {0.10},  // P(holiday)
        {0.30},  // P(rain)
        // P(x3 | x1): fewer operators show up on a holiday
        {0.70, 0.20},
        // P(x4 | x1,x2,x3), row bits: x1 LSB, x2, x3.
        // Rain and holidays raise stress; extra operators lower it.
        {0.20, 0.35, 0.45, 0.60, 0.10, 0.20, 0.30, 0.45},
        // P(x5 | x3,x4), row bits: x3 LSB, x4. Trolleys are rare; stress
        // makes them likelier, extra operators less likely.
        {0.05, 0.01, 0.20, 0.08},
        // P(x6 | x5): the lever is mostly pulled when a trolley is loose
        {0.05, 0.80},
        // P(x7 | x6): unpulled lever leaves the trolley headed for the five
        {0.90, 0.10},
        // P(x8 | x6): pulled lever diverts it toward the one
        {0.10, 0.90},
    };
    net.validate();
    return net;
}

}  // namespace mtlab::bayes
