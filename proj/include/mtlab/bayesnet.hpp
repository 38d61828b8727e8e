#pragma once

#include <map>
#include <string>
#include <vector>

#include "mtlab/common.hpp"

namespace mtlab::bayes {

/// Partial truth assignment, keyed by variable name.
using Evidence = std::map<std::string, bool>;

/// Boolean Bayesian network. cpts[i] holds P(variable i = true | parents) with
/// one row per parent assignment; row bit j (least significant = first
/// declared parent) carries the value of parents[i][j].
struct BayesNet {
    std::vector<std::string> variables;
    std::vector<std::vector<int>> parents;
    std::vector<std::vector<double>> cpts;

    int size() const { return static_cast<int>(variables.size()); }
    int index_of(const std::string& name) const;

    /// Checks acyclicity, CPT shapes, and probability ranges.
    void validate() const;
};

/// Variable-elimination workspace: a nonnegative table over a variable subset.
/// Table bit k (least significant = scope[0]) carries the value of scope[k].
struct Factor {
    std::vector<int> scope;
    std::vector<double> table;
};

struct QueryResult {
    /// One probability per target assignment; bit k (LSB first) is the value
    /// of the k-th requested target. Sums to 1.
    std::vector<double> distribution;
    count_t factor_multiplications;
};

struct ExplanationResult {
    Evidence assignment;
    double probability;
};

/// Product of one CPT lookup per variable. Evidence must cover every variable.
double joint_probability(const BayesNet& net, const Evidence& full);

/// Exhaustive joint table of 2^n entries; entry bit i is the value of
/// variable i. Refused above 20 variables.
std::vector<double> enumerate_joint(const BayesNet& net);

/// Exact posterior over the target variables via variable elimination with a
/// min-degree ordering (ties broken by variable index).
QueryResult query(const BayesNet& net, const std::vector<std::string>& targets,
                  const Evidence& evidence);

/// Same, with a caller-chosen elimination order over the hidden variables.
QueryResult query_with_order(const BayesNet& net,
                             const std::vector<std::string>& targets,
                             const Evidence& evidence,
                             const std::vector<int>& elimination_order);

/// Most probable explanation: the completion of the unobserved variables that
/// maximizes the joint probability, by max-product elimination. Returns the
/// joint probability of evidence plus completion.
ExplanationResult mpe(const BayesNet& net, const Evidence& evidence);

/// Partial MAP: maximizes the posterior of the query set after summing out
/// the remaining unobserved variables. Returns P(assignment | evidence).
/// Refused above 20 variables.
ExplanationResult map_query(const BayesNet& net,
                            const std::vector<std::string>& query,
                            const Evidence& evidence);

/// The eight-variable runaway-trolley network: x1 holiday, x2 rain,
/// x3 >1 operators, x4 stress, x5 runaway trolley, x6 lever, x7 track of 5,
/// x8 track of 1. The edge structure is fixed; the CPT numbers are this
/// library's default parameterization (see data/trolley.json).
BayesNet trolley_network();

}  // namespace mtlab::bayes
