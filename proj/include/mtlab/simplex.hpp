#pragma once

#include <Eigen/Dense>

namespace mtlab::lp {

struct LpResult {
    bool feasible = false;
    Eigen::VectorXd x;
    double objective = 0.0;
};

/// Maximizes c.dot(x) subject to A_ub * x <= b_ub, A_eq * x == b_eq, x >= 0,
/// by a dense Big-M tableau simplex with Bland's rule. Either constraint
/// block may be empty (0 rows).
LpResult solve_lp_max(const Eigen::VectorXd& c, const Eigen::MatrixXd& A_ub,
                      const Eigen::VectorXd& b_ub, const Eigen::MatrixXd& A_eq,
                      const Eigen::VectorXd& b_eq, double tol = 1e-9);

}  // namespace mtlab::lp
