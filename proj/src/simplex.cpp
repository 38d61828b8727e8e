#include "mtlab/simplex.hpp"

#include <cmath>
#include <vector>

namespace mtlab::lp {

LpResult solve_lp_max(const Eigen::VectorXd& c, const Eigen::MatrixXd& A_ub,
                      const Eigen::VectorXd& b_ub, const Eigen::MatrixXd& A_eq,
                      const Eigen::VectorXd& b_eq, double tol) {
    const long n = c.size();
    const long m_ub = A_ub.rows();
    const long m_eq = A_eq.rows();
    const long m = m_ub + m_eq;

    // Columns: n structural, m_ub slacks, then one artificial per row that
    // needs one. Rows are sign-flipped so every right-hand side is >= 0;
    // a flipped inequality row turns its slack into a surplus, which still
    // leaves the row without an identity column, so it gets an artificial.
    std::vector<bool> flip(static_cast<size_t>(m), false);
    for (long i = 0; i < m_ub; ++i) flip[static_cast<size_t>(i)] = b_ub(i) < 0.0;
    for (long i = 0; i < m_eq; ++i)
        flip[static_cast<size_t>(m_ub + i)] = b_eq(i) < 0.0;

    std::vector<long> artificial_rows;
    for (long i = 0; i < m_ub; ++i)
        if (flip[static_cast<size_t>(i)]) artificial_rows.push_back(i);
    for (long i = 0; i < m_eq; ++i) artificial_rows.push_back(m_ub + i);
    const long n_art = static_cast<long>(artificial_rows.size());
    const long cols = n + m_ub + n_art;

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, cols + 1);
    for (long i = 0; i < m_ub; ++i) {
        double s = flip[static_cast<size_t>(i)] ? -1.0 : 1.0;
        T.block(i, 0, 1, n) = s * A_ub.row(i);
        T(i, n + i) = s;
        T(i, cols) = s * b_ub(i);
    }
    for (long i = 0; i < m_eq; ++i) {
        double s = flip[static_cast<size_t>(m_ub + i)] ? -1.0 : 1.0;
        T.block(m_ub + i, 0, 1, n) = s * A_eq.row(i);
        T(m_ub + i, cols) = s * b_eq(i);
    }
    for (long k = 0; k < n_art; ++k) T(artificial_rows[static_cast<size_t>(k)], n + m_ub + k) = 1.0;

    const double big_m = 1e7 * (1.0 + c.cwiseAbs().maxCoeff());
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
    cost.head(n) = c;
    cost.tail(n_art).setConstant(-big_m);

    std::vector<long> basis(static_cast<size_t>(m));
    for (long i = 0; i < m_ub; ++i)
        basis[static_cast<size_t>(i)] =
            flip[static_cast<size_t>(i)] ? -1 : n + i;  // placeholder for artificial rows
    for (long i = m_ub; i < m; ++i) basis[static_cast<size_t>(i)] = -1;
    for (long k = 0; k < n_art; ++k)
        basis[static_cast<size_t>(artificial_rows[static_cast<size_t>(k)])] = n + m_ub + k;

    // Reduced-cost row: z_j - c_j, kept in the last tableau row.
    T.row(m).head(cols) = -cost.transpose();
    T(m, cols) = 0.0;
    for (long i = 0; i < m; ++i)
        T.row(m) += cost(basis[static_cast<size_t>(i)]) * T.row(i);

    const long max_iter = 200 * (m + cols);
    for (long iter = 0; iter < max_iter; ++iter) {
        // Bland: smallest improving column
        long enter = -1;
        for (long j = 0; j < cols; ++j) {
            if (T(m, j) < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;  // optimal

        long leave = -1;
        double best_ratio = 0.0;
        for (long i = 0; i < m; ++i) {
            if (T(i, enter) > tol) {
                double ratio = T(i, cols) / T(i, enter);
                if (leave < 0 || ratio < best_ratio - tol ||
                    (std::abs(ratio - best_ratio) <= tol &&
                     basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return {};  // unbounded; caller treats as infeasible

        T.row(leave) /= T(leave, enter);
        for (long i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = T(i, enter);
            if (f != 0.0) T.row(i) -= f * T.row(leave);
        }
        basis[static_cast<size_t>(leave)] = enter;
    }

    LpResult out;
    out.x = Eigen::VectorXd::Zero(n);
    for (long i = 0; i < m; ++i) {
        long b = basis[static_cast<size_t>(i)];
        if (b >= n + m_ub && std::abs(T(i, cols)) > 1e-7) return {};  // artificial stuck
        if (b < n) out.x(b) = T(i, cols);
    }
    out.feasible = true;
    out.objective = c.dot(out.x);
    return out;
}

}  // namespace mtlab::lp
