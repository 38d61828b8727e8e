#include "mtlab/games.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mtlab/simplex.hpp"

namespace mtlab::games {

size_t NormalFormGame::profile_count() const {
    size_t total = 1;
    for (int p = 0; p < players(); ++p) total *= static_cast<size_t>(strategies(p));
    return total;
}

size_t NormalFormGame::flat_index(const std::vector<int>& profile) const {
    size_t idx = 0;
    for (int p = 0; p < players(); ++p)
        idx = idx * static_cast<size_t>(strategies(p)) + static_cast<size_t>(profile[static_cast<size_t>(p)]);
    return idx;
}

std::vector<int> NormalFormGame::profile_of(size_t flat) const {
    std::vector<int> profile(static_cast<size_t>(players()));
    for (int p = players() - 1; p >= 0; --p) {
        profile[static_cast<size_t>(p)] = static_cast<int>(flat % static_cast<size_t>(strategies(p)));
        flat /= static_cast<size_t>(strategies(p));
    }
    return profile;
}

double NormalFormGame::payoff(const std::vector<int>& profile, int player) const {
    return payoffs[flat_index(profile)][static_cast<size_t>(player)];
}

void NormalFormGame::validate() const {
    if (players() < 2) throw validation_error("a game needs at least two players");
    for (int p = 0; p < players(); ++p)
        if (strategies(p) < 1)
            throw validation_error("every player needs at least one strategy");
    if (payoffs.size() != profile_count())
        throw validation_error("payoff tensor incomplete");
    for (const auto& cell : payoffs)
        if (cell.size() != static_cast<size_t>(players()))
            throw validation_error("each payoff cell needs one entry per player");
}

NormalFormGame prisoners_dilemma(double T, double R, double P, double S) {
    if (!(T > R && R > P && P > S))
        throw validation_error("prisoner's dilemma requires T > R > P > S");
    NormalFormGame g;
    g.strategy_labels = {{"C", "D"}, {"C", "D"}};
    g.payoffs = {{R, R}, {S, T}, {T, S}, {P, P}};
    return g;
}

NormalFormGame matching_pennies() {
    NormalFormGame g;
    g.strategy_labels = {{"H", "T"}, {"H", "T"}};
    g.payoffs = {{1, -1}, {-1, 1}, {-1, 1}, {1, -1}};
    return g;
}

NormalFormGame stag_hunt() {
    NormalFormGame g;
    g.strategy_labels = {{"Stag", "Hare"}, {"Stag", "Hare"}};
    g.payoffs = {{4, 4}, {1, 3}, {3, 1}, {2, 2}};
    return g;
}

NormalFormGame chicken() {
    NormalFormGame g;
    g.strategy_labels = {{"Dare", "Yield"}, {"Dare", "Yield"}};
    g.payoffs = {{0, 0}, {7, 2}, {2, 7}, {6, 6}};
    return g;
}

PureNashResult pure_nash(const NormalFormGame& game) {
    game.validate();
    PureNashResult out{{}, 0};
    for (size_t flat = 0; flat < game.profile_count(); ++flat) {
        std::vector<int> profile = game.profile_of(flat);
        bool stable = true;
        for (int p = 0; p < game.players() && stable; ++p) {
            double here = game.payoff(profile, p);
            std::vector<int> deviated = profile;
            for (int s = 0; s < game.strategies(p); ++s) {
                if (s == profile[static_cast<size_t>(p)]) continue;
                deviated[static_cast<size_t>(p)] = s;
                ++out.deviation_checks;
                if (game.payoff(deviated, p) > here + kEqTolerance) {
                    stable = false;
                    break;
                }
            }
        }
        if (stable) out.equilibria.push_back(std::move(profile));
    }
    return out;
}

namespace {

void payoff_matrices(const NormalFormGame& game, Eigen::MatrixXd& A, Eigen::MatrixXd& B) {
    const int m = game.strategies(0), n = game.strategies(1);
    A.resize(m, n);
    B.resize(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            A(i, j) = game.payoff({i, j}, 0);
            B(i, j) = game.payoff({i, j}, 1);
        }
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

bool same_profile(const MixedProfile& a, const MixedProfile& b) {
    for (size_t p = 0; p < a.probs.size(); ++p)
        for (size_t s = 0; s < a.probs[p].size(); ++s)
            if (std::abs(a.probs[p][s] - b.probs[p][s]) > 1e-6) return false;
    return true;
}

// Is the candidate mixed profile a Nash equilibrium of the 2-player game?
bool passes_deviation_check(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd row_payoffs = A * y;   // player 1's payoff per pure row
    Eigen::VectorXd col_payoffs = B.transpose() * x;
    double u1 = x.dot(row_payoffs);
    double u2 = y.dot(col_payoffs);
    return row_payoffs.maxCoeff() <= u1 + kEqTolerance &&
           col_payoffs.maxCoeff() <= u2 + kEqTolerance;
}

}  // namespace

SupportEnumResult support_enumeration_2p(const NormalFormGame& game) {
    game.validate();
    if (game.players() != 2)
        throw validation_error("support enumeration handles two-player games only");
    const int m = game.strategies(0), n = game.strategies(1);
    const int cap = static_cast<int>(cap_with_override(6));
    if (m > cap || n > cap)
        throw cap_error("support enumeration refused: strategy count exceeds cap " +
                            std::to_string(cap),
                        static_cast<count_t>(m) * static_cast<count_t>(n));

    Eigen::MatrixXd A, B;
    payoff_matrices(game, A, B);

    SupportEnumResult out;
    auto add = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        MixedProfile mp;
        mp.probs = {std::vector<double>(x.data(), x.data() + m),
                    std::vector<double>(y.data(), y.data() + n)};
        for (const auto& existing : out.equilibria)
            if (same_profile(existing, mp)) return;
        out.equilibria.push_back(std::move(mp));
    };

    // Pure equilibria first; they anchor the enumeration order.
    for (const auto& profile : pure_nash(game).equilibria) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(m), y = Eigen::VectorXd::Zero(n);
        x(profile[0]) = 1.0;
        y(profile[1]) = 1.0;
        add(x, y);
    }

    for (int k = 2; k <= std::min(m, n); ++k) {
        for (const auto& s1 : subsets_of_size(m, k)) {
            for (const auto& s2 : subsets_of_size(n, k)) {
                // y over s2 makes player 1 indifferent on s1; unknowns (y, u1).
                Eigen::MatrixXd M1 = Eigen::MatrixXd::Zero(k + 1, k + 1);
                Eigen::VectorXd rhs1 = Eigen::VectorXd::Zero(k + 1);
                for (int r = 0; r < k; ++r) {
                    for (int cidx = 0; cidx < k; ++cidx)
                        M1(r, cidx) = A(s1[static_cast<size_t>(r)], s2[static_cast<size_t>(cidx)]);
                    M1(r, k) = -1.0;
                }
                M1.row(k).head(k).setOnes();
                rhs1(k) = 1.0;

                Eigen::MatrixXd M2 = Eigen::MatrixXd::Zero(k + 1, k + 1);
                Eigen::VectorXd rhs2 = Eigen::VectorXd::Zero(k + 1);
                for (int cidx = 0; cidx < k; ++cidx) {
                    for (int r = 0; r < k; ++r)
                        M2(cidx, r) = B(s1[static_cast<size_t>(r)], s2[static_cast<size_t>(cidx)]);
                    M2(cidx, k) = -1.0;
                }
                M2.row(k).head(k).setOnes();
                rhs2(k) = 1.0;

                Eigen::FullPivLU<Eigen::MatrixXd> lu1(M1), lu2(M2);
                if (!lu1.isInvertible() || !lu2.isInvertible()) {
                    out.degenerate = true;
                    ++out.supports_skipped;
                    continue;
                }
                Eigen::VectorXd sol1 = lu1.solve(rhs1);  // (y over s2, u1)
                Eigen::VectorXd sol2 = lu2.solve(rhs2);  // (x over s1, u2)

                Eigen::VectorXd x = Eigen::VectorXd::Zero(m), y = Eigen::VectorXd::Zero(n);
                bool ok = true;
                for (int idx = 0; idx < k; ++idx) {
                    if (sol2(idx) < -kEqTolerance || sol1(idx) < -kEqTolerance) ok = false;
                    x(s1[static_cast<size_t>(idx)]) = std::max(0.0, sol2(idx));
                    y(s2[static_cast<size_t>(idx)]) = std::max(0.0, sol1(idx));
                }
                if (!ok) continue;
                x /= x.sum();
                y /= y.sum();
                if (passes_deviation_check(A, B, x, y)) add(x, y);
            }
        }
    }
    return out;
}

WelfareResult max_welfare_nash(const NormalFormGame& game) {
    SupportEnumResult nash = support_enumeration_2p(game);
    if (nash.equilibria.empty())
        throw validation_error("no equilibrium found by support enumeration");
    Eigen::MatrixXd A, B;
    payoff_matrices(game, A, B);
    WelfareResult best{nash.equilibria.front(), 0.0};
    bool first = true;
    for (const auto& eq : nash.equilibria) {
        Eigen::Map<const Eigen::VectorXd> x(eq.probs[0].data(), game.strategies(0));
        Eigen::Map<const Eigen::VectorXd> y(eq.probs[1].data(), game.strategies(1));
        double welfare = x.dot((A + B) * y);
        if (first || welfare > best.welfare + kEqTolerance) {
            best = {eq, welfare};
            first = false;
        }
    }
    return best;
}

namespace {

// One row per (player, held strategy, alternative strategy) incentive.
void ce_constraints(const NormalFormGame& game, Eigen::MatrixXd& A_ub,
                    Eigen::VectorXd& b_ub) {
    const size_t np = game.profile_count();
    std::vector<Eigen::RowVectorXd> rows;
    for (int p = 0; p < game.players(); ++p) {
        for (int held = 0; held < game.strategies(p); ++held) {
            for (int alt = 0; alt < game.strategies(p); ++alt) {
                if (alt == held) continue;
                Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<long>(np));
                for (size_t flat = 0; flat < np; ++flat) {
                    std::vector<int> profile = game.profile_of(flat);
                    if (profile[static_cast<size_t>(p)] != held) continue;
                    std::vector<int> dev = profile;
                    dev[static_cast<size_t>(p)] = alt;
                    // gain from following the recommendation must be >= 0;
                    // negated into <= form for the LP.
                    row(static_cast<long>(flat)) =
                        game.payoff(dev, p) - game.payoff(profile, p);
                }
                rows.push_back(row);
            }
        }
    }
    A_ub.resize(static_cast<long>(rows.size()), static_cast<long>(np));
    for (size_t r = 0; r < rows.size(); ++r) A_ub.row(static_cast<long>(r)) = rows[r];
    b_ub = Eigen::VectorXd::Zero(static_cast<long>(rows.size()));
}

}  // namespace

CorrelatedDistribution correlated_equilibrium_lp(const NormalFormGame& game,
                                                 CeObjective objective) {
    game.validate();
    const size_t np = game.profile_count();
    if (static_cast<count_t>(np) * static_cast<count_t>(game.players()) >
        cap_with_override(4096))
        throw cap_error("correlated equilibrium LP refused: game too large",
                        static_cast<count_t>(np));

    Eigen::MatrixXd A_ub;
    Eigen::VectorXd b_ub;
    ce_constraints(game, A_ub, b_ub);

    Eigen::MatrixXd A_eq = Eigen::MatrixXd::Ones(1, static_cast<long>(np));
    Eigen::VectorXd b_eq = Eigen::VectorXd::Ones(1);

    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<long>(np));
    if (objective == CeObjective::max_welfare) {
        for (size_t flat = 0; flat < np; ++flat) {
            double welfare = 0.0;
            for (int p = 0; p < game.players(); ++p)
                welfare += game.payoffs[flat][static_cast<size_t>(p)];
            c(static_cast<long>(flat)) = welfare;
        }
    }

    lp::LpResult sol = lp::solve_lp_max(c, A_ub, b_ub, A_eq, b_eq);
    if (!sol.feasible)
        throw std::logic_error("correlated equilibrium LP infeasible: a CE always "
                               "exists, so this is a solver or tolerance bug");
    CorrelatedDistribution out;
    out.probs.assign(sol.x.data(), sol.x.data() + sol.x.size());
    for (double& p : out.probs) p = std::max(0.0, p);
    return out;
}

bool satisfies_ce_constraints(const NormalFormGame& game,
                              const std::vector<double>& distribution, double tol) {
    game.validate();
    if (distribution.size() != game.profile_count())
        throw validation_error("distribution length must match profile count");
    double total = 0.0;
    for (double p : distribution) {
        if (p < -tol) return false;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) return false;

    Eigen::MatrixXd A_ub;
    Eigen::VectorXd b_ub;
    ce_constraints(game, A_ub, b_ub);
    Eigen::Map<const Eigen::VectorXd> x(distribution.data(),
                                        static_cast<long>(distribution.size()));
    return ((A_ub * x).array() <= tol).all();
}

double expected_welfare(const NormalFormGame& game, const std::vector<double>& dist) {
    double welfare = 0.0;
    for (size_t flat = 0; flat < game.profile_count(); ++flat)
        for (int p = 0; p < game.players(); ++p)
            welfare += dist[flat] * game.payoffs[flat][static_cast<size_t>(p)];
    return welfare;
}

std::vector<double> product_distribution(const NormalFormGame& game,
                                         const MixedProfile& mixed) {
    std::vector<double> dist(game.profile_count());
    for (size_t flat = 0; flat < dist.size(); ++flat) {
        std::vector<int> profile = game.profile_of(flat);
        double p = 1.0;
        for (int pl = 0; pl < game.players(); ++pl)
            p *= mixed.probs[static_cast<size_t>(pl)]
                           [static_cast<size_t>(profile[static_cast<size_t>(pl)])];
        dist[flat] = p;
    }
    return dist;
}

void MooreMachine::validate() const {
    if (states() < 1) throw validation_error("machine needs at least one state");
    if (initial < 0 || initial >= states())
        throw validation_error("machine initial state out of range");
    if (transition.size() != output.size())
        throw validation_error("machine needs one transition row per state");
    for (int s = 0; s < states(); ++s) {
        if (output[static_cast<size_t>(s)] != 0 && output[static_cast<size_t>(s)] != 1)
            throw validation_error("machine outputs must be 0 (C) or 1 (D)");
        for (int next : transition[static_cast<size_t>(s)])
            if (next < 0 || next >= states())
                throw validation_error("machine transition out of range");
    }
}

MooreMachine tit_for_tat() {
    return {"TFT", 0, {0, 1}, {{0, 1}, {0, 1}}};
}

MooreMachine all_cooperate() { return {"AllC", 0, {0}, {{0, 0}}}; }

MooreMachine all_defect() { return {"AllD", 0, {1}, {{0, 0}}}; }

PlayResult iterated_play(const MooreMachine& a, const MooreMachine& b, int rounds,
                         const NormalFormGame& game) {
    a.validate();
    b.validate();
    game.validate();
    if (game.players() != 2 || game.strategies(0) != 2 || game.strategies(1) != 2)
        throw validation_error("iterated play needs a 2x2 game");
    if (rounds < 1) throw validation_error("rounds must be >= 1");

    PlayResult out{0.0, 0.0, {}};
    int sa = a.initial, sb = b.initial;
    for (int t = 0; t < rounds; ++t) {
        int act_a = a.output[static_cast<size_t>(sa)];
        int act_b = b.output[static_cast<size_t>(sb)];
        out.payoff_a += game.payoff({act_a, act_b}, 0);
        out.payoff_b += game.payoff({act_a, act_b}, 1);
        out.trace.emplace_back(act_a, act_b);
        sa = a.transition[static_cast<size_t>(sa)][static_cast<size_t>(act_b)];
        sb = b.transition[static_cast<size_t>(sb)][static_cast<size_t>(act_a)];
    }
    return out;
}

AutomataEquilibriumResult bounded_automata_equilibrium(const NormalFormGame& game,
                                                       int s, int rounds,
                                                       const MooreMachine& candidate) {
    if (s < 1) throw validation_error("machine size must be >= 1");
    const int cap = static_cast<int>(cap_with_override(2));
    if (s > cap) {
        count_t machines = static_cast<count_t>(s) *
                           (count_t{1} << s);  // times s^(2s) transitions
        for (int t = 0; t < 2 * s; ++t) machines *= static_cast<count_t>(s);
        throw cap_error("automata enumeration refused: s=" + std::to_string(s) +
                            " exceeds cap " + std::to_string(cap),
                        machines);
    }

    AutomataEquilibriumResult out{};
    out.candidate_payoff = iterated_play(candidate, candidate, rounds, game).payoff_a;
    out.best_deviation_payoff = -std::numeric_limits<double>::infinity();
    out.machines_checked = 0;

    // Every machine with exactly s states; machines with fewer states are
    // behaviorally contained in this class once s >= 2.
    std::vector<int> sizes;
    if (s == 1)
        sizes = {1};
    else
        sizes = {s};
    for (int ns : sizes) {
        count_t n_outputs = count_t{1} << ns;
        count_t n_trans = 1;
        for (int t = 0; t < 2 * ns; ++t) n_trans *= static_cast<count_t>(ns);
        for (int init = 0; init < ns; ++init) {
            for (count_t outbits = 0; outbits < n_outputs; ++outbits) {
                for (count_t tcode = 0; tcode < n_trans; ++tcode) {
                    MooreMachine m;
                    m.name = "enum";
                    m.initial = init;
                    m.output.resize(static_cast<size_t>(ns));
                    for (int st = 0; st < ns; ++st)
                        m.output[static_cast<size_t>(st)] = (outbits >> st) & 1;
                    m.transition.resize(static_cast<size_t>(ns));
                    count_t code = tcode;
                    for (int st = 0; st < ns; ++st)
                        for (int obs = 0; obs < 2; ++obs) {
                            m.transition[static_cast<size_t>(st)][static_cast<size_t>(obs)] =
                                static_cast<int>(code % static_cast<count_t>(ns));
                            code /= static_cast<count_t>(ns);
                        }
                    ++out.machines_checked;
                    double payoff = iterated_play(m, candidate, rounds, game).payoff_a;
                    out.best_deviation_payoff = std::max(out.best_deviation_payoff, payoff);
                }
            }
        }
    }
    out.is_equilibrium = out.best_deviation_payoff <= out.candidate_payoff + kEqTolerance;
    return out;
}

int one_shot_best_response(const NormalFormGame& game, int player,
                           const std::vector<int>& opponent_profile) {
    game.validate();
    std::vector<int> profile = opponent_profile;
    int best = 0;
    double best_payoff = -std::numeric_limits<double>::infinity();
    for (int strat = 0; strat < game.strategies(player); ++strat) {
        profile[static_cast<size_t>(player)] = strat;
        double u = game.payoff(profile, player);
        if (u > best_payoff) {
            best_payoff = u;
            best = strat;
        }
    }
    return best;
}

}  // namespace mtlab::games
