// mtl: command-line harness for the mtlab solvers.
//
// One subcommand per module family. Exit codes: 0 success, 2 validation
// failure, 3 cap refusal, 64 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mtlab/bayesnet.hpp"
#include "mtlab/games.hpp"
#include "mtlab/io.hpp"
#include "mtlab/learn.hpp"
#include "mtlab/planner.hpp"
#include "mtlab/rules.hpp"
#include "mtlab/seqdec.hpp"
#include "mtlab/uncertain.hpp"

using nlohmann::json;

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& t) {
    std::ostringstream os;
    for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

std::string render_json(const Table& t) {
    json arr = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (size_t i = 0; i < t.header.size() && i < row.size(); ++i)
            obj[t.header[i]] = row[i];
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

struct OutputOptions {
    std::string out_path;
    std::string format = "csv";
};

void emit(const Table& t, const OutputOptions& opt) {
    std::string text = opt.format == "json" ? render_json(t) : render_csv(t);
    if (opt.out_path.empty())
        std::cout << text;
    else
        mtlab::io::write_file_atomic(opt.out_path, text);
}

std::vector<int> parse_range(const std::string& spec) {
    auto to_int = [&](const std::string& s) {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw mtlab::validation_error("bad range '" + spec + "'");
        return v;
    };
    auto pos = spec.find("..");
    int lo, hi;
    if (pos == std::string::npos) {
        lo = hi = to_int(spec);
    } else {
        lo = to_int(spec.substr(0, pos));
        hi = to_int(spec.substr(pos + 2));
    }
    if (lo < 1 || hi < lo) throw mtlab::validation_error("bad range '" + spec + "'");
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

mtlab::bayes::Evidence parse_evidence(const std::string& spec) {
    mtlab::bayes::Evidence ev;
    for (const auto& pair : split(spec, ',')) {
        auto eq = pair.find('=');
        if (eq == std::string::npos)
            throw mtlab::validation_error("evidence entries look like name=true");
        std::string name = pair.substr(0, eq);
        std::string val = pair.substr(eq + 1);
        if (val == "true" || val == "1")
            ev[name] = true;
        else if (val == "false" || val == "0")
            ev[name] = false;
        else
            throw mtlab::validation_error("evidence value '" + val + "' is not a boolean");
    }
    return ev;
}

std::string bits_of(size_t value, size_t width) {
    std::string s;
    for (size_t b = 0; b < width; ++b) s.push_back((value >> b) & 1 ? '1' : '0');
    return s;
}

std::string plan_label(const mtlab::planner::Plan& plan) {
    std::string s = plan.key();
    for (char& c : s)
        if (c == ',') c = ' ';
    return s;
}

// Synthetic environment for count sweeps; the value function is arbitrary,
// only the metered call count matters.
mtlab::planner::ActionEnvironment synthetic_environment(int n) {
    std::vector<std::string> actions;
    for (int i = 0; i < n; ++i) actions.push_back("a" + std::to_string(i));
    return mtlab::planner::ActionEnvironment(
        std::move(actions), [](const mtlab::planner::Plan& plan) {
            double total = 0.0;
            for (int s : plan.steps) total += s + 1;
            return total + 0.01 * static_cast<double>(plan.steps.size());
        });
}

mtlab::planner::ValueProfile synthetic_profile(int i) {
    mtlab::planner::ValueProfile profile;
    for (int k = 0; k < i; ++k)
        profile.value_fns.emplace_back([k](const mtlab::planner::Plan& plan) {
            double total = 0.0;
            for (int s : plan.steps) total += (s + 1) * (k + 1);
            return total;
        });
    return profile;
}

mtlab::bayes::BayesNet net_for(const std::string& instance) {
    if (instance.empty() || instance == "trolley") return mtlab::bayes::trolley_network();
    return mtlab::io::load_bayesnet(mtlab::io::load_json(instance));
}

mtlab::games::NormalFormGame game_for(const std::string& instance) {
    if (instance.empty() || instance == "pd") return mtlab::games::prisoners_dilemma(5, 3, 1, 0);
    if (instance == "matching_pennies") return mtlab::games::matching_pennies();
    if (instance == "stag_hunt") return mtlab::games::stag_hunt();
    if (instance == "chicken") return mtlab::games::chicken();
    return mtlab::io::load_game(mtlab::io::load_json(instance));
}

mtlab::games::MooreMachine machine_for(const std::string& name) {
    if (name == "tft") return mtlab::games::tit_for_tat();
    if (name == "allc") return mtlab::games::all_cooperate();
    if (name == "alld") return mtlab::games::all_defect();
    return mtlab::io::load_machine(mtlab::io::load_json(name));
}

std::vector<mtlab::uncertain::RiskyAction> lottery_for(const std::string& instance) {
    if (instance.empty() || instance == "lottery") return mtlab::uncertain::lottery_triple();
    return mtlab::io::load_risky_actions(mtlab::io::load_json(instance));
}

std::string profile_string(const mtlab::games::MixedProfile& mp) {
    std::ostringstream os;
    for (size_t p = 0; p < mp.probs.size(); ++p) {
        if (p) os << " / ";
        for (size_t k = 0; k < mp.probs[p].size(); ++k) {
            if (k) os << " ";
            os << fmt_num(mp.probs[p][k]);
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

int run_plan(const std::string& mode_name, const std::string& range_spec, int i_values,
             const std::string& instance, const OutputOptions& out) {
    using namespace mtlab::planner;
    Mode mode = mode_from_string(mode_name);
    Table t{{"n", "predicted", "metered", "best_value", "best"}, {}};
    for (int n : parse_range(range_spec)) {
        ActionEnvironment env = instance.empty()
                                    ? synthetic_environment(n)
                                    : mtlab::io::load_environment(mtlab::io::load_json(instance));
        if (!instance.empty()) n = env.size();
        mtlab::count_t predicted = predicted_calls(mode, env.size(), i_values);
        std::string best_value, best;
        switch (mode) {
            case Mode::c1: {
                auto r = solve_c1(env);
                best_value = fmt_num(r.best_value);
                best = env.actions[static_cast<size_t>(r.best_index)];
                break;
            }
            case Mode::c2: {
                ValueProfile profile = synthetic_profile(i_values);
                auto r = solve_c2(env, profile);
                best_value = fmt_num(r.best_value);
                best = env.actions[static_cast<size_t>(r.best_index)];
                break;
            }
            case Mode::c3u:
            case Mode::c3o: {
                auto r = solve_c3(env, mode == Mode::c3o);
                best_value = fmt_num(r.best_value);
                best = plan_label(r.best_plan);
                break;
            }
            case Mode::c4u:
            case Mode::c4o: {
                auto r = solve_c4(env, mode == Mode::c4o);
                best_value = fmt_num(r.best_value);
                best = plan_label(r.best_plan);
                break;
            }
        }
        t.rows.push_back({std::to_string(n), std::to_string(predicted),
                          std::to_string(env.oracle.calls()), best_value, best});
        if (!instance.empty()) break;
    }
    emit(t, out);
    return 0;
}

int run_uncertain(const std::string& rule_name, const std::string& instance,
                  const OutputOptions& out) {
    auto actions = lottery_for(instance);
    auto rule = mtlab::uncertain::rule_from_string(rule_name);
    auto decision = mtlab::uncertain::decide(actions, rule);
    Table t{{"rule", "chosen", "index", "inspections"}, {}};
    t.rows.push_back({rule_name, decision.label, std::to_string(decision.index),
                      std::to_string(decision.inspections)});
    emit(t, out);
    return 0;
}

int run_bayes(const std::string& op, const std::string& instance, const std::string& query_spec,
              const std::string& evidence_spec, const OutputOptions& out) {
    auto net = net_for(instance);
    auto evidence = parse_evidence(evidence_spec);
    auto targets = split(query_spec, ',');
    Table t;
    if (op == "query") {
        if (targets.empty()) throw mtlab::validation_error("query needs --query targets");
        auto result = mtlab::bayes::query(net, targets, evidence);
        t.header = {"assignment", "probability", "factor_multiplications"};
        for (size_t k = 0; k < result.distribution.size(); ++k)
            t.rows.push_back({bits_of(k, targets.size()), fmt_num(result.distribution[k]),
                              std::to_string(result.factor_multiplications)});
    } else if (op == "mpe" || op == "map") {
        auto result = op == "mpe" ? mtlab::bayes::mpe(net, evidence)
                                  : mtlab::bayes::map_query(net, targets, evidence);
        t.header = {"variable", "value", "probability"};
        for (const auto& [name, value] : result.assignment)
            t.rows.push_back({name, value ? "true" : "false", fmt_num(result.probability)});
    } else if (op == "joint") {
        auto table = mtlab::bayes::enumerate_joint(net);
        t.header = {"assignment", "probability"};
        for (size_t k = 0; k < table.size(); ++k)
            t.rows.push_back({bits_of(k, static_cast<size_t>(net.size())), fmt_num(table[k])});
    } else {
        throw CLI::ValidationError("unknown bayes operation '" + op + "'");
    }
    emit(t, out);
    return 0;
}

int run_rules(const std::string& op, const std::string& instance, const std::string& action,
              double threshold, const OutputOptions& out) {
    json doc = mtlab::io::load_json(instance);
    Table t;
    if (op == "gr1" || op == "gr2") {
        std::vector<mtlab::rules::PreferenceProfile> profiles;
        if (doc.is_array())
            for (const auto& entry : doc) profiles.push_back(mtlab::io::load_profile(entry));
        else
            profiles.push_back(mtlab::io::load_profile(doc));
        t.header = {"rule", "action", "permissible", "inspections"};
        if (action.empty()) {
            auto screen = op == "gr1" ? mtlab::rules::gr1_screen(profiles.front(), threshold)
                                      : mtlab::rules::gr2_screen(profiles, threshold);
            for (const auto& a : screen.permissible_actions)
                t.rows.push_back({op, a, "true", std::to_string(screen.inspections)});
            if (screen.permissible_actions.empty())
                t.rows.push_back({op, "-", "none", std::to_string(screen.inspections)});
        } else {
            auto verdict = op == "gr1"
                               ? mtlab::rules::gr1_permissible(action, profiles.front(), threshold)
                               : mtlab::rules::gr2_permissible(action, profiles, threshold);
            t.rows.push_back({op, action, verdict.permissible ? "true" : "false",
                              std::to_string(verdict.inspections)});
        }
    } else if (op == "duties") {
        auto duties = mtlab::io::load_duties(doc);
        mtlab::rules::Attributes action_attrs, state_attrs;
        for (const auto& [k, v] : doc.value("action", json::object()).items())
            action_attrs[k] = v.get<double>();
        for (const auto& [k, v] : doc.value("state", json::object()).items())
            state_attrs[k] = v.get<double>();
        auto report = mtlab::rules::check_duties(action_attrs, state_attrs, duties);
        t.header = {"violated_duty", "evaluations"};
        for (const auto& name : report.violated)
            t.rows.push_back({name, std::to_string(report.evaluations)});
        if (report.violated.empty())
            t.rows.push_back({"none", std::to_string(report.evaluations)});
    } else {
        throw CLI::ValidationError("unknown rules operation '" + op + "'");
    }
    emit(t, out);
    return 0;
}

int run_games(const std::string& op, const std::string& instance, const std::string& machines,
              int rounds, int s_states, const std::string& objective,
              const OutputOptions& out) {
    using namespace mtlab::games;
    Table t;
    if (op == "pure") {
        auto game = game_for(instance);
        auto result = pure_nash(game);
        t.header = {"equilibrium", "deviation_checks"};
        for (const auto& profile : result.equilibria) {
            std::string label;
            for (int p = 0; p < game.players(); ++p) {
                if (p) label += " ";
                label += game.strategy_labels[static_cast<size_t>(p)]
                                             [static_cast<size_t>(profile[static_cast<size_t>(p)])];
            }
            t.rows.push_back({label, std::to_string(result.deviation_checks)});
        }
        if (result.equilibria.empty())
            t.rows.push_back({"none", std::to_string(result.deviation_checks)});
    } else if (op == "mixed" || op == "welfare") {
        auto game = game_for(instance);
        if (op == "mixed") {
            auto result = support_enumeration_2p(game);
            t.header = {"equilibrium", "degenerate"};
            for (const auto& eq : result.equilibria)
                t.rows.push_back({profile_string(eq), result.degenerate ? "true" : "false"});
        } else {
            auto result = max_welfare_nash(game);
            t.header = {"equilibrium", "welfare"};
            t.rows.push_back({profile_string(result.profile), fmt_num(result.welfare)});
        }
    } else if (op == "ce") {
        auto game = game_for(instance);
        auto objective_kind =
            objective == "feasible" ? CeObjective::feasible : CeObjective::max_welfare;
        auto ce = correlated_equilibrium_lp(game, objective_kind);
        t.header = {"profile", "probability", "welfare"};
        std::string welfare = fmt_num(expected_welfare(game, ce.probs));
        for (size_t flat = 0; flat < ce.probs.size(); ++flat) {
            auto profile = game.profile_of(flat);
            std::string label;
            for (int p = 0; p < game.players(); ++p) {
                if (p) label += " ";
                label += game.strategy_labels[static_cast<size_t>(p)]
                                             [static_cast<size_t>(profile[static_cast<size_t>(p)])];
            }
            t.rows.push_back({label, fmt_num(ce.probs[flat]), welfare});
        }
    } else if (op == "play") {
        auto game = game_for(instance);
        auto names = split(machines, ',');
        if (names.size() != 2)
            throw mtlab::validation_error("play needs --machines a,b");
        auto a = machine_for(names[0]);
        auto b = machine_for(names[1]);
        auto result = iterated_play(a, b, rounds, game);
        t.header = {"round", "action_a", "action_b", "payoff_a", "payoff_b"};
        for (size_t r = 0; r < result.trace.size(); ++r)
            t.rows.push_back({std::to_string(r + 1),
                              result.trace[r].first == 0 ? "C" : "D",
                              result.trace[r].second == 0 ? "C" : "D",
                              fmt_num(result.payoff_a), fmt_num(result.payoff_b)});
    } else if (op == "automata") {
        auto game = game_for(instance);
        auto names = split(machines, ',');
        if (names.size() != 1)
            throw mtlab::validation_error("automata needs --machines candidate");
        auto candidate = machine_for(names[0]);
        auto result = bounded_automata_equilibrium(game, s_states, rounds, candidate);
        t.header = {"candidate", "is_equilibrium", "candidate_payoff", "best_deviation",
                    "machines_checked"};
        t.rows.push_back({candidate.name, result.is_equilibrium ? "true" : "false",
                          fmt_num(result.candidate_payoff),
                          fmt_num(result.best_deviation_payoff),
                          std::to_string(result.machines_checked)});
    } else {
        throw CLI::ValidationError("unknown games operation '" + op + "'");
    }
    emit(t, out);
    return 0;
}

mtlab::seqdec::RestlessBanditInstance load_bandit(const json& doc) {
    mtlab::seqdec::RestlessBanditInstance instance;
    for (const auto& entry : doc.at("arms")) {
        mtlab::seqdec::RestlessArm arm;
        arm.next_if_played = {entry.at("next_if_played").at(0).get<int>(),
                              entry.at("next_if_played").at(1).get<int>()};
        arm.next_if_idle = {entry.at("next_if_idle").at(0).get<int>(),
                            entry.at("next_if_idle").at(1).get<int>()};
        arm.reward = {entry.at("reward").at(0).get<double>(),
                      entry.at("reward").at(1).get<double>()};
        arm.initial_state = entry.value("initial", 0);
        instance.arms.push_back(arm);
    }
    return instance;
}

int run_seqdec(const std::string& op, const std::string& instance, double tol, int horizon,
               int m_arms, const std::string& belief_spec, const OutputOptions& out) {
    Table t;
    if (op == "vi") {
        auto mdp = mtlab::io::load_mdp(mtlab::io::load_json(instance));
        auto result = mtlab::seqdec::value_iteration(mdp, tol);
        t.header = {"state", "value", "action", "iterations"};
        for (int s = 0; s < mdp.n_states(); ++s)
            t.rows.push_back(
                {mdp.states[static_cast<size_t>(s)], fmt_num(result.values(s)),
                 mdp.actions[static_cast<size_t>(result.greedy.action[static_cast<size_t>(s)])],
                 std::to_string(result.iterations)});
    } else if (op == "pomdp") {
        auto pomdp = mtlab::io::load_pomdp(mtlab::io::load_json(instance));
        Eigen::VectorXd belief(pomdp.mdp.n_states());
        auto parts = split(belief_spec, ',');
        if (static_cast<int>(parts.size()) != pomdp.mdp.n_states())
            throw mtlab::validation_error("--belief needs one probability per state");
        for (size_t i = 0; i < parts.size(); ++i) belief(static_cast<long>(i)) = std::stod(parts[i]);
        auto result = mtlab::seqdec::pomdp_finite_horizon(pomdp, belief, horizon);
        t.header = {"horizon", "value", "trees_evaluated", "tree_count"};
        t.rows.push_back({std::to_string(horizon), fmt_num(result.value),
                          std::to_string(result.trees_evaluated),
                          std::to_string(mtlab::seqdec::policy_tree_count(
                              pomdp.mdp.n_actions(), pomdp.n_observations(), horizon))});
    } else if (op == "bandit") {
        auto bandit = load_bandit(mtlab::io::load_json(instance));
        auto result = mtlab::seqdec::restless_bandit_brute(bandit, m_arms, horizon);
        t.header = {"step", "arms_played", "total_reward", "sequences_scanned"};
        for (size_t step = 0; step < result.activation_sequence.size(); ++step) {
            std::string played;
            for (size_t i = 0; i < result.activation_sequence[step].size(); ++i) {
                if (i) played += " ";
                played += std::to_string(result.activation_sequence[step][i]);
            }
            t.rows.push_back({std::to_string(step + 1), played, fmt_num(result.total_reward),
                              std::to_string(result.sequences_scanned)});
        }
    } else {
        throw CLI::ValidationError("unknown seqdec operation '" + op + "'");
    }
    emit(t, out);
    return 0;
}

int run_learn(const std::string& op, const std::string& predictor_name, std::uint64_t seed,
              double epsilon, double delta, std::uint64_t class_size, int vcd, double c_const,
              const OutputOptions& out) {
    using namespace mtlab::learn;
    Table t;
    if (op == "nfl") {
        WeatherPredictor predictor;
        if (predictor_name == "constant")
            predictor = constant_sunny();
        else if (predictor_name == "repeat")
            predictor = repeat_yesterday();
        else if (predictor_name == "alternate")
            predictor = alternate();
        else if (predictor_name == "random")
            predictor = random_predictor(seed);
        else
            throw mtlab::validation_error("unknown predictor '" + predictor_name + "'");
        auto result = nfl_weather(predictor);
        t.header = {"history", "error", "mean_error"};
        for (size_t h = 0; h < result.per_history_error.size(); ++h)
            t.rows.push_back({bits_of(h, 3), fmt_num(result.per_history_error[h]),
                              fmt_num(result.mean_error)});
    } else if (op == "pac") {
        auto bound = pac_sample_bound({epsilon, delta}, class_size);
        t.header = {"epsilon", "delta", "class_size", "samples"};
        t.rows.push_back({fmt_num(epsilon), fmt_num(delta), std::to_string(class_size),
                          std::to_string(bound)});
    } else if (op == "vcbound") {
        auto bound = vc_sample_bound({epsilon, delta}, vcd, c_const);
        t.header = {"epsilon", "delta", "vcd", "c", "samples"};
        t.rows.push_back({fmt_num(epsilon), fmt_num(delta), std::to_string(vcd),
                          fmt_num(c_const), std::to_string(bound)});
    } else if (op == "vcdim") {
        HypothesisClass cls;
        if (predictor_name == "halfspaces" || predictor_name.empty())
            cls = halfspaces_2d();
        else if (predictor_name == "thresholds")
            cls = axis_thresholds();
        else if (predictor_name == "constants")
            cls = two_constant_hypotheses();
        else
            throw mtlab::validation_error("unknown hypothesis class '" + predictor_name + "'");
        auto generator = [seed](int m, int attempt) {
            std::mt19937_64 rng(seed + 1000003ull * static_cast<std::uint64_t>(m) +
                                static_cast<std::uint64_t>(attempt));
            std::uniform_real_distribution<double> coord(-1.0, 1.0);
            std::vector<Point> points;
            for (int i = 0; i < m; ++i) points.push_back({coord(rng), coord(rng)});
            return points;
        };
        int dim = vc_dimension(cls, generator, 5);
        t.header = {"class", "vc_dimension"};
        t.rows.push_back({cls.name, std::to_string(dim)});
    } else {
        throw CLI::ValidationError("unknown learn operation '" + op + "'");
    }
    emit(t, out);
    return 0;
}

int run_growth(const std::string& mode_name, const std::string& range_spec, int i_values,
               bool timing, const OutputOptions& out) {
    using namespace mtlab::planner;
    Mode mode = mode_from_string(mode_name);
    Table t{{"n", "predicted", "metered", "seconds"}, {}};
    for (int n : parse_range(range_spec)) {
        mtlab::count_t predicted = predicted_calls(mode, n, i_values);
        ActionEnvironment env = synthetic_environment(n);
        std::string seconds = "0.000";
        try {
            auto start = std::chrono::steady_clock::now();
            switch (mode) {
                case Mode::c1:
                    solve_c1(env);
                    break;
                case Mode::c2: {
                    ValueProfile profile = synthetic_profile(i_values);
                    solve_c2(env, profile);
                    break;
                }
                case Mode::c3u:
                case Mode::c3o:
                    solve_c3(env, mode == Mode::c3o);
                    break;
                case Mode::c4u:
                case Mode::c4o:
                    solve_c4(env, mode == Mode::c4o);
                    break;
            }
            if (timing) {
                double elapsed =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                std::ostringstream os;
                os << std::fixed << std::setprecision(3) << elapsed;
                seconds = os.str();
            }
        } catch (const mtlab::cap_error&) {
            t.rows.push_back({std::to_string(n), std::to_string(predicted), "REFUSED", seconds});
            break;
        }
        t.rows.push_back({std::to_string(n), std::to_string(predicted),
                          std::to_string(env.oracle.calls()), seconds});
    }
    emit(t, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mtlab experiment harness"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--out", out.out_path, "write results to this file (atomic)");
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    std::uint64_t global_seed = 0;
    app.add_option("--seed", global_seed, "seed recorded for reproducibility");

    std::string mode = "c1", range = "1..10", instance, query, evidence, rule = "max_eu";
    std::string op, action, machines, objective = "max_welfare", belief = "", predictor = "random";
    int i_values = 3, rounds = 10, s_states = 2, horizon = 2, m_arms = 1, vcd = 3;
    double threshold = 0.0, tol = 1e-6, epsilon = 0.1, delta = 0.05, c_const = 1.0;
    std::uint64_t seed = 0, class_size = 1000;
    bool timing = false;

    auto* plan = app.add_subcommand("plan", "metered oracle planners C1-C4");
    plan->add_option("mode", mode, "c1|c2|c3u|c3o|c4u|c4o")->required();
    plan->add_option("--n", range, "action-count range a..b");
    plan->add_option("--i", i_values, "value count for c2");
    plan->add_option("--instance", instance, "environment JSON");

    auto* unc = app.add_subcommand("uncertain", "decisions under uncertainty (C5)");
    unc->add_option("--rule", rule, "max_eu|minmax");
    unc->add_option("--instance", instance, "risky-action JSON or 'lottery'");

    auto* bayes = app.add_subcommand("bayes", "Bayesian network inference");
    bayes->add_option("op", op, "query|mpe|map|joint")->required();
    bayes->add_option("--instance", instance, "network JSON or 'trolley'");
    bayes->add_option("--query", query, "comma-separated target variables");
    bayes->add_option("--evidence", evidence, "name=true,name=false,...");

    auto* rules = app.add_subcommand("rules", "golden-rule and duty checks");
    rules->add_option("op", op, "gr1|gr2|duties")->required();
    rules->add_option("--instance", instance, "profile/duty JSON")->required();
    rules->add_option("--action", action, "single action to check");
    rules->add_option("--threshold", threshold, "preference-delta threshold");

    auto* games = app.add_subcommand("games", "normal-form and repeated games");
    games->add_option("op", op, "pure|mixed|welfare|ce|play|automata")->required();
    games->add_option("--instance", instance, "game JSON or pd|matching_pennies|stag_hunt|chicken");
    games->add_option("--machines", machines, "machine names or JSON paths");
    games->add_option("--rounds", rounds, "iterated-play rounds");
    games->add_option("--s", s_states, "automata state bound");
    games->add_option("--objective", objective, "feasible|max_welfare");

    auto* seq = app.add_subcommand("seqdec", "MDP / POMDP / restless bandits");
    seq->add_option("op", op, "vi|pomdp|bandit")->required();
    seq->add_option("--instance", instance, "model JSON")->required();
    seq->add_option("--tol", tol, "value-iteration tolerance");
    seq->add_option("--horizon", horizon, "decision horizon");
    seq->add_option("--m", m_arms, "arms played per step");
    seq->add_option("--belief", belief, "comma-separated initial belief");

    auto* learn = app.add_subcommand("learn", "NFL, PAC bounds, VC dimension");
    learn->add_option("op", op, "nfl|pac|vcbound|vcdim")->required();
    learn->add_option("--predictor", predictor, "constant|repeat|alternate|random, or class name");
    learn->add_option("--seed", seed, "RNG seed");
    learn->add_option("--epsilon", epsilon, "accuracy parameter");
    learn->add_option("--delta", delta, "confidence parameter");
    learn->add_option("--class-size", class_size, "finite hypothesis-class size");
    learn->add_option("--vcd", vcd, "VC dimension for the bound");
    learn->add_option("--c", c_const, "hidden constant in the VC bound");

    auto* growth = app.add_subcommand("growth", "predicted-vs-metered growth table");
    growth->add_option("mode", mode, "c1|c2|c3u|c3o|c4u|c4o")->required();
    growth->add_option("--n", range, "action-count range a..b");
    growth->add_option("--i", i_values, "value count for c2");
    growth->add_flag("--timing", timing, "record real wall time (non-deterministic output)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (plan->parsed()) return run_plan(mode, range, i_values, instance, out);
        if (unc->parsed()) return run_uncertain(rule, instance, out);
        if (bayes->parsed()) return run_bayes(op, instance, query, evidence, out);
        if (rules->parsed()) return run_rules(op, instance, action, threshold, out);
        if (games->parsed())
            return run_games(op, instance, machines, rounds, s_states, objective, out);
        if (seq->parsed()) return run_seqdec(op, instance, tol, horizon, m_arms, belief, out);
        if (learn->parsed())
            return run_learn(op, predictor, seed, epsilon, delta, class_size, vcd, c_const, out);
        if (growth->parsed()) return run_growth(mode, range, i_values, timing, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const mtlab::cap_error& e) {
        std::cerr << "cap refusal: " << e.what() << "\n";
        return 3;
    } catch (const mtlab::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mtlab::zero_evidence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mtlab::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 64;
}
