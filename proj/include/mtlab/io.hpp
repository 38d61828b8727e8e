#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mtlab/bayesnet.hpp"
#include "mtlab/games.hpp"
#include "mtlab/planner.hpp"
#include "mtlab/rules.hpp"
#include "mtlab/seqdec.hpp"
#include "mtlab/uncertain.hpp"

namespace mtlab::io {

/// Parses a JSON file; parse failures become validation_error with a
/// line/column diagnostic.
nlohmann::json load_json(const std::string& path);

/// Writes text atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// `{"actions": [...], "values": {"0,2": 5.0, ...}}`. A plan key missing
/// from the table falls back to the sum of its singleton values (missing
/// singletons count as 0).
planner::ActionEnvironment load_environment(const nlohmann::json& doc);

/// `[{"label": ..., "outcomes": [[p, v], ...]}, ...]`
std::vector<uncertain::RiskyAction> load_risky_actions(const nlohmann::json& doc);

/// `{"variables": [...], "parents": {name: [names]}, "cpt": {name:
/// {bitstring: p_true}}}`. Bitstring characters follow the declared parent
/// order, first parent first; root variables use the key "".
bayes::BayesNet load_bayesnet(const nlohmann::json& doc);
nlohmann::json bayesnet_to_json(const bayes::BayesNet& net);

rules::PreferenceProfile load_profile(const nlohmann::json& doc);
rules::DutySet load_duties(const nlohmann::json& doc);

/// `{"strategies": [[labels...], ...], "payoffs": [[u1, u2], ...]}` with
/// payoff rows in flat tensor order, player 0 varying slowest.
games::NormalFormGame load_game(const nlohmann::json& doc);
nlohmann::json game_to_json(const games::NormalFormGame& game);

games::MooreMachine load_machine(const nlohmann::json& doc);
nlohmann::json machine_to_json(const games::MooreMachine& machine);

seqdec::MarkovDecisionProcess load_mdp(const nlohmann::json& doc);
seqdec::PartiallyObservableMDP load_pomdp(const nlohmann::json& doc);

}  // namespace mtlab::io
