#include "mtlab/io.hpp"

#include <cstdio>
#include <map>
#include <memory>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace mtlab::io {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is a 1-based offset into the input
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw validation_error(path + ": malformed JSON at line " + std::to_string(line) +
                               ", column " + std::to_string(col));
    }
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw validation_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw validation_error("cannot rename " + tmp + " to " + path);
}

planner::ActionEnvironment load_environment(const json& doc) {
    if (!doc.contains("actions") || !doc["actions"].is_array())
        throw validation_error("environment needs an \"actions\" array");
    std::vector<std::string> actions = doc["actions"].get<std::vector<std::string>>();

    auto values = std::make_shared<std::map<std::string, double>>();
    if (doc.contains("values"))
        for (const auto& [key, v] : doc["values"].items()) (*values)[key] = v.get<double>();

    auto fn = [values](const planner::Plan& plan) {
        auto it = values->find(plan.key());
        if (it != values->end()) return it->second;
        double total = 0.0;
        for (int step : plan.steps) {
            auto single = values->find(std::to_string(step));
            if (single != values->end()) total += single->second;
        }
        return total;
    };
    return planner::ActionEnvironment(std::move(actions), fn);
}

std::vector<uncertain::RiskyAction> load_risky_actions(const json& doc) {
    if (!doc.is_array()) throw validation_error("risky-action file must be a JSON array");
    std::vector<uncertain::RiskyAction> out;
    for (const auto& entry : doc) {
        uncertain::RiskyAction a;
        a.label = entry.at("label").get<std::string>();
        for (const auto& pv : entry.at("outcomes"))
            a.outcomes.emplace_back(pv.at(0).get<double>(), pv.at(1).get<double>());
        uncertain::validate(a);
        out.push_back(std::move(a));
    }
    return out;
}

bayes::BayesNet load_bayesnet(const json& doc) {
    bayes::BayesNet net;
    net.variables = doc.at("variables").get<std::vector<std::string>>();
    net.parents.resize(net.variables.size());
    net.cpts.resize(net.variables.size());
    const auto& parents = doc.at("parents");
    const auto& cpt = doc.at("cpt");
    for (int i = 0; i < net.size(); ++i) {
        const std::string& name = net.variables[static_cast<size_t>(i)];
        if (parents.contains(name))
            for (const auto& pname : parents.at(name))
                net.parents[static_cast<size_t>(i)].push_back(
                    net.index_of(pname.get<std::string>()));
        size_t rows = size_t{1} << net.parents[static_cast<size_t>(i)].size();
        net.cpts[static_cast<size_t>(i)].assign(rows, -1.0);
        if (!cpt.contains(name))
            throw validation_error("missing CPT for variable " + name);
        for (const auto& [bits, p] : cpt.at(name).items()) {
            if (bits.size() != net.parents[static_cast<size_t>(i)].size())
                throw validation_error("CPT key '" + bits + "' for " + name +
                                       " has the wrong number of bits");
            size_t row = 0;
            for (size_t b = 0; b < bits.size(); ++b) {
                if (bits[b] != '0' && bits[b] != '1')
                    throw validation_error("CPT key '" + bits + "' must be a bitstring");
                if (bits[b] == '1') row |= size_t{1} << b;
            }
            net.cpts[static_cast<size_t>(i)][row] = p.get<double>();
        }
        for (double v : net.cpts[static_cast<size_t>(i)])
            if (v < 0.0)
                throw validation_error("incomplete CPT for variable " + name);
    }
    net.validate();
    return net;
}

json bayesnet_to_json(const bayes::BayesNet& net) {
    json doc;
    doc["variables"] = net.variables;
    json parents = json::object();
    json cpt = json::object();
    for (int i = 0; i < net.size(); ++i) {
        const std::string& name = net.variables[static_cast<size_t>(i)];
        json plist = json::array();
        for (int p : net.parents[static_cast<size_t>(i)])
            plist.push_back(net.variables[static_cast<size_t>(p)]);
        parents[name] = plist;
        json table = json::object();
        size_t n_parents = net.parents[static_cast<size_t>(i)].size();
        for (size_t row = 0; row < net.cpts[static_cast<size_t>(i)].size(); ++row) {
            std::string bits;
            for (size_t b = 0; b < n_parents; ++b)
                bits.push_back((row >> b) & 1 ? '1' : '0');
            table[bits] = net.cpts[static_cast<size_t>(i)][row];
        }
        cpt[name] = table;
    }
    doc["parents"] = parents;
    doc["cpt"] = cpt;
    return doc;
}

rules::PreferenceProfile load_profile(const json& doc) {
    rules::PreferenceProfile profile;
    profile.agent = doc.at("agent").get<std::string>();
    profile.actions = doc.at("actions").get<std::vector<std::string>>();
    profile.preferences = doc.at("preferences").get<std::vector<std::string>>();
    for (const auto& row : doc.at("effects"))
        profile.effects.push_back(row.get<std::vector<double>>());
    profile.validate();
    return profile;
}

rules::DutySet load_duties(const json& doc) {
    rules::DutySet set;
    for (const auto& entry : doc.at("duties")) {
        rules::Duty duty;
        duty.name = entry.at("name").get<std::string>();
        std::string subject = entry.at("subject").get<std::string>();
        if (subject == "action")
            duty.subject = rules::Duty::Subject::action;
        else if (subject == "state")
            duty.subject = rules::Duty::Subject::state;
        else
            throw validation_error("duty subject must be 'action' or 'state'");
        duty.attribute = entry.at("attribute").get<std::string>();
        duty.op = rules::op_from_string(entry.at("op").get<std::string>());
        duty.value = entry.at("value").get<double>();
        set.duties.push_back(std::move(duty));
    }
    return set;
}

games::NormalFormGame load_game(const json& doc) {
    games::NormalFormGame game;
    for (const auto& labels : doc.at("strategies"))
        game.strategy_labels.push_back(labels.get<std::vector<std::string>>());
    for (const auto& cell : doc.at("payoffs"))
        game.payoffs.push_back(cell.get<std::vector<double>>());
    game.validate();
    return game;
}

json game_to_json(const games::NormalFormGame& game) {
    return json{{"strategies", game.strategy_labels}, {"payoffs", game.payoffs}};
}

games::MooreMachine load_machine(const json& doc) {
    games::MooreMachine m;
    m.name = doc.value("name", "machine");
    m.initial = doc.at("initial").get<int>();
    m.output = doc.at("output").get<std::vector<int>>();
    for (const auto& row : doc.at("transition")) {
        if (row.size() != 2)
            throw validation_error("each transition row needs entries for C and D");
        m.transition.push_back({row.at(0).get<int>(), row.at(1).get<int>()});
    }
    m.validate();
    return m;
}

json machine_to_json(const games::MooreMachine& machine) {
    json rows = json::array();
    for (const auto& row : machine.transition) rows.push_back({row[0], row[1]});
    return json{{"name", machine.name},
                {"initial", machine.initial},
                {"output", machine.output},
                {"transition", rows}};
}

namespace {

Eigen::MatrixXd to_matrix(const json& rows, long r, long c, const char* what) {
    if (static_cast<long>(rows.size()) != r)
        throw validation_error(std::string(what) + ": wrong row count");
    Eigen::MatrixXd m(r, c);
    for (long i = 0; i < r; ++i) {
        const auto& row = rows.at(static_cast<size_t>(i));
        if (static_cast<long>(row.size()) != c)
            throw validation_error(std::string(what) + ": wrong column count");
        for (long j = 0; j < c; ++j) m(i, j) = row.at(static_cast<size_t>(j)).get<double>();
    }
    return m;
}

}  // namespace

seqdec::MarkovDecisionProcess load_mdp(const json& doc) {
    seqdec::MarkovDecisionProcess mdp;
    mdp.states = doc.at("states").get<std::vector<std::string>>();
    mdp.actions = doc.at("actions").get<std::vector<std::string>>();
    mdp.discount = doc.at("discount").get<double>();
    const long n = mdp.n_states();
    for (const auto& action : mdp.actions) {
        mdp.transition.push_back(
            to_matrix(doc.at("transition").at(action), n, n, "transition"));
        mdp.reward.push_back(to_matrix(doc.at("reward").at(action), n, n, "reward"));
    }
    mdp.validate();
    return mdp;
}

seqdec::PartiallyObservableMDP load_pomdp(const json& doc) {
    seqdec::PartiallyObservableMDP pomdp;
    pomdp.mdp = load_mdp(doc);
    pomdp.observations = doc.at("observations").get<std::vector<std::string>>();
    const long n = pomdp.mdp.n_states();
    const long no = pomdp.n_observations();
    for (const auto& action : pomdp.mdp.actions)
        pomdp.observation.push_back(
            to_matrix(doc.at("observation").at(action), n, no, "observation"));
    pomdp.validate();
    return pomdp;
}

}  // namespace mtlab::io
