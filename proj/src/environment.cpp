#include "randomworld/environment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace randomworld {

std::string random_credential_token(Rng& rng) {
    static const char chars[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    int len = (int)rng.uniform_int(10, 20);
    std::string s;
    s.reserve(len);
    for (int i = 0; i < len; ++i) s += chars[rng.uniform_u64(36)];
    return s;
}

Value Environment::goal_value() const {
    if (goal_state.size() == 1) return goal_state.front();
    return Value(Value::List(goal_state.begin(), goal_state.end()));
}

Environment populate(TrajectorySkeleton skel, const std::vector<ToolSpec>& universe,
                     const EnvConfig& cfg, const TypeRegistry& reg, uint64_t seed) {
    cfg.validate();
    Environment env;
    env.seed = seed;
    Rng rng(seed);

    std::map<VarId, Value> store;
    for (const auto& u : skel.user_inputs) {
        Value v = reg.generate(u.type, cfg.gen, rng);
        env.user_input_values[u.var] = v;
        store[u.var] = std::move(v);
    }

    for (const auto& call : skel.calls) {
        const ToolSpec& tool = universe[call.tool_index];
        std::vector<Value> args;
        for (VarId a : call.args) {
            auto it = store.find(a);
            if (it == store.end())
                throw PopulateError("gold evaluation references unbound variable in tool '" +
                                    tool.name + "'");
            args.push_back(it->second);
        }
        InvokeResult r = invoke(tool, env.memo, args, reg, cfg.gen, rng);
        if (!r.ok)
            throw PopulateError("gold evaluation failed for tool '" + tool.name +
                                "' with args " + MemoTable::canonical_key(args) + ": " +
                                r.error);
        if (r.outputs.size() != call.outputs.size())
            throw PopulateError("gold evaluation arity mismatch for tool '" + tool.name + "'");
        for (size_t j = 0; j < call.outputs.size(); ++j)
            store[call.outputs[j].var] = r.outputs[j];
    }

    for (VarId g : skel.goal_vars) env.goal_state.push_back(store.at(g));

    // Required tools in first-use order; credentials for each app touched.
    std::set<int> seen;
    for (const auto& call : skel.calls)
        if (seen.insert(call.tool_index).second) env.required_tools.push_back(call.tool_index);
    std::set<std::string> app_names;
    for (int idx : env.required_tools)
        if (universe[idx].app) app_names.insert(*universe[idx].app);
    for (const auto& app : app_names) {
        Credential c{app, random_credential_token(rng), random_credential_token(rng)};
        env.apps.emplace(app, std::move(c));
    }

    env.disclose_password = rng.bernoulli(cfg.p_g);

    // Distractors: uniform without replacement from the rest of the universe,
    // excluding app-assigned tools whose app has no credentials here (they
    // would be unusable in this environment).
    std::vector<int> pool;
    for (size_t i = 0; i < universe.size(); ++i) {
        if (seen.count((int)i)) continue;
        if (universe[i].app && !env.apps.count(*universe[i].app)) continue;
        pool.push_back((int)i);
    }
    size_t want = (size_t)std::floor(cfg.r_dist * (double)env.required_tools.size() + 0.5);
    rng.shuffle(pool);
    if (want > pool.size()) want = pool.size();
    env.distractor_tools.assign(pool.begin(), pool.begin() + want);

    env.skel = std::move(skel);
    return env;
}

std::optional<std::string> password_lookup(const Environment& env, const std::string& app,
                                           const std::string& username) {
    auto it = env.apps.find(app);
    if (it == env.apps.end() || it->second.username != username) return std::nullopt;
    return it->second.password;
}

bool credentials_match(const Environment& env, const std::string& app,
                       const std::string& username, const std::string& password) {
    auto it = env.apps.find(app);
    return it != env.apps.end() && it->second.username == username &&
           it->second.password == password;
}

nlohmann::json Environment::to_json(const std::vector<ToolSpec>& universe) const {
    nlohmann::json j;
    j["env_id"] = env_id;
    j["seed"] = seed;
    j["skeleton"] = skel.to_json(universe);
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& [var, value] : user_input_values)
        inputs.push_back({{"var", var}, {"value", value_to_json(value)}});
    j["user_input_values"] = inputs;
    j["memo"] = memo.to_json();
    nlohmann::json apps_json = nlohmann::json::object();
    for (const auto& [app, cred] : apps)
        apps_json[app] = {{"username", cred.username}, {"password", cred.password}};
    j["apps"] = apps_json;
    j["disclose_password"] = disclose_password;
    nlohmann::json goal = nlohmann::json::array();
    for (const auto& v : goal_state) goal.push_back(value_to_json(v));
    j["goal_state"] = goal;
    j["instruction"] = instruction;
    auto names = [&](const std::vector<int>& idxs) {
        nlohmann::json arr = nlohmann::json::array();
        for (int i : idxs) arr.push_back(universe[i].name);
        return arr;
    };
    j["required_tools"] = names(required_tools);
    j["distractor_tools"] = names(distractor_tools);
    return j;
}

Environment Environment::from_json(const nlohmann::json& j,
                                   const std::vector<ToolSpec>& universe) {
    Environment env;
    env.env_id = j.at("env_id").get<std::string>();
    env.seed = j.at("seed").get<uint64_t>();
    env.skel = TrajectorySkeleton::from_json(j.at("skeleton"), universe);
    for (const auto& rec : j.at("user_input_values"))
        env.user_input_values[rec.at("var").get<VarId>()] = value_from_json(rec.at("value"));
    env.memo = MemoTable::from_json(j.at("memo"));
    for (auto it = j.at("apps").begin(); it != j.at("apps").end(); ++it)
        env.apps[it.key()] = Credential{it.key(), it.value().at("username").get<std::string>(),
                                        it.value().at("password").get<std::string>()};
    env.disclose_password = j.at("disclose_password").get<bool>();
    for (const auto& v : j.at("goal_state")) env.goal_state.push_back(value_from_json(v));
    env.instruction = j.at("instruction").get<std::string>();
    auto indices = [&](const nlohmann::json& arr) {
        std::vector<int> out;
        for (const auto& name : arr) {
            const ToolSpec* t = find_tool(universe, name.get<std::string>());
            if (!t)
                throw std::runtime_error("environment references unknown tool: " +
                                         name.get<std::string>());
            out.push_back((int)(t - universe.data()));
        }
        return out;
    };
    env.required_tools = indices(j.at("required_tools"));
    env.distractor_tools = indices(j.at("distractor_tools"));
    return env;
}

}  // namespace randomworld
