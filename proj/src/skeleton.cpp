#include "randomworld/skeleton.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace randomworld {

namespace {

struct LiveVar {
    VarId var;
    TypeRef type;
};

// A variable can wire into a slot when the subtype relation holds and every
// value generable at the source type passes the slot's recognizer.
bool wire_ok(const TypeRegistry& reg, TypeRef src, const TypeSlot& slot) {
    return reg.is_subtype(src, slot.type) && reg.value_sound(src, slot.type);
}

std::vector<const LiveVar*> slot_candidates(const TypeRegistry& reg,
                                            const std::vector<LiveVar>& live,
                                            const TypeSlot& slot) {
    std::vector<const LiveVar*> out;
    for (const auto& v : live)
        if (wire_ok(reg, v.type, slot)) out.push_back(&v);
    return out;
}

bool tool_compatible(const TypeRegistry& reg, const std::vector<LiveVar>& live,
                     const ToolSpec& tool) {
    for (const auto& slot : tool.inputs) {
        bool any = false;
        for (const auto& v : live)
            if (wire_ok(reg, v.type, slot)) {
                any = true;
                break;
            }
        if (!any) return false;
    }
    return true;
}

SkeletonCall sample_call(const std::vector<ToolSpec>& universe, const TypeRegistry& reg,
                         std::vector<LiveVar>& live, int& next_var, Rng& rng) {
    std::vector<int> compatible;
    for (size_t i = 0; i < universe.size(); ++i)
        if (tool_compatible(reg, live, universe[i])) compatible.push_back((int)i);
    if (compatible.empty())
        throw SkeletonSampleError("no tool compatible with the variable set");
    int tool_index = compatible[rng.uniform_u64(compatible.size())];
    const ToolSpec& tool = universe[tool_index];

    SkeletonCall call;
    call.tool_index = tool_index;
    std::vector<TypeRef> arg_types;
    for (const auto& slot : tool.inputs) {
        auto candidates = slot_candidates(reg, live, slot);
        const LiveVar* chosen = candidates[rng.uniform_u64(candidates.size())];
        call.args.push_back(chosen->var);
        arg_types.push_back(chosen->type);
    }
    for (TypeRef out_type : resolve_output_types(tool, arg_types, reg)) {
        VarDecl decl{next_var++, out_type};
        call.outputs.push_back(decl);
        live.push_back({decl.var, decl.type});
    }
    return call;
}

std::vector<LiveVar> live_vars(const TrajectorySkeleton& skel) {
    std::vector<LiveVar> live;
    for (const auto& u : skel.user_inputs) live.push_back({u.var, u.type});
    for (const auto& c : skel.calls)
        for (const auto& o : c.outputs) live.push_back({o.var, o.type});
    return live;
}

}  // namespace

std::vector<char> mark_usage(const TrajectorySkeleton& skel) {
    size_t n = skel.calls.size();
    std::vector<char> used(n, 0);
    if (n == 0) return used;
    used[n - 1] = 1;
    for (size_t i = n - 1; i-- > 0;) {
        std::set<VarId> outs;
        for (const auto& o : skel.calls[i].outputs) outs.insert(o.var);
        for (size_t k = i + 1; k < n && !used[i]; ++k) {
            if (!used[k]) continue;
            for (VarId arg : skel.calls[k].args)
                if (outs.count(arg)) {
                    used[i] = 1;
                    break;
                }
        }
    }
    return used;
}

TrajectorySkeleton trim_and_regrow(TrajectorySkeleton skel,
                                   const std::vector<ToolSpec>& universe,
                                   const SkeletonConfig& cfg, const TypeRegistry& reg,
                                   Rng& rng) {
    const size_t target_len = skel.calls.size();
    for (int round = 0; round < cfg.max_regrow_rounds; ++round) {
        std::vector<char> used = mark_usage(skel);
        bool clean = std::all_of(used.begin(), used.end(), [](char u) { return u != 0; });
        if (clean && skel.calls.size() == target_len) {
            skel.goal_vars.clear();
            for (const auto& o : skel.calls.back().outputs) skel.goal_vars.push_back(o.var);
            return skel;
        }
        std::vector<SkeletonCall> kept;
        for (size_t i = 0; i < skel.calls.size(); ++i)
            if (used[i]) kept.push_back(std::move(skel.calls[i]));
        skel.calls = std::move(kept);
        std::vector<LiveVar> live = live_vars(skel);
        while (skel.calls.size() < target_len)
            skel.calls.push_back(sample_call(universe, reg, live, skel.next_var, rng));
    }
    throw SkeletonSampleError("trim/regrow fixpoint not reached within round budget");
}

TrajectorySkeleton generate_skeleton(const std::vector<ToolSpec>& universe,
                                     const SkeletonConfig& cfg, const TypeRegistry& reg,
                                     Rng& rng) {
    cfg.validate();
    if (universe.empty()) throw SkeletonSampleError("empty tool universe");

    TrajectorySkeleton skel;
    const auto& atoms = reg.custom_atoms();
    int m0 = (int)rng.uniform_int(cfg.user_inputs_min, cfg.user_inputs_max);
    for (int i = 0; i < m0; ++i) {
        TypeRef t = types().atom(atoms[rng.uniform_u64(atoms.size())]);
        skel.user_inputs.push_back({skel.next_var++, t});
    }
    int len = (int)rng.uniform_int(cfg.len_min, cfg.len_max);
    std::vector<LiveVar> live = live_vars(skel);
    for (int i = 0; i < len; ++i)
        skel.calls.push_back(sample_call(universe, reg, live, skel.next_var, rng));
    return trim_and_regrow(std::move(skel), universe, cfg, reg, rng);
}

std::string TrajectorySkeleton::canonical_form(const std::vector<ToolSpec>& universe) const {
    // Variables renumbered in first-use order; user-input values are not yet
    // assigned, so only types and wiring shape identify a skeleton.
    std::map<VarId, std::string> token;
    std::map<VarId, TypeRef> input_types;
    for (const auto& u : user_inputs) input_types[u.var] = u.type;
    int next_user = 0;
    std::string form;
    for (size_t i = 0; i < calls.size(); ++i) {
        const SkeletonCall& c = calls[i];
        form += universe[c.tool_index].name;
        form += '(';
        for (size_t a = 0; a < c.args.size(); ++a) {
            if (a) form += ',';
            VarId arg = c.args[a];
            auto it = token.find(arg);
            if (it == token.end()) {
                auto input = input_types.find(arg);
                if (input == input_types.end())
                    throw std::logic_error("canonical_form: argument references unknown var");
                std::string tok = "u" + std::to_string(next_user++);
                form += tok + ":" + input->second->str();
                token[arg] = tok;
            } else {
                form += it->second;
            }
        }
        form += ')';
        for (size_t j = 0; j < c.outputs.size(); ++j)
            token[c.outputs[j].var] = "c" + std::to_string(i) + "." + std::to_string(j);
        form += ';';
    }
    return form;
}

std::vector<TrajectorySkeleton> dedup(std::vector<TrajectorySkeleton> skels,
                                      const std::vector<ToolSpec>& universe) {
    std::set<std::string> seen;
    std::vector<TrajectorySkeleton> unique;
    for (auto& s : skels)
        if (seen.insert(s.canonical_form(universe)).second) unique.push_back(std::move(s));
    return unique;
}

nlohmann::json TrajectorySkeleton::to_json(const std::vector<ToolSpec>& universe) const {
    nlohmann::json j;
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& u : user_inputs)
        inputs.push_back({{"var", u.var}, {"type", u.type->str()}});
    nlohmann::json calls_json = nlohmann::json::array();
    for (const auto& c : calls) {
        nlohmann::json outs = nlohmann::json::array();
        for (const auto& o : c.outputs) outs.push_back({{"var", o.var}, {"type", o.type->str()}});
        calls_json.push_back({{"tool", universe[c.tool_index].name},
                              {"args", c.args},
                              {"outputs", outs}});
    }
    j["user_inputs"] = inputs;
    j["calls"] = calls_json;
    j["goal_vars"] = goal_vars;
    return j;
}

TrajectorySkeleton TrajectorySkeleton::from_json(const nlohmann::json& j,
                                                 const std::vector<ToolSpec>& universe) {
    TrajectorySkeleton skel;
    int max_var = -1;
    for (const auto& u : j.at("user_inputs")) {
        VarDecl d{u.at("var").get<VarId>(), types().parse(u.at("type").get<std::string>())};
        max_var = std::max(max_var, d.var);
        skel.user_inputs.push_back(d);
    }
    for (const auto& c : j.at("calls")) {
        SkeletonCall call;
        std::string name = c.at("tool").get<std::string>();
        const ToolSpec* tool = find_tool(universe, name);
        if (!tool) throw std::runtime_error("skeleton references unknown tool: " + name);
        call.tool_index = (int)(tool - universe.data());
        call.args = c.at("args").get<std::vector<VarId>>();
        for (const auto& o : c.at("outputs")) {
            VarDecl d{o.at("var").get<VarId>(), types().parse(o.at("type").get<std::string>())};
            max_var = std::max(max_var, d.var);
            call.outputs.push_back(d);
        }
        skel.calls.push_back(std::move(call));
    }
    skel.goal_vars = j.at("goal_vars").get<std::vector<VarId>>();
    skel.next_var = max_var + 1;
    return skel;
}

}  // namespace randomworld
