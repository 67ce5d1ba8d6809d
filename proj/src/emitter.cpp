#include "randomworld/emitter.hpp"

#include <fstream>

namespace randomworld {

std::string SftTrace::completion_text() const {
    std::string out;
    for (const auto& s : segments) out += s.text;
    return out;
}

nlohmann::json SftTrace::to_json() const {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : segments)
        segs.push_back({{"text", s.text}, {"masked", s.loss_masked}});
    return {{"env_id", env_id}, {"prompt", prompt}, {"segments", segs}, {"reward", reward}};
}

nlohmann::json BatchStats::to_json() const {
    nlohmann::json usage = nlohmann::json::object();
    for (const auto& [name, n] : tool_usage) usage[name] = n;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [len, n] : length_histogram) hist[std::to_string(len)] = n;
    return {{"attempted", attempted},
            {"emitted", emitted},
            {"skeleton_failures", skeleton_failures},
            {"dedup_drops", dedup_drops},
            {"populate_failures", populate_failures},
            {"verification_failures", verification_failures},
            {"leakage_flags", leakage_flags},
            {"pass_rate", pass_rate()},
            {"tool_usage", usage},
            {"length_histogram", hist}};
}

BatchStats BatchStats::from_json(const nlohmann::json& j) {
    BatchStats s;
    s.attempted = j.at("attempted").get<int64_t>();
    s.emitted = j.at("emitted").get<int64_t>();
    s.skeleton_failures = j.at("skeleton_failures").get<int64_t>();
    s.dedup_drops = j.at("dedup_drops").get<int64_t>();
    s.populate_failures = j.at("populate_failures").get<int64_t>();
    s.verification_failures = j.at("verification_failures").get<int64_t>();
    s.leakage_flags = j.at("leakage_flags").get<int64_t>();
    for (auto it = j.at("tool_usage").begin(); it != j.at("tool_usage").end(); ++it)
        s.tool_usage[it.key()] = it.value().get<int64_t>();
    for (auto it = j.at("length_histogram").begin(); it != j.at("length_histogram").end(); ++it)
        s.length_histogram[std::stoi(it.key())] = it.value().get<int64_t>();
    return s;
}

SftTrace emit_sft(const Environment& env, const std::vector<ToolSpec>& universe,
                  const TypeRegistry& reg) {
    SftTrace trace;
    trace.env_id = env.env_id;
    SessionConfig cfg;
    trace.prompt = build_prompt(env, universe, cfg);

    // Replay the gold actions to collect observations; any mismatch against
    // the goal is an internal-consistency error and nothing is emitted.
    Session session(&env, &universe, cfg, &reg);
    std::vector<std::string> actions = gold_actions(env, universe);
    for (const auto& action : actions) {
        if (session.status() != SessionStatus::Running)
            throw EmitError("gold replay exceeded the turn budget for " + env.env_id);
        std::string obs = session.step(action);
        trace.segments.push_back({action, false});
        if (!obs.empty()) trace.segments.push_back({obs + "\n", true});
    }
    if (session.status() != SessionStatus::Submitted || session.reward() != 1.0)
        throw EmitError("gold replay did not reach the goal state for " + env.env_id);
    return trace;
}

void write_lines_atomic(const std::filesystem::path& path,
                        const std::vector<std::string>& lines) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw EmitError("cannot open " + tmp.string() + " for writing");
        for (const auto& line : lines) out << line << "\n";
        out.flush();
        if (!out) throw EmitError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void save_envs(const std::vector<Environment>& envs, const std::vector<ToolSpec>& universe,
               std::ostream& out) {
    out << nlohmann::json{{"schema", "randomworld.envs"}, {"version", 1}}.dump() << "\n";
    for (const auto& env : envs) out << env.to_json(universe).dump() << "\n";
}

std::vector<Environment> load_envs(std::istream& in, const std::vector<ToolSpec>& universe) {
    std::vector<Environment> envs;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line);
        if (!header_seen) {
            if (!rec.contains("schema") || rec["schema"] != "randomworld.envs")
                throw std::runtime_error("envs file: missing schema header");
            header_seen = true;
            continue;
        }
        envs.push_back(Environment::from_json(rec, universe));
    }
    return envs;
}

void emit_batch(const std::vector<Environment>& envs, const std::vector<ToolSpec>& universe,
                const TypeRegistry& reg, const std::filesystem::path& out_dir,
                BatchStats stats) {
    std::filesystem::create_directories(out_dir);
    std::vector<const Environment*> ordered;
    for (const auto& e : envs) ordered.push_back(&e);
    std::sort(ordered.begin(), ordered.end(),
              [](const Environment* a, const Environment* b) { return a->env_id < b->env_id; });

    std::vector<std::string> env_lines{
        nlohmann::json{{"schema", "randomworld.envs"}, {"version", 1}}.dump()};
    std::vector<std::string> sft_lines{
        nlohmann::json{{"schema", "randomworld.sft"}, {"version", 1}}.dump()};
    for (const Environment* env : ordered) {
        env_lines.push_back(env->to_json(universe).dump());
        sft_lines.push_back(emit_sft(*env, universe, reg).to_json().dump());
    }
    std::vector<std::string> stats_lines{
        nlohmann::json{{"schema", "randomworld.stats"}, {"version", 1}}.dump(),
        stats.to_json().dump()};

    write_lines_atomic(out_dir / "envs.jsonl", env_lines);
    write_lines_atomic(out_dir / "sft.jsonl", sft_lines);
    write_lines_atomic(out_dir / "stats.jsonl", stats_lines);
}

}  // namespace randomworld
