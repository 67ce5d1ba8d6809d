#include "randomworld/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <set>
#include <thread>

namespace randomworld {

namespace {

uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

const char* kDefaultNamingPrompt =
    "You name synthetic tools. Given a typed signature, reply with JSON only: "
    "{\"name\": kebab-case tool name, \"description\": one sentence, \"score\": integer 1-5 "
    "rating the plausibility and realism of the tool}.";

}  // namespace

nlohmann::json PipelineConfig::to_json() const {
    return {{"master_seed", master_seed},
            {"n_tools", n_tools},
            {"n_envs", n_envs},
            {"offline", offline},
            {"threads", threads},
            {"forge",
             {{"n_inputs_min", forge.n_inputs_min},
              {"n_inputs_max", forge.n_inputs_max},
              {"m_outputs_min", forge.m_outputs_min},
              {"m_outputs_max", forge.m_outputs_max},
              {"p_constructed", forge.p_constructed},
              {"max_constructor_depth", forge.max_constructor_depth},
              {"score_threshold", forge.score_threshold}}},
            {"skeleton",
             {{"len_min", skeleton.len_min},
              {"len_max", skeleton.len_max},
              {"user_inputs_min", skeleton.user_inputs_min},
              {"user_inputs_max", skeleton.user_inputs_max},
              {"max_regrow_rounds", skeleton.max_regrow_rounds}}},
            {"env",
             {{"p_g", env.p_g},
              {"r_dist", env.r_dist},
              {"container_len_min", env.gen.container_len_min},
              {"container_len_max", env.gen.container_len_max}}},
            {"session", {{"max_turns", session.max_turns}}},
            {"gateway",
             {{"base_url", gateway.base_url},
              {"model_id", gateway.model_id},
              {"api_key_env_var", gateway.api_key_env_var},
              {"timeout_seconds", gateway.timeout_seconds},
              {"max_retries", gateway.max_retries},
              {"temperature", gateway.temperature},
              {"requests_per_minute", gateway.requests_per_minute},
              {"audit_log_path", gateway.audit_log_path}}},
            {"app_assignments", app_assignments}};
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
    PipelineConfig cfg;
    auto get = [&](const char* key, auto& into) {
        if (j.contains(key)) into = j.at(key).get<std::decay_t<decltype(into)>>();
    };
    get("master_seed", cfg.master_seed);
    get("n_tools", cfg.n_tools);
    get("n_envs", cfg.n_envs);
    get("offline", cfg.offline);
    get("threads", cfg.threads);
    if (j.contains("forge")) {
        const auto& f = j["forge"];
        if (f.contains("n_inputs_min")) cfg.forge.n_inputs_min = f["n_inputs_min"];
        if (f.contains("n_inputs_max")) cfg.forge.n_inputs_max = f["n_inputs_max"];
        if (f.contains("m_outputs_min")) cfg.forge.m_outputs_min = f["m_outputs_min"];
        if (f.contains("m_outputs_max")) cfg.forge.m_outputs_max = f["m_outputs_max"];
        if (f.contains("p_constructed")) cfg.forge.p_constructed = f["p_constructed"];
        if (f.contains("max_constructor_depth"))
            cfg.forge.max_constructor_depth = f["max_constructor_depth"];
        if (f.contains("score_threshold")) cfg.forge.score_threshold = f["score_threshold"];
    }
    if (j.contains("skeleton")) {
        const auto& s = j["skeleton"];
        if (s.contains("len_min")) cfg.skeleton.len_min = s["len_min"];
        if (s.contains("len_max")) cfg.skeleton.len_max = s["len_max"];
        if (s.contains("user_inputs_min")) cfg.skeleton.user_inputs_min = s["user_inputs_min"];
        if (s.contains("user_inputs_max")) cfg.skeleton.user_inputs_max = s["user_inputs_max"];
        if (s.contains("max_regrow_rounds"))
            cfg.skeleton.max_regrow_rounds = s["max_regrow_rounds"];
    }
    if (j.contains("env")) {
        const auto& e = j["env"];
        if (e.contains("p_g")) cfg.env.p_g = e["p_g"];
        if (e.contains("r_dist")) cfg.env.r_dist = e["r_dist"];
        if (e.contains("container_len_min"))
            cfg.env.gen.container_len_min = e["container_len_min"];
        if (e.contains("container_len_max"))
            cfg.env.gen.container_len_max = e["container_len_max"];
    }
    if (j.contains("session") && j["session"].contains("max_turns"))
        cfg.session.max_turns = j["session"]["max_turns"];
    if (j.contains("gateway")) {
        const auto& g = j["gateway"];
        if (g.contains("base_url")) cfg.gateway.base_url = g["base_url"];
        if (g.contains("model_id")) cfg.gateway.model_id = g["model_id"];
        if (g.contains("api_key_env_var")) cfg.gateway.api_key_env_var = g["api_key_env_var"];
        if (g.contains("timeout_seconds")) cfg.gateway.timeout_seconds = g["timeout_seconds"];
        if (g.contains("max_retries")) cfg.gateway.max_retries = g["max_retries"];
        if (g.contains("temperature")) cfg.gateway.temperature = g["temperature"];
        if (g.contains("requests_per_minute"))
            cfg.gateway.requests_per_minute = g["requests_per_minute"];
        if (g.contains("audit_log_path")) cfg.gateway.audit_log_path = g["audit_log_path"];
    }
    if (j.contains("app_assignments"))
        cfg.app_assignments =
            j["app_assignments"].get<std::map<std::string, std::string>>();
    return cfg;
}

// ---------------------------------------------------------------- gen-tools

GatewayNamer::GatewayNamer(Gateway* gateway, std::string system_prompt)
    : gateway_(gateway),
      system_prompt_(system_prompt.empty() ? kDefaultNamingPrompt : std::move(system_prompt)) {}

NameProposal GatewayNamer::propose(const Signature& sig, const TypeRegistry& reg) {
    (void)reg;
    std::string reply = gateway_->complete(system_prompt_, sig.str());
    try {
        nlohmann::json j = nlohmann::json::parse(reply);
        return {j.at("name").get<std::string>(), j.at("description").get<std::string>(),
                j.at("score").get<int>()};
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("naming backend reply not parseable: ") + e.what() +
                                 "; raw payload: " + reply);
    }
}

GenToolsReport run_gen_tools(const PipelineConfig& cfg, const TypeRegistry& reg, Namer& namer,
                             std::vector<ToolSpec>& universe) {
    GenToolsReport report;
    universe = builtin_tools();
    std::set<std::string> taken;
    for (const auto& t : universe) taken.insert(t.name);
    Rng rng(derive_seed(cfg.master_seed, 1));
    while (report.kept < cfg.n_tools) {
        Signature sig = sample_signature(cfg.forge, reg, rng);
        ForgeOutcome outcome = forge_tool(sig, namer, cfg.forge, reg, taken);
        if (!outcome.tool) {
            ++report.discarded;
            continue;
        }
        universe.push_back(std::move(*outcome.tool));
        ++report.kept;
    }
    for (auto& tool : universe) {
        auto it = cfg.app_assignments.find(tool.name);
        if (it != cfg.app_assignments.end()) tool.app = it->second;
    }
    return report;
}

// ----------------------------------------------------------------- gen-envs

namespace {

struct PreparedEnv {
    bool populate_failed = false;
    bool verification_failed = false;
    bool ngram_flagged = false;
    std::string error;
    Environment env;
};

PreparedEnv prepare_env(TrajectorySkeleton skel, const std::vector<ToolSpec>& universe,
                        const PipelineConfig& cfg, const TypeRegistry& reg,
                        InstructionBackend& backend, Verifier& verifier, uint64_t env_seed) {
    PreparedEnv out;
    try {
        out.env = populate(std::move(skel), universe, cfg.env, reg, env_seed);
    } catch (const PopulateError& e) {
        out.populate_failed = true;
        out.error = e.what();
        return out;
    }
    MaskedTrajectory masked = mask_values(out.env.skel, out.env, universe);
    out.env.instruction = generate_instruction(masked, out.env, universe, backend);
    VerificationReport report = verify_instruction(out.env, universe, reg, verifier);
    if (!report.passed) {
        out.verification_failed = true;
        return out;
    }
    // The emission gate also enforces output-value non-leakage; the n-gram
    // overlap with tool names/descriptions is recorded but not gated.
    if (leaks_output_values(out.env, out.env.instruction)) {
        out.verification_failed = true;
        out.error = "instruction leaks an output value";
        return out;
    }
    out.ngram_flagged = shares_tool_ngram(out.env, universe, out.env.instruction);
    return out;
}

}  // namespace

GenEnvsResult run_gen_envs(const PipelineConfig& cfg, const std::vector<ToolSpec>& universe,
                           const TypeRegistry& reg, InstructionBackend& backend,
                           Verifier& verifier) {
    GenEnvsResult result;
    BatchStats& stats = result.stats;
    std::set<std::string> seen_forms;
    uint64_t attempt = 0;
    const uint64_t max_attempts = (uint64_t)cfg.n_envs * (uint64_t)cfg.max_attempts_factor;
    int threads = cfg.threads > 0 ? cfg.threads
                                  : std::max(1u, std::thread::hardware_concurrency());

    while ((int)result.envs.size() < cfg.n_envs && attempt < max_attempts) {
        // One wave: sample fresh unique skeletons sequentially, then prepare
        // environments in parallel and collect them in index order.
        int remaining = cfg.n_envs - (int)result.envs.size();
        std::vector<TrajectorySkeleton> wave;
        while ((int)wave.size() < remaining && attempt < max_attempts) {
            ++attempt;
            ++stats.attempted;
            Rng rng(derive_seed(cfg.master_seed, 0x5ce1u + attempt));
            TrajectorySkeleton skel;
            try {
                skel = generate_skeleton(universe, cfg.skeleton, reg, rng);
            } catch (const SkeletonSampleError&) {
                ++stats.skeleton_failures;
                continue;
            }
            if (!seen_forms.insert(skel.canonical_form(universe)).second) {
                ++stats.dedup_drops;
                continue;
            }
            wave.push_back(std::move(skel));
        }

        std::vector<PreparedEnv> prepared(wave.size());
        auto worker = [&](size_t begin, size_t step) {
            for (size_t i = begin; i < wave.size(); i += step) {
                uint64_t env_seed =
                    derive_seed(cfg.master_seed, fnv1a64(wave[i].canonical_form(universe)));
                prepared[i] = prepare_env(std::move(wave[i]), universe, cfg, reg, backend,
                                          verifier, env_seed);
            }
        };
        if (threads > 1 && wave.size() > 1) {
            std::vector<std::future<void>> futures;
            for (int t = 0; t < threads; ++t)
                futures.push_back(std::async(std::launch::async, worker, (size_t)t,
                                             (size_t)threads));
            for (auto& f : futures) f.get();
        } else {
            worker(0, 1);
        }

        for (auto& p : prepared) {
            if (p.populate_failed) {
                ++stats.populate_failures;
                std::fprintf(stderr, "internal: populate failed: %s\n", p.error.c_str());
                continue;
            }
            if (p.verification_failed) {
                ++stats.verification_failures;
                continue;
            }
            if ((int)result.envs.size() >= cfg.n_envs) break;
            char id[32];
            std::snprintf(id, sizeof(id), "env-%06zu", result.envs.size());
            p.env.env_id = id;
            if (p.ngram_flagged) ++stats.leakage_flags;
            for (const auto& call : p.env.skel.calls)
                ++stats.tool_usage[universe[call.tool_index].name];
            ++stats.length_histogram[(int)p.env.skel.calls.size()];
            result.envs.push_back(std::move(p.env));
            ++stats.emitted;
        }
    }
    return result;
}

}  // namespace randomworld
