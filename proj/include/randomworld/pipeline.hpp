#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "randomworld/emitter.hpp"

namespace randomworld {

// One master seed drives every stage; module streams are derived from it.
struct PipelineConfig {
    uint64_t master_seed = 0;
    int n_tools = 50;  // forged tools to retain (the six calculators are extra)
    int n_envs = 100;
    bool offline = true;
    int threads = 0;  // 0: hardware concurrency
    int max_attempts_factor = 50;
    ForgeConfig forge;
    SkeletonConfig skeleton;
    EnvConfig env;
    SessionConfig session;
    GatewayConfig gateway;
    std::map<std::string, std::string> app_assignments;  // tool name -> app

    nlohmann::json to_json() const;
    static PipelineConfig from_json(const nlohmann::json& j);
};

// Gateway-backed tool namer; parses a JSON {name, description, score} reply.
class GatewayNamer : public Namer {
public:
    GatewayNamer(Gateway* gateway, std::string system_prompt = {});
    NameProposal propose(const Signature& sig, const TypeRegistry& reg) override;

private:
    Gateway* gateway_;
    std::string system_prompt_;
};

struct GenToolsReport {
    int kept = 0;
    int discarded = 0;
    double discard_rate() const {
        int total = kept + discarded;
        return total == 0 ? 0.0 : (double)discarded / (double)total;
    }
};

// Forges signatures until n_tools are retained; the returned universe starts
// with the six calculators. App assignments from the config are applied by
// tool name.
GenToolsReport run_gen_tools(const PipelineConfig& cfg, const TypeRegistry& reg, Namer& namer,
                             std::vector<ToolSpec>& universe);

struct GenEnvsResult {
    std::vector<Environment> envs;
    BatchStats stats;
};

// skeleton -> dedup -> populate -> instruct -> verify, until n_envs are
// emitted or the attempt budget runs out. Environment preparation after
// dedup runs on a bounded parallel pool; results are deterministic for a
// given master seed regardless of thread count.
GenEnvsResult run_gen_envs(const PipelineConfig& cfg, const std::vector<ToolSpec>& universe,
                           const TypeRegistry& reg, InstructionBackend& backend,
                           Verifier& verifier);

}  // namespace randomworld
